"""Invariant-level model of closed oriented 4-manifolds and their constructions."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from .lattice import Lattice, direct_sum, invariants, rescale, standard_lattice


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Pi1:
    """Fundamental group tracked as finiteness, order and a display tag."""

    order: Optional[int] = 1  # None means unknown / possibly infinite
    tag: str = "1"

    @property
    def trivial(self) -> bool:
        return self.order == 1

    @property
    def finite(self) -> bool:
        return self.order is not None

    def __str__(self):
        return "unknown" if self.order is None else ("1" if self.trivial else f"{self.tag} (order {self.order})")


TRIVIAL = Pi1(1, "1")
UNKNOWN = Pi1(None, "?")

# capacity keys: (kind, euler); planes are the essential ones
SPHERE, PLANE = "sphere", "plane"
CAPACITY_KEYS = ((SPHERE, -2), (SPHERE, 2), (SPHERE, -1), (SPHERE, 1), (PLANE, -1), (PLANE, 1))


def capacities(**counts: int) -> Tuple[Tuple[Tuple[str, int], int], ...]:
    """capacities(sphere_m2=8, plane_m1=1) -> normalized tuple."""
    names = {"sphere_m2": (SPHERE, -2), "sphere_p2": (SPHERE, 2), "sphere_m1": (SPHERE, -1),
             "sphere_p1": (SPHERE, 1), "plane_m1": (PLANE, -1), "plane_p1": (PLANE, 1)}
    out = dict.fromkeys(CAPACITY_KEYS, 0)
    for k, v in counts.items():
        out[names[k]] = v
    return tuple((k, out[k]) for k in CAPACITY_KEYS)


@dataclass(frozen=True)
class Manifold:
    name: str
    chi: int
    sigma: int
    b1: int = 0
    parity: str = "odd"
    pi1: Pi1 = TRIVIAL
    spin: bool = False
    cover_spin: bool = False
    lattice: Optional[Lattice] = None
    caps: Tuple[Tuple[Tuple[str, int], int], ...] = field(default_factory=capacities)
    chi_h: Optional[int] = None

    def __post_init__(self):
        if self.b2 < 0:
            raise ModelError(f"{self.name}: negative b2 ({self.b2})")
        if abs(self.sigma) > self.b2:
            raise ModelError(f"{self.name}: |sigma| = {abs(self.sigma)} exceeds b2 = {self.b2}")
        if self.spin and self.parity != "even":
            raise ModelError(f"{self.name}: spin manifolds have even forms")
        if self.lattice is not None:
            inv = invariants(self.lattice)
            if (inv.rank, inv.signature, inv.parity) != (self.b2, self.sigma, self.parity):
                raise ModelError(f"{self.name}: lattice invariants {inv} disagree with the record")

    @property
    def b2(self) -> int:
        return self.chi - 2 + 2 * self.b1

    @property
    def parity_consistent(self) -> bool:
        return (self.b2 - self.sigma) % 2 == 0

    def _half(self, x: int) -> int:
        if x % 2:
            raise ModelError(f"{self.name}: b2 = {self.b2} and sigma = {self.sigma} differ mod 2")
        return x // 2

    @property
    def b_plus(self) -> int:
        return self._half(self.b2 + self.sigma)

    @property
    def b_minus(self) -> int:
        return self._half(self.b2 - self.sigma)

    def capacity(self, kind: str, euler: int) -> int:
        return dict(self.caps).get((kind, euler), 0)

    def summary(self) -> Dict[str, object]:
        return {
            "name": self.name, "chi": self.chi, "sigma": self.sigma, "b1": self.b1, "b2": self.b2,
            "parity": self.parity, "pi1_order": self.pi1.order, "pi1": self.pi1.tag,
            "spin": self.spin, "cover_spin": self.cover_spin,
        }


# -- surface configurations ----------------------------------------------------

@dataclass(frozen=True)
class Component:
    kind: str
    euler: int
    count: int = 1
    essential: bool = True

    def __post_init__(self):
        if self.kind not in (SPHERE, PLANE):
            raise ModelError(f"unknown surface kind {self.kind!r}")
        allowed = (-2, 2, -1, 1) if self.kind == SPHERE else (-1, 1)
        if self.euler not in allowed:
            raise ModelError(f"{self.kind} with normal Euler number {self.euler}")
        if self.count < 1:
            raise ModelError("component counts must be positive")


@dataclass(frozen=True)
class SurfaceConfig:
    components: Tuple[Component, ...] = ()
    classes: Optional[Tuple[Tuple[int, ...], ...]] = None

    @classmethod
    def spheres(cls, euler: int, count: int) -> "SurfaceConfig":
        return cls((Component(SPHERE, euler, count),))

    @classmethod
    def planes(cls, euler: int, count: int, essential: bool = True) -> "SurfaceConfig":
        return cls((Component(PLANE, euler, count, essential),))

    def count(self, kind: str, euler: Optional[int] = None) -> int:
        return sum(c.count for c in self.components
                   if c.kind == kind and (euler is None or c.euler == euler))

    @property
    def k_plus(self) -> int:
        return self.count(SPHERE, 2)

    @property
    def k_minus(self) -> int:
        return self.count(SPHERE, -2)

    @property
    def k(self) -> int:
        return self.k_plus + self.k_minus

    @property
    def has_planes(self) -> bool:
        return any(c.kind == PLANE for c in self.components)

    def negated(self) -> "SurfaceConfig":
        comps = tuple(replace(c, euler=-c.euler) for c in self.components)
        return SurfaceConfig(comps, self.classes)


def lift_surface_config(c: SurfaceConfig, m: int) -> SurfaceConfig:
    """Preimage of a sphere configuration in an m-fold cover."""
    if m < 1:
        raise ModelError("cover degree must be positive")
    if c.has_planes:
        raise ModelError("projective planes do not lift componentwise; handle them via essentiality")
    return SurfaceConfig(tuple(replace(x, count=x.count * m) for x in c.components))


def validate_config(x: Manifold, c: SurfaceConfig) -> List[str]:
    """Capacity and (when classes are given) intersection checks; [] means ok."""
    violations = []
    demand: Dict[Tuple[str, int], int] = {}
    for comp in c.components:
        if comp.kind == PLANE and not comp.essential:
            violations.append(f"{x.name}: no record of non-essential projective planes")
            continue
        key = (comp.kind, comp.euler)
        demand[key] = demand.get(key, 0) + comp.count
    for (kind, euler), n in sorted(demand.items()):
        cap = x.capacity(kind, euler)
        if n > cap:
            violations.append(f"{x.name}: {n} disjoint {kind}s of Euler number {euler:+d} requested, capacity {cap}")
    if c.classes is not None:
        if x.lattice is None:
            violations.append(f"{x.name}: explicit classes given but no intersection form is known")
        else:
            eulers = [comp.euler for comp in c.components if comp.kind == SPHERE for _ in range(comp.count)]
            if len(eulers) != len(c.classes):
                violations.append(f"{len(c.classes)} classes for {len(eulers)} spheres")
            for i, (cls, e) in enumerate(zip(c.classes, eulers)):
                if len(cls) != x.lattice.rank:
                    violations.append(f"class {i} has length {len(cls)}, rank is {x.lattice.rank}")
                elif x.lattice.norm(cls) != e:
                    violations.append(f"class {i} has square {x.lattice.norm(cls)}, expected {e}")
            for i in range(len(c.classes)):
                for j in range(i):
                    if len(c.classes[i]) == len(c.classes[j]) == x.lattice.rank:
                        p = x.lattice.pair(c.classes[i], c.classes[j])
                        if p:
                            violations.append(f"classes {j} and {i} intersect ({p})")
    return violations


# -- building blocks -------------------------------------------------------------

def building_block(name: str, **params: int) -> Manifold:
    if name == "S2xS2":
        return Manifold("S2xS2", 4, 0, parity="even", spin=True, cover_spin=True,
                        lattice=standard_lattice("U"), caps=capacities(sphere_m2=1, sphere_p2=1))
    if name == "CP2":
        return Manifold("CP2", 3, 1, lattice=standard_lattice("<1>"), caps=capacities(sphere_p1=1))
    if name == "CP2bar":
        return Manifold("CP2bar", 3, -1, lattice=standard_lattice("<-1>"), caps=capacities(sphere_m1=1))
    if name == "K3":
        # a Kummer K3 carries 16 disjoint nodal (-2)-curves
        return Manifold("K3", 24, -16, parity="even", spin=True, cover_spin=True,
                        lattice=standard_lattice("2*E8 + 3*U"), caps=capacities(sphere_m2=16))
    if name == "Enriques":
        return Manifold("Enriques", 12, -8, parity="even", pi1=Pi1(2, "Z2"), cover_spin=True,
                        lattice=standard_lattice("E8 + U"),
                        caps=capacities(sphere_m2=8, plane_m1=1), chi_h=1)
    if name == "Teichner":
        b2T = params.get("b2", params.get("b2T"))
        if b2T is None or b2T <= 0:
            raise ModelError("Teichner needs a positive b2")
        return Manifold(f"Teichner(b2={b2T})", b2T + 2, -1, pi1=Pi1(128, "Z16⋊Z8"), cover_spin=True)
    if name == "Hitchin":
        return Manifold("Hitchin", 6, -4, pi1=Pi1(4, "Z2⊕Z2"), cover_spin=True,
                        lattice=standard_lattice("4*<-1>"), caps=capacities(plane_m1=1))
    if name in ("Elliptic", "EllipticSurface"):
        n, p, t = params.get("n"), params.get("p"), params.get("t", 0)
        if n is None or n <= 0:
            raise ModelError("Elliptic needs n >= 1")
        if p is None or p <= 1:
            raise ModelError("Elliptic needs p >= 2")
        if t < 0:
            raise ModelError("Elliptic needs t >= 0")
        even = n % 2 == 0 and p % 2 == 1
        return Manifold(f"Elliptic(n={n},p={p},t={t})", 12 * n, -8 * n,
                        parity="even" if even else "odd", pi1=Pi1(p, f"Z{p}"),
                        # even form and no 2-torsion in H1 = Z_p
                        spin=even,
                        cover_spin=(p * n) % 2 == 0, caps=capacities(sphere_m2=t), chi_h=n)
    raise ModelError(f"unknown building block {name!r}")


def _add_caps(a: Manifold, b: Manifold):
    da, db = dict(a.caps), dict(b.caps)
    return tuple((k, da.get(k, 0) + db.get(k, 0)) for k in CAPACITY_KEYS)


def _lattice_sum(a: Manifold, b: Manifold) -> Optional[Lattice]:
    if a.lattice is None or b.lattice is None:
        return None
    return direct_sum(a.lattice, b.lattice)


def connected_sum(x: Manifold, y: Manifold) -> Manifold:
    if x.pi1.trivial:
        pi1 = y.pi1
    elif y.pi1.trivial:
        pi1 = x.pi1
    else:
        pi1 = UNKNOWN
    if pi1.finite:
        # the universal cover is (cover of the nontrivial side) # m copies of the other
        def ok(z):
            return z.spin if z.pi1.trivial else z.cover_spin
        cover_spin = ok(x) and ok(y)
    else:
        cover_spin = False
    both_even = x.parity == "even" and y.parity == "even"
    return Manifold(
        f"{x.name} # {y.name}", x.chi + y.chi - 2, x.sigma + y.sigma, x.b1 + y.b1,
        "even" if both_even else "odd", pi1, x.spin and y.spin, cover_spin,
        _lattice_sum(x, y), _add_caps(x, y),
    )


def sum_along_wedge(x: Manifold, y: Manifold, g: int) -> Manifold:
    """Glue the complements of a wedge of g circles in x and y.

    chi(nbhd of the wedge) = 1 - g and its boundary has chi = 0, so
    chi = chi(x) + chi(y) - 2(1 - g).
    """
    if g < 1:
        raise ModelError("need at least one circle")
    if x.b1 or y.b1:
        raise ModelError("sum along a wedge of circles is modeled for b1 = 0 only")
    if x.pi1 != y.pi1:
        raise ModelError(f"pi1 mismatch: {x.pi1} vs {y.pi1}")
    both_even = x.parity == "even" and y.parity == "even"
    return Manifold(
        f"sumW(g={g}, {x.name}, {y.name})", x.chi + y.chi + 2 * (g - 1), x.sigma + y.sigma, 0,
        "even" if both_even else "odd", x.pi1, x.spin and y.spin, x.cover_spin and y.cover_spin,
        None, _add_caps(x, y),
    )


def reverse_orientation(x: Manifold) -> Manifold:
    caps = dict(x.caps)
    flipped = tuple(((kind, e), caps.get((kind, -e), 0)) for kind, e in CAPACITY_KEYS)
    name = x.name[4:-1] if x.name.startswith("rev(") and x.name.endswith(")") else f"rev({x.name})"
    return replace(x, name=name, sigma=-x.sigma, caps=flipped,
                   lattice=None if x.lattice is None else rescale(x.lattice, -1))


def universal_cover(x: Manifold) -> Manifold:
    """Invariants of the universal cover of degree m = |pi1|.

    Spheres lift to m spheres each; an essential plane lifts to m/2 spheres
    of twice its Euler number (m is even whenever such a plane exists).
    """
    if not x.pi1.finite:
        raise ModelError(f"{x.name}: universal cover needs a finite fundamental group")
    if x.b1:
        raise ModelError(f"{x.name}: universal cover is modeled for b1 = 0 only")
    m = x.pi1.order
    if m == 1:
        return x
    caps = dict.fromkeys(CAPACITY_KEYS, 0)
    for (kind, e), n in x.caps:
        if kind == SPHERE:
            caps[(SPHERE, e)] += m * n
        elif n:
            caps[(SPHERE, 2 * e)] += (m // 2) * n
    return Manifold(
        f"cover({x.name})", m * x.chi, m * x.sigma, 0,
        "even" if x.cover_spin else "odd", TRIVIAL, x.cover_spin, x.cover_spin, None,
        tuple((k, caps[k]) for k in CAPACITY_KEYS),
        None if x.chi_h is None else m * x.chi_h,
    )


def repeat_sum(x: Manifold, n: int) -> Manifold:
    if n < 1:
        raise ModelError("repetition count must be at least 1")
    out = x
    for _ in range(n - 1):
        out = connected_sum(out, x)
    return replace(out, name=x.name if n == 1 else f"{n}{x.name}" if _atomic(x.name) else f"({x.name})#{n}")


def _atomic(name: str) -> bool:
    return re.fullmatch(r"[A-Za-z0-9]+", name) is not None


# -- build-expression grammar --------------------------------------------------
#   expr  := atom ['#' INT]          (n-fold connected sum)
#   atom  := NAME ['(' arg (',' arg)* ')']
#   arg   := KEY '=' INT | atom ['#' INT]
# Inside sumW a repeated argument means repeated wedge summands.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, ident, sym = m.groups()
        if num is not None:
            out.append(("int", num))
        elif ident is not None:
            out.append(("name", ident))
        elif sym is not None and not sym.isspace():
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ModelError(f"unexpected {tok[1]!r} in build expression {self.text!r}")
        self.i += 1
        return tok[1]

    def expr(self) -> Manifold:
        grp = self.group()
        return repeat_sum(grp[0], len(grp))

    def atom(self) -> Manifold:
        name = self.take("name")
        if self.peek() != ("sym", "("):
            return building_block(name)
        self.take("sym", "(")
        kwargs, groups = {}, []
        while True:
            if self.peek()[0] == "name" and self.toks[self.i + 1:self.i + 2] == [("sym", "=")]:
                key = self.take("name")
                self.take("sym", "=")
                sign = -1 if self.peek() == ("sym", "-") else 1
                if sign < 0:
                    self.take()
                kwargs[key] = sign * int(self.take("int"))
            else:
                groups.append(self.group())
            if self.peek() == ("sym", ","):
                self.take()
                continue
            self.take("sym", ")")
            break
        return _apply(name, kwargs, groups)

    def group(self) -> List[Manifold]:
        """An argument ``A#n`` stands for n copies of A."""
        m = self.atom()
        n = 1
        if self.peek() == ("sym", "#"):
            self.take()
            n = int(self.take("int"))
            if n < 1:
                raise ModelError("repetition count must be at least 1")
        return [m] * n

    def parse(self) -> Manifold:
        m = self.expr()
        if self.i != len(self.toks):
            raise ModelError(f"trailing input in build expression {self.text!r}")
        return m


def _apply(name: str, kwargs: Dict[str, int], groups: List[List[Manifold]]) -> Manifold:
    if name == "sumW":
        args = [m for grp in groups for m in grp]
        if not args:
            raise ModelError("sumW needs at least one manifold")
        g = kwargs.get("g", 1)
        out = args[0]
        for a in args[1:]:
            out = sum_along_wedge(out, a, g)
        if len(args) > 2:
            out = replace(out, name=f"sumW(g={g}, {', '.join(_group_name(grp) for grp in groups)})")
        return out
    args = [repeat_sum(grp[0], len(grp)) for grp in groups]
    if name == "csum":
        if not args:
            raise ModelError("csum needs at least one manifold")
        out = args[0]
        for a in args[1:]:
            out = connected_sum(out, a)
        return out
    if name in ("rev", "cover"):
        if len(args) != 1 or kwargs:
            raise ModelError(f"{name} takes exactly one manifold")
        return reverse_orientation(args[0]) if name == "rev" else universal_cover(args[0])
    if args:
        raise ModelError(f"block {name} takes only key=value parameters")
    return building_block(name, **kwargs)


def _group_name(grp: List[Manifold]) -> str:
    return grp[0].name if len(grp) == 1 else f"{grp[0].name}#{len(grp)}"


def build(text: str) -> Manifold:
    """Build a manifold from e.g. ``"csum(sumW(g=2, Teichner(b2=9)#1, Teichner(b2=9)), S2xS2#3)"``."""
    return _Parser(text).parse()
