"""Integral lattices, standard blocks, invariants and overlattice gluing."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from . import linalg
from .linalg import IntMatrix


class LatticeError(ValueError):
    pass


# E8 with the branch node attached to the fifth node of a 7-chain.
_E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]
_D4_EDGES = [(0, 1), (1, 2), (1, 3)]


def _negated_cartan(n: int, edges) -> IntMatrix:
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


BASE_GRAMS = {
    "E8": _negated_cartan(8, _E8_EDGES),
    "D4": _negated_cartan(4, _D4_EDGES),
    "U": [[0, 1], [1, 0]],
    "<1>": [[1]],
    "<-1>": [[-1]],
}
_ALIASES = {"H": "U"}


@dataclass(frozen=True)
class Lattice:
    gram: Tuple[Tuple[int, ...], ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        if not linalg.is_symmetric(g):
            raise LatticeError("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", g)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], label: Optional[str] = None) -> "Lattice":
        return cls(tuple(tuple(r) for r in rows), label)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def matrix(self) -> IntMatrix:
        return [list(r) for r in self.gram]

    def pair(self, x: Sequence, y: Sequence):
        return linalg.bilinear(self.gram, x, y)

    def norm(self, x: Sequence):
        return self.pair(x, x)

    def __str__(self):
        return self.label or f"Lattice(rank={self.rank})"


@dataclass(frozen=True)
class Summand:
    base: str
    scale: int = 1
    multiplicity: int = 1

    def __post_init__(self):
        base = _ALIASES.get(self.base, self.base)
        if base not in BASE_GRAMS:
            raise LatticeError(f"unknown base lattice {self.base!r}")
        if self.scale == 0:
            raise LatticeError("scale must be nonzero")
        if self.multiplicity < 1:
            raise LatticeError("multiplicity must be positive")
        object.__setattr__(self, "base", base)

    def __str__(self):
        s = self.base if self.scale == 1 else f"{self.base}({self.scale})"
        return s if self.multiplicity == 1 else f"{self.multiplicity}*{s}"


@dataclass(frozen=True)
class FormExpr:
    summands: Tuple[Summand, ...] = ()
    flip: bool = False

    @property
    def rank(self) -> int:
        return sum(len(BASE_GRAMS[s.base]) * s.multiplicity for s in self.summands)

    def __str__(self):
        body = " + ".join(str(s) for s in self.summands) or "0"
        return f"-({body})" if self.flip else body


_TERM = re.compile(r"^(?:(\d+)\*?)?(E8|D4|U|H|<1>|<-1>)(?:\((-?\d+)\))?$")


def parse_form(text: str) -> FormExpr:
    """Parse e.g. ``"2*E8 + 3*U"``, ``"4*<-1>"``, ``"E8(2) + U(2)"``, ``"-(E8)"``."""
    s = re.sub(r"\s+", "", text)
    flip = False
    if s.startswith("-(") and s.endswith(")"):
        flip, s = True, s[2:-1]
    if s in ("", "0"):
        return FormExpr((), flip)
    # split on '+' that is not inside <...>
    terms = re.split(r"\+(?![^<]*>)", s)
    out = []
    for t in terms:
        m = _TERM.match(t)
        if not m:
            raise LatticeError(f"cannot parse lattice term {t!r} in {text!r}")
        mult, base, scale = m.groups()
        out.append(Summand(base, int(scale) if scale else 1, int(mult) if mult else 1))
    return FormExpr(tuple(out), flip)


def standard_lattice(expr: Union[FormExpr, str]) -> Lattice:
    if isinstance(expr, str):
        expr = parse_form(expr)
    blocks = []
    for s in expr.summands:
        g = [[s.scale * x for x in row] for row in BASE_GRAMS[s.base]]
        blocks.extend([g] * s.multiplicity)
    gram = linalg.block_diag(*blocks)
    if expr.flip:
        gram = [[-x for x in row] for row in gram]
    return Lattice.from_rows(gram, str(expr))


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    labels = [x.label for x in (a, b) if x.rank]
    label = " + ".join(l for l in labels if l) or None
    return Lattice.from_rows(linalg.block_diag(a.gram, b.gram), label)


def rescale(a: Lattice, n: int) -> Lattice:
    if n == 0:
        raise LatticeError("cannot rescale a lattice by 0")
    label = None if a.label is None else (a.label if n == 1 else f"({a.label})({n})")
    return Lattice.from_rows([[n * x for x in row] for row in a.gram], label)


@dataclass(frozen=True)
class LatticeInvariants:
    rank: int
    b_plus: int
    b_minus: int
    signature: int
    det: int
    parity: str
    unimodular: bool

    @property
    def nondegenerate(self) -> bool:
        return self.b_plus + self.b_minus == self.rank

    @property
    def indefinite(self) -> bool:
        return self.b_plus >= 1 and self.b_minus >= 1


def invariants(a: Lattice) -> LatticeInvariants:
    pos, neg, _ = linalg.inertia(a.gram)
    d = linalg.det(a.gram)
    even = all(a.gram[i][i] % 2 == 0 for i in range(a.rank))
    return LatticeInvariants(
        rank=a.rank, b_plus=pos, b_minus=neg, signature=pos - neg, det=int(d),
        parity="even" if even else "odd", unimodular=abs(d) == 1,
    )


def is_characteristic(a: Lattice, c: Sequence[int]) -> bool:
    if len(c) != a.rank:
        raise LatticeError(f"vector of length {len(c)} in a rank {a.rank} lattice")
    gc = linalg.matvec(a.gram, c)
    return all((gc[i] - a.gram[i][i]) % 2 == 0 for i in range(a.rank))


@dataclass(frozen=True)
class AbGroup:
    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        f = self.invariant_factors
        if any(d < 2 for d in f) or any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise LatticeError(f"not an invariant factor chain: {f}")

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


def _discriminant_data(a: Lattice):
    """SNF data of the Gram: (factors, generators) of dual/lattice, generators in base coords."""
    u, d, v = linalg.smith_normal_form(a.gram)
    diag = [d[i][i] for i in range(a.rank)]
    if any(x == 0 for x in diag):
        raise LatticeError("discriminant group of a degenerate lattice")
    # dual = G^{-1} Z^n = v d^{-1} Z^n
    gens, factors = [], []
    for j, dj in enumerate(diag):
        if dj > 1:
            factors.append(dj)
            gens.append([Fraction(v[i][j], dj) for i in range(a.rank)])
    return factors, gens


def discriminant_group(a: Lattice) -> AbGroup:
    factors, _ = _discriminant_data(a)
    return AbGroup(tuple(factors))


GlueVector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class GlueSpec:
    base: Union[Lattice, FormExpr, str]
    glue_vectors: Tuple[GlueVector, ...] = ()

    @property
    def base_lattice(self) -> Lattice:
        return self.base if isinstance(self.base, Lattice) else standard_lattice(self.base)


def _as_fracs(v: Iterable) -> GlueVector:
    return tuple(Fraction(x) for x in v)


def overlattice_basis(spec: GlueSpec) -> Tuple[Lattice, List[List[Fraction]], int]:
    """Overlattice with its HNF basis (rational rows in base coordinates) and index."""
    base = spec.base_lattice
    n = base.rank
    glue = [_as_fracs(g) for g in spec.glue_vectors]
    for g in glue:
        if len(g) != n:
            raise LatticeError(f"glue vector of length {len(g)} for a rank {n} base")
        if any(x.denominator != 1 for x in linalg.matvec(base.gram, g)):
            raise LatticeError(f"glue vector {fmt_vector(g)} is not in the dual lattice")
    den = lcm(1, *(x.denominator for g in glue for x in g))
    gens = [[den * int(i == j) for j in range(n)] for i in range(n)]
    gens += [[int(den * x) for x in g] for g in glue]
    basis_int = linalg.row_basis(gens)
    basis = [[Fraction(x, den) for x in row] for row in basis_int]
    gram = linalg.matmul(linalg.matmul(basis, base.gram), linalg.transpose(basis))
    bad = [(i, j) for i in range(n) for j in range(n) if gram[i][j].denominator != 1]
    if bad:
        i, j = bad[0]
        raise LatticeError(
            f"glue vectors do not define an integral overlattice (pairing {gram[i][j]} at {i},{j})"
        )
    index = Fraction(den ** n, abs(linalg.det(basis_int)))
    assert index.denominator == 1
    result = Lattice.from_rows([[int(x) for x in row] for row in gram])
    index = int(index)
    if linalg.det(base.gram) != linalg.det(result.gram) * index ** 2:
        raise AssertionError("determinant bookkeeping failed for overlattice")
    return result, basis, index


def overlattice(spec: GlueSpec) -> Tuple[Lattice, int]:
    """Lattice generated by the base and the glue vectors, with [result : base]."""
    result, _, index = overlattice_basis(spec)
    return result, index


def _matches(inv: LatticeInvariants, target: LatticeInvariants) -> bool:
    return (inv.rank, inv.b_plus, inv.b_minus, abs(inv.det), inv.parity) == (
        target.rank, target.b_plus, target.b_minus, abs(target.det), target.parity)


def glue_search(base: Lattice, target: LatticeInvariants, bound: int = 2) -> List[List[GlueVector]]:
    """All overlattices of ``base`` with the ``target`` invariants, built from
    discriminant classes of order <= bound.

    Each solution is one glue set; distinct solutions give distinct subgroups
    of the discriminant group. Ordering is deterministic.
    """
    if bound < 2:
        raise LatticeError("bound must be at least 2")
    base_det = abs(linalg.det(base.gram))
    if abs(target.det) == 0 or base_det % abs(target.det):
        return []
    index_sq = base_det // abs(target.det)
    index = isqrt(index_sq)
    if index * index != index_sq:
        return []
    if index == 1:
        return [[]] if _matches(invariants(base), target) else []

    factors, gens = _discriminant_data(base)
    elements = []
    for coeffs in itertools.product(*(range(d) for d in factors)):
        order = lcm(1, *(d // gcd(c, d) for c, d in zip(coeffs, factors)))
        if 1 < order <= bound:
            elements.append(coeffs)

    def vector(coeffs) -> GlueVector:
        v = [sum((c * g[i] for c, g in zip(coeffs, gens)), Fraction(0)) for i in range(base.rank)]
        return tuple(x - (x.numerator // x.denominator) for x in v)

    def span(gs) -> frozenset:
        group = {tuple(0 for _ in factors)}
        for g in gs:
            new = set(group)
            frontier = set(group)
            while frontier:
                nxt = set()
                for h in frontier:
                    s = tuple((a + b) % d for a, b, d in zip(h, g, factors))
                    if s not in new:
                        new.add(s)
                        nxt.add(s)
                frontier = nxt
            group = new
        return frozenset(group)

    solutions, seen = [], set()
    for size in range(1, len(factors) + 1):
        for combo in itertools.combinations(elements, size):
            sub = span(combo)
            if len(sub) != index or sub in seen:
                continue
            # skip redundant generators
            if any(len(span(combo[:i] + combo[i + 1:])) == index for i in range(size)):
                continue
            seen.add(sub)
            glue = [vector(c) for c in combo]
            try:
                result, _ = overlattice(GlueSpec(base, tuple(glue)))
            except LatticeError:
                continue
            if _matches(invariants(result), target):
                solutions.append(glue)
    return solutions


def fmt_vector(v: Sequence) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
