"""Reproduction suite over the example families X_{s,n}, Y_{r,n}, Z_{m,n},
the elliptic blocks, the reflection and boundary cases, and the eigenlattice
certificate."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from .degtyarev import build_certificate, verify_certificate
from .lattice import LatticeError
from .manifold import (Manifold, ModelError, Pi1, SurfaceConfig, building_block, capacities,
                       connected_sum, repeat_sum, reverse_orientation, sum_along_wedge)
from .obstruction import ObstructionError, Verdict, projective_twist_nontrivial
from .scenario import MappingClass, ScenarioError, evaluate, reflection_target

S_VALUES = (-4, -3, -2, -1, 1, 2, 3, 4)
B2T_VALUES = (2, 10, 46)
ELLIPTIC = ((1, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 3), (1, 3, 1))

INPUT_ERRORS = (ObstructionError, ModelError, LatticeError, ScenarioError)


@dataclass
class SuiteRow:
    group: str
    label: str
    mapping: str
    invariants: dict
    conclusion: str
    rule: Optional[str] = None
    verdict: Optional[dict] = None
    as_paper: Optional[str] = None
    as_paper_verdict: Optional[dict] = None
    error: Optional[str] = None
    tags: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}

    def to_text(self) -> str:
        inv = self.invariants
        head = (f"{self.label:<30} chi={inv.get('chi', '-'):<5} sigma={inv.get('sigma', '-'):<4} "
                f"b2={inv.get('b2', '-'):<4} pi1={inv.get('pi1', '-'):<8}")
        out = f"{head} {self.mapping:<24} -> {self.conclusion}"
        if self.rule:
            out += f" ({self.rule})"
        if self.as_paper is not None:
            out += f" / as-paper: {self.as_paper}"
        if self.error:
            out += f" [{self.error}]"
        return out


def _invariants(x: Optional[Manifold]) -> dict:
    if x is None:
        return {}
    return {"chi": x.chi, "sigma": x.sigma, "b2": x.b2, "b1": x.b1, "parity": x.parity,
            "pi1": str(x.pi1), "spin": x.spin, "cover_spin": x.cover_spin}


def _attempt(fn: Callable[[], Verdict]):
    try:
        v = fn()
    except INPUT_ERRORS as e:
        return "Error", None, None, str(e)
    return v.conclusion.value, v.rule, v.to_dict(), None


def _row(group, label, mapping, x, fn, paper_fn=None, tags=()) -> SuiteRow:
    concl, rule, vd, err = _attempt(fn)
    row = SuiteRow(group, label, mapping, _invariants(x), concl, rule, vd, error=err, tags=list(tags))
    if paper_fn is not None:
        row.as_paper, _, row.as_paper_verdict, perr = _attempt(paper_fn)
        if perr and not err:
            row.error = perr
    return row


# -- family builders -----------------------------------------------------------

def x_family(s: int, n: int, b2T: int) -> Manifold:
    """X_{s,n}: |s| copies of T (T-bar for s > 0) summed along a wedge of two circles, # n S2xS2."""
    t = building_block("Teichner", b2=b2T)
    if s > 0:
        t = reverse_orientation(t)
    x = t
    for _ in range(abs(s) - 1):
        x = sum_along_wedge(x, t, 2)
    x = connected_sum(x, repeat_sum(building_block("S2xS2"), n)) if n else x
    return Manifold(f"X_{{{s},{n}}}(b2T={b2T})", x.chi, x.sigma, x.b1, x.parity, x.pi1, x.spin,
                    x.cover_spin, x.lattice, x.caps, x.chi_h)


def y_family(r: int, n: int) -> Manifold:
    """Y_{r,n}: |r| Enriques surfaces (mirrored for r > 0) summed along a circle, # n S2xS2."""
    e = building_block("Enriques")
    if r > 0:
        e = reverse_orientation(e)
    y = e
    for _ in range(abs(r) - 1):
        y = sum_along_wedge(y, e, 1)
    y = connected_sum(y, repeat_sum(building_block("S2xS2"), n)) if n else y
    return Manifold(f"Y_{{{r},{n}}}", y.chi, y.sigma, y.b1, y.parity, y.pi1, y.spin,
                    y.cover_spin, y.lattice, y.caps, y.chi_h)


def z_prime(m: int) -> Manifold:
    return repeat_sum(building_block("Hitchin"), m)


def z_family(m: int, n: int) -> Manifold:
    """Z_{m,n} = m H # n CP2bar."""
    return reflection_target(z_prime(m), n) if n else z_prime(m)


def _twist(euler: int, count: int = 1) -> MappingClass:
    return MappingClass("multi_twist", config=SurfaceConfig.spheres(euler, count))


def _planes(euler: int, count: int = 1) -> MappingClass:
    return MappingClass("projective_twist", config=SurfaceConfig.planes(euler, count))


# -- suite -----------------------------------------------------------------------

def paper_suite(include_certificate: bool = True) -> List[SuiteRow]:
    rows: List[SuiteRow] = []

    for b2T in B2T_VALUES:
        for s in S_VALUES:
            for n in range(1, 5):
                x = x_family(s, n, b2T)
                e = -2 if s < 0 else 2
                # one sphere sits on the k = |sigma|/2 boundary when |s| = 2
                tags = ["boundary:k=-sigma/2"] if abs(s) == 2 else []
                rows.append(_row("X", f"X_{{{s},{n}}} b2T={b2T}", f"T_S k=1 ({e:+d})", x,
                                 lambda x=x, e=e: evaluate(x, _twist(e)), tags=tags))

    for r in S_VALUES:
        for n in range(0, 5):
            y = y_family(r, n)
            e = -2 if r < 0 else 2
            label = f"Y_{{{r},{n}}}" + (" = Enriques" if (r, n) == (-1, 0) else "")
            tags = ["obstructed:enriques"] if (r, n) == (-1, 0) else []
            rows.append(_row("Y", label, f"T_S k=1 ({e:+d})", y,
                             lambda y=y, e=e: evaluate(y, _twist(e)), tags=tags))

    for m in range(1, 4):
        for n in range(0, 5):
            z = z_family(m, n)
            label = f"Z_{{{m},{n}}}" + (" = Hitchin" if (m, n) == (1, 0) else "")
            tags = ["obstructed:hitchin"] if (m, n) == (1, 0) else []
            rows.append(_row("Z", label, "T_R k=1 (-1)", z,
                             lambda z=z: evaluate(z, _planes(-1)), tags=tags))
            refl = MappingClass("multi_reflection", k=n, xprime=f"Hitchin#{m}" if m > 1 else "Hitchin")
            rows.append(_row("Z", label, f"R_S k={n}", z,
                             lambda z=z, refl=refl: evaluate(z, refl),
                             paper_fn=lambda z=z, refl=refl: evaluate(z, refl, as_paper=True),
                             tags=["reflection"] + (["as-paper-boundary:k=-sigma/2"] if n == 4 * m else [])))

    hitchin = building_block("Hitchin")
    rows.append(_row("Z", "Hitchin", "[T_R] != 1", hitchin,
                     lambda: projective_twist_nontrivial(hitchin), tags=["nontrivial:hitchin"]))

    for n, p, t in ELLIPTIC:
        x = building_block("Elliptic", n=n, p=p, t=t)
        tags = ["obstructed:elliptic"] if (n, p, t) == (2, 3, 1) else []
        rows.append(_row("Elliptic", f"E({n}) p={p} t={t}", f"T_S k={t} (-2)", x,
                         lambda x=x, t=t: evaluate(x, _twist(-2, t)), tags=tags))

    k3 = building_block("K3")
    for k in (3, 16):
        x = reflection_target(k3, k)
        tag = "obstructed:k3" if k == 3 else "boundary:k=-sigma/2"
        rows.append(_row("Reflection", f"K3 # {k}CP2bar", f"R_S k={k}", x,
                         lambda k=k: evaluate(reflection_target(k3, k),
                                              MappingClass("multi_reflection", k=k, xprime="K3")),
                         tags=[tag]))

    enriques = building_block("Enriques")
    rows.append(_row("Boundary", "Enriques", "T_S k=4 (-2)", enriques,
                     lambda: evaluate(enriques, _twist(-2, 4)), tags=["boundary:k=-sigma/2"]))
    # hypothetical records isolating the projective-twist boundaries
    q1 = Manifold("Q(sigma=-1)", 3, -1, pi1=Pi1(2, "Z2"), cover_spin=True, caps=capacities(plane_m1=1))
    rows.append(_row("Boundary", q1.name, "T_R k=1 (-1)", q1,
                     lambda: evaluate(q1, _planes(-1)), tags=["boundary:sigma=-1"]))
    q2 = Manifold("Q(sigma=-2)", 4, -2, pi1=Pi1(2, "Z2"), cover_spin=True, caps=capacities(plane_m1=2))
    rows.append(_row("Boundary", q2.name, "T_R k=2 (-1)", q2,
                     lambda: evaluate(q2, _planes(-1, 2)), tags=["boundary:k=-sigma"]))

    if include_certificate:
        rep = verify_certificate(build_certificate())
        ids = rep.identities
        ok = sum(c.passed for c in ids)
        row = SuiteRow("Certificate", "Degtyarev certificate", "eigenlattice gluing", {},
                       f"{ok}/{len(ids)} identities pass" if rep.passed else "FAILED",
                       verdict=rep.to_dict(), tags=["certificate"])
        rows.append(row)
    return rows


def suite_json(rows: List[SuiteRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], sort_keys=True, indent=2, ensure_ascii=False)


def suite_text(rows: List[SuiteRow]) -> str:
    out, group = [], None
    for r in rows:
        if r.group != group:
            group = r.group
            out.append(f"== {group}")
        out.append(r.to_text())
    return "\n".join(out)
