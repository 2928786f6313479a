"""Certificate for the (-1)-eigenlattice gluing behind the essential projective
plane in the Hitchin manifold.

Base coordinates (rank 12):
    0..3   D4(2)  from L^{-+}      4..5   U(2)  u1+, u2+
    6..9   D4(2)  from L^{--}     10..11  U(2)  u1-, u2-
The two D4(2) pieces are glued to E8(2), then r+ = (a+ + a-)/2 is adjoined
with a^e = u1^e - u2^e. c1 acts as -1 everywhere; tau = c1 c2 acts as -1 on
the L^{-+} range and +1 on the L^{--} range.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .lattice import (GlueSpec, Lattice, discriminant_group, glue_search, invariants,
                      overlattice_basis, standard_lattice)

PLUS = range(0, 6)
MINUS = range(6, 12)
D4_PLUS, U_PLUS = range(0, 4), range(4, 6)
D4_MINUS, U_MINUS = range(6, 10), range(10, 12)
D_READING = "D(2) read as D4(2), matching L^{++} = D4(2)"


class CertificateError(AssertionError):
    pass


def build_k3_lattice() -> Lattice:
    return standard_lattice("2*E8 + 3*U")


@functools.lru_cache(maxsize=None)
def glue_d4d4_to_e8(scale: int = 1) -> Tuple[Lattice, Tuple[Tuple[Fraction, ...], ...]]:
    """Overlattice of D4(scale) + D4(scale) with E8(scale) invariants."""
    if scale not in (1, 2):
        raise ValueError("scale must be 1 or 2")
    base = standard_lattice("2*D4")
    found = glue_search(base, invariants(standard_lattice("E8")), bound=2)
    if not found:
        raise CertificateError("no D4 + D4 -> E8 gluing found; lattice search is broken")
    glue = tuple(tuple(g) for g in found[0])
    spec = GlueSpec(standard_lattice(f"2*D4({scale})") if scale != 1 else base, tuple(glue))
    result, _, index = overlattice_basis(spec)
    target = invariants(standard_lattice("E8" if scale == 1 else "E8(2)"))
    inv = invariants(result)
    if (inv.rank, inv.b_plus, abs(inv.det), inv.parity) != (8, 0, abs(target.det), "even") or index != 4:
        raise CertificateError(f"D4 gluing at scale {scale} gave {inv}, index {index}")
    return result, glue


def _vec(entries: Dict[int, Fraction], n: int = 12) -> Tuple[Fraction, ...]:
    v = [Fraction(0)] * n
    for i, x in entries.items():
        v[i] = Fraction(x)
    return tuple(v)


def _diag_action(signs: Sequence[int]) -> List[List[int]]:
    return [[signs[i] if i == j else 0 for j in range(len(signs))] for i in range(len(signs))]


@dataclass
class EigenlatticeCertificate:
    base: Lattice
    L_minus1: Lattice
    basis: List[List[Fraction]]           # overlattice basis rows in base coordinates
    summand_map: Dict[str, Tuple[int, int]]
    d4_glue: List[Tuple[Fraction, ...]]
    a_plus: Tuple[int, ...]
    a_minus: Tuple[int, ...]
    r_plus: Tuple[Fraction, ...]
    r_minus: Tuple[Fraction, ...]
    c1_action: List[List[int]]            # on overlattice coordinates
    tau_action: List[List[int]]
    index: int
    notes: List[str] = field(default_factory=list)

    def base_pair(self, x, y):
        return linalg.bilinear(self.base.gram, x, y)

    def to_coords(self, v: Sequence[Fraction]) -> List[Fraction]:
        """Coordinates of a base-coordinate vector in the overlattice basis."""
        inv = linalg.inverse(self.basis)
        return linalg.matvec(linalg.transpose(inv), v)

    def to_dict(self) -> dict:
        s = lambda v: [str(x) for x in v]
        return {
            "base_gram": [list(r) for r in self.base.gram],
            "L_minus1_gram": [list(r) for r in self.L_minus1.gram],
            "overlattice_basis": [s(r) for r in self.basis],
            "summand_map": {k: list(v) for k, v in self.summand_map.items()},
            "d4_glue": [s(g) for g in self.d4_glue],
            "a_plus": list(self.a_plus), "a_minus": list(self.a_minus),
            "r_plus": s(self.r_plus), "r_minus": s(self.r_minus),
            "c1_action": self.c1_action, "tau_action": self.tau_action,
            "index_over_base": self.index,
            "notes": list(self.notes),
        }


def _conjugate_to_basis(basis, action_base) -> List[List[Fraction]]:
    """Matrix of a base-coordinate linear map in the overlattice basis (column convention)."""
    bt = linalg.transpose(basis)
    return linalg.matmul(linalg.inverse(bt), linalg.matmul(action_base, bt))


def _integral(m) -> List[List[int]]:
    if any(Fraction(x).denominator != 1 for row in m for x in row):
        raise CertificateError("action does not preserve the overlattice")
    return [[int(x) for x in row] for row in m]


def build_certificate() -> EigenlatticeCertificate:
    base = standard_lattice("D4(2) + U(2) + D4(2) + U(2)")
    _, d4_glue = glue_d4d4_to_e8(scale=2)
    glue = [_vec({**{i: g[i] for i in range(4)}, **{6 + i: g[4 + i] for i in range(4)}})
            for g in d4_glue]
    a_plus = tuple(int(x) for x in _vec({4: 1, 5: -1}))
    a_minus = tuple(int(x) for x in _vec({10: 1, 11: -1}))
    r_plus = tuple((Fraction(x) + y) / 2 for x, y in zip(a_plus, a_minus))
    r_minus = tuple((Fraction(x) - y) / 2 for x, y in zip(a_plus, a_minus))

    # step 1: the minimal gluing to E8(2) + U(2) + U(2)
    mid, _, mid_index = overlattice_basis(GlueSpec(base, tuple(glue)))
    if mid_index != 4:
        raise CertificateError(f"D4(2) + D4(2) gluing has index {mid_index}, expected 4")
    # step 2: the index-2 extension by r+
    result, basis, index = overlattice_basis(GlueSpec(base, tuple(glue) + (r_plus,)))
    if index != 2 * mid_index:
        raise CertificateError(f"r+ extension has index {index // mid_index} over the glued lattice")

    c1_base = _diag_action([-1] * 12)
    tau_base = _diag_action([-1 if i in PLUS else 1 for i in range(12)])
    c1 = _integral(_conjugate_to_basis(basis, c1_base))
    tau = _integral(_conjugate_to_basis(basis, tau_base))
    return EigenlatticeCertificate(
        base=base, L_minus1=result, basis=basis,
        summand_map={"D4(2)+": (0, 4), "U(2)+": (4, 6), "D4(2)-": (6, 10), "U(2)-": (10, 12)},
        d4_glue=[tuple(g) for g in d4_glue], a_plus=a_plus, a_minus=a_minus,
        r_plus=r_plus, r_minus=r_minus, c1_action=c1, tau_action=tau, index=index,
        notes=[D_READING, "tau modeled as c1 o c2 = -1 on L^{-+}, +1 on L^{--}"],
    )


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    identity: bool = False   # one of the core equations for r+-, a+-, c1, tau


@dataclass
class Report:
    checks: List[Check]
    tau_sign: int
    notes: List[str]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def identities(self) -> List[Check]:
        return [c for c in self.checks if c.identity]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "tau_sign": self.tau_sign,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail, "identity": c.identity}
                       for c in self.checks],
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"[{'pass' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
        for n in self.notes:
            lines.append(f"note: {n}")
        ok = sum(c.passed for c in self.identities)
        lines.append(f"{ok}/{len(self.identities)} identities pass; "
                     f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks pass")
        return "\n".join(lines)


def verify_certificate(c: EigenlatticeCertificate) -> Report:
    """Re-check every claim of the certificate from raw matrix arithmetic."""
    checks: List[Check] = []

    def add(name, passed, detail, identity=False):
        checks.append(Check(name, bool(passed), detail, identity))

    for label, a in (("a+", c.a_plus), ("a-", c.a_minus)):
        n = c.base_pair(a, a)
        add(f"({label})^2 = -4", n == -4, f"computed {n}", True)
    for label, r in (("r+", c.r_plus), ("r-", c.r_minus)):
        n = c.base_pair(r, r)
        add(f"({label})^2 = -2", n == -2, f"computed {n}", True)
    p = c.base_pair(c.r_plus, c.r_minus)
    add("r+ . r- = 0", p == 0, f"computed {p}", True)

    # membership: coordinates in the overlattice basis are integral
    coords = {}
    for label, r in (("r+", c.r_plus), ("r-", c.r_minus)):
        x = c.to_coords(r)
        coords[label] = x
        add(f"{label} in L^(-1)", all(v.denominator == 1 for v in x), f"coordinates {[str(v) for v in x]}")

    def act(m, label):
        return linalg.matvec(m, coords[label])

    for label in ("r+", "r-"):
        img = act(c.c1_action, label)
        add(f"c1({label}) = -{label}", img == [-v for v in coords[label]], "", True)

    tau_rp, tau_rm = act(c.tau_action, "r+"), act(c.tau_action, "r-")
    sign = 0
    if tau_rp == coords["r-"]:
        sign = 1
    elif tau_rp == [-v for v in coords["r-"]]:
        sign = -1
    add("tau(r+) = +-r-", sign != 0, f"realized sign {sign:+d}" if sign else "no match", True)
    back = 0
    if tau_rm == coords["r+"]:
        back = 1
    elif tau_rm == [-v for v in coords["r+"]]:
        back = -1
    add("tau(r-) = +-r+", back != 0, f"realized sign {back:+d}" if back else "no match", True)

    gram = c.L_minus1.matrix
    n = c.L_minus1.rank
    ident = linalg.identity(n)
    for label, m in (("c1", c.c1_action), ("tau", c.tau_action)):
        add(f"{label} is an isometry of L^(-1)", linalg.congruent(gram, m) == gram, "F^T G F = G")
        add(f"{label}^2 = identity", linalg.matmul(m, m) == ident, "")
    c2 = linalg.matmul(c.c1_action, c.tau_action)
    add("c1 and tau commute", linalg.matmul(c.c1_action, c.tau_action) == linalg.matmul(c.tau_action, c.c1_action), "")
    group = {tuple(map(tuple, g)) for g in (ident, c.c1_action, c.tau_action, c2)}
    add("<c1, tau> is a Klein four-group", len(group) == 4 and linalg.matmul(c2, c2) == ident,
        f"{len(group)} distinct elements")

    e8, _ = glue_d4d4_to_e8(scale=1)
    inv8 = invariants(e8)
    add("D4 + D4 gluing has E8 invariants",
        (inv8.rank, inv8.b_plus, inv8.b_minus, abs(inv8.det), inv8.parity) == (8, 0, 8, 1, "even"),
        f"rank {inv8.rank}, b- {inv8.b_minus}, |det| {abs(inv8.det)}, {inv8.parity}")
    e82, _ = glue_d4d4_to_e8(scale=2)
    d82 = abs(invariants(e82).det)
    add("D4(2) + D4(2) gluing has |det| = 2^8", d82 == 2 ** 8, f"|det| = {d82}")

    inv = invariants(c.L_minus1)
    add("L^(-1) has rank 12", inv.rank == 12, f"rank {inv.rank}")
    add("L^(-1) is even", inv.parity == "even", inv.parity)
    add("|det L^(-1)| = 2^10", abs(inv.det) == 2 ** 10, f"|det| = {abs(inv.det)}")
    base_det = linalg.det(c.base.gram)
    add("det(base) = det(L^(-1)) * index^2", base_det == inv.det * c.index ** 2,
        f"{base_det} = {inv.det} * {c.index}^2")
    ref = standard_lattice("E8(2) + U(2) + U")
    dg, dr = discriminant_group(c.L_minus1), discriminant_group(ref)
    add("discriminant group equals that of E8(2) + U(2) + U", dg == dr, f"{dg} vs {dr}")
    iref = invariants(ref)
    add("signature matches E8(2) + U(2) + U", (inv.b_plus, inv.b_minus) == (iref.b_plus, iref.b_minus),
        f"({inv.b_plus}, {inv.b_minus})")

    k3 = invariants(build_k3_lattice())
    add("K3 lattice is 2E8 + 3U", (k3.rank, k3.b_plus, k3.b_minus, k3.parity, k3.unimodular)
        == (22, 3, 19, "even", True), f"rank {k3.rank}, b+ {k3.b_plus}, b- {k3.b_minus}")

    notes = list(c.notes)
    if sign:
        notes.append(f"tau(r+) = {'+' if sign > 0 else '-'}r- under the bi-eigenlattice sign model")
    return Report(checks, sign, notes)


def certificate_json() -> str:
    cert = build_certificate()
    rep = verify_certificate(cert)
    return json.dumps({"certificate": cert.to_dict(), "report": rep.to_dict()},
                      sort_keys=True, indent=2, ensure_ascii=False)
