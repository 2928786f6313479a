"""Recognition of indefinite unimodular forms and rank coverage of the
X_{s,n} / Y_{r,n} families."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .lattice import FormExpr, Lattice, LatticeError, Summand, invariants


@dataclass(frozen=True)
class ClassDescriptor:
    parity: str
    normal_form: FormExpr

    def __str__(self):
        return f"{self.normal_form} ({self.parity})"


def classify_indefinite(rank: int, signature: int, parity: str) -> ClassDescriptor:
    """Normal form of the indefinite unimodular form with given rank, signature, parity.

    Odd forms are p<1> + q<-1>. Even forms are r copies of E8 (negative
    definite, or E8(-1) when the signature is positive) plus q copies of U.
    Signature zero even forms come out as q*U.
    """
    if parity not in ("even", "odd"):
        raise LatticeError(f"parity must be 'even' or 'odd', got {parity!r}")
    if abs(signature) >= rank:
        raise LatticeError(f"rank {rank}, signature {signature} is definite or impossible")
    if (rank - signature) % 2:
        raise LatticeError(f"rank {rank} and signature {signature} have different parity")
    if parity == "odd":
        p, q = (rank + signature) // 2, (rank - signature) // 2
        return ClassDescriptor("odd", FormExpr((Summand("<1>", 1, p), Summand("<-1>", 1, q))))
    if signature % 8:
        raise LatticeError(f"even unimodular forms need signature = 0 mod 8, got {signature}")
    r = abs(signature) // 8
    q = (rank - 8 * r) // 2
    if q < 1:
        raise LatticeError(f"no even indefinite form of rank {rank}, signature {signature}")
    summands = []
    if r:
        summands.append(Summand("E8", -1 if signature > 0 else 1, r))
    summands.append(Summand("U", 1, q))
    return ClassDescriptor("even", FormExpr(tuple(summands)))


def same_indefinite_class(a: Lattice, b: Lattice) -> bool:
    ia, ib = invariants(a), invariants(b)
    for name, inv in (("first", ia), ("second", ib)):
        if not (inv.unimodular and inv.indefinite):
            raise LatticeError(f"{name} lattice is not indefinite unimodular; classification does not apply")
    return (ia.rank, ia.signature, ia.parity) == (ib.rank, ib.signature, ib.parity)


@dataclass(frozen=True)
class Coverage:
    family: str
    signature: int
    parity: str
    min_rank: int
    step: int
    excluded: List[int] = field(default_factory=list)
    # False when the minimal rank and the signature differ mod 2, so the
    # family cannot literally carry a form of that rank (happens for even b2T)
    consistent: bool = True

    def realized(self, count: int = 5) -> List[int]:
        return [self.min_rank + self.step * i for i in range(count)]


def family_coverage(family: str, signature: int, b2T: Optional[int] = None) -> Coverage:
    """Ranks realized by X_{s,n} (family "X", needs b2T) or Y_{r,n} (family "Y"), n >= 1,
    and the finitely many indefinite ranks of the same parity class left out."""
    if signature == 0:
        raise LatticeError("family coverage is only stated for nonzero signature")
    s = abs(signature)
    if family == "X":
        if b2T is None or b2T <= 0:
            raise LatticeError("the X family needs a positive b2T")
        parity = "odd"
        min_rank = s * (b2T + 4) - 4 + 2
    elif family == "Y":
        if signature % 8:
            raise LatticeError("the Y family needs signature divisible by 8")
        parity = "even"
        min_rank = 12 * (s // 8)
    else:
        raise LatticeError(f"unknown family {family!r}")
    # smallest indefinite rank with this signature is |s| + 2
    excluded = list(range(s + 2, min_rank, 2))
    return Coverage(family, signature, parity, min_rank, 2, excluded,
                    consistent=(min_rank - signature) % 2 == 0)
