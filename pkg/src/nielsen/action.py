"""Homological actions of multi-twists, projective twists and multi-reflections.

Matrices act on coordinate columns: the image of a basis vector e_j is
column j. Classes are given in the lattice basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from . import linalg
from .lattice import Lattice, LatticeError


@dataclass(frozen=True)
class Isometry:
    lattice: Lattice
    matrix: Tuple[Tuple[int, ...], ...]
    kind: str = "isometry"
    preserves_spin: bool = False

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = self.lattice.rank
        if linalg.shape(m) != (n, n) and not (n == 0 and not m):
            raise LatticeError(f"{linalg.shape(m)} matrix on a rank {n} lattice")
        if linalg.congruent(self.lattice.gram, m) != self.lattice.matrix:
            raise LatticeError("matrix does not preserve the Gram form")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def __call__(self, v: Sequence) -> list:
        return linalg.matvec(self.matrix, v)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if other.lattice.gram != self.lattice.gram:
            raise LatticeError("composing isometries of different lattices")
        return Isometry(self.lattice, linalg.matmul(self.matrix, other.matrix),
                        preserves_spin=self.preserves_spin and other.preserves_spin)

    def is_involution(self) -> bool:
        return linalg.matmul(self.matrix, self.matrix) == linalg.identity(self.rank)


@dataclass(frozen=True)
class EquivariantSig:
    b_f_plus: int
    b_f_minus: int
    sigma_f: int


def _check_orthogonal(lat: Lattice, classes, allowed: Tuple[int, ...], what: str) -> List[int]:
    norms = []
    for i, c in enumerate(classes):
        if len(c) != lat.rank:
            raise LatticeError(f"class {i} has length {len(c)}, lattice rank is {lat.rank}")
        n = lat.norm(c)
        if n not in allowed:
            raise LatticeError(f"{what} class {i} has self-intersection {n}, expected one of {allowed}")
        norms.append(n)
    for i in range(len(classes)):
        for j in range(i):
            if lat.pair(classes[i], classes[j]):
                raise LatticeError(f"classes {j} and {i} intersect ({lat.pair(classes[i], classes[j])})")
    return norms


def _reflection_sum(lat: Lattice, classes, coeffs) -> list:
    """I + sum coeff_i * c_i c_i^T G."""
    m = linalg.identity(lat.rank)
    for c, q in zip(classes, coeffs):
        gc = linalg.matvec(lat.gram, c)
        for i in range(lat.rank):
            for j in range(lat.rank):
                m[i][j] += q * c[i] * gc[j]
    return m


def multi_twist_operator(lat: Lattice, classes: Sequence[Sequence[int]]) -> Isometry:
    """Product of Dehn twists along disjoint (+-2)-spheres.

    A (-2)-class acts by a -> a + (a.c)c; a (+2)-class by a -> a - (a.c)c.
    Both are the reflection a -> a - 2(a.c)/(c.c) c, so the result is always
    an isometry that negates each c.
    """
    norms = _check_orthogonal(lat, classes, (-2, 2), "twist")
    return Isometry(lat, _reflection_sum(lat, classes, [-2 // n for n in norms]),
                    kind="multi-twist", preserves_spin=True)


def multi_reflection_operator(lat: Lattice, classes: Sequence[Sequence[int]]) -> Isometry:
    """a -> a + 2 sum (a.e_i) e_i for disjoint exceptional classes (e_i^2 = -1).

    Classes of square +1 are accepted when all of them are +1 (the mirror
    reflection a -> a - 2 sum (a.e_i) e_i); mixed signs are rejected.
    """
    norms = _check_orthogonal(lat, classes, (-1, 1), "reflection")
    if len(set(norms)) > 1:
        raise LatticeError("mixed-sign multi-reflections are not supported")
    return Isometry(lat, _reflection_sum(lat, classes, [-2 // n for n in norms]),
                    kind="multi-reflection")


def projective_twist_operator(lat: Lattice) -> Isometry:
    # projective twists act trivially on H_2
    return Isometry(lat, linalg.identity(lat.rank), kind="projective-twist", preserves_spin=True)


def fixed_sublattice(f: Isometry) -> Tuple[List[List[int]], int]:
    n = f.rank
    m = [[f.matrix[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    basis = linalg.kernel_basis(m, n)
    return basis, len(basis)


def involution_signatures(f: Isometry) -> EquivariantSig:
    """Inertia of the form restricted to the (+1)-eigenlattice of an involution."""
    if not f.is_involution():
        raise LatticeError("involution_signatures needs f o f = identity")
    basis, _ = fixed_sublattice(f)
    restricted = linalg.matmul(linalg.matmul(basis, f.lattice.gram), linalg.transpose(basis))
    pos, neg, _ = linalg.inertia(restricted)
    return EquivariantSig(pos, neg, pos - neg)
