"""Exact lattice and invariant computations for obstructing Nielsen realization
of multi-twists, projective twists and multi-reflections on 4-manifolds."""

from .lattice import Lattice, invariants, standard_lattice
from .manifold import Manifold, SurfaceConfig, build, building_block
from .obstruction import Conclusion, Verdict

__all__ = ["Lattice", "invariants", "standard_lattice", "Manifold", "SurfaceConfig", "build",
           "building_block", "Conclusion", "Verdict"]
__version__ = "0.1.0"
