"""Discrete Cosserat eigenvalues on boxes with tensor Lagrange elements."""

from .assembly import OperatorSet, assemble, reaction_solve
from .eigen import EigReport, cosserat_eigs, schur_apply
from .mesh import CornerRefined, TensorMesh, Uniform, UniformCells, box_extents, build_mesh
from .spaces import FeSpacePair
from .study import convergence_study, two_level_extrapolation

__all__ = [
    "CornerRefined", "EigReport", "FeSpacePair", "OperatorSet", "TensorMesh", "Uniform",
    "UniformCells", "assemble", "box_extents", "build_mesh", "convergence_study",
    "cosserat_eigs", "reaction_solve", "schur_apply", "two_level_extrapolation",
]
