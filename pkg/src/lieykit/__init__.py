"""Exact computations for Lie-Yamaguti algebras, their crossed homomorphisms,
cohomology and deformations."""
from .algebra import (LYAlgebra, Subspace, abelian, center, check_axioms, filiform4, from_lie_algebra,
                      heisenberg, is_homomorphism, k4_example, ly_algebra, nonabelian2, sl2)
from .cohomology import (Cochain, ComplexContext, coboundary, cohomology_dim, delta0, induced_rep,
                         is_coboundary, is_cocycle, operator_matrix, pushforward)
from .crossed import (CrossedMap, CrossedMorphism, graph_map, inverse_correspondence, is_crossed_hom,
                      is_crossed_morphism, is_relative_rb)
from .deformation import (DeformationSeries, NijenhuisCandidate, are_equivalent_formal, extend,
                          is_linear_deformation, is_nijenhuis, obstruction, trivial_deformation)
from .representation import ActionContext, Representation, adjoint_rep, check_action, trivial_rep

__all__ = [
    "LYAlgebra", "Subspace", "abelian", "center", "check_axioms", "filiform4",
    "from_lie_algebra", "heisenberg", "is_homomorphism", "k4_example", "ly_algebra",
    "nonabelian2", "sl2", "Cochain", "ComplexContext", "coboundary", "cohomology_dim",
    "delta0", "induced_rep", "is_coboundary", "is_cocycle", "operator_matrix", "pushforward",
    "CrossedMap", "CrossedMorphism", "graph_map", "inverse_correspondence", "is_crossed_hom",
    "is_crossed_morphism", "is_relative_rb", "DeformationSeries", "NijenhuisCandidate",
    "are_equivalent_formal", "extend", "is_linear_deformation", "is_nijenhuis", "obstruction",
    "trivial_deformation", "ActionContext", "Representation", "adjoint_rep", "check_action",
    "trivial_rep",
]

__version__ = "0.1.0"
