"""Planarity obstructions for contact 3-manifolds from combinatorial data."""

from .fillhomology import (
    HomologyReport,
    IntersectionLattice,
    first_homology,
    homology_report,
    intersection_form,
    is_integral_homology_ball,
    second_homology,
)
from .grouppres import (
    Presentation,
    badness,
    compile_presentation,
    order_and_realize,
    parse_presentation,
    reduce_presentation,
)
from .lattice import (
    DiagonalEmbedding,
    NotEmbeddable,
    cokernel_invariants,
    diagonal_embedding,
    is_negative_definite,
    kernel_basis,
    smith_decomposition,
)
from .obstruct import (
    Verdict,
    WeightedIntersectionGraph,
    detect_bad_configuration,
    enumerate_sphere_classes,
    etnyre_obstruction,
    no_minus_one_class,
    positive_genus_witness,
)
from .page import Curve, Factorization, Page, boundary_multitwist, dominates, separated
from .plumbing import (
    PlumbingGraph,
    ade_graph,
    bad_vertices,
    blowdown_normalize,
    classify_hypersurface,
    classify_singularity_link,
    is_tree_of_spheres,
    negative_continued_fraction,
    seifert_graph,
    seifert_planarity_check,
)

__version__ = "0.1.0"
