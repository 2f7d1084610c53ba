"""Isolating and dominating sets in maximal outerplanar graphs, with certified size bounds."""

from .errors import *  # noqa: F401,F403
from .families import (  # noqa: F401
    FamilySpec,
    SplitMix64,
    family_A,
    family_H,
    family_M,
    family_R,
    family_S,
    family_T,
    fan,
    random_mop,
)
from .gallery import (  # noqa: F401
    GuardCertificate,
    SimplePolygon,
    place_guards,
    render_svg,
    spiral_gallery,
    triangulate,
    verify_window_coverage,
)
from .isolation import (  # noqa: F401
    Bound,
    BoundedSolution,
    dominate_half_minus,
    dominate_third,
    isolate_best,
    isolate_order,
    isolate_order_minus_n2,
    isolate_order_plus_n2,
    isolate_small,
)
from .mop import (  # noqa: F401
    DiagonalSplit,
    Mop,
    VertexMap,
    add_ear,
    apex,
    closed_neighborhood,
    contract_hamiltonian_edge,
    degree,
    degree2_vertices,
    delete_all_degree2,
    delete_degree2_vertex,
    diagonal_partition,
    is_dominating,
    is_isolating,
    splitting_diagonal,
    three_coloring,
    validate,
)
from .oracle import ExactResult, exact_domination_number, exact_isolation_number  # noqa: F401

__version__ = "0.1.0"
