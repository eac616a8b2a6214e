"""Exact antipode computations for graded right-handed polynomial Hopf
algebras: coproduct tables, decorated-tree expansions, linearizations, three
equivalent antipode methods, and the preLie/enveloping-algebra machinery that
produces such tables by dualization.
"""

from .algebra import (
    Monomial,
    Multiset,
    Polynomial,
    Rational,
    Tensor,
    mono,
    mul_monomials,
    multiset,
    multiset_union,
    poly_arith,
    tensor_mul,
)
from .antipode import (
    METHODS,
    TermStats,
    antipode_bogoliubov,
    antipode_dyson_salam,
    antipode_endomap,
    antipode_forest,
    antipode_generator,
    antipode_poly,
    dyson_salam_poly,
    term_stats,
)
from .coproduct import (
    Endomap,
    coassociativity_report,
    convolution_check,
    coproduct_poly,
    counit_report,
    full_coproduct_generator,
    iterated_reduced,
    iterated_reduced_poly,
    monomials_up_to,
    reduced_coproduct_generator,
    reduced_coproduct_poly,
)
from .errors import ConstructionError, InputError
from .hopfspec import (
    CoproductEntry,
    CoproductSpec,
    Generator,
    faa_di_bruno_spec,
    load_spec,
    load_spec_file,
    save_spec,
    validate_spec,
)
from .linearize import (
    Linearization,
    alternating_sum,
    chain_of,
    forest_expansion,
    forest_expansion_report,
    k_linearizations,
    linearizations_of_view,
    tree_expansion,
    tree_expansion_report,
)
from .prelie import (
    BraceResult,
    PreLieSpec,
    brace_action,
    dualize,
    filtration_report,
    grafting_instance,
    guin_oudom_mul,
    guin_oudom_poly,
    load_prelie,
    load_prelie_file,
    prelie_check,
    prelie_monomials_up_to,
    rooted_tree_shapes,
    save_prelie,
    unshuffle_coproduct,
    unshuffle_poly,
)
from .prelie import associativity_report as star_associativity_report
from .trees import (
    Address,
    CorollaCut,
    DecoratedTree,
    Forest,
    PosetView,
    TreeStats,
    canonicalize,
    corolla_cuts,
    enumerate_forests,
    enumerate_trees,
    forest,
    forest_notation,
    height,
    leaf,
    node,
    structure_key,
    tree_coefficient,
    tree_multiplicity,
    tree_notation,
    tree_stats,
    vertex_count,
    vertex_monomial,
)

__version__ = "0.1.0"
