"""Multary quasigroups as operation tables: factorization, decomposition,
group recognition, and transversal designs."""

from .core import (
    FORWARD,
    REVERSE,
    Isotopy,
    MultaryQuasigroup,
    Parastrophe,
    enumerate_all,
    is_latin,
    validate,
)
from .factorization import (
    FactorPair,
    FactorizationGraph,
    Segment,
    all_segments,
    check_ij_associative,
    check_multary_group,
    compose,
    factorization_graph,
    reducible_at,
)
from .groups import (
    GroupTable,
    GroupWitness,
    QuadrangleWitness,
    catalog,
    catalog_name,
    cyclic,
    division_table,
    extract_group,
    first_nongroup_ternary_fixing,
    group_from_table,
    group_isomorphic,
    is_iterated_group_isotope,
    is_pseudoisomorphism,
    iterated_group,
    klein_four,
    quadrangle_criterion,
    residual_ternary_test,
)
from .structure import (
    Block,
    BlockTree,
    Component,
    DecompositionTree,
    ThetaReport,
    block_decomposition,
    decompose_quasigroup,
    is_theta_complete,
    recompose,
)
from .designs import (
    TransversalDesign,
    i_compose,
    relabel_class_values,
    reorder_classes,
    to_design,
    verify_design,
)
from .generators import (
    SearchBudget,
    random_isotopy,
    random_quasigroup,
    relabel_output,
    search_irreducible,
    search_nongroup_binary,
    twisted_composition,
)
from .io import read_mqt, read_td, write_mqt, write_td
from . import (  # noqa: F401  (submodule access: multary.generators etc.)
    core,
    designs,
    errors,
    factorization,
    generators,
    groups,
    io,
    rng,
    structure,
)

__version__ = "0.1.0"

FORMAT_VERSION = "1"
