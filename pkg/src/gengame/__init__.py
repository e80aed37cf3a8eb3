"""Nim-values of the achievement game of generating a finite group.

Two players alternately select previously unselected elements of a finite
group; whoever first makes the selected set generate the group moves last and
wins.  This package computes the nim-value of that game through a quotient of
the game tree (the structure digraph of interval closures), validates the
quotient against a brute-force game-tree oracle, and computes the feasible
spectrum of extended types by a powerset fixed point.
"""

from .corpus import CorpusReport, builtin_corpus, run_corpus
from .digraph import (
    ConjectureReport,
    StructureClass,
    StructureDigraph,
    Violation,
    analyze,
    build_digraph,
    check_even_option_conjecture,
    compute_types,
    digraph_report,
    nim_value_of_game,
    verify_odd_order_types,
    verify_option_restrictions,
)
from .dot import emit_dot
from .groups import (
    ElementSet,
    Group,
    GroupSpecError,
    SizeLimitError,
    build_group,
    element_order,
    generated_subgroup,
    parity,
)
from .lattice import (
    SubgroupLattice,
    all_subgroups,
    build_lattice,
    frattini_subgroup,
    maximal_subgroups,
)
from .oracle import (
    NimTable,
    check_structure_invariance,
    nim_table,
    oracle_nim,
    position_class_values,
)
from .spectrum import (
    EmpiricalSpectrum,
    SpectrumLayers,
    empirical_spectrum,
    feasible_spectrum,
    next_layer,
)
from .typecalc import ExtendedType, emex_p, is_feasible, mex, mex_p

__all__ = [
    "ConjectureReport",
    "CorpusReport",
    "ElementSet",
    "EmpiricalSpectrum",
    "ExtendedType",
    "Group",
    "GroupSpecError",
    "NimTable",
    "SizeLimitError",
    "SpectrumLayers",
    "StructureClass",
    "StructureDigraph",
    "SubgroupLattice",
    "Violation",
    "all_subgroups",
    "analyze",
    "build_digraph",
    "build_group",
    "build_lattice",
    "builtin_corpus",
    "check_even_option_conjecture",
    "check_structure_invariance",
    "compute_types",
    "digraph_report",
    "element_order",
    "emex_p",
    "emit_dot",
    "empirical_spectrum",
    "feasible_spectrum",
    "frattini_subgroup",
    "generated_subgroup",
    "is_feasible",
    "maximal_subgroups",
    "mex",
    "mex_p",
    "next_layer",
    "nim_table",
    "nim_value_of_game",
    "oracle_nim",
    "parity",
    "position_class_values",
    "run_corpus",
    "verify_odd_order_types",
    "verify_option_restrictions",
]
