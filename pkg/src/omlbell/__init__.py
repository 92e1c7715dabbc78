"""Joint probabilities and Bell-type inequalities on finite orthomodular lattices."""

from .errors import (
    ConsistencyError,
    ConstructionError,
    DiagramError,
    DocumentError,
    FormulaError,
    OmlBellError,
    SizeCapError,
)
from .lattice import (
    GreechieDiagram,
    Oml,
    assemble_oml,
    build_boolean,
    build_from_greechie,
    build_horizontal_sum,
    build_mo,
    is_compatible,
    is_orthogonal,
    orthogonal_atom_decomposition,
    validate_oml,
)
from .maps import (
    Conj,
    Disj,
    DMap,
    JMap,
    Lit,
    Neg,
    NegLit,
    NMap,
    SMap,
    State,
    classical_smap_from_state,
    counterfactual_eval,
    de_morgan_audit,
    dmap_from_smap,
    jmap_from_smap,
    make_nmap,
    make_smap,
    make_state,
    marginal_map,
    nmap_from_smap,
    nmap_validate,
    smap_from_nmap,
    smap_validate,
    state_from_smap,
    validate_state,
)
from .inequalities import (
    ARITY,
    SMAP_IDS,
    STATE_IDS,
    InequalityReport,
    ScanResult,
    equivalence_audit,
    eval_smap_inequality,
    eval_state_inequality,
    scan,
)
from .linsystem import (
    Constraint,
    FeasibilityResult,
    LinSystem,
    verify_certificate,
    verify_witness,
)
from .simplex import optimize, solve
from .fourier_motzkin import fm_feasible, fm_maximize, rows_from_system
from .smap_systems import (
    assemble_extension_system,
    assemble_smap_system,
    nmap_from_witness,
    sample_smaps,
    smap_from_witness,
)
from .documents import parse_lattice, parse_map, serialize_lattice, serialize_map
from .report import ValidationReport
from .rationals import format_rational, parse_rational
from . import bundled

__version__ = "0.1.0"

__all__ = [
    "ARITY",
    "Conj",
    "ConsistencyError",
    "Constraint",
    "ConstructionError",
    "DiagramError",
    "Disj",
    "DMap",
    "DocumentError",
    "FeasibilityResult",
    "FormulaError",
    "GreechieDiagram",
    "InequalityReport",
    "JMap",
    "LinSystem",
    "Lit",
    "Neg",
    "NegLit",
    "NMap",
    "Oml",
    "OmlBellError",
    "ScanResult",
    "SizeCapError",
    "SMap",
    "SMAP_IDS",
    "State",
    "STATE_IDS",
    "ValidationReport",
    "assemble_extension_system",
    "assemble_oml",
    "assemble_smap_system",
    "build_boolean",
    "build_from_greechie",
    "build_horizontal_sum",
    "build_mo",
    "bundled",
    "classical_smap_from_state",
    "counterfactual_eval",
    "de_morgan_audit",
    "dmap_from_smap",
    "equivalence_audit",
    "eval_smap_inequality",
    "eval_state_inequality",
    "fm_feasible",
    "fm_maximize",
    "format_rational",
    "is_compatible",
    "is_orthogonal",
    "jmap_from_smap",
    "make_nmap",
    "make_smap",
    "make_state",
    "marginal_map",
    "nmap_from_smap",
    "nmap_from_witness",
    "nmap_validate",
    "optimize",
    "orthogonal_atom_decomposition",
    "parse_lattice",
    "parse_map",
    "parse_rational",
    "rows_from_system",
    "sample_smaps",
    "scan",
    "serialize_lattice",
    "serialize_map",
    "smap_from_nmap",
    "smap_from_witness",
    "smap_validate",
    "solve",
    "state_from_smap",
    "validate_oml",
    "validate_state",
    "verify_certificate",
    "verify_witness",
]
