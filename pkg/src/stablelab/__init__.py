"""Stable models of normal propositional programs through proof supports and
defining equations, with a cardinality-constraint extension and an operator
laboratory.  See the README for the CLI and the HTTP service."""

from .syntax import (
    Atom,
    Clause,
    Program,
    horn_part,
    is_purely_negative,
    is_stratified,
    parse_program,
    pretty_program,
)
from .formulas import (
    And,
    BOT,
    Bot,
    Formula,
    Iff,
    Lit,
    Or,
    TOP,
    Theory,
    Top,
    all_models,
    all_models_exhaustive,
    entails,
    evaluate,
)
from .fixpoint import (
    gl_operator,
    gl_reduct,
    is_stable_model,
    least_model,
    stable_models_bruteforce,
    tp_step,
    tpm_step,
)
from .schemes import (
    ProofScheme,
    admits,
    all_supports,
    enumerate_schemes,
    gl_via_schemes,
    minimal_support_family,
    minimal_supports,
    validate_scheme,
)
from .equations import (
    DefiningEquation,
    clark_completion_purely_negative,
    defining_equation,
    fsp_report,
    stable_models_via_equations,
    stable_models_via_schemes,
    support_precedes,
    theory,
)
from .cc import (
    CardConstraint,
    CCProgram,
    cc_from_normal,
    cc_gl_via_schemes,
    cc_least_model,
    cc_minimal_supports,
    cc_parse,
    cc_satisfies,
    cc_stable_models_bruteforce,
    cc_stable_models_via_equations,
    cc_support_formula,
    cc_support_preceq,
    cc_theory,
    cc_tp_step,
    cc_transform,
    ccgl,
    nss_reduct,
)
from .oplab import (
    OperatorTable,
    check_antimonotone,
    check_lower_half_continuity,
    dual_operator,
    family_program,
    fsp_growth_probe,
    gl_table,
    program_from_operator,
    verify_operator_realization,
)

__version__ = "0.1.0"
