"""The higher-order language L^omega over a KOCA."""

from .syntax import (  # noqa: F401
    O, Arrow, Base, Signature, alpha_eq, leibniz_eq, parse_expr, parse_homega, parse_kind,
    parse_signature, show, substitute,
)
from .derivations import (  # noqa: F401
    Ax, ForallE, ForallI, ImpE, ImpI, Sequent, check_derivation, parse_derivation,
    parse_derivation_file, show_derivation,
)
from .semantics import Interpretation, counterexample, interpret, satisfies  # noqa: F401
from .adequacy import DerivationSpace, adequacy_suite, enumerate_derivations  # noqa: F401
from .arithmetic import (  # noqa: F401
    I, II, III, leibniz_check, nat_formula, pa_axioms_check, pa_signature, theory_member,
    truncated_model, zmod_model,
)
