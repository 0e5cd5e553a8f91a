"""Strictly linearly ordered semigroups on real intervals.

Axiom falsification, roots and dyadic powers, the additive embedding into
the reals, continuity probes, and an exact lexicographic counterexample.
"""

from .algebra import ElementClass, classify, dual_reflected, dual_reversed, dyadic_power, kth_root, nat_power, square_root
from .axioms import Law, Violation, check_axioms, check_root_existence
from .continuity import ConvergenceReport, Side, probe_approx_unit, probe_joint_continuity, probe_translation_continuity
from .core import Dyadic, Interval, OrderedSemigroup, TolerancePolicy, approx_eq, builtin, catalog, contains
from .embedding import EmbeddingFn, TargetInterval, build_embedding, exp_map, log_map, verify_additivity
from .opdsl import ExprOp

__version__ = "0.1.0"

__all__ = [
    "ConvergenceReport", "Dyadic", "ElementClass", "EmbeddingFn", "ExprOp", "Interval", "Law",
    "OrderedSemigroup", "Side", "TargetInterval", "TolerancePolicy", "Violation",
    "approx_eq", "build_embedding", "builtin", "catalog", "check_axioms", "check_root_existence",
    "classify", "contains", "dual_reflected", "dual_reversed", "dyadic_power", "exp_map", "kth_root",
    "log_map", "nat_power", "probe_approx_unit", "probe_joint_continuity",
    "probe_translation_continuity", "square_root", "verify_additivity",
]
