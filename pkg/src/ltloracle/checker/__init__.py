from .buchi import DEFAULT_STATE_CAP, BuchiAutomaton, ltl_to_buchi
from .lasso import Lasso, Verdict, eval_lasso, lasso_word, verify_counterexample
from .ndfs import accepts_lasso_word, check
from .reference import check_reference

__all__ = [
    "DEFAULT_STATE_CAP", "BuchiAutomaton", "ltl_to_buchi", "Lasso", "Verdict",
    "eval_lasso", "lasso_word", "verify_counterexample", "accepts_lasso_word",
    "check", "check_reference",
]
