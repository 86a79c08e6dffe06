"""Verification toolkit for two-party synchronous deontic contracts.

Parse contracts written in a small deontic DSL, adjudicate recorded
interactions (verdicts, blame, mistake scores), compile contracts to
symbolic safety and blame automata, and model-check pairs of Moore-machine
agents against them.
"""

__version__ = "0.1.0"

from .contracts import (
    And,
    Bot,
    Frb,
    Guard,
    Obl,
    Perm,
    Rec,
    Rep,
    ReAtom,
    ReChoice,
    RePlus,
    ReSeq,
    Seq,
    Top,
    Trigger,
    Var,
    check_wellformed,
    unfold_recursion,
)
from .parser import load_contract_document, parse_contract, parse_formula
from .traces import Interaction, labeled_union, load_interaction, stepwise_meet
from .semantics import Verdict, VerdictKind, evaluate, evaluate_norm
from .blame import BlameVerdict, blame, conflict
from .quant import ScoreResult, score
from .rex import RexClass, classify, compile_regex
from .autom import (
    SymbolicAutomaton,
    aut,
    blaut,
    finalize,
    relaxed_product,
    sync_product,
    trans_construct,
)
from .moore import (
    Counterexample,
    MooreMachine,
    blame_check,
    load_moore,
    model_check,
    moore_product,
)
