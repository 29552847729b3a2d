"""Natural-deduction proof checker for propositional and predicate logic.

The library exposes statements (parse/render/substitute/alpha_equal), a
truth-table oracle (semantics), the rule engine (verify), proof documents
(check_proof, apply_edit), a versioned file format with LaTeX export
(persistence), and a JSON protocol for front ends (protocol.Session).
"""
from . import diagnostics, semantics
from .diagnostics import Verdict
from .formula import (
    And,
    ArityConflict,
    Atom,
    Bottom,
    CaptureError,
    Constant,
    Equals,
    Exists,
    Forall,
    Formula,
    FuncApp,
    Iff,
    Implies,
    Not,
    Or,
    PredApp,
    Term,
    Top,
    Variable,
    Xor,
    alpha_equal,
    constants,
    free_variables,
    substitute,
)
from .parser import ParseError, parse
from .persistence import (
    EXTENSION,
    FormatError,
    VersionError,
    dumps,
    export_latex,
    import_proof,
    load,
    loads,
    save,
)
from .proof import (
    ASSUMPTION,
    CONCLUSION,
    PREMISE,
    GoalResult,
    InvalidEditTarget,
    Metadata,
    ProofDocument,
    ProofLine,
    ProofReport,
    TogglePremiseAfterConclusion,
    apply_edit,
    check_line,
    check_proof,
    visible_refs,
)
from .protocol import Session, handle
from .render import render, render_term
from .rules import (
    Family,
    RuleContext,
    RuleId,
    check_equivalence_step,
    check_inference,
    check_predicate,
    check_rewrite,
    display_name,
    verify,
)

__version__ = "1.0.0"
