"""Verdicts and the stable diagnostic codes shared by the CLI and protocol."""
from __future__ import annotations

from dataclasses import dataclass, replace

VALID = "valid"
INVALID = "invalid"
UNCHECKED = "unchecked"

# Rule-level failures
WRONG_REF_COUNT = "WrongRefCount"
NO_MATCHING_PATTERN = "NoMatchingPattern"
FRESHNESS_VIOLATION = "FreshnessViolation"
ARBITRARY_CONSTANT_VIOLATION = "ArbitraryConstantViolation"
NOT_PROPOSITIONAL_CONTEXT = "NotPropositionalContext"
CAPTURE_ERROR = "CaptureError"

# Document-level failures
OUT_OF_SCOPE_REFERENCE = "OutOfScopeReference"
FORWARD_REFERENCE = "ForwardReference"
REFERENCE_NOT_VALID = "ReferenceNotValid"
MISSING_RULE = "MissingRule"
MALFORMED_STRUCTURE = "MalformedStructure"
UNCLOSED_SUBPROOF = "UnclosedSubproof"
INCONSISTENT_ARITY = "InconsistentArity"


@dataclass(frozen=True)
class Verdict:
    """Per-line check result.

    status is one of valid/invalid/unchecked; an invalid verdict always
    carries a machine-readable code and a human sentence.  position, when
    present, is the path of child indices from the formula root to the
    subformula the message talks about.
    """

    status: str
    code: str | None = None
    message: str = ""
    position: tuple[int, ...] | None = None
    line: int | None = None

    def __post_init__(self):
        if self.status == INVALID and not (self.code and self.message):
            raise ValueError("invalid verdicts need a code and a message")

    @property
    def ok(self) -> bool:
        return self.status == VALID

    def at_line(self, line: int) -> "Verdict":
        return replace(self, line=line)


def valid(message: str = "") -> Verdict:
    return Verdict(VALID, message=message)


def invalid(code: str, message: str, position: tuple[int, ...] | None = None) -> Verdict:
    return Verdict(INVALID, code=code, message=message, position=position)
