"""Exception types shared across the package."""


class FreebertError(Exception):
    pass


class AlphabetMismatch(FreebertError, ValueError):
    """Binary operation on polynomials over different alphabets."""


class BudgetExceeded(FreebertError):
    """The polynomial-system fall-back solver ran past its unknown-count or work limit.

    Distinct from a negative answer: callers must never read it as "irreducible".
    """


class ParseError(FreebertError, ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = expected
        exp = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{message} at offset {offset}{exp}")


class NotIncluded(FreebertError):
    """No eigenlevel inclusion certificate found; ``stage`` names the failing step."""

    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"not included at stage {stage!r}" + (f": {detail}" if detail else ""))


class NotEquivalent(NotIncluded):
    pass


class NoAffineMatch(FreebertError):
    pass
