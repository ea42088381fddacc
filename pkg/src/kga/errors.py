"""Exception hierarchy shared by every module."""

from __future__ import annotations


class KGraphError(Exception):
    """Base class for all library errors."""


class MalformedSkeleton(KGraphError):
    """Structural problem: unknown endpoint, bad colour, duplicate name, bad square shape."""


class ValidationIssue(KGraphError):
    """A presentation defect found by the validator."""

    kind = "issue"

    def __init__(self, edges: tuple[str, ...], detail: str = ""):
        self.edges = tuple(edges)
        self.detail = detail
        super().__init__(self.describe())

    def describe(self) -> str:
        words = " ".join(self.edges)
        return f"{self.kind} on {words}" + (f": {self.detail}" if self.detail else "")

    def __eq__(self, other):
        return type(self) is type(other) and self.edges == other.edges

    def __hash__(self):
        return hash((type(self).__name__, self.edges))


class MissingSquare(ValidationIssue):
    kind = "MissingSquare"


class DuplicateSquare(ValidationIssue):
    kind = "DuplicateSquare"


class CubeViolation(ValidationIssue):
    kind = "CubeViolation"


class SkeletonRejected(KGraphError):
    """Raised when an operation needs an accepted skeleton and did not get one."""

    def __init__(self, issues):
        self.issues = list(issues)
        first = self.issues[0].describe() if self.issues else "rejected"
        super().__init__(f"skeleton rejected ({len(self.issues)} issue(s)); first: {first}")


class NotComposable(KGraphError):
    def __init__(self, position: int, detail: str = ""):
        self.position = position
        super().__init__(f"word not composable at position {position}" + (f": {detail}" if detail else ""))


class OutOfRange(KGraphError):
    pass


class RangeMismatch(KGraphError):
    pass


class EndpointMismatch(KGraphError):
    pass


class NotACycle(KGraphError):
    pass


class DegreeOverlap(KGraphError):
    pass


class HasCycle(KGraphError):
    pass


class LimitExceeded(KGraphError):
    pass


class QuotientNotAccepted(KGraphError):
    pass


class NotLocallyConvex(KGraphError):
    pass


class UnsupportedRank(KGraphError):
    pass


class NotSurjective(KGraphError):
    pass


class EmptyWindow(KGraphError):
    pass


class NotExample42Graph(KGraphError):
    pass


class ParseError(KGraphError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
