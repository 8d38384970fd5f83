"""Exception hierarchy shared by all modules."""


class BflyError(Exception):
    """Base class for every error raised by this package."""


class DuplicateEdge(BflyError, ValueError):
    pass


class IdOutOfRange(BflyError, ValueError):
    pass


class SameNode(BflyError, ValueError):
    pass


class ParseError(BflyError, ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class MalformedSwap(BflyError, ValueError):
    pass


class InvalidSwap(BflyError, ValueError):
    def __init__(self, reason):
        super().__init__(f"invalid q-BSO: {reason}")
        self.reason = reason


class InfeasibleSize(BflyError, ValueError):
    pass


class InvalidParams(BflyError, ValueError):
    pass


class InfeasibleDegrees(BflyError, ValueError):
    pass


class LimitExceeded(BflyError):
    def __init__(self, partial_count: int, partial=None):
        super().__init__(f"member limit exceeded after {partial_count} members")
        self.partial_count = partial_count
        self.partial = partial


class BudgetExceeded(BflyError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class DegreeMismatch(BflyError, ValueError):
    pass


class IdenticalGraphs(BflyError, ValueError):
    pass


class InvalidConfig(BflyError, ValueError):
    pass


class EmptyCatalog(BflyError, ValueError):
    pass
