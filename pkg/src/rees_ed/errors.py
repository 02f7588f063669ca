"""Exception hierarchy shared by all modules."""


class ReesEdError(Exception):
    """Base class for every error raised by this package."""


class GroupError(ReesEdError):
    pass


class NotAssociative(GroupError):
    def __init__(self, triple):
        self.witness = triple
        super().__init__(f"table is not associative at {triple}")


class NoIdentity(GroupError):
    def __init__(self):
        self.witness = None
        super().__init__("table has no two-sided identity")


class NoInverse(GroupError):
    def __init__(self, element):
        self.witness = element
        super().__init__(f"element {element} has no inverse")


class EmptyGeneratorSet(GroupError):
    pass


class NotASubgroup(GroupError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class CapExceeded(ReesEdError):
    def __init__(self, message, hint=None):
        self.hint = hint
        super().__init__(message if hint is None else f"{message} ({hint})")


class SemigroupError(ReesEdError):
    pass


class DimensionMismatch(SemigroupError):
    pass


class NotNormalized(SemigroupError):
    def __init__(self, cell):
        self.witness = cell
        super().__init__(f"sandwich matrix is not normalized at cell (i={cell[0]}, lambda={cell[1]})")


class NotInGamma(SemigroupError):
    pass


class NotASubsemigroup(SemigroupError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotClosed(NotASubsemigroup):
    pass


class IsomorphismCheckFailed(SemigroupError):
    pass


class SingularMatrix(SemigroupError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"sandwich matrix is singular: {witness}")


class EqualElements(SemigroupError):
    pass


class NoSeparator(SemigroupError):
    def __init__(self, s1, s2, dichotomy=None):
        self.pair = (s1, s2)
        self.dichotomy = dichotomy
        super().__init__(f"no term (1,1,i)x(lambda,1,1) separates {s1} and {s2}; singular witness {dichotomy}")


class ParseError(ReesEdError):
    def __init__(self, message, position, expected=(), line=None):
        self.position = position
        self.line = line
        self.expected = frozenset(expected)
        where = f"column {position}" if line is None else f"line {line}, column {position}"
        exp = f"; expected one of {sorted(self.expected)}" if self.expected else ""
        super().__init__(f"{message} at {where}{exp}")


class ArityMismatch(ReesEdError):
    pass


class Incomplete(ReesEdError):
    """Raised when a computation needs a complete clone but only a partial one was built."""
