"""Exception types raised across the package."""


class SgcatError(Exception):
    """Base class for all errors raised by sgcat."""


class SemigroupError(SgcatError, ValueError):
    pass


class NonAssociative(SemigroupError):
    def __init__(self, i, j, k):
        self.triple = (i, j, k)
        super().__init__(f"table is not associative at ({i}, {j}, {k})")


class OutOfRange(SemigroupError):
    pass


class EmptyGeneratorSet(SemigroupError):
    pass


class EmptyLocalUnits(SemigroupError):
    pass


class NotIdempotent(SemigroupError):
    pass


class UnknownElement(SgcatError, KeyError):
    pass


class ActionAxiomViolation(SgcatError, ValueError):
    def __init__(self, q, s, t):
        self.witness = (q, s, t)
        super().__init__(f"(q.s).t != q.(st) at q={q}, s={s}, t={t}")


class SizeCapExceeded(SgcatError):
    pass


class SearchBudgetExceeded(SgcatError):
    pass


class NoLocalUnits(SgcatError):
    def __init__(self, s):
        self.element = s
        super().__init__(f"element {s} has no idempotent local units")


class InvalidFunctor(SgcatError):
    pass


class InvalidNaturalTransformation(SgcatError):
    pass


class WitnessInvalid(SgcatError):
    pass
