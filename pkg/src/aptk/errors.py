"""Exception hierarchy shared across the package."""


class AptkError(Exception):
    """Base class for all library errors."""


class EmptySetError(AptkError):
    """A frequency set was empty where at least one frequency is required."""


class SpanMismatchError(AptkError):
    """Two bases (or a basis and a frequency set) do not span the same space."""


class MissingAtomValueError(AptkError):
    """A numeric atom value was required but not declared."""


class SpectrumMismatchError(AptkError):
    """Two sums do not share the same ordered frequency set."""


class NonExactPhasesError(AptkError):
    """Exact-mode work requires rational phases, but an approximate phase was found."""


class NotEquivalentInputError(AptkError):
    """An operation required equivalent sums but the inputs are not equivalent."""


class NotEquivalentFamilyError(AptkError):
    """A family operation required pairwise-equivalent sums."""


class TailPresentError(AptkError):
    """An exact polynomial operation was called on a sum with tail energy."""


class NonIntegralBasisError(AptkError):
    """An operation required an integral basis (run integralize first)."""


class DegenerateInputError(AptkError):
    """Input data is too small or degenerate for the requested statistic."""


class EvaluationFailureError(AptkError):
    """A sampled-signal handle raised or returned malformed values."""


class BudgetExhaustedError(AptkError):
    """A search ran out of evaluation budget.

    Never asserts nonexistence: ``best_tau`` / ``best_deviation`` record the
    best candidate seen before the budget ran out.
    """

    def __init__(self, message, best_tau=None, best_deviation=None, evaluations=0):
        super().__init__(message)
        self.best_tau = best_tau
        self.best_deviation = best_deviation
        self.evaluations = evaluations


class SchemaError(AptkError):
    """A sum document violates the input schema.

    ``field`` points at the offending entry, e.g. ``coefficients[2].modulus``.
    """

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class DuplicateFrequencyError(SchemaError):
    """Two rows of a sum document declare the same frequency."""


class NegativeModulusError(SchemaError):
    """A coefficient modulus was negative."""
