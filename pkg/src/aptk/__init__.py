"""aptk: exact Bohr-equivalence decisions and Besicovitch-space analytics
for exponential sums with real frequencies.

Frequencies are exact rational vectors over a declared table of atoms that
are assumed rationally independent; phases are stored in turns (1 turn =
2*pi radians).  Those two choices make equivalence of exponential sums an
exactly decidable integer-lattice problem, while numeric work (translation
numbers, mean-value estimates) runs in ordinary double precision.
"""

from .errors import (
    AptkError,
    BudgetExhaustedError,
    DegenerateInputError,
    DuplicateFrequencyError,
    EmptySetError,
    MissingAtomValueError,
    NegativeModulusError,
    NonExactPhasesError,
    NonIntegralBasisError,
    NotEquivalentFamilyError,
    NotEquivalentInputError,
    SchemaError,
    SpanMismatchError,
    SpectrumMismatchError,
    TailPresentError,
)
from .freq import AtomTable, BasisInfo, Frequency, FrequencySet, change_of_basis, eval_numeric, integralize, natural_basis
from .sums import (
    Coefficient,
    EquivalenceVerdict,
    ExponentialSum,
    Obstruction,
    PhaseTurns,
    Witness,
    decide_equivalence,
    deviation,
    sample_equivalent,
    translate,
    witness_natural_form,
)
from .besic import (
    MeanEstimate,
    b2_distance_exact,
    fourier_coefficient,
    mean_value_estimate,
    mean_value_exact,
    parseval_energy,
)
from .fejer import FejerScheme, approximant, approximation_error, fejer_factors
from .search import (
    DenseTranslateRun,
    DensityReport,
    TauCertificate,
    dense_translate_sequence,
    enumerate_taus,
    extract_convergent_subsequence,
    find_tau,
    uniform_set_check,
)

__version__ = "0.1.0"

__all__ = [
    "AptkError",
    "AtomTable",
    "BasisInfo",
    "BudgetExhaustedError",
    "Coefficient",
    "DegenerateInputError",
    "DenseTranslateRun",
    "DensityReport",
    "DuplicateFrequencyError",
    "EmptySetError",
    "EquivalenceVerdict",
    "ExponentialSum",
    "FejerScheme",
    "Frequency",
    "FrequencySet",
    "MeanEstimate",
    "MissingAtomValueError",
    "NegativeModulusError",
    "NonExactPhasesError",
    "NonIntegralBasisError",
    "NotEquivalentFamilyError",
    "NotEquivalentInputError",
    "Obstruction",
    "PhaseTurns",
    "SchemaError",
    "SpanMismatchError",
    "SpectrumMismatchError",
    "TailPresentError",
    "TauCertificate",
    "Witness",
    "approximant",
    "approximation_error",
    "b2_distance_exact",
    "change_of_basis",
    "decide_equivalence",
    "dense_translate_sequence",
    "deviation",
    "enumerate_taus",
    "eval_numeric",
    "extract_convergent_subsequence",
    "fejer_factors",
    "find_tau",
    "fourier_coefficient",
    "integralize",
    "mean_value_estimate",
    "mean_value_exact",
    "natural_basis",
    "parseval_energy",
    "sample_equivalent",
    "translate",
    "uniform_set_check",
    "witness_natural_form",
]
