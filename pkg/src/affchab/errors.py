"""Exception types shared across the package."""


class AffChabError(Exception):
    """Base class for all errors raised by this package."""


# -- p-adic arithmetic ------------------------------------------------------

class PrimeMismatch(AffChabError):
    """Two p-adic values with different primes were combined."""


class DivisionByZero(AffChabError):
    """Division by an exact zero, or log of zero."""


class PrecisionExhausted(AffChabError):
    """An operation needs digits that the tracked precision cannot supply.

    Raised e.g. when dividing by a value that is indistinguishable from
    zero at its precision (the true valuation is unknown).
    """


class NotASquare(AffChabError):
    """Square root of a non-square (odd valuation or non-residue unit)."""


class EvenPrimeUnsupported(AffChabError):
    """p = 2 is outside the supported range for square roots and discs."""


class HypothesisViolated(AffChabError):
    """A stated hypothesis of a lemma-level helper fails (e.g. m >= p-2)."""


# -- model data -------------------------------------------------------------

class ParseError(AffChabError):
    """Malformed input file."""


class InvariantViolation(AffChabError):
    """Structural invariant of ingested data fails; carries its name."""

    def __init__(self, name, detail=""):
        self.name = name
        super().__init__(f"{name}: {detail}" if detail else name)


class BadReduction(AffChabError):
    """Requested a synthesized good-reduction fibre at a bad prime."""


class HypothesesFail(AffChabError):
    """One of the explicit curve hypotheses fails; message names the clause."""


# -- intersection theory ----------------------------------------------------

class DegreeNonZero(AffChabError):
    """Vertical correction applied to a vector of nonzero degree."""


class UnknownPoint(AffChabError):
    """Cycle data refers to a point id not present in the fibre."""


class InvalidType(AffChabError):
    """Reduction-type choice is not admissible for the fibre."""


# -- global assembly --------------------------------------------------------

class MissingFibre(AffChabError):
    """No fibre data supplied for a prime that requires it."""


class SingleRationalCusp(AffChabError):
    """Boundary is one rational point; rank formula does not apply."""


# -- curves and integration -------------------------------------------------

class UnsupportedCuspField(AffChabError):
    """Cusp residue data outside the handled (at most quadratic) cases."""


class DifferentDiscs(AffChabError):
    """Tiny integral requested between points in different residue discs."""


class ZeroDifferential(AffChabError):
    """A nonzero differential is required."""


class WeierstrassUnsupportedForJ(AffChabError):
    """Local expansion solver failed to converge at requested precision."""


class ConditionFails(AffChabError):
    """A bound was requested although its defining inequality fails."""


class RankDeficientInput(AffChabError):
    """Period rows are dependent at working precision."""
