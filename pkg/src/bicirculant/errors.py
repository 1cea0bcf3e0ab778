"""Exception families shared across the package."""


class BicirculantError(ValueError):
    """Base class for all domain errors."""


class NonSymmetricSet(BicirculantError):
    """R or T is not closed under negation and closure was disabled."""


class ZeroInRT(BicirculantError):
    """0 appeared in R or T (would create loops)."""


class EmptyS(BicirculantError):
    """S must contain at least one spoke type."""


class HalfTurnType(BicirculantError):
    """An operation got a = m/2 or b = m/2 where that is not allowed."""


class PreconditionViolated(BicirculantError):
    """A construction was invoked outside its stated hypotheses."""


class CongruentTypes(PreconditionViolated):
    """b = +-a modulo gcd(m,S); no non-uniform representation exists."""


class NotCoprime(PreconditionViolated):
    """a or b shares a factor with gcd(m,S)."""


class TooSmall(PreconditionViolated):
    """m <= 5; grid representations are not defined."""


class OutOfGrid(BicirculantError):
    """Grid coordinate outside the representation's cell range."""


class ComponentNotHamiltonian(BicirculantError):
    """A required Haar-component Hamilton cycle could not be produced."""


class MissingInnerEdge(BicirculantError):
    """A component path that must contain an inner edge has none."""


class OddN(BicirculantError):
    """Brick products require an even cycle length."""


class InvalidWitness(BicirculantError):
    """A witness failed validation where a valid one was required."""


class BudgetExhausted(BicirculantError):
    """Search budget ran out before a definitive answer."""
