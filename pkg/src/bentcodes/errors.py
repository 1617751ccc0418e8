"""Exception types shared across the package."""


class FieldError(ValueError):
    """Bad field parameters or an illegal field operation."""


class GuardError(FieldError):
    """The requested field exceeds the enumeration guard."""


class NotQuadraticError(ValueError):
    """A function failed the Q(yx) = y^2 Q(x) homogeneity test."""


class InvalidFamilyError(ValueError):
    """Family parameters violate the family's validity predicate."""

    def __init__(self, family, condition):
        self.family = family
        self.condition = condition
        super().__init__(f"{family}: {condition}")


class TheoryViolation(AssertionError):
    """A computed quantity disagrees with a closed-form prediction."""
