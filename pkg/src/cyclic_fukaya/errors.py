"""Exception types raised by the kernel.

Verification failures are never raised; they show up as failing cases in a
:class:`~cyclic_fukaya.report.Report`. Exceptions are reserved for malformed
input and violated preconditions.
"""


class IllConditioned(ArithmeticError):
    """Leading coefficient too small to invert reliably."""


class DomainError(ValueError):
    """Argument outside the domain of a series operation (e.g. exp of T^-1)."""


class ArityMismatch(ValueError):
    pass


class MissingELSystem(KeyError):
    pass


class DegreeRuleViolation(ValueError):
    def __init__(self, offending):
        self.offending = list(offending)
        super().__init__(
            f"{len(self.offending)} entries violate the degree rule: "
            + "; ".join(self.offending[:5])
        )


class Inconsistent(ValueError):
    """No character solves gamma(boundary) = zeta^maslov for every class."""


class NoEnergyGap(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


class BoundaryPoint(ValueError):
    pass


class OutsideDomain(ValueError):
    pass


class CharacterMismatch(ValueError):
    pass


class UnknownSuite(ValueError):
    pass
