"""Exception types shared across the package."""


class EprSepError(Exception):
    """Base class for all package errors."""


class InvalidInput(EprSepError):
    """Input violates a precondition (shape, finiteness, physicality...)."""


class NumericalFailure(EprSepError):
    """A numerical routine failed beyond the allowed tolerance."""


class DegenerateBranch(EprSepError):
    """A closed form was requested outside its analysis branch.

    Raised e.g. when the product/sum minimizers are asked for a state with
    d >= 0 (covered by the positive-partial-transpose lemma instead) or for
    the uncorrelated family c = d = 0 whose infimum is not attained.
    """
