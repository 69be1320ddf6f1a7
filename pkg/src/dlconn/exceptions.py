"""Errors raised by the dlconn library."""


class DLConnError(Exception):
    """Base class for every error raised by dlconn."""


##################
# Coxeter groups #
##################

class GroupTooLarge(DLConnError):
    """Group enumeration exceeded the configured element bound."""


class InfiniteGroup(DLConnError, ValueError):
    """The Coxeter matrix does not define a finite group."""


class NonCrystallographic(DLConnError, ValueError):
    """The Coxeter matrix has no integral Cartan matrix realization."""


class DatumMismatch(DLConnError, ValueError):
    """Operands belong to different Coxeter data."""


##########
# Twists #
##########

class NotSigmaStable(DLConnError, ValueError):
    """A generator set is not stable under the diagram automorphism."""


class NotSigmaFixed(DLConnError, ValueError):
    """A Weyl group element is not fixed by the diagram automorphism."""


class CriterionFails(DLConnError, ValueError):
    """The sigma-closure of a generator set is a proper subset of S."""


############
# Counting #
############

class DivisionNotExact(DLConnError, ArithmeticError):
    """A polynomial quotient that must be exact left a remainder."""


#################
# Finite fields #
#################

class NotPrime(DLConnError, ValueError):
    """The characteristic of a field tower must be prime."""


class DivisionByZero(DLConnError, ZeroDivisionError):
    """Inversion of the zero field element."""


class BoundExceeded(DLConnError):
    """A field or flag enumeration would exceed its configured bound."""


#########
# Flags #
#########

class RealizationMismatch(DLConnError, ValueError):
    """Flags belong to different group realizations."""


class InvariantViolation(DLConnError, AssertionError):
    """An identity that holds for every valid input failed to hold."""
