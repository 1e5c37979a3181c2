"""Exception hierarchy.

Every domain error carries a stable ``code`` (the class name) so that the CLI
can report it as a machine-readable object.
"""


class EndomodError(ValueError):
    @property
    def code(self):
        return type(self).__name__


class NotPrime(EndomodError):
    pass


class ReducibleModulus(EndomodError):
    pass


class FieldMismatch(EndomodError):
    pass


class UnsupportedField(EndomodError):
    pass


class InfiniteField(EndomodError):
    pass


class ZeroPolynomial(EndomodError):
    pass


class DivisionByZeroPoly(EndomodError, ZeroDivisionError):
    pass


class DegreeCapExceeded(EndomodError):
    pass


class ShapeMismatch(EndomodError):
    pass


class NotNilpotent(EndomodError):
    pass


class NotAutomorphism(EndomodError):
    pass


class NotLinearIdeal(EndomodError):
    pass


class NotPrimary(EndomodError):
    pass


class NotEpimorphism(EndomodError):
    pass


class NotInFPrime(EndomodError):
    pass


class NegativeCoefficient(EndomodError):
    pass


class InvalidJordanHom(EndomodError):
    pass
