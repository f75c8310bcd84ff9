"""Exception hierarchy with machine-readable error codes."""


class MubError(Exception):
    """Base class; ``code`` is stable and suitable for JSON reports."""

    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def as_dict(self):
        return {"error": self.code, "message": str(self), **self.details}


class NonPrime(MubError):
    code = "non_prime"


class ReducibleModulus(MubError):
    code = "reducible_modulus"


class InvalidDegree(MubError):
    code = "invalid_degree"


class NotPlanar(MubError):
    code = "not_planar"


class CharacteristicTooSmall(MubError):
    code = "characteristic_too_small"


class InvalidParameters(MubError):
    code = "invalid_parameters"


class LengthMismatch(MubError):
    code = "length_mismatch"


class ZeroVector(MubError):
    code = "zero_vector"


class NoUnitEntry(MubError):
    code = "no_unit_entry"


class NotAModule(MubError):
    code = "not_a_module"
