class HTheoremError(Exception):
    default_code = "htheorem_error"

    def __init__(self, detail, code=None):
        if code is None:
            code = self.default_code

        self.code = code
        self.detail = detail
        super(HTheoremError, self).__init__(self.detail)


class ShapeError(HTheoremError):
    default_code = "shape_error"


class ValidationError(HTheoremError):
    default_code = "validation_error"


class NotAStateError(ValidationError):
    default_code = "not_a_state"


class InconsistentInputError(HTheoremError):
    default_code = "inconsistent_input"


class NumericalInconsistencyError(HTheoremError):
    default_code = "numerical_inconsistency"


class PreconditionError(HTheoremError):
    default_code = "precondition_failed"


class SpecificationError(ValidationError):
    """
    An unreadable or invalid system description. ``detail`` is a list of
    ``field: message`` diagnostics.
    """

    default_code = "invalid_specification"

    def __str__(self):
        return "; ".join(self.detail)
