import math

import numpy as np
from django.utils.translation import gettext_lazy as _
from rest_framework import serializers


class ComplexMatrixField(serializers.Field):
    """
    A dense complex matrix as nested row-major arrays.

    Every entry is a two element array ``[re, im]``; a bare number is
    accepted on input as a real entry. The internal value is a
    ``complex128`` numpy array.
    """

    default_error_messages = {
        "not_a_list": _("Expected a list of rows but got {input_type}."),
        "empty": _("A matrix needs at least one row."),
        "ragged": _("Row {row} has {length} entries, expected {expected}."),
        "bad_entry": _(
            "Entry [{row}][{col}] must be a number or a [re, im] pair, got {value!r}."
        ),
        "not_finite": _("Entry [{row}][{col}] is not finite."),
        "shape": _("Expected a {expected} matrix, got {rows} x {cols}."),
    }

    def __init__(self, square=True, **kwargs):
        self.square = square
        super().__init__(**kwargs)

    def _to_complex(self, value, row, col):
        if isinstance(value, bool):
            self.fail("bad_entry", row=row, col=col, value=value)
        if isinstance(value, (int, float)):
            real, imag = value, 0.0
        elif (
            isinstance(value, (list, tuple))
            and len(value) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
        ):
            real, imag = value
        else:
            self.fail("bad_entry", row=row, col=col, value=value)
        if not (math.isfinite(real) and math.isfinite(imag)):
            self.fail("not_finite", row=row, col=col)
        return complex(real, imag)

    def to_internal_value(self, data):
        if not isinstance(data, list):
            self.fail("not_a_list", input_type=type(data).__name__)
        if not data:
            self.fail("empty")
        rows = []
        for i, row in enumerate(data):
            if not isinstance(row, list):
                self.fail("not_a_list", input_type=type(row).__name__)
            if len(row) != len(data[0]):
                self.fail("ragged", row=i, length=len(row), expected=len(data[0]))
            rows.append([self._to_complex(value, i, j) for j, value in enumerate(row)])
        matrix = np.array(rows, dtype=np.complex128)
        if self.square and matrix.shape[0] != matrix.shape[1]:
            self.fail(
                "shape",
                expected="square",
                rows=matrix.shape[0],
                cols=matrix.shape[1],
            )
        return matrix

    def to_representation(self, value):
        matrix = np.asarray(value, dtype=np.complex128)
        return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def check_dimension(field_name, matrix, dim):
    """
    Raise a field bound validation error when ``matrix`` is not ``dim x dim``.
    """
    if matrix is not None and matrix.shape != (dim, dim):
        raise serializers.ValidationError(
            {
                field_name: _("Expected a %(dim)d x %(dim)d matrix, got %(rows)d x %(cols)d.")
                % {"dim": dim, "rows": matrix.shape[0], "cols": matrix.shape[1]}
            }
        )
