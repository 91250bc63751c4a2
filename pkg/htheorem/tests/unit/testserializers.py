import io
import json

import numpy as np
from rest_framework import serializers

from htheorem import reports
from htheorem.exceptions import SpecificationError
from htheorem.serializers.fields import ComplexMatrixField
from htheorem.serializers.system import SystemSpecSerializer
from htheorem.system_builder import HamiltonianSystem, UnitarySystem
from htheorem.tests.utils import HTheoremTestCase, fixture_path


def swap_spec(**overrides):
    spec = {
        "version": 1,
        "d_sys": 2,
        "d_res": 2,
        "unitary": {
            "u_t": [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
        },
        "pi0": [[1, 0], [0, 0]],
    }
    spec.update(overrides)
    return spec


def read(spec):
    return reports.read_system_description(io.BytesIO(json.dumps(spec).encode("utf-8")))


class ComplexMatrixFieldTest(HTheoremTestCase):
    def test_pairs_and_numbers(self):
        field = ComplexMatrixField()
        matrix = field.to_internal_value([[1, [0, -2]], [[0, 2], 3.5]])
        self.assertEqual(matrix.dtype, np.complex128)
        self.assertAllClose(matrix, [[1, -2j], [2j, 3.5]], atol=0.0)

    def test_representation(self):
        field = ComplexMatrixField()
        self.assertEqual(
            field.to_representation(np.array([[1 + 2j]])), [[[1.0, 2.0]]]
        )

    def test_invalid_input(self):
        field = ComplexMatrixField()
        for data in (
            "matrix",
            [],
            [[1, 2], [3]],
            [[1, 2], [3, "4"]],
            [[True]],
            [[[1, 2, 3]]],
            [[1, 2]],
        ):
            with self.assertRaises(serializers.ValidationError, msg=repr(data)):
                field.to_internal_value(data)

    def test_not_finite(self):
        with self.assertRaises(serializers.ValidationError):
            ComplexMatrixField().to_internal_value([[float("nan")]])

    def test_rectangular_allowed(self):
        matrix = ComplexMatrixField(square=False).to_internal_value([[1, 2]])
        self.assertEqual(matrix.shape, (1, 2))


class SystemSpecSerializerTest(HTheoremTestCase):
    def test_unitary_spec(self):
        description, raw = read(swap_spec())
        self.assertIsInstance(description.system, UnitarySystem)
        self.assertEqual(raw["d_sys"], 2)
        self.assertIsNone(description.tol_diag)
        self.assertEqual(description.states, ())

    def test_hamiltonian_fixture(self):
        with open(fixture_path("identity.json"), "rb") as f:
            description, _ = reports.read_system_description(f)
        self.assertIsInstance(description.system, HamiltonianSystem)
        self.assertEqual(description.system.t, 0.8)

    def test_tolerances_and_states(self):
        with open(fixture_path("controlled.json"), "rb") as f:
            description, _ = reports.read_system_description(f)
        self.assertEqual(description.tol_diag, 1e-10)
        self.assertEqual(description.tol_unital, 1e-9)
        self.assertEqual(len(description.states), 2)

    def test_exactly_one_evolution(self):
        spec = swap_spec()
        del spec["unitary"]
        with self.assertRaises(SpecificationError):
            read(spec)
        spec = swap_spec(
            hamiltonians={"h_sys": [[0, 0], [0, 0]], "h_res": [[0, 0], [0, 0]], "h_int": [[0] * 4] * 4}
        )
        with self.assertRaises(SpecificationError):
            read(spec)

    def test_exactly_one_unitary(self):
        with self.assertRaises(SpecificationError) as context:
            read(swap_spec(unitary={}))
        self.assertIn("unitary", str(context.exception))

    def test_dimension_diagnostic(self):
        with self.assertRaises(SpecificationError) as context:
            read(swap_spec(pi0=[[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
        self.assertIn("pi0", str(context.exception))

    def test_nested_field_diagnostic(self):
        with self.assertRaises(SpecificationError) as context:
            read(swap_spec(unitary={"u_t": [[1, 0], [0]]}))
        self.assertTrue(
            any(line.startswith("unitary.u_t") for line in context.exception.detail),
            context.exception.detail,
        )

    def test_not_a_state(self):
        with self.assertRaises(SpecificationError) as context:
            read(swap_spec(pi0=[[2, 0], [0, -1]]))
        self.assertIn("not_a_state", str(context.exception))

    def test_not_unitary(self):
        spec = swap_spec(unitary={"u_t": [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]})
        with self.assertRaises(SpecificationError):
            read(spec)

    def test_future_version(self):
        with self.assertRaises(SpecificationError) as context:
            read(swap_spec(version=2))
        self.assertIn("version", str(context.exception))

    def test_truncated_json(self):
        with self.assertRaises(SpecificationError) as context:
            reports.read_system_description(io.BytesIO(b'{"version": 1, "d_sys'))
        self.assertIn("JSON parse error", str(context.exception))

    def test_not_an_object(self):
        with self.assertRaises(SpecificationError):
            reports.read_system_description(io.BytesIO(b"[1, 2]"))

    def test_serializer_errors(self):
        serializer = SystemSpecSerializer(data={"version": 1})
        self.assertFalse(serializer.is_valid())
        self.assertIn("d_sys", serializer.errors)
        self.assertIn("pi0", serializer.errors)
