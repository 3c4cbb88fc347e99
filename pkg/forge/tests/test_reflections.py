from django.test import SimpleTestCase, tag

from forge.builder import Caps, build, derived_series
from forge.cartan import canonical_form, equivalent, make_spec, specialize_spec
from forge.errors import CapExceeded, NonIntegerCoefficient, NotIsotropic, OrbitCapExceeded
from forge.reflections import (
    enumerate_orbit,
    reflect,
    reflection_coefficient,
    reflection_coefficients,
    reflection_step,
    transport_generators,
)
from forge.scalars import ExtensionField

A2 = [["2", "-1"], ["-1", "2"]]
BRJ = [["0", "-1"], ["-2", "1"]]
G23 = [["2", "-1", "-1"], ["-1", "2", "-1"], ["-1", "-1", "0"]]


class CoefficientTableTestCase(SimpleTestCase):
    def test_even_node(self):
        spec = make_spec(5, A2, "00")
        self.assertEqual(reflection_coefficient(spec, 0, 1), 1)
        self.assertEqual(reflection_coefficients(spec, 0), (None, 1))

    def test_odd_nodes(self):
        spec = make_spec(3, BRJ, "11")
        # spec normalizes to ((0,1),(1,1))
        self.assertEqual(reflection_coefficient(spec, 0, 1), 1)
        self.assertEqual(reflection_coefficient(spec, 1, 0), 2)

    def test_characteristic_two(self):
        spec = make_spec(2, [["od", "1"], ["1", "ev"]], "00")
        self.assertEqual(reflection_coefficient(spec, 1, 0), 1)
        spec = make_spec(2, [["od", "1"], ["1", "od"]], "00")
        self.assertEqual(reflection_coefficient(spec, 0, 1), 2)

    def test_parametric_entry(self):
        spec = make_spec(5, [["2", "-a"], ["-1", "2"]], "00")
        with self.assertRaises(NonIntegerCoefficient):
            reflection_coefficient(spec, 0, 1)


class ReflectTestCase(SimpleTestCase):
    def test_even_reflection_keeps_sl3(self):
        spec = make_spec(5, A2, "00")
        self.assertTrue(equivalent(reflect(spec, 0), spec))

    def test_reflection_step_records_coefficients(self):
        step = reflection_step(make_spec(5, A2, "00"), 1)
        self.assertEqual(step.node, 1)
        self.assertEqual(step.coefficients, (1, None))

    def test_reflection_needs_a_finite_build(self):
        affine = make_spec(5, [["2", "-2"], ["-2", "2"]], "00")
        with self.assertRaises(CapExceeded):
            reflect(affine, 0, Caps(height_cap=8))


class TransportTestCase(SimpleTestCase):
    def setUp(self):
        self.spec = make_spec(3, BRJ, "11")
        self.b = build(self.spec)

    def test_transported_matrix_matches_the_reflection(self):
        transport = transport_generators(self.b, 0)
        self.assertEqual(len(transport.plus), 2)
        self.assertTrue(equivalent(transport.spec, reflect(self.spec, 0)))

    def test_only_odd_isotropic_nodes(self):
        with self.assertRaises(NotIsotropic):
            transport_generators(self.b, 1)


class OrbitTestCase(SimpleTestCase):
    def test_sl3_orbit_is_a_single_point(self):
        orbit = enumerate_orbit(make_spec(5, A2, "00"))
        self.assertEqual(len(orbit), 1)
        self.assertEqual(orbit.rectangle(), [[0, 0]])
        self.assertEqual(orbit.sdim, (8, 0))

    def test_brj_orbit(self):
        spec = make_spec(3, BRJ, "11")
        orbit = enumerate_orbit(spec, verify_sdim=True)
        self.assertEqual(len(orbit), 3)
        self.assertEqual(orbit.index_of(spec), 0)
        payload = orbit.to_json()
        self.assertEqual(payload["sdim"], {"even": 10, "odd": 8})
        self.assertEqual(len(payload["members"]), 3)
        for row in orbit.rectangle():
            self.assertEqual(len(row), 2)

    def test_orbit_cap(self):
        with self.assertRaises(OrbitCapExceeded):
            enumerate_orbit(make_spec(3, BRJ, "11"), orbit_cap=2)

    def test_prebuilt_algebra_is_reused(self):
        spec = make_spec(5, A2, "00")
        b = build(spec)
        self.assertEqual(enumerate_orbit(spec, prebuilt=b).sdim, b.sdim())

    def test_classes_cover_the_node_ordered_matrices(self):
        orbit = enumerate_orbit(make_spec(3, BRJ, "11"))
        self.assertGreaterEqual(orbit.ordered_count, len(orbit))
        self.assertEqual(sorted(set(orbit.classes)), list(range(len(orbit))))
        for matrix, c in zip(orbit.ordered, orbit.classes):
            self.assertEqual(canonical_form(matrix), orbit.members[c])
        payload = orbit.to_json()
        self.assertEqual(len(payload["ordered"]), orbit.ordered_count)
        self.assertEqual(len(orbit.ordered_rectangle()), orbit.ordered_count)

    def test_relabelled_members_are_kept_apart(self):
        spec = make_spec(3, G23, "001")
        orbit = enumerate_orbit(spec)
        self.assertEqual(len(orbit), 4)
        self.assertEqual(orbit.ordered_count, 5)


class ParameterLawsTestCase(SimpleTestCase):
    """Algebras at related parameter values share sdim and derived series."""

    BR2 = [["2", "-1"], ["a", "2"]]
    WK3 = [["ev", "1", "0"], ["1", "ev", "a"], ["0", "a", "ev"]]
    WK4 = [["ev", "a", "1", "0"], ["a", "ev", "0", "0"], ["1", "0", "ev", "1"], ["0", "0", "1", "ev"]]
    BGL3 = [["0", "1", "0"], ["1", "ev", "a"], ["0", "a", "ev"]]
    BGL4 = [["0", "a", "1", "0"], ["a", "ev", "0", "0"], ["1", "0", "ev", "1"], ["0", "0", "1", "ev"]]

    def profile(self, spec, value, target):
        b = build(specialize_spec(spec, value, target))
        return b.sdim(), derived_series(b)

    def assert_law(self, spec, target, law, skip=(0, 1)):
        values = [v for v in target.elements() if v not in skip][:5]
        self.assertEqual(len(values), 5)
        for value in values:
            with self.subTest(a=value):
                self.assertEqual(self.profile(spec, value, target), self.profile(spec, law(value), target))

    def test_brown_algebra(self):
        gf9 = ExtensionField(3, 2)
        minus_one = gf9.neg(gf9.one)
        self.assert_law(
            make_spec(3, self.BR2, "00"), gf9, lambda a: gf9.neg(gf9.add(gf9.one, a)), skip=(0, minus_one)
        )

    def test_wk3_under_the_fractional_action(self):
        gf8 = ExtensionField(2, 3)
        spec = make_spec(2, self.WK3, "000")
        self.assert_law(spec, gf8, gf8.inv)
        self.assert_law(spec, gf8, lambda a: gf8.add(a, gf8.one))

    @tag("slow")
    def test_wk4_under_inversion(self):
        gf8 = ExtensionField(2, 3)
        self.assert_law(make_spec(2, self.WK4, "0000"), gf8, gf8.inv)

    @tag("slow")
    def test_super_versions(self):
        gf8 = ExtensionField(2, 3)
        self.assert_law(make_spec(2, self.BGL3, "100"), gf8, gf8.inv)
        self.assert_law(make_spec(2, self.BGL4, "1000"), gf8, gf8.inv)
