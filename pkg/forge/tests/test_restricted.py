from django.test import SimpleTestCase, tag

from forge.builder import build
from forge.cartan import make_spec
from forge.restricted import (
    ad_power,
    check_conditions,
    derivation_power_check,
    equal_mod_center,
    inner_power,
    jacobson_sum,
    p_power,
    verify_structure,
)

WK4 = [["ev", "a", "1", "0"], ["a", "ev", "0", "0"], ["1", "0", "ev", "1"], ["0", "0", "1", "ev"]]
BGL4 = [["0", "a", "1", "0"], ["a", "ev", "0", "0"], ["1", "0", "ev", "1"], ["0", "0", "1", "ev"]]


class SlTwoTestCase(SimpleTestCase):
    def setUp(self):
        self.b = build(make_spec(5, [["2"]], "0"))
        self.one = self.b.field.one

    def test_cartan_element_is_its_own_p_power(self):
        h = self.b.h(0)
        self.assertEqual(p_power(self.b, {h: self.one}), {h: self.one})

    def test_root_vectors_are_p_nilpotent(self):
        e = self.b.e(0)
        self.assertEqual(p_power(self.b, {e: self.one}), {})
        self.assertEqual(ad_power(self.b, {e: self.one}, 3)[self.b.f(0)], {})

    def test_structure_report(self):
        report = verify_structure(self.b)
        self.assertTrue(report.restricted)
        self.assertEqual(report.variant, "5|10")
        self.assertEqual(report.witnesses, [])
        payload = report.to_json(self.b.field)
        self.assertEqual(payload["variant"], "5|10")
        self.assertEqual(len(payload["p_powers"]), 3)


class CharacteristicTwoTestCase(SimpleTestCase):
    def test_heisenberg_is_restricted(self):
        b = build(make_spec(2, [["ev"]], "0"))
        report = verify_structure(b)
        self.assertTrue(report.restricted)
        self.assertEqual(report.variant, "2|4")
        self.assertFalse(report.two_two)

    def test_powers_agree_modulo_the_center(self):
        b = build(make_spec(2, [["ev"]], "0"))
        one = b.field.one
        self.assertTrue(equal_mod_center(b, {b.h(0): one}, {}))
        self.assertFalse(equal_mod_center(b, {b.d(0): one}, {}))

    def test_grading_element_is_idempotent(self):
        b = build(make_spec(2, [["ev"]], "0"))
        d = {b.d(0): b.field.one}
        self.assertIsNotNone(inner_power(b, d, 2))

    def test_odd_derivation_identity(self):
        b = build(make_spec(2, [["1"]], "1"))
        self.assertTrue(derivation_power_check(b, {b.e(0): b.field.one}))


class AxiomChecksTestCase(SimpleTestCase):
    def test_sum_rule_pairs_are_counted(self):
        b = build(make_spec(5, [["2"]], "0"))
        report = verify_structure(b)
        self.assertEqual(report.pairs_checked, 3)
        self.assertEqual(report.to_json(b.field)["pairs_checked"], 3)
        self.assertEqual(verify_structure(b, pairs=1).pairs_checked, 1)

    def test_a_wrong_power_is_caught(self):
        b = build(make_spec(5, [["2"]], "0"))
        h = b.h(0)
        witnesses, _ = check_conditions(b, {h: {}}, {})
        self.assertIn(h, [x for x, _ in witnesses])

    def test_jacobson_sum_in_characteristic_two(self):
        b = build(make_spec(2, [["od"]], "0"))
        one = b.field.one
        e, f = {b.e(0): one}, {b.f(0): one}
        self.assertEqual(jacobson_sum(b, e, f), b.bracket(f, e))

    def test_jacobson_sum_vanishes_on_the_cartan_part(self):
        b = build(make_spec(5, [["2", "-1"], ["-1", "2"]], "00"))
        one = b.field.one
        self.assertEqual(jacobson_sum(b, {b.h(0): one}, {b.h(1): one}), {})

    def test_sl3_is_restricted(self):
        b = build(make_spec(5, [["2", "-1"], ["-1", "2"]], "00"))
        report = verify_structure(b)
        self.assertTrue(report.restricted, report.witnesses)
        self.assertGreater(report.pairs_checked, 0)


class TwoFourStructureTestCase(SimpleTestCase):
    def setUp(self):
        self.b = build(make_spec(2, [["od", "1"], ["1", "ev"]], "00"))

    def test_od_node_defines_the_grading(self):
        report = verify_structure(self.b)
        self.assertFalse(report.restricted)
        self.assertEqual(report.variant, "(2,4)")
        self.assertFalse(report.heuristic_grading)
        self.assertTrue(report.four_powers)

    def test_grading_supplied_as_weights(self):
        report = verify_structure(self.b, grading=(1, 0))
        self.assertEqual(report.variant, "(2,4)")
        self.assertFalse(report.heuristic_grading)


@tag("slow")
class ParametricFamiliesTestCase(SimpleTestCase):
    def test_wk4_is_restricted(self):
        b = build(make_spec(2, WK4, "0000"))
        report = verify_structure(b, pairs=40)
        self.assertTrue(report.restricted, report.witnesses)
        self.assertEqual(report.variant, "2|4")
        for x, power in report.p_powers.items():
            if b.is_cartan(x):
                self.assertTrue(all(b.is_cartan(y) for y in power))
            else:
                self.assertEqual(power, {})

    def test_bgl4_has_a_two_four_structure(self):
        b = build(make_spec(2, BGL4, "1000"))
        report = verify_structure(b, pairs=40)
        self.assertTrue(report.restricted, report.witnesses)
        self.assertEqual(report.variant, "2|4")
        self.assertTrue(report.two_two)
        for x in b.positives:
            if b.parity_of(x) == 0:
                self.assertEqual(report.p_powers[x], {})
        self.assertEqual(set(report.odd_powers), {x for x in b.basis if b.parity_of(x) == 1})
