from django.test import SimpleTestCase, override_settings, tag

from forge.builder import (
    AlgebraBuild,
    EXCEEDED_CAP,
    FINITE,
    Caps,
    build,
    center,
    derived_series,
    is_simple,
    is_solvable,
    odd_highest_weights,
    root_system,
    simple_subquotient,
)
from forge.cartan import make_spec
from forge.conf import EngineSettings
from forge.errors import InternalInconsistency, NotOdd, WrongCharacteristic
from forge.presentation import check_grading, check_jacobi

BRJ = [["0", "-1"], ["-2", "1"]]


class SmallAlgebrasTestCase(SimpleTestCase):
    def test_sl2(self):
        b = build(make_spec(5, [["2"]], "0"))
        self.assertEqual(b.verdict, FINITE)
        self.assertEqual(b.sdim(), (3, 0))
        self.assertTrue(is_simple(b))

    def test_sl3_roots(self):
        b = build(make_spec(5, [["2", "-1"], ["-1", "2"]], "00"))
        self.assertEqual(b.sdim(), (8, 0))
        mult, simple = root_system(b)
        self.assertEqual(simple, [(0, 1), (1, 0)])
        self.assertEqual(mult[(1, 1)], (1, 0))
        self.assertEqual(mult[(-1, -1)], (1, 0))

    def test_osp12(self):
        b = build(make_spec(3, [["1"]], "1"))
        self.assertEqual(b.sdim(), (3, 2))
        mult, _ = root_system(b)
        self.assertEqual(mult[(1,)], (0, 1))
        self.assertEqual(mult[(2,)], (1, 0))

    def test_jacobi_and_grading_hold(self):
        b = build(make_spec(5, [["2", "-1"], ["-1", "2"]], "00"))
        self.assertEqual(check_jacobi(b), [])
        self.assertEqual(check_grading(b), [])


class DegenerateMatricesTestCase(SimpleTestCase):
    def test_heisenberg_series(self):
        b = build(make_spec(2, [["ev"]], "0"))
        self.assertEqual(b.sdim(), (4, 0))
        self.assertEqual(derived_series(b), [(4, 0), (3, 0), (1, 0), (0, 0), (0, 0)])
        self.assertTrue(is_solvable(b))

    def test_odd_isotropic_node(self):
        b = build(make_spec(2, [["0"]], "1"))
        self.assertEqual(b.sdim(), (2, 2))
        self.assertEqual(derived_series(b)[1], (1, 2))

    def test_sl3_in_characteristic_three(self):
        b = build(make_spec(3, [["2", "-1"], ["-1", "2"]], "00"))
        self.assertEqual(b.sdim(), (9, 0))
        self.assertEqual(len(center(b)), 1)
        core = simple_subquotient(b)
        self.assertEqual(core.sdim, (7, 0))
        self.assertTrue(core.drop_matches)
        self.assertTrue(is_simple(core.algebra))

    def test_strict_core_rejects_a_solvable_algebra(self):
        b = build(make_spec(2, [["ev"]], "0"))
        self.assertFalse(simple_subquotient(b).drop_matches)
        with self.assertRaises(InternalInconsistency):
            simple_subquotient(b, strict=True)


class CapsTestCase(SimpleTestCase):
    def test_affine_matrix_exceeds_the_height_cap(self):
        b = build(make_spec(5, [["2", "-2"], ["-2", "2"]], "00"), Caps(dim_cap=2048, height_cap=10))
        self.assertEqual(b.verdict, EXCEEDED_CAP)

    def test_dimension_cap(self):
        b = build(make_spec(5, [["2", "-1", "0"], ["-1", "2", "-1"], ["0", "-1", "2"]], "000"), Caps(dim_cap=6))
        self.assertEqual(b.verdict, EXCEEDED_CAP)


class SquaresTestCase(SimpleTestCase):
    def test_square_needs_characteristic_two(self):
        b = build(make_spec(3, [["1"]], "1"))
        with self.assertRaises(WrongCharacteristic):
            b.square({b.e(0): b.field.one})

    def test_square_needs_an_odd_element(self):
        b = build(make_spec(2, [["ev"]], "0"))
        with self.assertRaises(NotOdd):
            b.square({b.e(0): b.field.one})


class BrjTestCase(SimpleTestCase):
    def test_brj_characteristic_three(self):
        b = build(make_spec(3, BRJ, "11"))
        self.assertEqual(b.sdim(), (10, 8))
        self.assertTrue(is_simple(b))

    @tag("slow")
    def test_brj_characteristic_five(self):
        b = build(make_spec(5, BRJ, "11"))
        self.assertEqual(b.sdim(), (10, 12))
        self.assertTrue(simple_subquotient(b).algebra.dim > 0)

    def test_odd_highest_weight_vectors_are_odd(self):
        b = build(make_spec(3, BRJ, "11"))
        for v, root, weight in odd_highest_weights(b):
            self.assertEqual(b.vector_parity(v), 1)
            self.assertEqual(len(weight), b.ncartan)


class CountingBuild(AlgebraBuild):
    checks = 0

    def check_invariants(self):
        type(self).checks += 1
        super().check_invariants()


class PostBuildCheckTestCase(SimpleTestCase):
    SL3 = [["2", "-1"], ["-1", "2"]]

    def setUp(self):
        CountingBuild.checks = 0

    @override_settings(CARTANFORGE=EngineSettings(threads=1, check_max_dim=64))
    def test_small_builds_are_checked(self):
        CountingBuild(make_spec(5, self.SL3, "00"))
        CountingBuild(make_spec(3, BRJ, "11"))
        self.assertEqual(CountingBuild.checks, 2)

    @override_settings(CARTANFORGE=EngineSettings(threads=1, check_max_dim=0))
    def test_zero_turns_the_check_off(self):
        CountingBuild(make_spec(5, self.SL3, "00"))
        self.assertEqual(CountingBuild.checks, 0)

    @override_settings(CARTANFORGE=EngineSettings(threads=1, check_max_dim=4))
    def test_larger_builds_are_not_checked(self):
        CountingBuild(make_spec(5, self.SL3, "00"))
        self.assertEqual(CountingBuild.checks, 0)

    def test_capped_builds_are_not_checked(self):
        CountingBuild(make_spec(5, [["2", "-2"], ["-2", "2"]], "00"), Caps(dim_cap=2048, height_cap=6))
        self.assertEqual(CountingBuild.checks, 0)

    def test_corrupted_bracket_table_is_caught(self):
        b = build(make_spec(5, self.SL3, "00"))
        key = next(k for k, v in b.etable.items() if v)
        b.etable[key] = {}
        b._memo.clear()
        with self.assertRaises(InternalInconsistency):
            b.check_invariants()
