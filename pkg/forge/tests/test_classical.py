from django.test import SimpleTestCase

from forge.builder import build
from forge.cartan import make_spec
from forge.classical import (
    adjoin_I0,
    build_classical,
    central_extend,
    classify_form,
    congruent,
    derived_algebra,
    expected_sdim,
)
from forge.errors import Degenerate, InvalidParams, WrongShape
from forge.presentation import center, check_jacobi, even_part, is_simple, is_solvable, quotient
from forge.scalars import PrimeField


class MatrixFamiliesTestCase(SimpleTestCase):
    def test_gl(self):
        gl = build_classical("gl", {"m": 2, "n": 1}, 3)
        self.assertEqual(gl.sdim(), (5, 4))
        self.assertEqual(gl.sdim(), expected_sdim("gl", {"m": 2, "n": 1}))

    def test_sl(self):
        self.assertEqual(build_classical("sl", {"m": 2, "n": 1}, 5).sdim(), (4, 4))

    def test_psl_drops_the_identity_when_it_is_supertraceless(self):
        self.assertEqual(build_classical("psl", {"m": 1, "n": 1}, 3).sdim(), (0, 2))
        self.assertEqual(build_classical("psl", {"m": 2, "n": 1}, 5).sdim(), (4, 4))

    def test_queer(self):
        self.assertEqual(build_classical("q", {"n": 2}, 3).sdim(), (4, 4))

    def test_supercommutator_satisfies_jacobi(self):
        self.assertEqual(check_jacobi(build_classical("gl", {"m": 1, "n": 1}, 3)), [])

    def test_bad_parameters(self):
        with self.assertRaises(InvalidParams):
            build_classical("gl", {"m": 0, "n": 0}, 3)
        with self.assertRaises(InvalidParams):
            build_classical("nope", {}, 3)


class FormFamiliesTestCase(SimpleTestCase):
    def test_orthogonal_on_the_identity_form(self):
        oo = build_classical("oo_II", {"a": 3, "b": 0}, 2)
        self.assertEqual(oo.sdim(), (6, 0))
        self.assertEqual(oo.sdim(), expected_sdim("oo_II", {"a": 3, "b": 0}))

    def test_periplectic(self):
        pe = build_classical("pe", {"m": 2}, 2)
        self.assertEqual(pe.sdim(), (4, 6))
        self.assertEqual(pe.sdim(), expected_sdim("pe", {"m": 2}))

    def test_form_families_need_characteristic_two(self):
        with self.assertRaises(InvalidParams):
            build_classical("pe", {"m": 2}, 3)

    def test_split_form_needs_even_sizes(self):
        with self.assertRaises(InvalidParams):
            build_classical("oo_PiPi", {"a": 3, "b": 0}, 2)

    def test_central_extension_needs_the_block_shape(self):
        with self.assertRaises(WrongShape):
            central_extend(build_classical("gl", {"m": 1, "n": 1}, 2))

    def test_i0_needs_a_central_extension(self):
        with self.assertRaises(WrongShape):
            adjoin_I0(build_classical("pe", {"m": 2}, 2))


class ExpectedSdimTestCase(SimpleTestCase):
    def test_closed_formulas(self):
        self.assertEqual(expected_sdim("pe", {"m": 3}), (9, 12))
        self.assertEqual(expected_sdim("oo1", {"k_ev": 1, "k_od": 1}), (6, 6))
        self.assertEqual(expected_sdim("oo_PiPi", {"a": 4, "b": 2, "i": 1}), (7, 8))

    def test_missing_parameter(self):
        with self.assertRaises(InvalidParams):
            expected_sdim("gl", {"m": 1})


class FormClassTestCase(SimpleTestCase):
    def setUp(self):
        self.f = PrimeField(2)

    def test_identity_and_split_forms(self):
        self.assertEqual(classify_form([[1, 0], [0, 1]]).tag, "unit")
        self.assertEqual(classify_form([[0, 1], [1, 0]]).tag, "pi")

    def test_transform_brings_the_form_to_its_representative(self):
        gram = [[1, 1], [1, 0]]
        cls = classify_form(gram)
        self.assertEqual(cls.tag, "unit")
        self.assertEqual(congruent(self.f, cls.transform, gram), cls.representative(self.f, 2))

    def test_rejects_bad_forms(self):
        with self.assertRaises(Degenerate):
            classify_form([[1, 1], [1, 1]])
        with self.assertRaises(InvalidParams):
            classify_form([[1, 1], [0, 1]])
        with self.assertRaises(InvalidParams):
            classify_form([[1]], PrimeField(3))


class CartanMatrixCrossCheckTestCase(SimpleTestCase):
    PE3 = [["ev", "1", "1"], ["1", "0", "0"], ["1", "0", "ev"]]

    def test_pec_with_i0(self):
        x = adjoin_I0(central_extend(derived_algebra(build_classical("pe", {"m": 3}, 2), 2)))
        self.assertEqual(x.sdim(), (10, 6))
        self.assertEqual(x.sdim(), expected_sdim("pec_I0", {"m": 3}))

    def test_ooc_with_i0(self):
        x = adjoin_I0(central_extend(derived_algebra(build_classical("oo_PiPi", {"a": 4, "b": 4}, 2), 1)))
        self.assertEqual(x.sdim(), (14, 16))
        self.assertEqual(x.sdim(), expected_sdim("ooc_I0", {"k_ev": 2, "k_od": 2}))

    def test_pe3_cartan_matrix(self):
        b = build(make_spec(2, self.PE3, "010"))
        self.assertEqual(b.sdim(), (10, 6))
        self.assertEqual(b.sdim(), expected_sdim("pec_I0", {"m": 3}))
        self.assertEqual(b.B, [[0, 1, 0]])
        f = b.field
        z = {b.h(1): f.one, b.h(2): f.one}
        self.assertTrue(center(b).contains(z))


class SolvableEvenPartTestCase(SimpleTestCase):
    CASES = [
        ("oo_II", 1, 2, 1),
        ("oo_IPi", 1, 2, 1),
        ("oo_II", 2, 2, 1),
        ("oo_IPi", 2, 2, 1),
        ("oo_IPi", 2, 4, 1),
        ("oo_PiPi", 2, 4, 2),
        ("oo_PiPi", 4, 4, 1),
    ]

    def test_listed_algebras_have_solvable_even_parts(self):
        for family, a, b, level in self.CASES:
            with self.subTest(family=family, a=a, b=b, level=level):
                x = derived_algebra(build_classical(family, {"a": a, "b": b}, 2), level)
                self.assertTrue(is_solvable(even_part(x)))

    def test_oo_pipi_44_modulo_its_center(self):
        x = derived_algebra(build_classical("oo_PiPi", {"a": 4, "b": 4}, 2), 1)
        cent = center(x)
        self.assertGreater(len(cent), 0)
        core = quotient(x, x.whole(), cent)
        self.assertEqual(core.sdim()[1], 16)
        self.assertTrue(is_solvable(even_part(core)))

    def test_osp12_is_simple(self):
        x = derived_algebra(build_classical("oo_IPi", {"a": 1, "b": 2}, 2), 1)
        self.assertEqual(x.sdim(), (3, 2))
        self.assertTrue(is_simple(x))
