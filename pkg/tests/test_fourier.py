import unittest
from fractions import Fraction

from src import config
from src.algebra import algebra_from_motif, cyclic_module, format_element
from src.fourier import (agreement_oracle, antipode, bi_extension_failures, dual_presentation, duality,
                         duality_case, duality_fixtures, duality_oracles, elementary_presentation, exchange_oracle,
                         exchange_pairs, fourier_complex, involutivity_oracle, kernel_automorphism, kernel_module,
                         kernel_relations, mellin_check, normalized_relations, relabel_map, settle,
                         theorem_iv_oracle)
from src.functors.inverse import structure_sheaf
from src.homology import Restricted, find_isomorphism
from src.motif import cartier_dual
from src.motif.random import MotifSampler
from src.utils import codec
from src.utils.errors import OracleFailure, ShapeMismatchError, UnsupportedModuleError
from src.utils.shapes import ElementaryShape


def fixture(name):
    return codec.load_file(config.FIXTURES_DIR / name)


WEYL_CHARACTERS = ("module_weyl_character_0.json", "module_weyl_character_1.json",
                   "module_weyl_character_m2.json", "module_weyl_character_3_5.json")


class TestShapes(unittest.TestCase):

    def test_names_and_duals(self):
        self.assertEqual(ElementaryShape.from_name("[V^0 -> V]"), ElementaryShape.WEYL)
        self.assertEqual(ElementaryShape.from_name("mellin"), ElementaryShape.MELLIN)
        with self.assertRaises(ValueError):
            ElementaryShape.from_name("[V->T]")
        for shape in ElementaryShape:
            self.assertEqual(shape.dual.dual, shape)
            self.assertEqual(cartier_dual(shape.motif(2)), shape.dual.motif(2))

    def test_detect(self):
        self.assertEqual(ElementaryShape.detect(fixture("motif_weyl.json")), ElementaryShape.WEYL)
        self.assertIsNone(ElementaryShape.detect(fixture("motif_mixed.json")))
        self.assertIsNone(ElementaryShape.detect(fixture("motif_zero.json")))

    def test_relabelings_are_ring_maps(self):
        for shape in ElementaryShape:
            self.assertTrue(relabel_map(shape).is_homomorphism(), shape.value)


class TestKernel(unittest.TestCase):

    def test_bi_extension(self):
        sampler = MotifSampler(seed=31)
        for _ in range(15):
            self.assertEqual(bi_extension_failures(sampler.motif()), [])

    def test_relation_count(self):
        m = fixture("motif_mixed.json")
        self.assertEqual(len(kernel_relations(m)), sum(m.dims))

    def test_twisted_structure_sheaf_is_the_kernel(self):
        # xi' acts as xi' + x, s' as t s' on O: the relations kill the generator
        for name in ("motif_weyl.json", "motif_vector.json", "motif_lattice.json", "motif_mixed.json"):
            m = fixture(name)
            phi = kernel_automorphism(m)
            sheaf = structure_sheaf(phi.target)
            twisted = Restricted(sheaf, phi)
            one = {sheaf.generator(): Fraction(1)}
            for rel in kernel_relations(m):
                self.assertEqual(twisted.act(rel, one), {}, (name, format_element(rel)))
            self.assertEqual(kernel_module(m).cyclic_relations(), kernel_relations(m))


class TestClosedForms(unittest.TestCase):

    def test_weyl_character(self):
        mod = fixture("module_weyl_character_1.json")
        pres = elementary_presentation(ElementaryShape.WEYL, mod)
        self.assertEqual([format_element(r) for r in pres.cyclic_relations()], ["-x1 - 1"])
        self.assertEqual(pres.motif, mod.motif)

    def test_wrong_shape(self):
        with self.assertRaises(ShapeMismatchError):
            elementary_presentation(ElementaryShape.TORUS, fixture("module_weyl_delta.json"))

    def test_agreement_on_elementary_modules(self):
        cases = [(ElementaryShape.WEYL, name) for name in WEYL_CHARACTERS]
        cases += [(ElementaryShape.WEYL, "module_weyl_delta.json"),
                  (ElementaryShape.VECTOR, "module_vector_delta.json"),
                  (ElementaryShape.TORUS, "module_torus_delta.json"),
                  (ElementaryShape.LATTICE, "module_lattice_character.json"),
                  (ElementaryShape.FORMAL_VECTOR, "module_formal_character.json"),
                  (ElementaryShape.MELLIN, "module_mellin_character.json")]
        for shape, name in cases:
            report = agreement_oracle(shape, fixture(name))
            self.assertTrue(report["passed"], (name, report))
            self.assertEqual(report["ledger"]["general"], report["ledger"]["elementary"])

    def test_characters_are_told_apart(self):
        zero = fixture("module_weyl_character_0.json")
        one = fixture("module_weyl_character_1.json")
        m = zero.motif
        targets = {0: elementary_presentation(ElementaryShape.WEYL, zero),
                   1: elementary_presentation(ElementaryShape.WEYL, one)}
        for lam, mod in ((0, zero), (1, one)):
            general = fourier_complex(m, mod)
            self.assertIsNotNone(find_isomorphism(general.complex, 0, targets[lam]), lam)
            self.assertIsNone(find_isomorphism(general.complex, 0, targets[1 - lam]), lam)


class TestInvolutivity(unittest.TestCase):

    def test_weyl_characters(self):
        for name in WEYL_CHARACTERS:
            report = involutivity_oracle(ElementaryShape.WEYL, fixture(name))
            self.assertTrue(report["passed"], (name, report))
            self.assertEqual(report["shift"], -2)
            self.assertEqual(report["weyl_sign"], -1)

    def test_other_shapes(self):
        for shape, name in ((ElementaryShape.VECTOR, "module_vector_delta.json"),
                            (ElementaryShape.LATTICE, "module_lattice_character.json"),
                            (ElementaryShape.MELLIN, "module_mellin_character.json")):
            report = involutivity_oracle(shape, fixture(name))
            self.assertTrue(report["passed"], (name, report))
            self.assertEqual(report["ledger"], report["expected_ledger"])


class TestMellin(unittest.TestCase):

    def test_monomial_model(self):
        for lam, killed in ((0, [0]), (1, [1]), (Fraction(1, 2), [])):
            report = mellin_check(lam)
            self.assertTrue(report["passed"], report)
            self.assertTrue(report["relation_is_omega_minus_lambda"])
            self.assertEqual(report["killed"], killed)


class TestExchange(unittest.TestCase):

    def test_fixture_pairs(self):
        for name in ("exchange_weyl.json", "exchange_mellin.json"):
            job = fixture(name)
            report = exchange_oracle(job.shape, job.a, job.b)
            self.assertTrue(report["passed"], (name, report))
        self.assertEqual(exchange_oracle("[V^0->V]", [1], [2])["sum"], ["3"])
        self.assertEqual(exchange_oracle("[T^0->T]", [2], [3])["sum"], ["6"])

    def test_random_pairs(self):
        pairs = exchange_pairs(seed=0, count=10)
        self.assertEqual(len(pairs), 10)
        for a, b in pairs:
            self.assertTrue(exchange_oracle(ElementaryShape.WEYL, a, b)["passed"], (a, b))

    def test_needs_points(self):
        with self.assertRaises(ValueError):
            exchange_oracle(ElementaryShape.LATTICE, [1], [2])


class TestDuality(unittest.TestCase):

    def test_antipode(self):
        alg = algebra_from_motif(fixture("motif_weyl.json"))
        self.assertEqual(antipode(alg.xi(0) - 1), -alg.xi(0) - 1)
        self.assertEqual(antipode(alg.x(0) * alg.xi(0)), -(alg.xi(0) * alg.x(0)))

    def test_character_dualizes_to_opposite_weight(self):
        mod = fixture("module_weyl_character_3_5.json")
        alg = mod.algebra
        expected = cyclic_module(alg, [alg.xi(0) + Fraction(3, 5)])
        self.assertEqual(normalized_relations(dual_presentation(mod)), normalized_relations(expected))

    def test_degree_and_ledger(self):
        mod = fixture("module_weyl_delta.json")
        result = duality(mod)
        self.assertLessEqual(set(result.effective_dims(window=2)), {0})
        self.assertEqual(result.ledger.shift, 1)

    def test_non_cyclic_rejected(self):
        with self.assertRaises(UnsupportedModuleError):
            duality(fixture("module_vector_two_generators.json"))

    def test_fixture_count(self):
        self.assertEqual(len(duality_fixtures(0)), 20)

    def test_all_fixtures(self):
        report = duality_oracles(seed=0)
        failed = [c for c in report["cases"] if not c["passed"]]
        self.assertEqual(failed, [])
        self.assertTrue(report["passed"])

    def test_theorem_iv_ledger(self):
        weyl = fixture("module_weyl_character_1.json")
        report = theorem_iv_oracle(ElementaryShape.WEYL, weyl)
        self.assertTrue(report["passed"], report)
        self.assertEqual(report["ledger_difference"]["twist"], {"omega_V": 3, "omega_C": -3})

    def test_delta_case_report(self):
        report = duality_case("weyl delta", fixture("module_weyl_delta.json"))
        self.assertTrue(report["passed"], report)
        self.assertIsNotNone(report["biduality"]["iso"])
        self.assertEqual(report["induced"]["ext"]["support"], {"1": 1})
        self.assertTrue(report["induced"]["ext"]["iso"])
        self.assertEqual(report["induced"]["expected_degree"], 0)


class TestStrict(unittest.TestCase):

    def test_settle(self):
        report = {"kind": "agreement", "passed": False}
        self.assertIs(settle(report, False), report)
        with self.assertRaises(OracleFailure) as ctx:
            settle(report, True)
        self.assertIs(ctx.exception.report, report)

    def test_passing_checks_return(self):
        report = agreement_oracle(ElementaryShape.WEYL, fixture("module_weyl_delta.json"), strict=True)
        self.assertTrue(report["passed"])
        self.assertTrue(mellin_check(1, strict=True)["passed"])


if __name__ == "__main__":
    unittest.main()
