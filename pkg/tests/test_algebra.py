import random
import unittest
from fractions import Fraction

from src import config
from src.algebra import (ModulePresentation, algebra_from_motif, character_module, coherence_smoke,
                         coherence_witness, delta_module, format_element, free_module, induce, parse_element)
from src.algebra.ideals import LaurentIdeal
from src.algebra.ore import identity_map, unit_inverse
from src.algebra.presentation import block_embedding, boxtimes, function_algebra
from src.motif.random import MotifSampler
from src.utils import codec
from src.utils.errors import AlgebraMismatchError, ParseError, ValidationError


def fixture(name):
    return codec.load_file(config.FIXTURES_DIR / name)


def random_element(alg, rng, terms=3):
    out = {}
    for _ in range(terms):
        m = (tuple(rng.randint(0, 2) for _ in range(alg.nx)),
             tuple(rng.randint(-2, 2) for _ in range(alg.nt)),
             tuple(rng.randint(0, 2) for _ in range(alg.nxi)),
             tuple(rng.randint(-1, 1) for _ in range(alg.ns)))
        out[m] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return alg.element(out)


class TestMultiplication(unittest.TestCase):

    def test_associativity(self):
        rng = random.Random(13)
        for name in ("motif_weyl.json", "motif_mellin.json", "motif_lattice_vector.json", "motif_mixed.json"):
            alg = algebra_from_motif(fixture(name))
            for _ in range(150):
                a, b, c = (random_element(alg, rng) for _ in range(3))
                self.assertEqual((a * b) * c, a * (b * c), name)

    def test_associativity_on_random_motifs(self):
        rng = random.Random(29)
        sampler = MotifSampler(seed=29, max_dim=2)
        for _ in range(8):
            m = sampler.motif()
            alg = algebra_from_motif(m)
            for _ in range(25):
                a, b, c = (random_element(alg, rng) for _ in range(3))
                self.assertEqual((a * b) * c, a * (b * c), repr(m))

    def test_commutators_on_mixed_motif(self):
        alg = algebra_from_motif(fixture("motif_mixed.json"))
        x, t, xi, s = alg.x(0), alg.t(0), alg.xi(0), alg.s(0)
        self.assertEqual(alg.commutator(xi, x), 2)
        self.assertEqual(alg.commutator(xi, t), t)
        self.assertEqual(s * x - x * s, Fraction(1, 2) * s)
        self.assertEqual(s * t, 3 * (t * s))
        self.assertTrue(alg.commutator(s, xi).is_zero())
        self.assertEqual(t * alg.t(0, -1), 1)
        self.assertEqual(s * alg.s(0, -1), 1)
        self.assertFalse(alg.is_commutative)

    def test_group_algebra_is_commutative(self):
        self.assertTrue(algebra_from_motif(fixture("motif_vector_2.json")).is_commutative)
        self.assertTrue(algebra_from_motif(fixture("motif_torus_lattice.json")).is_commutative)

    def test_unit_inverse(self):
        alg = algebra_from_motif(fixture("motif_mixed.json"))
        u = 5 * alg.t(0) * alg.s(0)
        self.assertEqual(u * unit_inverse(u), 1)
        with self.assertRaises(AlgebraMismatchError):
            unit_inverse(alg.x(0))

    def test_negative_power_rejected(self):
        alg = algebra_from_motif(fixture("motif_weyl.json"))
        with self.assertRaises(ValueError):
            alg.x(0) ** -1

    def test_mismatched_algebras(self):
        a = algebra_from_motif(fixture("motif_weyl.json"))
        b = algebra_from_motif(fixture("motif_vector.json"))
        with self.assertRaises(AlgebraMismatchError):
            a.x(0) * b.x(0)

    def test_identity_map(self):
        for name in ("motif_weyl.json", "motif_mixed.json"):
            alg = algebra_from_motif(fixture(name))
            self.assertTrue(identity_map(alg).is_homomorphism())


class TestLaurentIdeal(unittest.TestCase):

    def test_polynomial_quotient(self):
        # (x^2 - 1) in Q[x]
        ideal = LaurentIdeal([False], [{(2,): 1, (0,): -1}])
        self.assertEqual(ideal.quotient_dimension(), 2)
        self.assertTrue(ideal.is_standard((1,)))
        self.assertFalse(ideal.is_standard((2,)))
        self.assertEqual(ideal.normal_form({(3,): 1}), {(1,): 1})
        self.assertTrue(ideal.contains({(4,): 1, (0,): -1}))

    def test_laurent_inverse(self):
        # t^2 = 4 forces t^-1 = t / 4
        ideal = LaurentIdeal([True], [{(2,): 1, (0,): -4}])
        self.assertEqual(ideal.quotient_dimension(), 2)
        self.assertTrue(ideal.contains({(-1,): 4, (1,): -1}))
        self.assertFalse(ideal.contains({(-1,): 1, (1,): -1}))

    def test_unit_and_zero_ideals(self):
        unit = LaurentIdeal([False, True], [{(1, 0): 1, (0, 0): -1}, {(1, 0): 1, (0, 0): -2}])
        self.assertTrue(unit.is_unit)
        self.assertEqual(unit.quotient_dimension(), 0)
        self.assertEqual(unit.normal_form({(5, -3): 7}), {})
        free = LaurentIdeal([True], [])
        self.assertFalse(free.is_unit)
        self.assertIsNone(free.quotient_dimension())
        self.assertEqual(free.normal_form({(-3,): 2}), {(-3,): 2})
        self.assertEqual(LaurentIdeal([], []).quotient_dimension(), 1)

    def test_two_variables(self):
        # (x - y, y^2 - 2): two points over Q(sqrt 2)
        ideal = LaurentIdeal([False, False], [{(1, 0): 1, (0, 1): -1}, {(0, 2): 1, (0, 0): -2}])
        self.assertEqual(ideal.quotient_dimension(), 2)
        self.assertEqual(ideal.normal_form({(1, 1): 1}), {(0, 0): 2})


class TestParser(unittest.TestCase):

    def test_canonical_forms(self):
        weyl = algebra_from_motif(fixture("motif_weyl.json"))
        self.assertEqual(format_element(parse_element("xi1*x1", weyl)), "x1*xi1 + 1")
        self.assertEqual(format_element(parse_element("xi1 - 3/5", weyl)), "xi1 - 3/5")
        mixed = algebra_from_motif(fixture("motif_mixed.json"))
        self.assertEqual(format_element(parse_element("s1*t1^-1*x1", mixed)),
                         "1/3*x1*t1^-1*s1 + 1/6*t1^-1*s1")

    def test_printer_output_parses_back(self):
        rng = random.Random(17)
        alg = algebra_from_motif(fixture("motif_mixed.json"))
        for _ in range(50):
            e = random_element(alg, rng)
            self.assertEqual(parse_element(format_element(e), alg), e)

    def test_zero_and_parentheses(self):
        alg = algebra_from_motif(fixture("motif_weyl.json"))
        self.assertEqual(format_element(parse_element("x1 - x1", alg)), "0")
        self.assertEqual(parse_element("(x1 + 1)^2", alg), parse_element("x1^2 + 2*x1 + 1", alg))
        self.assertEqual(parse_element("-xi1", alg), -alg.xi(0))

    def test_parse_errors(self):
        alg = algebra_from_motif(fixture("motif_weyl.json"))
        for text in ("x2", "x1^-1", "", "x1 +", "x1^1/2", "y1", "(x1"):
            with self.assertRaises(ParseError, msg=text):
                parse_element(text, alg)


class TestPresentations(unittest.TestCase):

    def test_fixture_modules(self):
        mod = fixture("module_weyl_delta.json")
        self.assertTrue(mod.is_cyclic())
        self.assertEqual(mod.cyclic_relations(), [parse_element("x1 - 2", mod.algebra)])
        two = fixture("module_vector_two_generators.json")
        self.assertEqual(two.ngens, 2)
        with self.assertRaises(ValidationError):
            two.cyclic_relations()

    def test_constructors(self):
        alg = algebra_from_motif(fixture("motif_mixed.json"))
        self.assertEqual(free_module(alg).relations, ())
        d = delta_module(alg, [1], [2])
        self.assertEqual(d.cyclic_relations(), [alg.x(0) - 1, alg.t(0) - 2])
        c = character_module(alg, [Fraction(1, 2)], [3])
        self.assertEqual(len(c.relations), 2)
        with self.assertRaises(ValidationError):
            delta_module(alg, [1, 2], [2])
        with self.assertRaises(ValidationError):
            character_module(alg, [], [])

    def test_relation_length_checked(self):
        alg = algebra_from_motif(fixture("motif_vector.json"))
        with self.assertRaises(ValidationError):
            ModulePresentation(alg, 2, ((alg.x(0),),))

    def test_induction(self):
        weyl = fixture("motif_weyl.json")
        fa = function_algebra(weyl)
        f = ModulePresentation(fa, 1, ((fa.x(0) - 2,),))
        ind = induce(f, weyl)
        self.assertEqual(ind, fixture("module_weyl_delta.json"))
        self.assertTrue(coherence_smoke(ind))
        witness = coherence_witness(ind)
        self.assertEqual(witness["function_relations"], 1)
        self.assertTrue(witness["epimorphism"])
        self.assertTrue(witness["well_defined"])
        self.assertEqual(witness["method"], "realized")
        self.assertEqual(witness["function_dimension"], 1)
        self.assertTrue(witness["finite"])

    def test_coherence_detects_a_wrong_map(self):
        weyl = fixture("motif_weyl.json")
        fa = function_algebra(weyl)
        delta = fixture("module_weyl_delta.json")
        # x1 - 3 does not vanish on the delta at 2
        wrong = ModulePresentation(fa, 1, ((fa.x(0) - 3,),))
        witness = coherence_witness(delta, wrong)
        self.assertFalse(witness["well_defined"])
        self.assertFalse(witness["epimorphism"])
        self.assertFalse(coherence_smoke(delta, wrong))
        # (x1 - 2)(x1 - 1) does, and its quotient has dimension 2
        wider = ModulePresentation(fa, 1, (((fa.x(0) - 2) * (fa.x(0) - 1),),))
        witness = coherence_witness(delta, wider)
        self.assertTrue(witness["epimorphism"])
        self.assertEqual(witness["function_dimension"], 2)

    def test_coherence_of_free_and_missed_generators(self):
        weyl = fixture("motif_weyl.json")
        fa = function_algebra(weyl)
        weyl_algebra = algebra_from_motif(weyl)
        two = free_module(weyl_algebra, 2)
        witness = coherence_witness(two, free_module(fa, 1))
        self.assertTrue(witness["well_defined"])
        self.assertFalse(witness["epimorphism"])
        self.assertIsNone(witness["function_dimension"])
        self.assertFalse(witness["finite"])
        # the missed generator is zero in m, so the map is still onto
        killed = ModulePresentation(weyl_algebra, 2, ((weyl_algebra.zero(), weyl_algebra.one()),))
        self.assertTrue(coherence_witness(killed, free_module(fa, 1))["epimorphism"])

    def test_induction_rejects_operators(self):
        mod = fixture("module_weyl_character_1.json")
        with self.assertRaises(ValidationError):
            induce(mod, mod.motif)

    def test_external_product(self):
        m = fixture("module_weyl_delta.json")
        n = fixture("module_vector_delta.json")
        prod = boxtimes(m, n)
        self.assertEqual(prod.ngens, 1)
        self.assertEqual(len(prod.relations), 2)
        self.assertEqual(prod.motif.dims, (2, 0, 1, 0))
        emb = block_embedding(m.motif, n.motif, 2)
        self.assertTrue(emb.is_homomorphism())
        self.assertIn((emb(n.algebra.x(0)) - 1,), prod.relations)


if __name__ == "__main__":
    unittest.main()
