import unittest
from dataclasses import replace

from src import config
from src.algebra import algebra_from_motif, character_module, cyclic_module, delta_module, parse_element
from src.functors import (BlockLines, CanonicalFactorization, Check, Family, GroupRoute, TwistShift,
                          boxtimes_complex, convolution, fiber_product, pullback, push_ledger, pushforward,
                          run_harness)
from src.functors.harness import SquareSampler, compare_routes, transitivity
from src.functors.twist import line
from src.motif import LinearMotif, MotifMorphism, compose, identity, structure_morphism
from src.motif.random import MotifSampler
from src.utils import codec
from src.utils.errors import AlgebraMismatchError, CompatibilityError


def fixture(name):
    return codec.load_file(config.FIXTURES_DIR / name)


class TestDirectImage(unittest.TestCase):

    def test_delta_along_sum(self):
        job = fixture("push_vector_sum.json")
        result = pushforward(job.morphism, job.module)
        self.assertEqual(result.effective_dims(), {0: 1})
        self.assertTrue(result.ledger.is_trivial())
        self.assertEqual(result.motif, job.morphism.target)

    def test_delta_to_a_point(self):
        job = fixture("push_vector_structure.json")
        self.assertEqual(pushforward(job.morphism, job.module).effective_dims(), {0: 1})

    def test_torus_isogeny(self):
        job = fixture("push_torus_square.json")
        self.assertEqual(pushforward(job.morphism, job.module).total_dim(), 1)

    def test_de_rham_to_a_point(self):
        for name, total in (("module_weyl_character_1.json", 0), ("module_weyl_character_m2.json", 0),
                            ("module_weyl_character_0.json", 1)):
            mod = fixture(name)
            self.assertEqual(pushforward(structure_morphism(mod.motif), mod).total_dim(), total, name)

    def test_group_cohomology_of_the_lattice(self):
        alg = algebra_from_motif(fixture("motif_lattice.json"))
        trivial = character_module(alg, (), [1])
        self.assertEqual(pushforward(structure_morphism(alg.motif), trivial).total_dim(), 2)
        twisted = fixture("module_lattice_character.json")
        self.assertEqual(pushforward(structure_morphism(twisted.motif), twisted).total_dim(), 0)

    def test_polynomial_relations_to_a_point(self):
        line = algebra_from_motif(fixture("motif_vector.json"))
        two_points = cyclic_module(line, [parse_element("x1^2 - 1", line)])
        result = pushforward(structure_morphism(line.motif), two_points)
        self.assertEqual(result.effective_dims(), {0: 2})
        weyl = algebra_from_motif(fixture("motif_weyl.json"))
        two_deltas = cyclic_module(weyl, [parse_element("x1^2 - 1", weyl)])
        self.assertEqual(pushforward(structure_morphism(weyl.motif), two_deltas).total_dim(), 2)

    def test_module_over_wrong_motif(self):
        job = fixture("push_vector_sum.json")
        with self.assertRaises(AlgebraMismatchError):
            pushforward(job.morphism, fixture("module_vector_delta.json"))

    def test_invalid_morphism(self):
        weyl = fixture("motif_weyl.json")
        bad = MotifMorphism.build(weyl, weyl, fV=[[2]], fC=[[1]])
        with self.assertRaises(CompatibilityError):
            pushforward(bad, fixture("module_weyl_delta.json"))

    def test_identity_is_trivial(self):
        mod = fixture("module_vector_2_delta.json")
        plain = pushforward(identity(mod.motif), mod)
        self.assertEqual(plain.effective_dims(), {0: 1})

    def test_report(self):
        job = fixture("push_vector_sum.json")
        report = pushforward(job.morphism, job.module).to_json()
        self.assertEqual(report["kind"], "transform_result")
        self.assertEqual(report["effective"], {"0": 1})
        self.assertEqual(report["ledger"], {"twist": {}, "shift": 0})


class TestInverseImage(unittest.TestCase):

    def test_shift_along_sum(self):
        job = fixture("pull_vector_sum.json")
        result = pullback(job.morphism, job.module)
        self.assertEqual(result.ledger.shift, 1)
        dims = result.effective_dims()
        self.assertEqual(len(dims), 1)
        self.assertGreater(result.total_dim(), 0)

    def test_restriction_to_a_line(self):
        f = fixture("morphism_vector_inclusion.json")
        self.assertEqual(GroupRoute.for_morphism(f), GroupRoute.GENERAL)
        alg = algebra_from_motif(f.target)
        # a point on the line has two Tor groups, a point off it has none
        self.assertEqual(pullback(f, delta_module(alg, [1, 0])).total_dim(), 2)
        self.assertEqual(pullback(f, delta_module(alg, [1, 2])).total_dim(), 0)

    def test_identity_route(self):
        mod = fixture("module_vector_delta.json")
        one = identity(mod.motif)
        self.assertEqual(GroupRoute.for_morphism(one), GroupRoute.ISO)
        self.assertEqual(pullback(one, mod).effective_dims(), {0: 1})


class TestProducts(unittest.TestCase):

    def test_external_product(self):
        m = fixture("module_vector_delta.json")
        self.assertEqual(boxtimes_complex(m, m).effective_dims(), {0: 1})

    def test_convolution_of_deltas(self):
        alg = algebra_from_motif(fixture("motif_vector.json"))
        out = convolution(delta_module(alg, [1]), delta_module(alg, [2]))
        self.assertEqual(out.effective_dims(), {0: 1})


class TestFactorization(unittest.TestCase):

    def test_recomposes(self):
        sampler = MotifSampler(seed=21)
        for _ in range(20):
            f = sampler.morphism()
            self.assertEqual(CanonicalFactorization(f).recomposed(), f)

    def test_fiber_product_square_commutes(self):
        f = fixture("morphism_vector_sum.json")
        a = compose(f, fixture("morphism_vector_inclusion.json"))
        _, a1, f_prime = fiber_product(f, a)
        self.assertEqual(compose(f, a1), compose(a, f_prime))


class TestLedgers(unittest.TestCase):

    def test_push_ledger(self):
        weyl = BlockLines.canonical(fixture("motif_weyl.json"))
        vector = BlockLines.canonical(fixture("motif_vector.json"))
        self.assertEqual(push_ledger(weyl, vector), TwistShift.of({"omega_C": 1}))
        self.assertEqual(str(TwistShift.of({"omega_V": 2}, -1)), "omega_V^2 [-1]")


class TestHarness(unittest.TestCase):

    def test_all_families_pass(self):
        seen = []
        report = run_harness(trials=20, seed=0, on_trial=seen.append)
        self.assertEqual(report["failures"], 0, [c for c in seen if not c["passed"]])
        self.assertTrue(report["passed"])
        self.assertEqual(set(report["families"]), {Family.VECTOR.value, Family.LATTICE.value})

    def test_identity_baseline_is_reported(self):
        report = run_harness(trials=1, seed=3, families=(Family.VECTOR,))
        baseline = [c for c in report["families"]["vector"] if c["trial"] == "identity"]
        self.assertEqual({c["check"] for c in baseline},
                         {Check.BASE_CHANGE.value, Check.PROJECTION_FORMULA.value, Check.TRANSITIVITY.value})
        self.assertTrue(all(c["passed"] and c["ledgers"]["agree"] for c in baseline))

    def test_wrong_ledger_rejected(self):
        job = fixture("push_vector_sum.json")
        right = pushforward(job.morphism, job.module)
        self.assertTrue(compare_routes(Check.TRANSITIVITY, right, right, 4)["passed"])
        wrong = replace(right, ledger=right.ledger + line({"omega_V": 1}, rank=1))
        row = compare_routes(Check.TRANSITIVITY, right, wrong, 4)
        self.assertEqual(row["lhs"], row["rhs"])
        self.assertFalse(row["ledgers"]["agree"])
        self.assertFalse(row["passed"])

    def test_ledger_ranks_agree_around_a_square(self):
        # the two routes name different lines but carry the same rank
        squares = SquareSampler(Family.VECTOR, seed=5)
        f = squares.epimorphism(LinearMotif.build(dV=2), 1)
        a = MotifMorphism.build(LinearMotif.build(), f.target)
        _, a1, f_prime = fiber_product(f, a)
        module = squares.module(f.source)
        lhs = pullback(a, pushforward(f, module)).ledger
        rhs = pushforward(f_prime, pullback(a1, module)).ledger
        self.assertNotEqual(lhs, rhs)
        self.assertTrue(lhs.agrees_with(rhs))

    def test_transitivity_on_random_pairs(self):
        for family in (Family.VECTOR, Family.LATTICE):
            squares = SquareSampler(family, seed=11)
            for _ in range(6):
                f, a = squares.square()
                g = squares.epimorphism(f.target, squares.rng.randint(1, f.target.dV or f.target.rL))
                for first, module in ((f, squares.module(f.source)), (a, squares.module(a.source))):
                    row = transitivity(first, g, module, 4)
                    self.assertTrue(row["passed"], row)

    def test_family_names(self):
        self.assertEqual(Family.parse("Vector"), Family.VECTOR)
        with self.assertRaises(ValueError):
            Family.parse("torus")


if __name__ == "__main__":
    unittest.main()
