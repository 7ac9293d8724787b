import unittest
from fractions import Fraction

from src import config
from src.algebra import ModulePresentation, algebra_from_motif, cyclic_module, parse_element
from src.homology import (CyclicModule, QuotientModule, ZeroModule, canonical_lattice_complex, homology,
                          homology_dims, koszul_complex, lattice_resolution, presentation_complex, realize,
                          xi_koszul)
from src.utils import codec
from src.utils.errors import UnsupportedModuleError, ValidationError


def fixture(name):
    return codec.load_file(config.FIXTURES_DIR / name)


class TestKoszulComplex(unittest.TestCase):

    def test_acyclic_in_positive_degree(self):
        for dim_v in range(1, 5):
            for n in range(1, 6):
                c = koszul_complex(dim_v, n)
                self.assertTrue(c.check_d_squared(0))
                dims = [s.homology_dim for s in homology(c)]
                self.assertEqual(dims, [0] * len(dims), (dim_v, n))

    def test_identity_in_degree_one(self):
        c = koszul_complex(3, 1)
        self.assertEqual([s.term_dim for s in homology(c)], [3, 3])
        self.assertEqual(homology_dims(c), {})

    def test_term_dimensions(self):
        # Lambda^p Q^2 (x) S^{3-p} Q^2: 4, 3*2, 2*1
        terms = [s.term_dim for s in homology(koszul_complex(2, 3))]
        self.assertEqual(terms, [4, 6, 2])

    def test_negative_arguments(self):
        with self.assertRaises(ValidationError):
            koszul_complex(-1, 2)
        with self.assertRaises(ValidationError):
            koszul_complex(2, 0)


class TestLatticeHomology(unittest.TestCase):

    def test_trivial_scalar(self):
        c = lattice_resolution(1, [1])
        self.assertEqual([s.homology_dim for s in homology(c)], [1, 1])

    def test_twisted_scalar_is_acyclic(self):
        c = lattice_resolution(1, [2])
        self.assertEqual([s.homology_dim for s in homology(c)], [0, 0])

    def test_one_trivial_direction_kills_everything(self):
        c = lattice_resolution(2, [1, Fraction(1, 3)])
        self.assertEqual(homology_dims(c), {})

    def test_rank_two_trivial(self):
        c = lattice_resolution(2, [1, 1])
        self.assertEqual([s.homology_dim for s in homology(c)], [1, 2, 1])

    def test_scalar_count_checked(self):
        with self.assertRaises(ValidationError):
            lattice_resolution(2, [1])

    def test_canonical_complex(self):
        for rank in range(1, 4):
            self.assertTrue(canonical_lattice_complex(rank).check_d_squared(3))
        dims = [s.homology_dim for s in homology(canonical_lattice_complex(1), window=4)]
        self.assertEqual(dims, [1, 1])


class TestRealizedModules(unittest.TestCase):

    def test_character_module_basis(self):
        mod = fixture("module_weyl_character_1.json")
        realized = realize(mod)
        self.assertIsInstance(realized, CyclicModule)
        # one basis vector x^k per size k
        self.assertEqual(len(realized.keys(3)), 4)

    def test_xi_koszul_of_delta(self):
        # xi acts freely on the delta module, so only the top degree survives
        mod = fixture("module_weyl_delta.json")
        c = xi_koszul(realize(mod))
        dims = homology_dims(c)
        self.assertEqual(sum(dims.values()), 1)

    def test_zero_unit_kill_rejected(self):
        alg = algebra_from_motif(fixture("motif_torus.json"))
        with self.assertRaises(UnsupportedModuleError):
            CyclicModule(alg, {("t", 0): 0})

    def test_polynomial_relation_on_a_line(self):
        alg = algebra_from_motif(fixture("motif_vector.json"))
        realized = realize(cyclic_module(alg, [parse_element("x1^2 - 1", alg)]))
        self.assertIsInstance(realized, QuotientModule)
        self.assertEqual(len(realized.keys(5)), 2)
        x = ("x", 0)
        one = realized.generator()
        square = realized.act_gen_vec(x, realized.act_gen(x, one))
        self.assertEqual(square, {one: Fraction(1)})

    def test_laurent_relation_on_a_torus(self):
        alg = algebra_from_motif(fixture("motif_torus.json"))
        realized = realize(cyclic_module(alg, [parse_element("t1^2 - 4", alg)]))
        self.assertEqual(len(realized.keys(4)), 2)
        inverse = realized.act_gen(("t", 0, -1), realized.generator())
        back = realized.act_gen_vec(("t", 0, 1), inverse)
        self.assertEqual(back, {realized.generator(): Fraction(1)})

    def test_function_relation_on_the_weyl_algebra(self):
        alg = algebra_from_motif(fixture("motif_weyl.json"))
        realized = realize(cyclic_module(alg, [parse_element("x1^2 - 1", alg)]))
        self.assertIsInstance(realized, QuotientModule)
        self.assertEqual(realized.mode, "O")
        # xi^g x^a with a < 2 and g + a <= 3
        self.assertEqual(len(realized.keys(3)), 7)

    def test_inconsistent_relations_give_zero(self):
        alg = algebra_from_motif(fixture("motif_vector.json"))
        mod = cyclic_module(alg, [parse_element("x1^2 - 1", alg), parse_element("x1^2 - 4", alg)])
        self.assertIsInstance(realize(mod), ZeroModule)

    def test_unrealizable_presentations_rejected(self):
        weyl = algebra_from_motif(fixture("motif_weyl.json"))
        with self.assertRaises(UnsupportedModuleError):
            realize(cyclic_module(weyl, [parse_element("x1*xi1 - 1", weyl)]))
        line = algebra_from_motif(fixture("motif_vector.json"))
        mixing = ModulePresentation(line, 2, ((line.x(0), line.one()),))
        with self.assertRaises(UnsupportedModuleError):
            realize(mixing)

    def test_presentation_complex(self):
        mod = fixture("module_vector_delta.json")
        c = presentation_complex(mod)
        self.assertEqual(homology_dims(c), {0: 1})
        alg = mod.algebra
        self.assertEqual(parse_element("x1", alg) - 1, mod.cyclic_relations()[0])


if __name__ == "__main__":
    unittest.main()
