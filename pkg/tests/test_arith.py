import random
import unittest
from fractions import Fraction

from src.arith import (FactoredRational, IntMatrix, RatMatrix, int_kernel, int_solve, is_saturated,
                       lattice_basis, monomial_value, mult_relations, quotient_projection, saturate, snf,
                       torsion_generators, torus_apply)
from src.arith.lattice import is_split_surjective, is_unimodular
from src.arith.linalg import nullspace, rank, right_inverse, solve


def _random_int_matrix(rng, rows, cols, height=6):
    return IntMatrix.from_rows([[rng.randint(-height, height) for _ in range(cols)] for _ in range(rows)], cols)


class TestSmithForm(unittest.TestCase):

    def test_known_invariants(self):
        a = IntMatrix.from_rows([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]])
        s = snf(a)
        self.assertEqual(s.invariants, (1, 10, 30))
        self.assertEqual(s.rank, 3)
        self.assertEqual(s.torsion, (10, 30))

    def test_transforms_on_random_matrices(self):
        rng = random.Random(7)
        for _ in range(60):
            a = _random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            s = snf(a)
            self.assertEqual(s.U @ a @ s.V, s.D)
            self.assertTrue((s.U @ s.U_inv).is_identity())
            self.assertTrue((s.V @ s.V_inv).is_identity())
            inv = s.invariants
            for d1, d2 in zip(inv, inv[1:]):
                self.assertEqual(d2 % d1, 0)
            for i in range(s.D.rows):
                for j in range(s.D.cols):
                    if i != j:
                        self.assertEqual(s.D[i, j], 0)

    def test_zero_and_empty(self):
        self.assertEqual(snf(IntMatrix.zeros(2, 3)).rank, 0)
        self.assertTrue(is_split_surjective(IntMatrix.zeros(0, 2)))
        self.assertTrue(is_unimodular(IntMatrix.from_rows([[2, 1], [1, 1]])))
        self.assertFalse(is_unimodular(IntMatrix.from_rows([[2, 0], [0, 1]])))


class TestLattices(unittest.TestCase):

    def test_kernel_is_annihilated(self):
        rng = random.Random(11)
        for _ in range(40):
            a = _random_int_matrix(rng, rng.randint(1, 3), rng.randint(1, 4))
            k = int_kernel(a)
            self.assertEqual(k.cols, a.cols - snf(a).rank)
            if k.cols:
                self.assertTrue((a @ k).is_zero())
                self.assertTrue(is_saturated(k))

    def test_saturation(self):
        span = IntMatrix.from_rows([[2], [4]])
        self.assertFalse(is_saturated(span))
        sat = saturate(span)
        self.assertEqual(sat, IntMatrix.from_rows([[1], [2]]))
        self.assertEqual(lattice_basis(span), IntMatrix.from_rows([[2], [4]]))

    def test_quotient_projection(self):
        span = IntMatrix.from_rows([[2], [4], [0]])
        p, sec = quotient_projection(span)
        self.assertEqual(p.shape, (2, 3))
        self.assertTrue((p @ span).is_zero())
        self.assertTrue((p @ sec).is_identity())

    def test_torsion(self):
        span = IntMatrix.from_rows([[2, 0], [0, 3]])
        orders = sorted(order for _, order in torsion_generators(span))
        self.assertEqual(orders, [6])
        self.assertEqual(torsion_generators(IntMatrix.identity(2)), [])

    def test_int_solve(self):
        a = IntMatrix.from_rows([[2, 0], [0, 3]])
        x = int_solve(a, IntMatrix.from_rows([[4], [9]]))
        self.assertEqual(x, IntMatrix.from_rows([[2], [3]]))
        self.assertIsNone(int_solve(a, IntMatrix.from_rows([[1], [0]])))


class TestRationalLinearAlgebra(unittest.TestCase):

    def test_nullspace_and_solve(self):
        m = RatMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
        self.assertEqual(rank(m), 1)
        ns = nullspace(m)
        self.assertEqual(ns.cols, 2)
        self.assertTrue((m @ ns).is_zero())
        b = RatMatrix.from_rows([[1], [2]])
        x = solve(m, b)
        self.assertEqual(m @ x, b)
        self.assertIsNone(solve(m, RatMatrix.from_rows([[1], [3]])))

    def test_right_inverse(self):
        m = RatMatrix.from_rows([[1, Fraction(1, 2)]])
        s = right_inverse(m)
        self.assertTrue((m @ s).is_identity())

    def test_integer_coercion(self):
        with self.assertRaises(ValueError):
            IntMatrix.from_rows([[Fraction(1, 2)]])


class TestFactoredRationals(unittest.TestCase):

    def test_factorization(self):
        q = FactoredRational.from_value(Fraction(-12, 5))
        self.assertEqual(q.sign, -1)
        self.assertEqual(q.exponents, {2: 2, 3: 1, 5: -1})
        self.assertEqual(q.value, Fraction(-12, 5))
        self.assertEqual((q * q.inverse()).value, 1)
        self.assertEqual((q ** 2).value, Fraction(144, 25))

    def test_zero_is_rejected(self):
        with self.assertRaises(ValueError):
            FactoredRational.from_value(0)

    def test_json(self):
        q = FactoredRational.from_value(18)
        self.assertEqual(q.to_json(), {"sign": 1, "factors": {"2": 1, "3": 2}})
        self.assertEqual(FactoredRational.from_json(q.to_json()), q)
        self.assertEqual(FactoredRational.from_json("3/4").value, Fraction(3, 4))

    def test_multiplicative_relations(self):
        pts = [[FactoredRational.from_value(2)], [FactoredRational.from_value(4)],
               [FactoredRational.from_value(-1)]]
        rel = mult_relations(pts)
        self.assertEqual(rel.cols, 2)
        for j in range(rel.cols):
            col = rel.column(j)
            self.assertTrue(monomial_value([p[0] for p in pts], col).is_one())
        # 2^2 * 4^-1 = 1 lies in the lattice
        self.assertIsNotNone(int_solve(rel, IntMatrix.from_rows([[2], [-1], [0]])))
        self.assertIsNotNone(int_solve(rel, IntMatrix.from_rows([[0], [0], [2]])))
        self.assertIsNone(int_solve(rel, IntMatrix.from_rows([[0], [0], [1]])))

    def test_independent_points(self):
        pts = [[FactoredRational.from_value(2)], [FactoredRational.from_value(3)]]
        self.assertEqual(mult_relations(pts).cols, 0)

    def test_torus_apply(self):
        n = IntMatrix.from_rows([[2, 1]])
        out = torus_apply(n, [FactoredRational.from_value(3), FactoredRational.from_value(Fraction(1, 2))])
        self.assertEqual(out[0].value, Fraction(9, 2))


if __name__ == "__main__":
    unittest.main()
