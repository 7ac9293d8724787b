import unittest

from src import config
from src.arith import IntMatrix, RatMatrix
from src.motif import (LinearMotif, MotifMorphism, cartier_dual, cokernel, compose, dual_morphism,
                       factor_through_cokernel, factor_through_kernel, identity, inversion, is_exact,
                       is_strict_epi, is_strict_mono, kernel, product, projection, require_valid, validate,
                       diagonal, addition)
from src.motif.duality import dimension_identity_holds
from src.motif.exact import failing_blocks
from src.motif.random import MotifSampler
from src.utils import codec
from src.utils.errors import CompatibilityError, ShapeMismatchError, ValidationError


def fixture(name):
    return codec.load_file(config.FIXTURES_DIR / name)


class TestCartierDuality(unittest.TestCase):

    def test_biduality_on_random_motifs(self):
        sampler = MotifSampler(seed=1)
        for _ in range(200):
            m = sampler.motif()
            d = cartier_dual(m)
            self.assertEqual(d.dims, (m.dC, m.rL, m.dV, m.dT))
            self.assertEqual(cartier_dual(d), m)
            self.assertTrue(dimension_identity_holds(m))

    def test_elementary_duals(self):
        weyl = fixture("motif_weyl.json")
        self.assertEqual(cartier_dual(weyl), weyl)
        self.assertEqual(cartier_dual(fixture("motif_torus.json")), fixture("motif_lattice.json"))
        self.assertEqual(cartier_dual(fixture("motif_mellin.json")), fixture("motif_lattice_vector.json"))

    def test_dual_morphisms_are_valid(self):
        sampler = MotifSampler(seed=2)
        for _ in range(40):
            f = sampler.morphism()
            df = dual_morphism(f)
            self.assertTrue(validate(df))
            self.assertEqual(df.source, cartier_dual(f.target))
            self.assertEqual(dual_morphism(df), f)

    def test_dual_reverses_composition(self):
        sampler = MotifSampler(seed=3)
        for _ in range(20):
            f = sampler.morphism(degree=1)
            g = sampler.morphism_from(f.target)
            self.assertEqual(dual_morphism(compose(g, f)), compose(dual_morphism(f), dual_morphism(g)))


class TestMorphisms(unittest.TestCase):

    def test_shape_errors(self):
        v1 = fixture("motif_vector.json")
        with self.assertRaises(ShapeMismatchError):
            MotifMorphism(v1, v1, RatMatrix.from_rows([[1, 2]]), IntMatrix.zeros(0, 0),
                          RatMatrix.zeros(0, 0), IntMatrix.zeros(0, 0))

    def test_compatibility(self):
        weyl = fixture("motif_weyl.json")
        bad = MotifMorphism.build(weyl, weyl, fV=[[2]], fC=[[1]])
        self.assertFalse(validate(bad))
        with self.assertRaises(CompatibilityError):
            require_valid(bad)
        self.assertTrue(validate(identity(weyl)))

    def test_group_law(self):
        m = MotifSampler(seed=4).motif()
        self.assertTrue(validate(diagonal(m)))
        self.assertTrue(validate(addition(m)))
        self.assertTrue(compose(inversion(m), inversion(m)) == identity(m))
        p = product(m, m)
        self.assertEqual(compose(projection(m, m, 1), diagonal(m)), identity(m))
        self.assertEqual(compose(projection(m, m, 2), diagonal(m)), identity(m))
        self.assertEqual(p.dims, tuple(2 * d for d in m.dims))


class TestExactCategory(unittest.TestCase):

    def test_kernel_and_cokernel_laws(self):
        sampler = MotifSampler(seed=5)
        for _ in range(100):
            f = sampler.morphism()
            k, incl = kernel(f)
            self.assertTrue(compose(f, incl).is_zero())
            c, proj = cokernel(f)
            self.assertTrue(compose(proj, f).is_zero())

            h = factor_through_kernel(f, incl)
            self.assertEqual(compose(incl, h), incl)
            self.assertTrue(h.is_iso())
            h2 = factor_through_cokernel(f, proj)
            self.assertEqual(compose(h2, proj), proj)
            self.assertTrue(h2.is_iso())

    def test_strict_monos_have_zero_kernel(self):
        sampler = MotifSampler(seed=6)
        for _ in range(40):
            f = sampler.morphism()
            if is_strict_mono(f):
                self.assertTrue(kernel(f)[0].is_zero())
            if is_strict_epi(f):
                self.assertTrue(cokernel(f)[0].is_zero())
            self.assertTrue(is_strict_mono(kernel(f)[1]))
            self.assertTrue(is_strict_epi(cokernel(f)[1]))

    def test_squaring_isogeny(self):
        f = fixture("morphism_torus_square.json")
        self.assertTrue(kernel(f)[0].is_zero())
        self.assertTrue(cokernel(f)[0].is_zero())
        self.assertFalse(is_strict_mono(f))
        self.assertFalse(is_strict_epi(f))

    def test_lattice_multiplication(self):
        f = fixture("morphism_lattice_triple.json")
        self.assertTrue(kernel(f)[0].is_zero())
        self.assertTrue(cokernel(f)[0].is_zero())
        self.assertFalse(is_strict_mono(f))

    def test_exact_sequences(self):
        split = fixture("pair_vector_split.json")
        self.assertTrue(is_exact(split.f, split.g))
        broken = fixture("pair_vector_not_exact.json")
        self.assertFalse(is_exact(broken.f, broken.g))
        self.assertEqual(failing_blocks(broken.f, broken.g), ["fV"])

    def test_kernel_sequence_is_exact(self):
        sampler = MotifSampler(seed=8)
        for _ in range(15):
            f = sampler.morphism()
            _, incl = kernel(f)
            _, proj = cokernel(incl)
            self.assertTrue(is_exact(incl, proj))

    def test_duality_exchanges_kernels_and_cokernels(self):
        sampler = MotifSampler(seed=11)
        for _ in range(30):
            f = sampler.morphism()
            c, proj = cokernel(f)
            k, _ = kernel(dual_morphism(f))
            self.assertEqual(k.dims, cartier_dual(c).dims)
            self.assertTrue(compose(dual_morphism(f), dual_morphism(proj)).is_zero())

    def test_not_composable(self):
        split = fixture("pair_vector_split.json")
        with self.assertRaises(ValidationError):
            is_exact(split.g, split.g)

    def test_zero_motif(self):
        z = LinearMotif.zero()
        self.assertEqual(cartier_dual(z), z)
        self.assertTrue(kernel(identity(z))[0].is_zero())


if __name__ == "__main__":
    unittest.main()
