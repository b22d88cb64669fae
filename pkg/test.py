#!/usr/bin/env python3
#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

import unittest
import math

import numpy as np
import mpmath

from hyperspinor.clifford import CliffordElement, Paravector, CliffordGroupElement, DimensionError, NotInvertibleError, \
        conjugate, inverse, invert_group, lipschitz_check, randomversors, norm
from hyperspinor.spinreps import build_representation, evaluate, evaluate_unit, isotypic_projector, grading_map, \
        checklabels, weylsigma, dimensionratio, randomM, commutant_dimension, BranchingError
from hyperspinor.vahlen import VahlenElement, InvariantError, identity, make_a, geodesic_a, make_n, make_k, multiply, hyperbolic_H, \
        inverse as vinverse, iwasawa, cartan, origin_image, ball_action, distance, hyperbolic_A, cartan_A, E_function, \
        cartan_limit_defect, reconstruction_defect, randomK, randomelements, iseven, stack
from hyperspinor.special import JacobiParams, SpectralParameter, PoleError, ConvergenceError, log_gamma, gauss_2f1, jacobi_phi, c_small, \
        psi_branch, theta_remainder, hc_c_function, tau_c_function, plancherel_density, gamma0, strichartz_constant, \
        printed_density
from hyperspinor.quadrature import GridError, sphere_grid, gauss_legendre, k_section, descended_grid, full_k_grid, \
        integrate_K, BallGrid, horosphere_grid, haar_N_constant
from hyperspinor.spherical import SphericalSpec, spherical_matrix, spherical_function, eisenstein_integral, \
        asymptotic_defect, fatou_limit_check
from hyperspinor.transforms import BoundarySection, BundleSection, PFunctionCombo, p_function, gram_matrix, intertwiner_U, \
        poisson_transform, random_bump, bump_section, combine, covariance_defect, HorosphericalFourier, PolarFourier, radon_transform, \
        spectral_projection, helgason_fourier, adjointness_defect, scattering_profile, checkladder, star_norm, plus_norm
from hyperspinor.helpers.common import operatornorm, dagger, generator, richardson
from hyperspinor.helpers.caching import cached
from hyperspinor.helpers.evaluation import Record, Report, CSVCOLUMNS, emit_report, parse_json, parse_csv
from hyperspinor.hyperspinor import Experimenter, ConfigurationError, parsevalue, mergeconfig
from hyperspinor.scenarios.spherical import FatouLimit
from hyperspinor.scenarios.transforms import Restriction


def quiet(message):
    pass

def jacobi_oracle(alpha, beta, lam, s):
    """phi^(alpha,beta)_lambda(s) summed by mpmath"""
    rho = alpha + beta + 1
    return mpmath.hyp2f1((1j * lam + rho) / 2, (-1j * lam + rho) / 2, alpha + 1, -mpmath.sinh(s)**2)


class CliffordTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(1)

    def test001_generators(self):
        """Generators anticommute and square to -1"""
        for i in range(1, 4):
            ei = CliffordElement.generator(i, 3)
            self.assertTrue( (ei * ei).isclose(-1), "e_i^2 = -1" )
            for j in range(i+1, 4):
                ej = CliffordElement.generator(j, 3)
                self.assertTrue( (ei * ej + ej * ei).isclose(0), "e_i e_j = -e_j e_i" )

    def test002_conjugate(self):
        """Conjugation is an anti-automorphism"""
        a = CliffordElement(3, self.rng.standard_normal(8))
        b = CliffordElement(3, self.rng.standard_normal(8))
        self.assertTrue( conjugate(a * b).isclose(conjugate(b) * conjugate(a), 1e-12) )

    def test003_paravectornorm(self):
        """x conj(x) = |x|^2 for a paravector"""
        x = Paravector(0.5, [1.0, -2.0, 0.3])
        self.assertTrue( (x.toelement() * conjugate(x.toelement())).isclose(x.norm2(), 1e-12) )
        self.assertTrue( x.toelement().isparavector() )
        self.assertTrue( np.allclose(Paravector.fromelement(x.toelement()).coordinates(), x.coordinates()) )
        self.assertAlmostEqual( float((x.toelement() * conjugate(x.toelement())).scalarpart()), x.norm2(), 12 )
        with self.assertRaises(ValueError):
            Paravector.fromelement(CliffordElement.blade(3, 3))

    def test004_dimensions(self):
        """Algebras beyond four generators and mixed algebras are rejected"""
        with self.assertRaises(DimensionError):
            CliffordElement.generator(1, 5)
        with self.assertRaises(DimensionError):
            CliffordElement.generator(1, 2) * CliffordElement.generator(1, 3)

    def test005_notinvertible(self):
        """1 + e123 squares into a zero divisor in Cl(0,3)"""
        u = CliffordElement.scalar(1.0, 3) + CliffordElement.blade(7, 3)
        with self.assertRaises(NotInvertibleError):
            inverse(u)
        self.assertFalse( lipschitz_check(u) )
        with self.assertRaises(NotInvertibleError):
            CliffordGroupElement(u)

    def test006_cliffordgroup(self):
        """Products of paravectors are group elements with conj(u)/|u|^2 as inverse"""
        versor = CliffordElement(3, randomversors(3, self.rng))
        self.assertTrue( lipschitz_check(versor) )
        u = CliffordGroupElement.fromparavectors(Paravector(1.0, [0.0, 1.0, 0.0]), Paravector(0.0, [2.0, 0.0, 1.0]))
        self.assertAlmostEqual( u.norm, math.sqrt(2 * 5), 12 )
        self.assertTrue( (u * invert_group(u)).value.isclose(1.0, 1e-12), "u u^-1 = 1" )
        self.assertAlmostEqual( norm(invert_group(u).value), 1 / u.norm, 12 )


class SpinRepresentationTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(2)

    def test001_dimensions(self):
        """Dimensions of the (half-)spin representations"""
        for (n, variant), dim in { (2,'plus'): 1, (3,'full'): 2, (4,'plus'): 2, (5,'full'): 4 }.items():
            self.assertEqual( build_representation(n, variant).dim, dim, "dim tau for n=" + str(n) )

    def test002_generatorimages(self):
        """Generator images satisfy the Clifford relations"""
        rep = build_representation(5, 'full')
        identitymatrix = np.eye(rep.dim)
        for i, gi in enumerate(rep.generators):
            for j, gj in enumerate(rep.generators):
                target = -2 * identitymatrix if i == j else 0 * identitymatrix
                self.assertTrue( np.allclose(gi @ gj + gj @ gi, target, atol=1e-12) )

    def test003_unitimages(self):
        """Unit group elements map to unitary matrices"""
        rep = build_representation(3, 'full')
        u = CliffordGroupElement(CliffordElement(2, randomversors(2, self.rng)))
        T = evaluate_unit(rep, u)
        self.assertTrue( np.allclose(T @ dagger(T), np.eye(rep.dim), atol=1e-12) )
        self.assertTrue( np.allclose(evaluate(rep, u), T) )
        with self.assertRaises(ValueError):
            evaluate_unit(rep, 2 * randomversors(2, self.rng))

    def test004_projectors(self):
        """P_plus and P_minus are complementary rank one projectors commuting with M"""
        rep = build_representation(3, 'full')
        plus = isotypic_projector(rep, 'plus')
        minus = isotypic_projector(rep, 'minus')
        self.assertTrue( np.allclose(plus.matrix + minus.matrix, np.eye(2)) )
        self.assertTrue( np.allclose(plus.matrix @ plus.matrix, plus.matrix) )
        self.assertEqual( plus.rank, 1 )
        self.assertEqual( minus.rank, 1 )
        T = evaluate(rep, randomM(2, self.rng, 5))
        self.assertTrue( np.allclose(plus.matrix @ T, T @ plus.matrix, atol=1e-12) )

    def test005_commutant(self):
        """M has two isotypic blocks for n=3 and one for n=4"""
        self.assertEqual( commutant_dimension(build_representation(3, 'full'), randomM(2, self.rng, 20)), 2 )
        self.assertEqual( commutant_dimension(build_representation(4, 'plus'), randomM(3, self.rng, 20)), 1 )

    def test006_branching(self):
        """Labels that do not occur in the branching are rejected"""
        for n, tau in ((3,'plus'), (2,'full'), (6,'full')):
            with self.assertRaises(BranchingError):
                checklabels(n, tau)
        with self.assertRaises(BranchingError):
            checklabels(3, 'full', 'full')
        with self.assertRaises(BranchingError):
            grading_map(build_representation(2, 'plus'))

    def test007_weyl(self):
        """The Weyl element swaps sigma for odd n only"""
        self.assertEqual( weylsigma(3, 'plus'), 'minus' )
        self.assertEqual( weylsigma(5, 'minus'), 'plus' )
        self.assertEqual( weylsigma(2, 'full'), 'full' )
        self.assertEqual( dimensionratio(3), 2 )
        self.assertEqual( dimensionratio(4), 1 )


class VahlenTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(3)

    def test001_units(self):
        """a_t moves the origin to tanh t, geodesic_a moves it over distance t"""
        self.assertTrue( np.allclose(origin_image(make_a(0.7, 2)), [math.tanh(0.7), 0, 0]) )
        self.assertAlmostEqual( float(distance(identity(2), make_a(0.7, 2))), 0.7, 12 )
        self.assertAlmostEqual( float(hyperbolic_A(geodesic_a(1.3, 2))), 1.3, 12 )

    def test002_invariant(self):
        """Matrices with |a|^2 - |b|^2 != 1 are rejected"""
        with self.assertRaises(InvariantError):
            VahlenElement([2.0, 0, 0, 0], [0.0, 0, 0, 0])

    def test003_inverse(self):
        """g g^-1 is the identity"""
        g = randomelements(2, self.rng, 10)
        self.assertTrue( np.all(g.isvalid()) )
        product = multiply(g, vinverse(g))
        self.assertLess( float(np.max(reconstruction_defect(product, identity(2, (10,))))), 1e-10 )

    def test004_iwasawa(self):
        """The Iwasawa factors of k a_t n_x are k, t and x"""
        k = randomK(2, self.rng)
        x = np.array([0.3, -0.2])
        g = multiply(multiply(k, make_a(0.8, 2)), make_n(x))
        factors = iwasawa(g)
        self.assertAlmostEqual( float(factors.t), 0.8, 10 )
        self.assertTrue( np.allclose(factors.x, x, atol=1e-10) )
        self.assertTrue( np.allclose(factors.k.a, k.a, atol=1e-10) )

    def test005_cartan(self):
        """The Cartan factors reconstruct g"""
        g = randomelements(3, self.rng, 50)
        factors = cartan(g)
        reconstructed = multiply(multiply(factors.k1, make_a(factors.t, 3)), factors.k2)
        self.assertLess( float(np.max(reconstruction_defect(g, reconstructed))), 1e-10 )
        self.assertTrue( np.allclose(factors.t, cartan_A(g)) )

    def test006_ballaction(self):
        """The ball action on the origin is g.0"""
        g = randomelements(2, self.rng, 10)
        self.assertTrue( np.allclose(ball_action(g, np.zeros(3)), origin_image(g), atol=1e-12) )
        p = ball_action(g[0], Paravector(0.0, [0.1, 0.2]))
        self.assertLess( p.norm2(), 1.0, "The ball is preserved" )

    def test007_M(self):
        """Even elements of K lie in M, a_t does not"""
        self.assertTrue( np.all(iseven(make_k(randomM(2, self.rng, 5)))) )
        self.assertFalse( bool(iseven(make_a(0.5, 2))) )
        self.assertEqual( stack([make_a(0.1, 2), make_a(0.2, 2)]).shape, (2,) )

    def test008_E(self):
        """E(g, x) is nonnegative"""
        g = randomelements(2, self.rng, 200)
        x = randomelements(2, self.rng, 200)
        self.assertGreaterEqual( float(np.min(E_function(g, x))), -1e-10 )

    def test009_cartanlimit(self):
        """The Cartan factors of g a_R tend to kappa(g)"""
        rep = build_representation(3, 'full')
        P = isotypic_projector(rep, 'plus')
        g = randomelements(2, self.rng, 5, tmax=1.0)
        self.assertLess( float(np.max(cartan_limit_defect(g, 8.0, rep, P))), 1e-3 )

    def test010_groupaction(self):
        """The ball action composes: g.(h.p) = (gh).p"""
        g = randomelements(2, self.rng, 20, tmax=1.5)
        h = randomelements(2, self.rng, 20, tmax=1.5)
        p = self.rng.uniform(-0.5, 0.5, (20, 3))
        lhs = ball_action(g, ball_action(h, p))
        rhs = ball_action(multiply(g, h), p)
        self.assertLess( float(np.max(np.abs(lhs - rhs))), 1e-9 )

    def test011_distancebound(self):
        """d(e, k a_t n_x) >= |t| on random samples"""
        count = 1000
        t = self.rng.uniform(-3, 3, count)
        x = self.rng.standard_normal((count, 2))
        g = multiply(multiply(randomK(2, self.rng, count), make_a(t, 2)), make_n(x))
        d = distance(identity(2, (count,)), g)
        self.assertTrue( np.all(d >= np.abs(t) - 1e-10), "minimum slack " + str(float(np.min(d - np.abs(t)))) )


class SpecialFunctionsTest(unittest.TestCase):
    def test001_loggamma(self):
        """log Gamma against known values and mpmath"""
        self.assertAlmostEqual( abs(log_gamma(1)), 0.0, 14 )
        self.assertAlmostEqual( complex(log_gamma(0.5)).real, 0.5 * math.log(math.pi), 14 )
        self.assertLess( abs(log_gamma(3+4j) - complex(mpmath.loggamma(3+4j))), 1e-12 )
        with self.assertRaises(PoleError):
            log_gamma(-2)

    def test002_hypergeometric(self):
        """2F1 against log 2, mpmath and its Pfaff transform"""
        self.assertLess( abs(gauss_2f1(1, 1, 2, -1) - math.log(2)), 1e-12 )
        reference = complex(mpmath.hyp2f1(0.5, 1.5, 2.5, -3))
        self.assertLess( abs(gauss_2f1(0.5, 1.5, 2.5, -3) - reference) / abs(reference), 1e-12 )
        a, b, c = 0.3+1j, 0.7, 1.9
        self.assertLess( abs(gauss_2f1(a, b, c, -0.5, method='series') - gauss_2f1(a, b, c, -0.5, method='pfaff')), 1e-12 )
        with self.assertRaises(PoleError):
            gauss_2f1(1, 1, -1, 0.5)
        with self.assertRaises(ValueError):
            gauss_2f1(1, 1, 2, 1.0)

    def test003_jacobi(self):
        """phi_lambda(0) = 1 and phi is even in lambda"""
        p = JacobiParams(1, 2)
        self.assertLess( abs(jacobi_phi(p, 1.3, 0.0) - 1), 1e-14 )
        self.assertLess( abs(jacobi_phi(p, 1.3, 0.7) - jacobi_phi(p, -1.3, 0.7)), 1e-12 )

    def test004_connection(self):
        """The hypergeometric series equals c Psi + c Psi at t = 2"""
        p = JacobiParams(1, 2)
        series = jacobi_phi(p, 0.9, 2.0, method='hypergeometric')
        expansion = jacobi_phi(p, 0.9, 2.0, method='expansion')
        self.assertLess( abs(series - expansion) / abs(series), 1e-8 )

    def test005_psi(self):
        """Psi_lambda(t) behaves like exp((i lambda - rho) t)"""
        p = JacobiParams(1, 2)
        rho = p.alpha + p.beta + 1
        leading = psi_branch(p, 0.9, 10.0) * np.exp(-(0.9j - rho) * 10.0)
        self.assertLess( abs(leading - 1), 1e-6 )
        self.assertLess( float(np.max(np.abs(theta_remainder(p, 0.9, np.linspace(1, 10, 19))))), 50 )
        with self.assertRaises(ValueError):
            psi_branch(p, 0.9, 0.5)

    def test006_cfunctions(self):
        """The c-functions of the two Jacobi pairs and the group c-function"""
        for n in (2, 3, 4, 5):
            for lam in (0.3, 1.0, 2.7):
                lower = c_small(JacobiParams(n/2 - 1, n/2), 2 * lam)
                upper = c_small(JacobiParams(n/2, n/2 - 1), 2 * lam)
                self.assertLess( abs(upper / lower - n / (2j * lam)), 1e-12 )
                self.assertLess( abs(hc_c_function(lam, n) / lower - 1), 1e-12 )
                self.assertAlmostEqual( abs(hc_c_function(-lam, n)), abs(hc_c_function(lam, n)), 12 )
        for lam in (0.3, 1.0, 2.7, 1 - 1j):
            self.assertLess( abs(hc_c_function(lam, 3) * (0.5 + 1j * lam) / 2 - 1), 1e-12, "c = 2 / (1/2 + i lambda) for n = 3" )
        for lam in (0.3, 1.0, 2.7):
            modulus = 4 * math.tanh(math.pi * lam) / (math.pi * lam)
            self.assertLess( abs(abs(hc_c_function(lam, 2))**2 / modulus - 1), 1e-12, "|c|^2 = 4 tanh(pi lambda) / (pi lambda) for n = 2" )

    def test007_plancherel(self):
        """2|c|^2 nu = gamma0 and the Strichartz constant is 1/(pi nu)"""
        for n in (2, 3, 4, 5):
            for lam in (0.5, 1.0, 3.0):
                nu = plancherel_density(lam, n)
                self.assertAlmostEqual( 2 * abs(hc_c_function(lam, n))**2 * nu / gamma0(n), 1.0, 12 )
                self.assertAlmostEqual( strichartz_constant(lam, n) * nu, 1 / math.pi, 12 )
                self.assertGreater( printed_density(lam, n), 0 )
        with self.assertRaises(PoleError):
            plancherel_density(0.0, 2)
        with self.assertRaises(PoleError):
            hc_c_function(0.0, 3)
        self.assertEqual( SpectralParameter(1.0, 4).rho, 1.5 )

    def test008_reflection(self):
        """Gamma(z) Gamma(1-z) = pi / sin(pi z) on random z"""
        rng = np.random.default_rng(8)
        z = rng.uniform(-3, 3, 50) + 1j * rng.uniform(-3, 3, 50)
        product = np.exp(log_gamma(z) + log_gamma(1 - z))
        self.assertLess( float(np.max(np.abs(product * np.sin(np.pi * z) / np.pi - 1))), 1e-10 )

    def test009_seriescap(self):
        """A series that has not converged within the term cap raises"""
        with self.assertRaises(ConvergenceError):
            gauss_2f1(10, 10, 1, -0.999999, method='series')


class QuadratureTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(4)

    def test001_spheremoments(self):
        """Second moments on S^dim are 1/(dim+1)"""
        for dim in (1, 2, 3):
            grid = sphere_grid(dim, 16)
            self.assertAlmostEqual( float(grid.weights.sum()), 1.0, 14 )
            for i in range(dim + 1):
                self.assertAlmostEqual( float(grid.integrate(grid.nodes[:,i]**2)), 1 / (dim + 1), 12 )
                self.assertAlmostEqual( float(grid.integrate(grid.nodes[:,i])), 0.0, 12 )
        x, w = gauss_legendre(0, 1, 8)
        self.assertAlmostEqual( float(w @ x**5), 1 / 6, 14 )

    def test002_ksection(self):
        """k(xi) moves the base point to xi and k(1) is the identity"""
        self.assertTrue( np.allclose(k_section([1.0, 0.0, 0.0]).a, [1, 0, 0, 0]) )
        xi = self.rng.standard_normal((20, 3))
        xi /= np.linalg.norm(xi, axis=-1, keepdims=True)
        self.assertTrue( np.allclose(ball_action(k_section(xi), np.array([1.0, 0.0, 0.0])), xi, atol=1e-10) )

    def test003_minvariance(self):
        """Descended grids reject integrands that are not M-invariant"""
        grid = descended_grid(3, 16)
        self.assertAlmostEqual( float(integrate_K(lambda k: np.ones(k.shape), grid)), 1.0, 12 )
        with self.assertRaises(GridError):
            integrate_K(lambda k: k.a[...,1], grid)

    def test004_poissonkernel(self):
        """int_K exp(-2 rho H(g^-1 k)) dk = 1"""
        for n in (2, 3):
            g = randomelements(n - 1, self.rng, tmax=1.0)
            ginv = vinverse(g)
            rho = (n - 1) / 2
            def f(k):
                return np.exp(-2 * rho * hyperbolic_H(multiply(ginv, k)))
            self.assertAlmostEqual( float(integrate_K(f, descended_grid(n, 64))), 1.0, 6 )

    def test005_fullgrid(self):
        """Full K grids carry the Haar measure"""
        grid = full_k_grid(3, 16)
        self.assertAlmostEqual( float(grid.weights.sum()), 1.0, 14 )
        self.assertAlmostEqual( float(grid.weights @ grid.elements.a[:,0]**2), 0.25, 12 )
        self.assertFalse( grid.descended )
        with self.assertRaises(GridError):
            full_k_grid(4, 8)

    def test006_ballvolume(self):
        """Ball volumes against 2(cosh R - 1) for n=2"""
        ball = BallGrid(2, 3.0)
        for r in (1.0, 2.0, 3.0):
            self.assertAlmostEqual( float(ball.volume(r)), 2 * (math.cosh(r) - 1), 10 )
        with self.assertRaises(GridError):
            ball.radiusindex(1.5)

    def test007_horospherevolume(self):
        """Horospherical coordinates reproduce the ball volume"""
        R0 = 2.0
        for n in (2, 3):
            total = 0.0
            for lo, hi in ((-R0, 0.0), (0.0, R0)):
                ts, tw = gauss_legendre(lo, hi, 100)
                for t, w in zip(ts, tw):
                    nodes, weights = horosphere_grid(n, t, R0, 64)
                    total += w * weights.sum()
            volume = BallGrid(n, R0).volume(R0)
            self.assertLess( abs(haar_N_constant(n) * total / volume - 1), 1e-3, "n=" + str(n) )


class SphericalTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(5)

    def test001_identity(self):
        """Phi(e) is the identity"""
        spec = SphericalSpec(3, 'full', 'plus', 1.3)
        self.assertTrue( np.allclose(spherical_function(spec, identity(2)), np.eye(2)) )
        self.assertTrue( np.allclose(spherical_matrix(spec, 0.0), np.eye(2)) )

    def test002_eisenstein(self):
        """The Eisenstein integral equals the closed form on A"""
        for spec, t, order in ((SphericalSpec(2, 'plus', 'full', 1.0), 1.0, 128), (SphericalSpec(3, 'full', 'plus', 0.7), 0.5, 48)):
            closed = spherical_matrix(spec, t)
            computed = eisenstein_integral(spec, geodesic_a(t, spec.m), order=order)
            self.assertLess( float(operatornorm(computed - closed)), 1e-6, repr(spec) )

    def test003_covariance(self):
        """Phi(k1 g k2) = tau(k2)^-1 Phi(g) tau(k1)^-1"""
        spec = SphericalSpec(3, 'full', 'minus', 1.1)
        k1 = randomK(2, self.rng)
        k2 = randomK(2, self.rng)
        g = multiply(multiply(k1, geodesic_a(1.2, 2)), k2)
        rhs = dagger(evaluate(spec.rep, k2.a)) @ spherical_matrix(spec, 1.2) @ dagger(evaluate(spec.rep, k1.a))
        self.assertLess( float(operatornorm(spherical_function(spec, g) - rhs)), 1e-10 )

    def test004_weyl(self):
        """Phi is invariant under (sigma, lambda) -> (w sigma, -lambda)"""
        g = randomelements(2, self.rng, 5)
        for sigma in ('plus', 'minus'):
            spec = SphericalSpec(3, 'full', sigma, 0.8)
            self.assertLess( float(np.max(operatornorm(spherical_function(spec.weyl(), g) - spherical_function(spec, g)))), 1e-10 )

    def test005_convergence(self):
        """A coarse Eisenstein integral fails its convergence estimate"""
        spec = SphericalSpec(2, 'plus', 'full', 1.0)
        with self.assertRaises(GridError):
            eisenstein_integral(spec, geodesic_a(3.0, 1), order=4, richardson=True, tolerance=1e-12)

    def test006_asymptotics(self):
        """The defect against the leading term decays"""
        spec = SphericalSpec(3, 'full', 'plus', 1.0)
        defects = asymptotic_defect(spec, np.array([4.0, 8.0]))
        self.assertLess( defects[1], defects[0] )

    def test007_fatou(self):
        """The scaled spherical function tends to d c(lambda,tau) P_sigma"""
        with self.assertRaises(ValueError):
            fatou_limit_check(SphericalSpec(3, 'full', 'plus', 1.0), 8.0)
        spec = SphericalSpec(3, 'full', 'plus', 1.0 - 1.0j)
        self.assertLess( float(operatornorm(fatou_limit_check(spec, 8.0))), 1e-3 )

    def test008_leadingcoefficient(self):
        """Summed independently, the scaled components tend to c(lambda)/2 for n = 2 and c(lambda) for n = 3"""
        lam = 1 - 1j
        t = 30.0
        with mpmath.workdps(40):
            il = mpmath.mpc(1j * lam)
            even = mpmath.exp((0.5 - il) * t) * mpmath.cosh(t / 2) * jacobi_oracle(0, 1, 2 * lam, t / 2)
            C = mpmath.cosh(t / 2) * jacobi_oracle(0.5, 1.5, 2 * lam, t / 2)
            S = (2 * lam / 3) * mpmath.sinh(t / 2) * jacobi_oracle(1.5, 0.5, 2 * lam, t / 2)
            odd = mpmath.exp((1 - il) * t) * (C + 1j * S)
            c2 = 4 * mpmath.power(2, -2 * il) * mpmath.gamma(2 * il) / (mpmath.gamma(il + 1) * mpmath.gamma(il))
            even, odd, c2 = complex(even), complex(odd), complex(c2)
        self.assertLess( abs(even / c2 - 0.5), 1e-10, "n = 2 limit is half the c-function" )
        self.assertLess( abs(even / (dimensionratio(2) * tau_c_function(lam, 2)) - 1), 1e-10 )
        self.assertLess( abs(odd * (0.5 + 1j * lam) / 2 - 1), 1e-10, "n = 3 limit is the c-function" )
        self.assertLess( abs(odd / (dimensionratio(3) * tau_c_function(lam, 3)) - 1), 1e-10 )
        spec = SphericalSpec(2, 'plus', 'full', lam)
        self.assertLess( abs(complex(np.exp((spec.rho - 1j * lam) * t) * spherical_matrix(spec, t)[0,0]) / even - 1), 1e-8 )


class TransformsTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(6)
        self.spec = SphericalSpec(2, 'plus', 'full', 1.0)
        self.grid = descended_grid(2, 128)
        self.combo = PFunctionCombo.random(self.spec, self.rng, count=3)

    def test001_boundarysection(self):
        """Boundary values are checked for shape and for a descended grid"""
        with self.assertRaises(ValueError):
            BoundarySection(self.spec, self.grid, np.zeros((3, 1)))
        with self.assertRaises(GridError):
            BoundarySection(self.spec, full_k_grid(2, 16), np.zeros((16, 1)))

    def test002_gram(self):
        """Quadrature Gram matrix of p-functions against the closed form"""
        sections = [ term.boundary(self.grid) for term in self.combo.terms() ]
        self.assertLess( float(np.max(np.abs(gram_matrix(sections) - self.combo.gram()))), 1e-8 )
        single = p_function(self.spec, self.combo.elements[0], self.combo.vectors[0], self.grid)
        self.assertTrue( np.allclose(single.values, sections[0].values) )

    def test003_intertwiner(self):
        """U_w preserves inner products"""
        before = gram_matrix([ term.boundary(self.grid) for term in self.combo.terms() ])
        after = gram_matrix([ term.boundary(self.grid) for term in intertwiner_U(self.combo).terms() ])
        self.assertLess( float(np.max(np.abs(after - before))), 1e-8 )
        self.assertEqual( intertwiner_U(self.combo).spec.lam, -1.0 )
        with self.assertRaises(ValueError):
            intertwiner_U(self.combo, 'x')

    def test004_poisson(self):
        """Poisson transform by quadrature against the closed form"""
        x = randomelements(1, self.rng, 4, tmax=0.5)
        computed = poisson_transform(self.combo.boundary(self.grid), x)
        closed = self.combo.poisson(x)
        self.assertLess( float(np.max(np.abs(computed - closed)) / np.max(np.abs(closed))), 1e-6 )

    def test005_bump(self):
        """Bumps are K-covariant and vanish outside their support"""
        rep = self.spec.rep
        f = random_bump(rep, 1.5, self.rng)
        self.assertLess( covariance_defect(f, self.rng), 1e-8 )
        self.assertTrue( np.allclose(f(geodesic_a(2.0, 1)), 0) )
        g = random_bump(rep, 1.0, self.rng)
        self.assertEqual( combine([f, g], [1.0, 2j]).support, 1.5 )
        unbounded = BundleSection(rep, lambda x: np.ones(x.shape + (1,)))
        with self.assertRaises(GridError):
            HorosphericalFourier(unbounded, self.grid)

    def test006_fourier(self):
        """Horospherical and polar Fourier transforms agree and are adjoint to the Poisson transform"""
        grid = descended_grid(2, 64)
        f = random_bump(self.spec.rep, 1.0, self.rng)
        F = PFunctionCombo.random(self.spec, self.rng, count=2).boundary(grid)
        fourier = HorosphericalFourier(f, grid, order=64, horo_order=24)
        self.assertLess( adjointness_defect(f, F, fourier, panel_order=16, angular_order=64), 1e-5 )
        horospherical = fourier.transform(self.spec)
        polar = PolarFourier(f, grid, panel_order=16, angular_order=64).transform(self.spec)
        self.assertLess( math.sqrt((horospherical - polar).norm2() / horospherical.norm2()), 1e-4 )
        self.assertEqual( radon_transform(f, self.spec, [0.0, 0.5], grid.elements[:4]).shape, (2, 4, 1) )
        self.assertEqual( fourier.radon(self.spec).shape, (64, 64, 1) )
        with self.assertRaises(ValueError):
            helgason_fourier(f, self.spec, grid, method='fft')
        x = randomelements(1, self.rng, 3, tmax=0.5)
        projected = spectral_projection(f, self.spec, x, grid, fourier=fourier)
        self.assertEqual( projected.shape, (3, 1) )
        self.assertTrue( np.all(np.isfinite(projected)) )

    def test007_scattering(self):
        """The scattering profile is invariant under U_w"""
        x = randomelements(1, self.rng, 8, tmax=3.0)
        profile = scattering_profile(self.combo, x)
        self.assertLess( float(np.max(np.abs(scattering_profile(intertwiner_U(self.combo), x) - profile))), 1e-9 * float(np.max(np.abs(profile))) )

    def test008_norms(self):
        """The ladder is checked and the plus norm of a single lambda is the star norm"""
        with self.assertRaises(ValueError):
            checkladder(2, [0.5, 1.0])
        with self.assertRaises(ValueError):
            checkladder(3, [2.0, 1.0])
        def psi(lam, g):
            return self.combo.relabel(self.spec.withlambda(lam)).poisson(g)
        star = star_norm(self.combo.poisson, 2, [1.0, 2.0], panel_order=8, angular_order=32)
        plus = plus_norm(psi, 2, [1.0], [1.0], [1.0, 2.0], panel_order=8, angular_order=32)
        self.assertGreater( star, 0 )
        self.assertAlmostEqual( plus / star, 1.0, 12 )

    def test009_radon(self):
        """The Radon transform vanishes beyond the support and is even for a bump without angular part"""
        grid = descended_grid(2, 64)
        k = grid.elements[:4]
        f = random_bump(self.spec.rep, 1.0, self.rng)
        self.assertLess( float(np.max(np.abs(radon_transform(f, self.spec, [-1.5, -1.0, 1.0, 1.2], k)))), 1e-10 )
        self.assertGreater( float(np.max(np.abs(radon_transform(f, self.spec, [0.5], k)))), 0 )
        symmetric = bump_section(self.spec.rep, 1.0, [1.0])
        t = np.array([0.15, 0.35, 0.55])
        profile = radon_transform(symmetric, self.spec, np.concatenate((t, -t)), k, order=128)
        self.assertLess( float(np.max(np.abs(profile[:3] - profile[3:]))), 1e-6 * float(np.max(np.abs(profile))) )

    def test010_spectralprojection(self):
        """The spectral projection is nu P F f, linear in f and unchanged under (sigma, lambda) -> (w sigma, -lambda)"""
        grid = descended_grid(2, 128)
        rep = self.spec.rep
        f = random_bump(rep, 1.0, self.rng)
        g = random_bump(rep, 1.0, self.rng)
        x = randomelements(1, self.rng, 3, tmax=0.5)
        def fourier(h):
            return HorosphericalFourier(h, grid, order=64, horo_order=48)
        projected = spectral_projection(f, self.spec, x, grid, fourier=fourier(f))
        scale = float(np.max(np.abs(projected)))
        chained = plancherel_density(1.0, 2) * poisson_transform(helgason_fourier(f, self.spec, grid, order=64, horo_order=48), x)
        self.assertLess( float(np.max(np.abs(projected - chained))), 1e-12 * scale )
        combined = combine([f, g], [2.0, -1j])
        lhs = spectral_projection(combined, self.spec, x, grid, fourier=fourier(combined))
        rhs = 2.0 * projected - 1j * spectral_projection(g, self.spec, x, grid, fourier=fourier(g))
        self.assertLess( float(np.max(np.abs(lhs - rhs))), 1e-10 * float(np.max(np.abs(rhs))) )
        weyl = spectral_projection(f, self.spec.weyl(), x, grid, fourier=fourier(f))
        self.assertLess( float(np.max(np.abs(weyl - projected))), 1e-5 * scale )

    def test011_poissoncompatibility(self):
        """P_{sigma,lambda} F = P_{w sigma,-lambda} U_w F at random points"""
        grid = descended_grid(2, 256)
        x = randomelements(1, self.rng, 5, tmax=0.5)
        U = intertwiner_U(self.combo)
        computed = poisson_transform(self.combo.boundary(grid), x)
        scale = float(np.max(np.abs(computed)))
        self.assertLess( float(np.max(np.abs(poisson_transform(U.boundary(grid), x) - computed))), 1e-6 * scale )
        self.assertLess( float(np.max(np.abs(U.poisson(x) - self.combo.poisson(x)))), 1e-10 * scale )

    def test012_gramcondition(self):
        """Six separated p-functions have a well conditioned Gram matrix"""
        combo = PFunctionCombo.random(self.spec, self.rng, count=6, tmax=1.0, xscale=0.5)
        self.assertLess( np.linalg.cond(combo.gram()), 1e8 )
        sections = [ term.boundary(self.grid) for term in combo.terms() ]
        self.assertLess( np.linalg.cond(gram_matrix(sections)), 1e8 )


class EvaluationTest(unittest.TestCase):
    def setUp(self):
        records = [ Record('jacobi-connection', 2, 'full', 1.0, 0.5, 2.5, target=2.0, label='connection'),
                    Record('jacobi-connection', 2, 'full', 1.0, 1.5, float('nan'), abs_err=float('inf'), provenance='series', label='theta', judged=False) ]
        self.report = Report('jacobi-connection', 4, {'n': [2]}, records, {'max_connection': 0.25}, 0.1, False)

    def test001_record(self):
        """Errors of a record with a target"""
        record = self.report.records[0]
        self.assertAlmostEqual( record.abs_err, 0.5 )
        self.assertAlmostEqual( record.rel_err, 0.25 )
        self.assertEqual( len(record.csvrow()), len(CSVCOLUMNS) )
        self.assertEqual( self.report.records[1].error(), float('inf') )
        self.assertEqual( self.report.maxerror(), 0.25 )

    def test002_csv(self):
        """CSV output has the fixed header"""
        text = emit_report(self.report)
        self.assertEqual( text.splitlines()[0], ','.join(CSVCOLUMNS) )
        rows = parse_csv(text)
        self.assertEqual( len(rows), 2 )
        self.assertEqual( rows[0]['sigma'], 'full' )
        self.assertIn( 'acceptance criterion 4', self.report.header )

    def test003_json(self):
        """JSON output parses back into equal reports, non-finite values included"""
        parsed = parse_json(emit_report([self.report], 'json'))
        self.assertEqual( parsed[0], self.report )
        self.assertTrue( math.isnan(parsed[0].records[1].computed.real) )
        with self.assertRaises(ValueError):
            parse_json('{"schema_version": 99, "reports": []}')
        with self.assertRaises(ValueError):
            emit_report(self.report, 'xml')


class RunnerTest(unittest.TestCase):
    def test001_parsevalue(self):
        """Command line values"""
        self.assertEqual( parsevalue('3'), 3 )
        self.assertEqual( parsevalue('-2'), -2 )
        self.assertEqual( parsevalue('0.5'), 0.5 )
        self.assertEqual( parsevalue('1,2'), [1, 2] )
        self.assertEqual( parsevalue('plus'), 'plus' )

    def test002_mergeconfig(self):
        """Scenario entries are updated by id and appended otherwise"""
        merged = mergeconfig({'seed': 0, 'scenarios': [{'id': 'a', 'x': 1}]}, {'seed': 2, 'scenarios': [{'id': 'a', 'x': 2}, {'id': 'b'}]})
        self.assertEqual( merged['seed'], 2 )
        self.assertEqual( [ s['id'] for s in merged['scenarios'] ], ['a', 'b'] )
        self.assertEqual( merged['scenarios'][0]['x'], 2 )
        with self.assertRaises(ConfigurationError):
            mergeconfig({'scenarios': []}, {'scenarios': [{'x': 1}]})

    def test003_run(self):
        """A selected scenario runs and passes"""
        experimenter = Experimenter(select=['clifford-axioms'], parameters={'m': [1, 2]}, logfunction=quiet)
        self.assertEqual( len(experimenter), 1 )
        reports = experimenter.run()
        self.assertTrue( reports[0].passed )
        self.assertEqual( reports[0].criterion, 1 )

    def test004_configurationerrors(self):
        """Unknown scenarios and labels of the wrong parity are rejected"""
        with self.assertRaises(ConfigurationError):
            Experimenter(select=['no-such-scenario'], logfunction=quiet)
        with self.assertRaises(ValueError):
            Experimenter(select=['eisenstein'], parameters={'n': [3], 'sigma': 'full'}, logfunction=quiet)
        with self.assertRaises(ConfigurationError):
            FatouLimit(None, 0, id='fatou-limit', imag=1.0)

    def test005_threads(self):
        """Reports do not depend on the number of worker processes"""
        parameters = {'n': [2], 'lambda': [1.0], 't': [1.5, 2.5], 'odet': [0.5, 1.0], 'thetat': [1.0, 5.0]}
        texts = []
        for threads in (1, 2):
            experimenter = Experimenter(select=['jacobi-connection'], parameters=parameters, threads=threads, seed=7, logfunction=quiet)
            texts.append(emit_report(experimenter.run()))
        self.assertEqual( texts[0], texts[1] )

    def test006_tolerance(self):
        """A tolerance override makes a scenario fail"""
        experimenter = Experimenter(select=['jacobi-connection'], parameters={'n': [2], 'lambda': [1.0], 'tolerance': 1e-30}, logfunction=quiet)
        self.assertFalse( experimenter.run()[0].passed )

    def test007_doubling(self):
        """The restriction scenario judges consecutive doublings of the radius"""
        scenario = Restriction(None, 0, id='restriction', logfunction=quiet)
        good = [ scenario.record(2, 'full', None, R, s, label='sup', judged=False) for R, s in ((1, 1.0), (2, 1.5), (4, 2.0)) ]
        passed, summary = scenario.judge(good)
        self.assertTrue( passed )
        self.assertEqual( len([ r for r in good if r.label == 'doubling' ]), 2 )
        bad = [ scenario.record(2, 'full', None, R, s, label='sup', judged=False) for R, s in ((1, 1.0), (2, 1.5), (4, 4.0)) ]
        passed, summary = scenario.judge(bad)
        self.assertFalse( passed )

class HelpersTest(unittest.TestCase):
    def test001_generator(self):
        """Generator streams depend on the whole key"""
        self.assertEqual( generator(0, 1, 2).random(), generator(0, 1, 2).random() )
        self.assertNotEqual( generator(0, 1, 2).random(), generator(0, 2, 1).random() )

    def test002_cache(self):
        """The cache drops its oldest entry and size 0 stores nothing"""
        calls = []
        @cached(2)
        def square(x):
            calls.append(x)
            return x * x
        for x in (1, 2, 1, 3, 1):
            self.assertEqual( square(x), x * x )
        self.assertEqual( calls, [1, 2, 3, 1] )
        self.assertEqual( list(square.cache.keys()), [(3,), (1,)] )
        passthrough = cached(0)(lambda x: x)
        passthrough(1)
        self.assertEqual( len(passthrough.cache), 0 )
        self.assertIs( descended_grid(3, 8), descended_grid(3, 8), "Grids are shared" )
        self.assertIn( (3, 8), descended_grid.cache )

    def test003_richardson(self):
        """One Richardson step removes a first order error"""
        self.assertAlmostEqual( richardson(1.0 + 0.1, 1.0 + 0.2), 1.0, 12 )



if __name__ == '__main__':
    unittest.main()
