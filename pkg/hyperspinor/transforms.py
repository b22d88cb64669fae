#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""Poisson, Helgason-Fourier and Radon transforms of the spinor bundle,
spectral projections, p-functions with their Weyl intertwiner, the
scattering profile of Poisson transforms and the ball-averaged norms.

Boundary sections F in L^2(K,sigma) are sampled at the section points
k(xi) of a descended K grid and take values in P_sigma V_tau. Bundle
sections f in L^2(G,tau) are callables on batches of group elements.
The Haar measure of G/K is (2 sinh t)^(n-1) dt dk in polar coordinates
and C_n dt dy in horospherical coordinates k a_t n_y.
"""

from collections import namedtuple
import numpy as np

from hyperspinor.spinreps import evaluate, sigmalabels
from hyperspinor.vahlen import VahlenElement, multiply, inverse, hyperbolic_H, hyperbolic_A, iwasawa_kappa, \
        cartan, geodesic_a, make_n, origin_image, randomelements, randomK
from hyperspinor.clifford import norm2
from hyperspinor.special import plancherel_density, tau_c_function
from hyperspinor.spherical import SphericalSpec, spherical_function
from hyperspinor.quadrature import BallGrid, horosphere_grid, haar_N_constant, gauss_legendre, GridError
from hyperspinor.helpers.common import dagger, energy, smoothbump, smoothstep

COVARIANCETOLERANCE = 1e-8

RestrictionReport = namedtuple('RestrictionReport', ('lams','ratios','sup'))
PlancherelEnergy = namedtuple('PlancherelEnergy', ('energy','tail'))


def outerproduct(g, h):
    """The products g_i h_j over the outer product of the two batch shapes"""
    gs, hs = g.shape, h.shape
    left = VahlenElement(g.a.reshape(gs + (1,)*len(hs) + (-1,)), g.b.reshape(gs + (1,)*len(hs) + (-1,)), validate=False)
    right = VahlenElement(h.a.reshape((1,)*len(gs) + hs + (-1,)), h.b.reshape((1,)*len(gs) + hs + (-1,)), validate=False)
    return multiply(left, right)

def applymatrix(matrices, vectors):
    return np.einsum('...ij,...j->...i', matrices, vectors)


class BoundarySection:
    """F in L^2(K,sigma), one value in P_sigma V_tau per node of a descended K grid"""

    def __init__(self, spec, grid, values):
        values = np.asarray(values, dtype=complex)
        if values.shape != (len(grid), spec.dim):
            raise ValueError("Boundary values must have shape " + str((len(grid), spec.dim)) + ", got " + str(values.shape))
        if not np.all(np.isfinite(values)):
            raise ValueError("Boundary values must be finite")
        if not grid.descended:
            raise GridError("Boundary sections live on descended K grids")
        self.spec = spec
        self.grid = grid
        self.values = values

    def _compatible(self, other):
        if other.grid is not self.grid or other.spec.dim != self.spec.dim:
            raise ValueError("Boundary sections on different grids")

    def __add__(self, other):
        self._compatible(other)
        return BoundarySection(self.spec, self.grid, self.values + other.values)

    def __sub__(self, other):
        self._compatible(other)
        return BoundarySection(self.spec, self.grid, self.values - other.values)

    def __rmul__(self, scalar):
        return BoundarySection(self.spec, self.grid, scalar * self.values)

    def inner(self, other):
        """<F, G> with the conjugate on F and normalized dk"""
        self._compatible(other)
        return complex(np.sum(self.grid.weights * np.sum(np.conj(self.values) * other.values, axis=-1)))

    def norm2(self):
        return self.inner(self).real


class BundleSection:
    """A section f of the spinor bundle with f(gk) = tau(k)^-1 f(g)

    ``sample`` maps a batch of group elements to values of shape
    batch + (dim,); ``support`` is the radius of a ball around the origin
    containing the support, None when unbounded.
    """

    def __init__(self, rep, sample, support=None):
        self.rep = rep
        self.sample = sample
        self.support = support

    @property
    def n(self):
        return self.rep.n

    def __call__(self, g):
        return np.asarray(self.sample(g), dtype=complex)

    def requiresupport(self):
        if self.support is None:
            raise GridError("Transform needs a compactly supported section")
        return self.support


def combine(sections, coeffs):
    """The bundle section sum_i coeffs[i] sections[i]"""
    supports = [ s.support for s in sections ]
    support = None if any( r is None for r in supports ) else max(supports)
    def sample(g):
        return sum( c * s(g) for c, s in zip(coeffs, sections) )
    return BundleSection(sections[0].rep, sample, support)

def covariance_defect(f, rng, count=16):
    """max || f(gk) - tau(k)^-1 f(g) || over random g, k"""
    m = f.n - 1
    g = randomelements(m, rng, count, tmax=0.5 * (f.support or 2.0), xscale=0.3)
    k = randomK(m, rng, count)
    lhs = f(multiply(g, k))
    rhs = applymatrix(dagger(evaluate(f.rep, k.a)), f(g))
    return float(np.max(np.sqrt(energy(lhs - rhs))))


def bump_section(rep, R0, vector, coefficients=None):
    """chi(d(o,g.o)/R0) psi(g.0) tau(a/|a|)^-1 w, a smooth K-covariant section supported in B(R0)

    psi(p) = 1 + <coefficients, p> for the ball point p = g.0.
    """
    vector = np.asarray(vector, dtype=complex)
    coefficients = np.zeros(rep.n) if coefficients is None else np.asarray(coefficients, dtype=complex)
    def sample(g):
        profile = smoothbump(hyperbolic_A(g) / R0) * (1 + origin_image(g) @ coefficients)
        u = g.a / np.sqrt(norm2(g.a))[...,None]
        return profile[...,None] * applymatrix(dagger(evaluate(rep, u)), vector)
    return BundleSection(rep, sample, R0)

def random_bump(rep, R0, rng):
    vector = rng.standard_normal(rep.dim) + 1j * rng.standard_normal(rep.dim)
    coefficients = 0.5 * (rng.standard_normal(rep.n) + 1j * rng.standard_normal(rep.n))
    return bump_section(rep, R0, vector / np.linalg.norm(vector), coefficients)

def eigen_section(combo, R, width=1.0):
    """The Poisson transform of a p-function combination tapered to zero at distance R"""
    width = min(width, R / 2)
    def sample(g):
        taper = 1 - smoothstep((hyperbolic_A(g) - (R - width)) / width)
        return taper[...,None] * combo.poisson(g)
    return BundleSection(combo.spec.rep, sample, R)


class PFunctionCombo:
    """sum_i coeffs[i] p^{g_i,v_i}_{sigma,lambda} with p^{g,v}(k) = exp((i lambda - rho) H(g^-1 k)) P_sigma tau(kappa(g^-1 k))^-1 v"""

    def __init__(self, spec, elements, vectors, coeffs=None):
        if not elements.shape:
            elements = elements.reshape((1,))
        vectors = np.asarray(vectors, dtype=complex).reshape(len(elements), spec.dim)
        if not np.all(np.isfinite(vectors)):
            raise ValueError("p-function vectors must be finite")
        self.spec = spec
        self.elements = elements
        self.vectors = vectors
        self.coeffs = np.ones(len(elements), dtype=complex) if coeffs is None else np.asarray(coeffs, dtype=complex)

    @classmethod
    def random(cls, spec, rng, count=3, tmax=0.5, xscale=0.3):
        elements = randomelements(spec.m, rng, count, tmax=tmax, xscale=xscale)
        vectors = rng.standard_normal((count, spec.dim)) + 1j * rng.standard_normal((count, spec.dim))
        coeffs = rng.standard_normal(count) + 1j * rng.standard_normal(count)
        return cls(spec, elements, vectors, coeffs)

    def __len__(self):
        return len(self.elements)

    def relabel(self, spec):
        return PFunctionCombo(spec, self.elements, self.vectors, self.coeffs)

    def terms(self):
        """The single p-functions, with unit coefficients"""
        return [ PFunctionCombo(self.spec, self.elements[i:i+1], self.vectors[i:i+1]) for i in range(len(self)) ]

    def evaluate(self, k):
        """Values at a batch of K elements, shape k.shape + (dim,)"""
        spec = self.spec
        y = outerproduct(inverse(self.elements), k)
        weight = np.exp((1j * spec.lam - spec.rho) * hyperbolic_H(y))
        projected = spec.projector @ dagger(evaluate(spec.rep, iwasawa_kappa(y)))
        vectors = np.einsum('n...ij,nj->n...i', projected, self.vectors)
        return np.einsum('n,n...,n...i->...i', self.coeffs, weight, vectors)

    def boundary(self, grid):
        return BoundarySection(self.spec, grid, self.evaluate(grid.elements))

    def poisson(self, x):
        """Closed form d^-1/2 sum_i coeffs[i] Phi(g_i^-1 x) v_i"""
        Phi = spherical_function(self.spec, outerproduct(inverse(self.elements), x))
        values = np.einsum('n...ij,nj->n...i', Phi, self.vectors)
        return np.einsum('n,n...i->...i', self.coeffs, values) / np.sqrt(self.spec.d)

    def gram(self):
        """Closed-form Gram matrix of the single terms, <p_i, p_j> = d^-1 v_i^H Phi(g_j^-1 g_i) v_j (real lambda)"""
        Phi = spherical_function(self.spec, outerproduct(inverse(self.elements), self.elements))
        return np.einsum('ia,jiab,jb->ij', np.conj(self.vectors), Phi, self.vectors) / self.spec.d

    def norm2(self):
        return float(np.real(np.conj(self.coeffs) @ self.gram() @ self.coeffs))


def p_function(spec, g, v, grid):
    return PFunctionCombo(spec, g, np.asarray(v)[None,:]).boundary(grid)

def gram_matrix(sections):
    """Quadrature Gram matrix <F_i, F_j> of boundary sections"""
    return np.array([ [ Fi.inner(Fj) for Fj in sections ] for Fi in sections ])

def intertwiner_U(combo, s='w'):
    """U_{s,lambda}: p^{g,v}_{sigma,lambda} -> p^{g,v}_{s sigma, s lambda}"""
    if s in ('e', 'identity'):
        return combo
    if s == 'w':
        return combo.relabel(combo.spec.weyl())
    raise ValueError("Weyl group element must be 'e' or 'w', got " + str(s))


class PoissonKernel:
    """H(x^-1 k) and tau(kappa(x^-1 k)) for a batch of points x against the nodes k of a K grid"""

    def __init__(self, rep, x, grid):
        y = outerproduct(inverse(x), grid.elements)
        self.grid = grid
        self.H = hyperbolic_H(y)
        self.tkappa = evaluate(rep, iwasawa_kappa(y))

    def apply(self, values, spec):
        kernel = self.grid.weights * np.exp(-(1j * spec.lam + spec.rho) * self.H)
        return np.sqrt(spec.d) * np.einsum('...k,...kij,kj->...i', kernel, self.tkappa, values)

def poisson_transform(F, x, kernel=None, chunk=64):
    """sqrt(d) int_K exp(-(i lambda + rho) H(x^-1 k)) tau(kappa(x^-1 k)) F(k) dk

    Without a precomputed kernel, batches of points are processed
    ``chunk`` rows at a time.
    """
    if kernel is not None:
        return kernel.apply(F.values, F.spec)
    if not x.shape:
        return PoissonKernel(F.spec.rep, x, F.grid).apply(F.values, F.spec)
    result = np.empty(x.shape + (F.spec.dim,), dtype=complex)
    for i in range(0, x.shape[0], chunk):
        result[i:i+chunk] = PoissonKernel(F.spec.rep, x[i:i+chunk], F.grid).apply(F.values, F.spec)
    return result


def _horocycles(f, k, s, R0, order, angular_order):
    """exp(rho s) C_n int f(k a_s n_y) dy for every k node and s value, shape (len(s), len(k), dim)"""
    n = f.n
    rho = (n - 1) / 2
    result = np.zeros((len(s), len(k), f.rep.dim), dtype=complex)
    for j, sj in enumerate(s):
        nodes, weights = horosphere_grid(n, sj, R0, order, angular_order)
        if len(weights) == 0:
            continue
        horocycle = multiply(geodesic_a(sj, n - 1), make_n(nodes))
        values = f(outerproduct(k, horocycle))
        result[j] = np.exp(rho * sj) * haar_N_constant(n) * np.tensordot(values, weights, axes=([1],[0]))
    return result


class HorosphericalFourier:
    """The Helgason-Fourier transform of f through its horocycle integrals

    For fixed k, H(x^-1 k) = -s on x = k a_s n_y, so F f(lambda, k) is the
    Euclidean Fourier transform in s of the Radon profile.
    """

    def __init__(self, f, grid, order=64, horo_order=24, angular_order=None):
        R0 = f.requiresupport()
        self.grid = grid
        self.s, self.sweights = gauss_legendre(-R0, R0, order)
        self.profile = _horocycles(f, grid.elements, self.s, R0, horo_order, angular_order)

    def radon(self, spec):
        return np.sqrt(spec.d) * self.profile @ spec.projector.T

    def transform(self, spec):
        phases = self.sweights * np.exp(-1j * spec.lam * self.s)
        values = np.tensordot(phases, self.profile, axes=1) @ spec.projector.T
        return BoundarySection(spec, self.grid, np.sqrt(spec.d) * values)


class PolarFourier:
    """The Helgason-Fourier transform of f by polar quadrature over the ball containing its support"""

    def __init__(self, f, grid, panel_order=16, angular_order=64, chunk=16):
        R0 = f.requiresupport()
        ball = BallGrid(f.n, R0, panel_order, angular_order)
        points = ball.points()
        rho = (f.n - 1) / 2
        self.grid = grid
        self.H = np.empty(ball.shape + (len(grid),))
        self.Z = np.empty(ball.shape + (len(grid), f.rep.dim), dtype=complex)
        for i in range(0, len(ball.t), chunk):
            rows = points[i:i+chunk]
            y = outerproduct(inverse(rows), grid.elements)
            H = hyperbolic_H(y)
            weight = ball.weights[i:i+chunk,:,None] * np.exp(-rho * H)
            self.H[i:i+chunk] = H
            self.Z[i:i+chunk] = weight[...,None] * np.einsum('tbkji,tbj->tbki', np.conj(evaluate(f.rep, iwasawa_kappa(y))), f(rows))

    def transform(self, spec):
        values = np.einsum('tbk,tbki->ki', np.exp(1j * spec.lam * self.H), self.Z) @ spec.projector.T
        return BoundarySection(spec, self.grid, np.sqrt(spec.d) * values)

def fourierdata(f, grid, method='horospherical', **kwargs):
    if method == 'horospherical':
        return HorosphericalFourier(f, grid, **kwargs)
    elif method == 'ball':
        return PolarFourier(f, grid, **kwargs)
    raise ValueError("Unknown Fourier method: " + str(method))

def helgason_fourier(f, spec, grid, method='horospherical', **kwargs):
    """sqrt(d) P_sigma int_G exp((i lambda - rho) H(g^-1 k)) tau(kappa(g^-1 k))^-1 f(g) dg on the grid nodes k"""
    return fourierdata(f, grid, method, **kwargs).transform(spec)

def radon_transform(f, spec, t, k, order=24, angular_order=None):
    """sqrt(d) P_sigma exp(rho t) int_N f(k a_t n) dn, shape (len(t), len(k), dim)"""
    R0 = f.requiresupport()
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if not k.shape:
        k = k.reshape((1,))
    return np.sqrt(spec.d) * _horocycles(f, k, t, R0, order, angular_order) @ spec.projector.T


def spectral_projection(f, spec, x, grid, fourier=None, kernel=None):
    """nu(lambda) P_{sigma,lambda} F_{sigma,lambda} f at the points x"""
    if fourier is None:
        fourier = HorosphericalFourier(f, grid)
    return plancherel_density(spec.lam.real, spec.n) * poisson_transform(fourier.transform(spec), x, kernel)

def inversion(f, tau, lams, weights, x, grid, fourier=None):
    """sum over sigma of int nu(lambda) P F f(x) d lambda on a truncated lambda grid"""
    if fourier is None:
        fourier = HorosphericalFourier(f, grid)
    kernel = PoissonKernel(f.rep, x, grid)
    total = 0
    for sigma in sigmalabels(f.n):
        for lam, w in zip(lams, weights):
            spec = SphericalSpec(f.n, tau, sigma, lam)
            total = total + w * plancherel_density(lam, f.n) * kernel.apply(fourier.transform(spec).values, spec)
    return total

def plancherel_energy(f, tau, lams, weights, grid, fourier=None, tailfraction=0.1):
    """int nu(lambda) sum_sigma ||F_{sigma,lambda} f||^2 d lambda, with the share of the top of the lambda range as tail"""
    if fourier is None:
        fourier = HorosphericalFourier(f, grid)
    lams = np.asarray(lams, dtype=float)
    density = np.zeros(len(lams))
    for sigma in sigmalabels(f.n):
        for i, lam in enumerate(lams):
            density[i] += fourier.transform(SphericalSpec(f.n, tau, sigma, lam)).norm2()
    integrand = np.asarray(weights) * plancherel_density(lams, f.n) * density
    tail = lams >= lams.max() - tailfraction * (lams.max() - lams.min())
    return PlancherelEnergy(float(integrand.sum()), float(integrand[tail].sum()))

def l2_norm2(f, R=None, panel_order=16, angular_order=64):
    grid = BallGrid(f.n, f.requiresupport() if R is None else R, panel_order, angular_order)
    return float(grid.integrate(energy(f(grid.points()))))

def adjointness_defect(f, F, fourier=None, panel_order=16, angular_order=64):
    """|<F f, F> - <f, P F>| relative to ||f|| ||F||"""
    if fourier is None:
        fourier = HorosphericalFourier(f, F.grid)
    lhs = fourier.transform(F.spec).inner(F)
    ball = BallGrid(f.n, f.requiresupport(), panel_order, angular_order)
    points = ball.points()
    fvalues = f(points)
    PF = poisson_transform(F, points)
    rhs = complex(ball.integrate(np.sum(np.conj(fvalues) * PF, axis=-1)))
    scale = np.sqrt(float(ball.integrate(energy(fvalues))) * F.norm2())
    return abs(lhs - rhs) / scale


def scattering_profile(combo, x):
    """sqrt(d) tau(k2(x))^-1 sum_s exp((i s lambda - rho) A(x)) c(s lambda, tau) (U_s F)(k1(x))"""
    spec = combo.spec
    factors = cartan(x)
    A = 2 * factors.t
    total = 0
    for s in ('e', 'w'):
        U = intertwiner_U(combo, s)
        coefficient = np.exp((1j * U.spec.lam - spec.rho) * A) * tau_c_function(U.spec.lam, spec.n)
        total = total + coefficient[...,None] * U.evaluate(factors.k1)
    return np.sqrt(spec.d) * applymatrix(dagger(evaluate(spec.rep, factors.k2.a)), total)


def checkladder(n, radii):
    radii = np.asarray(radii, dtype=float)
    if len(radii) == 0 or np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise ValueError("R-ladder must be positive and increasing, got " + str(list(radii)))
    if n % 2 == 0 and radii[0] < 1:
        raise ValueError("Ball norms are taken over R >= 1 for n even")
    return radii

def _ballenergies(functions, ball, radii, chunk=64):
    points = ball.points()
    results = []
    for h in functions:
        density = np.empty(ball.shape)
        for i in range(0, len(ball.t), chunk):
            density[i:i+chunk] = energy(h(points[i:i+chunk]))
        edges, integrals = ball.ballintegrals(density)
        results.append(np.array([ integrals[ball.radiusindex(r)] / r for r in radii ]))
    return results

def ballgrid(n, radii, panel_order=16, angular_order=64):
    return BallGrid(n, radii[-1], panel_order, angular_order, breakpoints=radii)

def ball_energies(h, n, radii, panel_order=16, angular_order=64):
    """(1/R) int_B(R) ||h||^2 for every R of the ladder"""
    radii = checkladder(n, radii)
    return _ballenergies([h], ballgrid(n, radii, panel_order, angular_order), radii)[0]

def star_norm(h, n, radii, panel_order=16, angular_order=64):
    """sup over the ladder of ((1/R) int_B(R) ||h||^2)^1/2"""
    return float(np.sqrt(np.max(ball_energies(h, n, radii, panel_order, angular_order))))

def plus_norm(psi, n, lams, weights, radii, panel_order=16, angular_order=64):
    """sup over the ladder of (int d lambda (1/R) int_B(R) ||psi(lambda, g)||^2)^1/2"""
    radii = checkladder(n, radii)
    ball = ballgrid(n, radii, panel_order, angular_order)
    functions = [ (lambda g, lam=lam: psi(lam, g)) for lam in lams ]
    total = sum( w * e for w, e in zip(weights, _ballenergies(functions, ball, radii)) )
    return float(np.sqrt(np.max(total)))

def strichartz_ratios(combo, radii, panel_order=16, angular_order=64):
    """(1/R) int_B(R) ||P F||^2 / ||F||^2 along the ladder, for a p-function combination F"""
    return ball_energies(combo.poisson, combo.spec.n, radii, panel_order, angular_order) / combo.norm2()

def asymptotic_equivalence(combo, radii, panel_order=16, angular_order=64):
    """(1/R) int_B(R) ||P F - scattering profile||^2 at the top of the ladder, relative to ||P F||_*^2"""
    radii = checkladder(combo.spec.n, radii)
    ball = ballgrid(combo.spec.n, radii, panel_order, angular_order)
    poisson, difference = _ballenergies([combo.poisson, lambda x: combo.poisson(x) - scattering_profile(combo, x)], ball, radii)
    return float(difference[-1] / np.max(poisson))

def restriction_check(f, spec, lams, R=None, fourier=None, grid=None):
    """nu(lambda) ||F_{sigma,lambda} f||^2 / (R ||f||^2) over the lambda grid"""
    if fourier is None:
        fourier = HorosphericalFourier(f, grid)
    R = f.requiresupport() if R is None else R
    fnorm2 = l2_norm2(f)
    lams = np.asarray(lams, dtype=float)
    if fnorm2 == 0:
        return RestrictionReport(lams, np.zeros(len(lams)), 0.0)
    ratios = np.array([ plancherel_density(lam, spec.n) * fourier.transform(spec.withlambda(lam)).norm2() for lam in lams ]) / (R * fnorm2)
    return RestrictionReport(lams, ratios, float(ratios.max()))
