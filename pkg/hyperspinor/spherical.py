#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""tau-spherical functions of the spinor bundle.

On A the spherical function is diagonal in the M-isotypic blocks with scalar
components built from Jacobi functions at half the geodesic parameter; off A
it is computed as an Eisenstein integral over K. All t arguments are
geodesic.
"""

import numpy as np

from hyperspinor.spinreps import build_representation, isotypic_projector, checklabels, weylsigma, \
        dimensionratio, evaluate
from hyperspinor.vahlen import inverse, multiply, hyperbolic_H, iwasawa_kappa, cartan, VahlenElement
from hyperspinor.special import JacobiParams, SpectralParameter, jacobi_phi, tau_c_function
from hyperspinor.quadrature import descended_grid, integrate_K, GridError
from hyperspinor.helpers.common import dagger, operatornorm as spectralnorm


class SphericalSpec:
    """The data (n, tau, sigma, lambda) of a spherical function"""

    def __init__(self, n, tau, sigma, lam):
        checklabels(n, tau, sigma)
        self.n = n
        self.tau = tau
        self.sigma = sigma
        self.parameter = SpectralParameter(lam, n)
        self.lam = self.parameter.lam
        self.rep = build_representation(n, tau)
        self.projector = isotypic_projector(self.rep, sigma).matrix
        self.d = dimensionratio(n)
        self.rho = self.parameter.rho

    @property
    def m(self):
        return self.n - 1

    @property
    def dim(self):
        return self.rep.dim

    def weyl(self):
        """The spec (w sigma, -lambda)"""
        return SphericalSpec(self.n, self.tau, weylsigma(self.n, self.sigma), -self.lam)

    def withlambda(self, lam):
        return SphericalSpec(self.n, self.tau, self.sigma, lam)

    def blockprojectors(self):
        """(P_+, P_-) for n odd, (Id,) for n even"""
        if self.n % 2 == 0:
            return (self.projector,)
        return tuple( isotypic_projector(self.rep, s).matrix for s in ('plus','minus') )

    def __repr__(self):
        return "SphericalSpec(n=" + str(self.n) + ", tau=" + self.tau + ", sigma=" + self.sigma + ", lambda=" + str(self.lam) + ")"


def _CS(n, lam, t):
    t = np.asarray(t, dtype=float)
    C = np.cosh(t / 2) * jacobi_phi(JacobiParams(n/2 - 1, n/2), 2 * lam, t / 2)
    S = (2 * lam / n) * np.sinh(t / 2) * jacobi_phi(JacobiParams(n/2, n/2 - 1), 2 * lam, t / 2)
    return C, S

def scalar_components(spec, t):
    """Components on the blocks of V_tau: [phi] for n even, [phi on V+, phi on V-] for n odd"""
    C, S = _CS(spec.n, spec.lam, t)
    if spec.n % 2 == 0:
        return [C]
    if spec.sigma == 'plus':
        return [C + 1j * S, C - 1j * S]
    return [C - 1j * S, C + 1j * S]

def spherical_matrix(spec, t):
    """Phi(a_t) as a (batch of) matrices on V_tau"""
    t = np.asarray(t, dtype=float)
    components = scalar_components(spec, t)
    result = np.zeros(t.shape + (spec.dim, spec.dim), dtype=complex)
    for value, P in zip(components, spec.blockprojectors()):
        result = result + np.asarray(value)[...,None,None] * P
    return result

def radialextension(spec, k1, t, k2):
    """Phi(k1 a_t k2) = tau(k2)^-1 Phi(a_t) tau(k1)^-1 from Cartan data"""
    tk1 = evaluate(spec.rep, k1.a)
    tk2 = evaluate(spec.rep, k2.a)
    return dagger(tk2) @ spherical_matrix(spec, t) @ dagger(tk1)

def spherical_function(spec, g):
    """Phi(g) for a (batch of) group elements through the Cartan decomposition"""
    factors = cartan(g)
    return radialextension(spec, factors.k1, 2 * factors.t, factors.k2)


def _eisensteinintegrand(spec, g):
    ginv = inverse(g)
    def integrand(kelements):
        y = multiply(VahlenElement(ginv.a, ginv.b, validate=False), kelements)
        weight = np.exp(-(1j * spec.lam + spec.rho) * hyperbolic_H(y))
        tkappa = evaluate(spec.rep, iwasawa_kappa(y))
        tk = evaluate(spec.rep, kelements.a)
        return weight[:,None,None] * (tkappa @ spec.projector @ dagger(tk))
    return integrand

def eisenstein_integral(spec, g, order=64, richardson=False, tolerance=1e-6, check=True):
    """d * int_K exp(-(i lambda + rho) H(g^-1 k)) tau(kappa(g^-1 k)) P_sigma tau(k)^-1 dk for a single g

    With richardson set, the grid of half the order gives an error estimate;
    GridError is raised when it exceeds the tolerance.
    """
    integrand = _eisensteinintegrand(spec, g)
    value = spec.d * integrate_K(integrand, descended_grid(spec.n, order), check=check)
    if richardson:
        coarse = spec.d * integrate_K(integrand, descended_grid(spec.n, max(order // 2, 2)), check=False)
        estimate = float(spectralnorm(value - coarse))
        if estimate > tolerance * max(1.0, float(spectralnorm(value))):
            raise GridError("Eisenstein integral not converged at order " + str(order) + ", estimated error " + str(estimate))
    return value


def leadingterm(spec, t):
    """sum over the Weyl group of exp((i s lambda - rho) t) d c(s lambda, tau) P_{s sigma}"""
    t = np.asarray(t, dtype=float)
    w = spec.weyl()
    result = np.zeros(t.shape + (spec.dim, spec.dim), dtype=complex)
    for s in (spec, w):
        coefficient = np.exp((1j * s.lam - spec.rho) * t) * spec.d * tau_c_function(s.lam, spec.n)
        result = result + coefficient[...,None,None] * s.projector
    return result

def asymptotic_defect(spec, t):
    """|| Phi(a_t) - leading Weyl sum ||, spectral norm"""
    return spectralnorm(spherical_matrix(spec, t) - leadingterm(spec, t))

def fatou_limit_check(spec, t):
    """exp((rho - i lambda) t) Phi(a_t) - d c(lambda, tau) P_sigma, for Re(i lambda) > 0"""
    if (1j * spec.lam).real <= 0:
        raise ValueError("Fatou limit needs Re(i lambda) > 0, got lambda=" + str(spec.lam))
    t = np.asarray(t, dtype=float)
    scaled = np.exp((spec.rho - 1j * spec.lam) * t)[...,None,None] * spherical_matrix(spec, t)
    return scaled - spec.d * tau_c_function(spec.lam, spec.n) * spec.projector
