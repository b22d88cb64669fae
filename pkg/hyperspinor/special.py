#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""Scalar special functions: log-Gamma, Gauss 2F1 on the negative axis,
Jacobi functions with their Harish-Chandra expansion, the c-function of
the spinor bundle and the Plancherel density.

All functions accept numpy arrays for the real argument (z or t) and
broadcast over it.
"""

from collections import namedtuple
import numpy as np
import scipy.special

MAXTERMS = 100000
SERIESTOLERANCE = 1e-16
PFAFFTHRESHOLD = -0.5
EXPANSIONTHRESHOLD = 4.0 #sinh^2 t beyond which jacobi_phi uses the c-function expansion


class PoleError(ValueError):
    pass

class ConvergenceError(Exception):
    pass


JacobiParams = namedtuple('JacobiParams', ('alpha','beta'))

class SpectralParameter:
    """The pair (lambda, n) with rho = (n-1)/2"""

    def __init__(self, lam, n):
        self.lam = complex(lam)
        self.n = int(n)
        self.rho = (self.n - 1) / 2

    def __repr__(self):
        return "SpectralParameter(lambda=" + str(self.lam) + ", n=" + str(self.n) + ")"


def isnonpositiveinteger(z, tol=1e-12):
    z = complex(z)
    return abs(z.imag) <= tol and z.real <= tol and abs(z.real - round(z.real)) <= tol

def checkparams(p):
    if isnonpositiveinteger(p.alpha + 1):
        raise PoleError("Jacobi parameter alpha must not be a negative integer, got " + str(p.alpha))


def log_gamma(z):
    """Principal branch of log Gamma(z)"""
    z = np.asarray(z, dtype=complex)
    if any( isnonpositiveinteger(v) for v in z.ravel() ):
        raise PoleError("Gamma has a pole at nonpositive integers")
    result = scipy.special.loggamma(z)
    return result[()] if result.ndim == 0 else result


def _series(a, b, c, z):
    z = np.asarray(z, dtype=float)
    total = np.ones(z.shape, dtype=complex)
    term = np.ones(z.shape, dtype=complex)
    done = np.zeros(z.shape, dtype=bool)
    for k in range(MAXTERMS):
        term = np.where(done, 0, term * ((a+k)*(b+k)/((c+k)*(k+1))) * z)
        total += term
        done |= np.abs(term) <= SERIESTOLERANCE * np.abs(total)
        if done.all():
            return total
    raise ConvergenceError("Hypergeometric series did not converge in " + str(MAXTERMS) + " terms (a=" + str(a) + ", b=" + str(b) + ", c=" + str(c) + ")")

def gauss_2f1(a, b, c, z, method='auto'):
    """Gauss hypergeometric function 2F1(a,b;c;z) for real z < 1

    method 'series' sums the power series (|z| < 1), 'pfaff' evaluates
    (1-z)^-a 2F1(a,c-b;c;z/(z-1)), 'auto' uses the series for z > -0.5 and
    the Pfaff transform otherwise.
    """
    if isnonpositiveinteger(c):
        raise PoleError("2F1 has a pole for c a nonpositive integer, got c=" + str(c))
    z = np.asarray(z, dtype=float)
    if np.any(z >= 1):
        raise ValueError("gauss_2f1 is evaluated for real z < 1 only")
    if method == 'series':
        if np.any(np.abs(z) >= 1):
            raise ValueError("Power series needs |z| < 1")
        result = _series(a, b, c, z)
    elif method == 'pfaff':
        result = (1 - z) ** (-a) * _series(a, c - b, c, z / (z - 1))
    elif method == 'auto':
        result = np.empty(z.shape, dtype=complex)
        direct = z > PFAFFTHRESHOLD
        if direct.any():
            result[direct] = _series(a, b, c, z[direct])
        if (~direct).any():
            zt = z[~direct]
            result[~direct] = (1 - zt) ** (-a) * _series(a, c - b, c, zt / (zt - 1))
    else:
        raise ValueError("Unknown method: " + str(method))
    return result[()] if result.ndim == 0 else result


def c_small(p, lam):
    """Harish-Chandra c-function of the Jacobi pair (alpha, beta)"""
    checkparams(p)
    il = 1j * complex(lam)
    rho = p.alpha + p.beta + 1
    if isnonpositiveinteger(il):
        raise PoleError("c-function has a pole at i*lambda = " + str(il))
    numerator = (rho - il) * np.log(2) + log_gamma(p.alpha + 1) + log_gamma(il)
    for w in ((il + rho) / 2, (il + p.alpha - p.beta + 1) / 2):
        if isnonpositiveinteger(w):
            return 0j
        numerator -= log_gamma(w)
    return complex(np.exp(numerator))

def psi_branch(p, lam, t):
    """The solution of the Jacobi equation behaving like exp((i lambda - rho) t), t >= 1"""
    checkparams(p)
    t = np.asarray(t, dtype=float)
    if np.any(t < 1):
        raise ValueError("psi_branch is evaluated for t >= 1 only")
    il = 1j * complex(lam)
    if isnonpositiveinteger(1 - il):
        raise PoleError("Psi branch has a pole at i*lambda = " + str(il))
    rho = p.alpha + p.beta + 1
    sh = np.sinh(t)
    F = gauss_2f1((rho - il) / 2, (-p.alpha + p.beta + 1 - il) / 2, 1 - il, -1 / sh**2, method='series')
    return np.exp((il - rho) * np.log(2 * sh)) * F

def theta_remainder(p, lam, t):
    """(Psi_lambda(t) exp(-(i lambda - rho) t) - 1) exp(2t)"""
    t = np.asarray(t, dtype=float)
    rho = p.alpha + p.beta + 1
    il = 1j * complex(lam)
    return (psi_branch(p, lam, t) * np.exp(-(il - rho) * t) - 1) * np.exp(2 * t)

def jacobi_phi(p, lam, t, method='auto'):
    """Jacobi function phi_lambda^(alpha,beta)(t) = 2F1((i lambda+rho)/2, (-i lambda+rho)/2; alpha+1; -sinh^2 t)

    method 'hypergeometric' sums the defining series, 'expansion' uses
    c(lambda) Psi_lambda + c(-lambda) Psi_-lambda (t >= 1), 'auto' picks the
    expansion where sinh^2 t exceeds 4 and i lambda is not an integer.
    """
    checkparams(p)
    t = np.abs(np.asarray(t, dtype=float))
    il = 1j * complex(lam)
    rho = p.alpha + p.beta + 1
    integral = abs(il.imag) <= 1e-12 and abs(il.real - round(il.real)) <= 1e-12

    def hypergeometric(tt):
        return gauss_2f1((il + rho) / 2, (-il + rho) / 2, p.alpha + 1, -np.sinh(tt)**2)

    def expansion(tt):
        return c_small(p, lam) * psi_branch(p, lam, tt) + c_small(p, -lam) * psi_branch(p, -lam, tt)

    if method == 'hypergeometric':
        result = np.asarray(hypergeometric(t))
    elif method == 'expansion':
        if integral:
            raise PoleError("Expansion is singular for integer i*lambda = " + str(il))
        result = np.asarray(expansion(t))
    elif method == 'auto':
        far = np.sinh(t)**2 > EXPANSIONTHRESHOLD
        if integral:
            far[...] = False
        result = np.empty(t.shape, dtype=complex)
        if (~far).any():
            result[~far] = hypergeometric(t[~far])
        if far.any():
            result[far] = expansion(t[far])
    else:
        raise ValueError("Unknown method: " + str(method))
    return result[()] if result.ndim == 0 else result


def hc_c_function(lam, n):
    """c(lambda) = 2^(n-2i lambda) Gamma(n/2) Gamma(2i lambda) / (Gamma(i lambda+n/2) Gamma(i lambda))"""
    il = 1j * complex(lam)
    if isnonpositiveinteger(il) or isnonpositiveinteger(2 * il):
        raise PoleError("c-function has a pole at lambda = " + str(lam))
    value = (n - 2 * il) * np.log(2) + log_gamma(n / 2) + log_gamma(2 * il)
    if isnonpositiveinteger(il + n / 2):
        return 0j
    value -= log_gamma(il + n / 2) + log_gamma(il)
    return complex(np.exp(value))

def tau_c_function(lam, n):
    """c(lambda, tau) = c(lambda)/2

    The leading coefficient of the spherical function is d c(lambda, tau) P_sigma,
    which is c(lambda)/2 P_sigma for n even and c(lambda) P_sigma for n odd.
    """
    return hc_c_function(lam, n) / 2

def plancherel_density(lam, n):
    """nu(lambda) = (2/pi even, 1/pi odd) |c(lambda)|^-2"""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam == 0):
        raise PoleError("Plancherel density is evaluated on lambda != 0")
    prefactor = 1 / np.pi if n % 2 else 2 / np.pi
    values = np.array([ prefactor / abs(hc_c_function(l, n))**2 for l in lam.ravel() ]).reshape(lam.shape)
    return values[()] if values.ndim == 0 else values

def gamma0(n):
    return 2 / np.pi if n % 2 else 4 / np.pi

def strichartz_constant(lam, n):
    """2 d |c(lambda,tau)|^2 = (d/4) gamma0 / nu(lambda), the limit of (1/R) int_B(R) |Poisson F|^2 per unit |F|^2"""
    d = 2 if n % 2 else 1
    return 2 * d * abs(tau_c_function(lam, n))**2

def printed_density(lam, n):
    """Closed-form polynomial density as printed in the literature; the even bracket is read as a factorial"""
    lam = np.asarray(lam, dtype=float)
    if n % 2 == 0:
        h = n // 2
        value = 2.0**(3 - 2*n) / scipy.special.factorial(h - 1)**2 * lam / np.tanh(np.pi * lam)
        for j in range(1, h):
            value = value * (lam**2 + j**2)
    else:
        q = (n - 1) / 2
        value = 0.25 / np.pi / (q * (q + 1) * (n - 2))**2 * np.ones_like(lam)
        for j in range(1, int(q) + 1):
            value = value * (lam**2 + (j - 0.5)**2)
    return value[()] if np.ndim(value) == 0 else value
