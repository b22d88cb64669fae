#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

import numpy as np

from hyperspinor.hyperspinor import Scenario, ConfigurationError
from hyperspinor.spherical import SphericalSpec, spherical_matrix, spherical_function, eisenstein_integral, \
        asymptotic_defect, fatou_limit_check
from hyperspinor.special import hc_c_function, tau_c_function
from hyperspinor.vahlen import geodesic_a, randomK, multiply
from hyperspinor.helpers.common import operatornorm, logslope

DEFAULTGRID = { 2: 256, 3: 96, 4: 32, 5: 16 }


class Eisenstein(Scenario):
    """The Eisenstein integral over K of the Poisson kernel, by quadrature,
    against the closed form of the spherical function built from Jacobi
    functions, on A and at random points k1 a_t k2. The closed form is also
    checked for invariance under (sigma, lambda) -> (w sigma, -lambda).

    Settings:

    * ``n``        - list of dimensions (default: [2, 3])
    * ``sigma``    - plus, minus or all (default: all)
    * ``lambda``   - spectral parameters (default: [0.7, 1, 2])
    * ``t``        - geodesic parameters (default: [0.3, 1, 2])
    * ``grid``     - angular order of the K quadrature, a number or a mapping by n (default: 256 for n=2, 96 for n=3)
    """

    CRITERION = 6
    TOLERANCES = { 'eisenstein': 1e-6, 'eisenstein-offA': 1e-6, 'weyl': 1e-10 }

    def verifysettings(self):
        super().verifysettings()
        self.ns = self.dimensions([2,3])
        self.lams = self.lambdas([0.7, 1.0, 2.0])
        self.ts = self.getlist('t', [0.3, 1.0, 2.0])
        self.checkparity(self.ns)

    def points(self):
        points = []
        for n in self.ns:
            tau, sigmas = self.labels(n)
            points += [ (n, tau, sigma, lam, t) for sigma in sigmas for lam in self.lams for t in self.ts ]
        return points

    def runpoint(self, point, rng):
        n, tau, sigma, lam, t = point
        spec = SphericalSpec(n, tau, sigma, lam)
        order = self.gridorder(n, DEFAULTGRID)
        records = []
        closed = spherical_matrix(spec, t)
        computed = eisenstein_integral(spec, geodesic_a(t, n - 1), order=order)
        error = float(operatornorm(computed - closed))
        records.append(self.record(n, sigma, lam, t, np.trace(computed), target=np.trace(closed), abs_err=error,
                rel_err=error / float(operatornorm(closed)), provenance='quadrature', label='eisenstein'))
        k1 = randomK(n - 1, rng)
        k2 = randomK(n - 1, rng)
        g = multiply(multiply(k1, geodesic_a(t, n - 1)), k2)
        closed = spherical_function(spec, g)
        computed = eisenstein_integral(spec, g, order=order)
        error = float(operatornorm(computed - closed))
        records.append(self.record(n, sigma, lam, t, np.trace(computed), target=np.trace(closed), abs_err=error,
                rel_err=error / float(operatornorm(closed)), provenance='quadrature', label='eisenstein-offA'))
        error = float(operatornorm(spherical_function(spec.weyl(), g) - closed))
        records.append(self.record(n, sigma, lam, t, error, target=0, abs_err=error, rel_err=error / float(operatornorm(closed)), provenance='closed-form', label='weyl'))
        return records


class SphericalAsymptotics(Scenario):
    """Defect of the spherical function against its leading Weyl sum on A:
    the scaled defect exp((rho+1)t) ||Phi(a_t) - leading|| / |c(lambda)| stays
    bounded, and for odd n its logarithm decays with slope -(rho+1).

    Settings:

    * ``n``        - list of dimensions (default: [2, 3])
    * ``sigma``    - plus, minus or all (default: plus for odd n)
    * ``lambda``   - spectral parameters (default: 16 points on [0.25, 4])
    * ``t``        - geodesic parameters (default: 19 points on [1, 10])
    * ``bound``    - bound of the scaled defect (default: 100)
    * ``slope``    - spectral parameter of the slope fit (default: 1)
    """

    CRITERION = 7
    TOLERANCES = { 'slope': 0.1 }

    def verifysettings(self):
        super().verifysettings()
        self.ns = self.dimensions([2,3])
        self.lams = self.lambdas(np.linspace(0.25, 4, 16).tolist())
        self.ts = self.getlist('t', np.linspace(1, 10, 19).tolist())
        self.bound = self.getnumber('bound', 100.0)
        self.tolerances['scaled'] = self.bound
        self.slopelambda = self.getnumber('slope', 1.0)
        self.checkparity(self.ns)

    def points(self):
        points = []
        for n in self.ns:
            tau, sigmas = self.labels(n)
            if self.settings.get('sigma') is None:
                sigmas = sigmas[:1]
            points += [ (n, tau, sigma, lam) for sigma in sigmas for lam in self.lams ]
        return points

    def runpoint(self, point, rng):
        n, tau, sigma, lam = point
        spec = SphericalSpec(n, tau, sigma, lam)
        ts = np.asarray(self.ts)
        defect = asymptotic_defect(spec, ts)
        scaled = defect * np.exp((spec.rho + 1) * ts) / abs(hc_c_function(lam, n))
        records = [ self.record(n, sigma, lam, t, s, abs_err=s, provenance='closed-form', label='scaled') for t, s in zip(ts, scaled) ]
        #for even n the two Weyl terms share one block and the defect oscillates through zeros
        if n % 2 and np.isclose(lam, self.slopelambda):
            slope = logslope(ts, defect)
            target = -(spec.rho + 1)
            records.append(self.record(n, sigma, lam, ts[-1], slope, target=target, abs_err=abs(slope - target), rel_err=abs(slope - target), provenance='fit', label='slope'))
        return records


class FatouLimit(Scenario):
    """For Re(i lambda) > 0, exp((rho - i lambda)t) Phi(a_t) tends to
    d c(lambda,tau) P_sigma: the defect is checked at a fixed t, and the part
    outside the sigma block is checked at a larger t.

    Settings:

    * ``n``         - dimension (default: 3)
    * ``sigma``     - plus, minus or all (default: all)
    * ``lambda``    - real part of the spectral parameter (default: 1)
    * ``imag``      - imaginary part of the spectral parameter (default: -1)
    * ``t``         - geodesic parameters, the last one is judged (default: [4, 5, 6, 7, 8])
    * ``offblockt`` - geodesic parameter of the block check (default: 18)
    """

    CRITERION = 8
    TOLERANCES = { 'defect': 1e-3, 'offblock': 1e-6 }

    def verifysettings(self):
        super().verifysettings()
        self.n = self.getnumber('n', 3, int)
        real = self.getlist('lambda', [1.0])[0]
        self.lam = complex(real, self.getnumber('imag', -1.0))
        if (1j * self.lam).real <= 0:
            raise ConfigurationError("The limit needs Re(i lambda) > 0, got lambda=" + str(self.lam))
        self.ts = self.getlist('t', [4.0, 5.0, 6.0, 7.0, 8.0])
        self.offblockt = self.getnumber('offblockt', 18.0)
        self.tau, self.sigmas = self.labels(self.n)

    def points(self):
        return self.sigmas

    def runpoint(self, sigma, rng):
        spec = SphericalSpec(self.n, self.tau, sigma, self.lam)
        ts = np.asarray(self.ts)
        defects = operatornorm(fatou_limit_check(spec, ts))
        records = [ self.record(self.n, sigma, self.lam, t, d, target=0, abs_err=d, provenance='closed-form', label='defect', judged=(i == len(ts) - 1))
                    for i, (t, d) in enumerate(zip(ts, defects)) ]
        P = spec.projector
        limit = np.exp((spec.rho - 1j * spec.lam) * self.offblockt) * spherical_matrix(spec, self.offblockt)
        offblock = float(operatornorm(limit - P @ limit @ P))
        records.append(self.record(self.n, sigma, self.lam, self.offblockt, offblock, target=0, abs_err=offblock, provenance='closed-form', label='offblock'))
        expected = spec.d * tau_c_function(spec.lam, spec.n) * np.trace(P)
        records.append(self.record(self.n, sigma, self.lam, self.offblockt, np.trace(P @ limit @ P), target=expected, provenance='closed-form', label='limit', judged=False))
        return records
