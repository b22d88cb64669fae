#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

import numpy as np

from hyperspinor.hyperspinor import Scenario, ConfigurationError
from hyperspinor.special import JacobiParams, jacobi_phi, psi_branch, theta_remainder, c_small, hc_c_function, plancherel_density, gamma0, printed_density


def jacobipairs(n):
    return (JacobiParams(n/2 - 1, n/2), JacobiParams(n/2, n/2 - 1))

def ode_residual(p, lam, t, h=1e-3):
    """Jacobi equation residual of the hypergeometric phi by five-point differences"""
    t = np.asarray(t, dtype=float)
    f = { k: jacobi_phi(p, lam, t + k * h, method='hypergeometric') for k in (-2,-1,0,1,2) }
    first = (-f[2] + 8 * f[1] - 8 * f[-1] + f[-2]) / (12 * h)
    second = (-f[2] + 16 * f[1] - 30 * f[0] + 16 * f[-1] - f[-2]) / (12 * h**2)
    rho = p.alpha + p.beta + 1
    coefficient = (2 * p.alpha + 1) / np.tanh(t) + (2 * p.beta + 1) * np.tanh(t)
    return second + coefficient * first + (lam**2 + rho**2) * f[0]

def elementary_c(c, lam, n):
    """(computed, target) of the duplication-formula closed form: |c|^2 for n = 2, c itself for n = 3"""
    if n == 2:
        return abs(c)**2, 4 * np.tanh(np.pi * lam) / (np.pi * lam)
    if n == 3:
        return c, 2 / (0.5 + 1j * lam)
    raise ValueError("No elementary c-function for n = " + str(n))


class JacobiConnection(Scenario):
    """The Jacobi function summed from its hypergeometric series agrees with
    c(lambda) Psi_lambda + c(-lambda) Psi_-lambda for both parameter pairs
    (n/2-1, n/2) and (n/2, n/2-1), and solves the Jacobi equation. The
    remainder of Psi_lambda against its leading exponential stays bounded.

    Settings:

    * ``n``        - list of dimensions (default: [2, 3, 4, 5])
    * ``lambda``   - spectral parameters (default: [0.7, 1.0, 2.3])
    * ``t``        - arguments of the connection check (default: 21 points on [1.2, 4])
    * ``odet``     - arguments of the equation residual (default: 20 points on [0.2, 3])
    * ``thetat``   - arguments of the remainder bound (default: 19 points on [1, 10])
    * ``thetabound`` - bound of the remainder (default: 50)
    """

    CRITERION = 4
    TOLERANCES = { 'connection': 1e-8, 'ode': 1e-7, 'theta': 0 }

    def verifysettings(self):
        super().verifysettings()
        self.ns = self.dimensions([2,3,4,5])
        self.lams = self.lambdas([0.7, 1.0, 2.3])
        self.ts = self.getlist('t', np.linspace(1.2, 4, 21).tolist())
        self.odets = self.getlist('odet', np.linspace(0.2, 3, 20).tolist())
        self.thetats = self.getlist('thetat', np.linspace(1, 10, 19).tolist())
        self.thetabound = self.getnumber('thetabound', 50.0)
        if min(self.ts) < 1 or min(self.thetats) < 1:
            raise ConfigurationError("The expansion is evaluated for t >= 1")
        if min(self.odets) <= 0.01:
            raise ConfigurationError("The equation residual needs t > 0.01")

    def points(self):
        return [ (n, i, lam) for n in self.ns for i in range(2) for lam in self.lams ]

    def runpoint(self, point, rng):
        n, i, lam = point
        p = jacobipairs(n)[i]
        ts = np.asarray(self.ts)
        series = jacobi_phi(p, lam, ts, method='hypergeometric')
        expansion = jacobi_phi(p, lam, ts, method='expansion')
        #relative to the size of the two branches, phi itself has zeros
        scale = np.abs(c_small(p, lam) * psi_branch(p, lam, ts)) + np.abs(c_small(p, -lam) * psi_branch(p, -lam, ts))
        records = [ self.record(n, None, lam, t, e, target=s, rel_err=abs(e - s) / w, provenance='expansion', label='connection') for t, e, s, w in zip(ts, expansion, series, scale) ]
        residual = ode_residual(p, lam, np.asarray(self.odets))
        records += [ self.record(n, None, lam, t, r, target=0, abs_err=abs(r), provenance='finite-differences', label='ode') for t, r in zip(self.odets, residual) ]
        theta = np.abs(theta_remainder(p, lam, np.asarray(self.thetats)))
        records += [ self.record(n, None, lam, t, r, abs_err=0.0 if r <= self.thetabound else r, provenance='series', label='theta') for t, r in zip(self.thetats, theta) ]
        return records


class CFunction(Scenario):
    """Consistency of the c-function: 2|c(lambda)|^2 = gamma0 / nu(lambda), the
    algebraic identity c(lambda) = c_(n/2-1,n/2)(2 lambda) between the two Gamma
    ratios, the elementary forms that the duplication formula gives for n = 2
    (|c|^2 = 4 tanh(pi lambda) / (pi lambda)) and n = 3 (c = 2 / (1/2 + i lambda)),
    the growth window of
    nu(lambda) / (1+lambda)^(n-1), and (informational) the ratio of the printed
    polynomial densities to nu.

    Settings:

    * ``n``        - list of dimensions (default: [2, 3, 4, 5])
    * ``lambda``   - spectral parameters (default: 25 log-spaced points on [0.1, 100])
    * ``spread``   - largest admissible max/min of the growth window (default: 1000)
    * ``printed``  - spectral parameters of the printed density report (default: [0.5, 1, 2, 4])
    """

    CRITERION = 5
    TOLERANCES = { 'identity': 1e-12, 'jacobi-identity': 1e-12, 'elementary': 1e-10, 'growth': 0 }

    def verifysettings(self):
        super().verifysettings()
        self.ns = self.dimensions([2,3,4,5])
        self.lams = self.lambdas(np.logspace(-1, 2, 25).tolist())
        self.spread = self.getnumber('spread', 1000.0)
        self.printed = self.getlist('printed', [0.5, 1.0, 2.0, 4.0])

    def points(self):
        return self.ns

    def runpoint(self, n, rng):
        records = []
        lams = np.asarray(self.lams)
        density = plancherel_density(lams, n)
        for lam, nu in zip(lams, density):
            c = hc_c_function(lam, n)
            records.append(self.record(n, None, lam, None, 2 * abs(c)**2, target=gamma0(n) / nu, provenance='closed-form', label='identity'))
            records.append(self.record(n, None, lam, None, c, target=c_small(JacobiParams(n/2 - 1, n/2), 2 * lam), provenance='closed-form', label='jacobi-identity'))
            if n in (2, 3):
                computed, target = elementary_c(c, lam, n)
                records.append(self.record(n, None, lam, None, computed, target=target, provenance='duplication', label='elementary'))
        window = density / (1 + lams)**(n - 1)
        spread = float(window.max() / window.min()) if window.min() > 0 else float('inf')
        records.append(self.record(n, None, None, None, spread, abs_err=0.0 if spread <= self.spread else spread, provenance='closed-form', label='growth'))
        printed = np.asarray(self.printed)
        ratios = printed_density(printed, n) / plancherel_density(printed, n)
        records += [ self.record(n, None, lam, None, ratio, provenance='printed', label='printed-ratio', judged=False) for lam, ratio in zip(printed, ratios) ]
        return records

    def judge(self, records):
        passed, summary = super().judge(records)
        for n in self.ns:
            ratios = [ r.computed.real for r in records if r.label == 'printed-ratio' and r.n == n ]
            if ratios:
                summary['printed_ratio_n' + str(n)] = float(np.mean(ratios))
                summary['printed_ratio_spread_n' + str(n)] = float(max(ratios) - min(ratios))
        for line in sorted(summary):
            if line.startswith('printed'):
                self.log("Printed density " + line + " = " + "%.6g" % summary[line])
        return passed, summary
