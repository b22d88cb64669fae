#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

import numpy as np

from hyperspinor.hyperspinor import Scenario, ConfigurationError
from hyperspinor.spherical import SphericalSpec
from hyperspinor.special import plancherel_density, strichartz_constant, gamma0
from hyperspinor.spinreps import build_representation, dimensionratio
from hyperspinor.vahlen import randomelements
from hyperspinor.quadrature import BallGrid, descended_grid, gauss_legendre
from hyperspinor.transforms import PFunctionCombo, HorosphericalFourier, PolarFourier, gram_matrix, intertwiner_U, \
        poisson_transform, strichartz_ratios, star_norm, random_bump, eigen_section, restriction_check, \
        plancherel_energy, inversion, l2_norm2, adjointness_defect, asymptotic_equivalence, scattering_profile
from hyperspinor.helpers.common import energy, richardson


def vectorerror(computed, target):
    """Largest Euclidean distance over the batch, and the same relative to the largest target norm"""
    distance = float(np.max(np.sqrt(energy(computed - target))))
    scale = float(np.max(np.sqrt(energy(target))))
    return distance, (distance / scale if scale > 0 else distance)


class Intertwiner(Scenario):
    """The Weyl intertwiner U_w maps p-functions of (sigma, lambda) isometrically
    to those of (w sigma, -lambda): the boundary Gram matrices agree, the
    quadrature Gram matrix matches its closed form, and the Poisson transform
    by quadrature matches the closed form, also after U_w.

    Settings:

    * ``n``        - dimension (default: 3)
    * ``sigma``    - plus, minus or all (default: all)
    * ``lambda``   - spectral parameter (default: 1.3)
    * ``count``    - number of p-functions (default: 4)
    * ``grid``     - order of the boundary quadrature (default: 64)
    * ``samples``  - number of points of the Poisson comparison (default: 5)
    """

    CRITERION = 11
    TOLERANCES = { 'unitarity': 1e-8, 'gram': 1e-8, 'poisson': 1e-6, 'poisson-weyl': 1e-6 }

    def verifysettings(self):
        super().verifysettings()
        self.n = self.getnumber('n', 3, int)
        self.lam = self.lambdas([1.3])[0]
        self.count = self.getnumber('count', 4, int)
        self.samples = self.getnumber('samples', 5, int)
        self.tau, self.sigmas = self.labels(self.n)

    def points(self):
        return self.sigmas

    def runpoint(self, sigma, rng):
        n = self.n
        spec = SphericalSpec(n, self.tau, sigma, self.lam)
        grid = descended_grid(n, self.gridorder(n, { n: 64 }))
        combo = PFunctionCombo.random(spec, rng, self.count)
        terms = combo.terms()
        before = gram_matrix([ p.boundary(grid) for p in terms ])
        after = gram_matrix([ intertwiner_U(p, 'w').boundary(grid) for p in terms ])
        closed = PFunctionCombo(spec, combo.elements, combo.vectors).gram()
        scale = float(np.max(np.abs(before)))
        #largest entry defects relative to the largest entry
        unitarity = float(np.max(np.abs(after - before)))
        gram = float(np.max(np.abs(before - closed)))
        records = [ self.record(n, sigma, self.lam, None, unitarity / scale, target=0, abs_err=unitarity, rel_err=unitarity / scale, provenance='quadrature', label='unitarity'),
                    self.record(n, sigma, self.lam, None, gram / scale, target=0, abs_err=gram, rel_err=gram / scale, provenance='quadrature', label='gram') ]
        x = randomelements(n - 1, rng, self.samples, tmax=1.0, xscale=0.5)
        reference = combo.poisson(x)
        distance, relative = vectorerror(poisson_transform(combo.boundary(grid), x), reference)
        records.append(self.record(n, sigma, self.lam, None, relative, target=0, abs_err=distance, rel_err=relative, provenance='quadrature', label='poisson'))
        distance, relative = vectorerror(poisson_transform(intertwiner_U(combo, 'w').boundary(grid), x), reference)
        records.append(self.record(n, sigma, self.lam, None, relative, target=0, abs_err=distance, rel_err=relative, provenance='quadrature', label='poisson-weyl'))
        return records


class StrichartzLimit(Scenario):
    """(1/R) int_B(R) ||P F||^2 / ||F||^2 along an R-ladder tends to
    2 d |c(lambda,tau)|^2 = (d/4) gamma0 / nu(lambda); the extrapolated value
    2 S(R) - S(R/2) at the top of the ladder is judged, as is the raw value.
    The ratio of the limit to gamma0 / nu(lambda) is reported in the summary
    next to its expected value d/4.

    Settings:

    * ``n``           - dimension (default: 2)
    * ``lambda``      - spectral parameter (default: 1)
    * ``radii``       - R-ladder, its last two radii must halve (default: [1, 2, 4, 8, 15, 30, 60])
    * ``rmax``        - replaces the top of the ladder (optional)
    * ``count``       - number of p-functions (default: 3)
    * ``panel_order`` - radial nodes per unit panel (default: 16)
    * ``grid``        - angular order of the ball quadrature (default: 64)
    """

    CRITERION = 12
    TOLERANCES = { 'richardson': 0.05, 'raw': 0.15 }

    def verifysettings(self):
        super().verifysettings()
        self.n = self.getnumber('n', 2, int)
        self.lam = self.lambdas([1.0])[0]
        self.radii = self.ladder([1, 2, 4, 8, 15, 30, 60])
        if len(self.radii) < 2 or not np.isclose(self.radii[-2], self.radii[-1] / 2):
            raise ConfigurationError("The extrapolation needs R/2 and R at the top of the ladder, got " + str(self.radii))
        self.count = self.getnumber('count', 3, int)
        self.panelorder = self.getnumber('panel_order', 16, int)
        self.tau, sigmas = self.labels(self.n)
        self.sigma = sigmas[0]

    def points(self):
        return [ (self.n, self.lam) ]

    def runpoint(self, point, rng):
        n, lam = point
        spec = SphericalSpec(n, self.tau, self.sigma, lam)
        combo = PFunctionCombo.random(spec, rng, self.count)
        ratios = strichartz_ratios(combo, self.radii, self.panelorder, self.gridorder(n, { n: 64 }))
        limit = strichartz_constant(lam, n)
        last = len(self.radii) - 1
        records = [ self.record(n, self.sigma, lam, R, S, target=limit, provenance='quadrature', label='raw', judged=(i == last))
                    for i, (R, S) in enumerate(zip(self.radii, ratios)) ]
        extrapolated = richardson(ratios[-1], ratios[-2])
        records.append(self.record(n, self.sigma, lam, self.radii[-1], extrapolated, target=limit, provenance='richardson', label='richardson'))
        stated = gamma0(n) / plancherel_density(lam, n)
        records.append(self.record(n, self.sigma, lam, None, limit / stated, provenance='closed-form', label='gamma0-ratio', judged=False))
        return records

    def judge(self, records):
        passed, summary = super().judge(records)
        ratios = [ r.computed.real for r in records if r.label == 'gamma0-ratio' ]
        if ratios:
            summary['gamma0_ratio'] = float(ratios[0])
            summary['gamma0_ratio_expected'] = dimensionratio(self.n) / 4
            self.log("Limit relative to gamma0 / nu: " + "%.6g" % summary['gamma0_ratio'] + " (d/4 = " + "%.6g" % summary['gamma0_ratio_expected'] + ")")
        return passed, summary


class PoissonBound(Scenario):
    """nu(lambda) ||P F||_*^2 / ||F||^2 stays within a bounded window across
    lambda for one p-function combination relabelled at each lambda.

    Settings:

    * ``n``           - list of dimensions (default: [2, 3])
    * ``lambda``      - spectral parameters (default: [0.25, 0.5, 1, 2, 4])
    * ``radii``       - R-ladder of the star norm (default: [1, 2, 4, 8, 16])
    * ``variation``   - largest admissible max/min of the ratios (default: 4)
    * ``panel_order`` - radial nodes per unit panel (default: 16 for n=2, 12 for n=3)
    * ``grid``        - angular order of the ball quadrature (default: 64 for n=2, 24 for n=3)
    """

    CRITERION = 13
    TOLERANCES = { 'variation': 0 }

    def verifysettings(self):
        super().verifysettings()
        self.ns = self.dimensions([2,3])
        self.lams = self.lambdas([0.25, 0.5, 1.0, 2.0, 4.0])
        self.radii = self.ladder([1, 2, 4, 8, 16])
        self.variation = self.getnumber('variation', 4.0)
        self.checkparity(self.ns)

    def points(self):
        return self.ns

    def runpoint(self, n, rng):
        tau, sigmas = self.labels(n)
        spec = SphericalSpec(n, tau, sigmas[0], self.lams[0])
        combo = PFunctionCombo.random(spec, rng)
        panelorder = self.getnumber('panel_order', 16 if n == 2 else 12, int)
        angularorder = self.gridorder(n, { 2: 64, 3: 24, 4: 12, 5: 8 })
        ratios = []
        records = []
        for lam in self.lams:
            relabelled = combo.relabel(spec.withlambda(lam))
            ratio = plancherel_density(lam, n) * star_norm(relabelled.poisson, n, self.radii, panelorder, angularorder)**2 / relabelled.norm2()
            ratios.append(ratio)
            records.append(self.record(n, sigmas[0], lam, self.radii[-1], ratio, provenance='quadrature', label='ratio', judged=False))
        spread = max(ratios) / min(ratios)
        records.append(self.record(n, sigmas[0], None, self.radii[-1], spread, abs_err=0.0 if spread < self.variation else spread, provenance='quadrature', label='variation'))
        return records


class Restriction(Scenario):
    """nu(lambda) ||F_{sigma,lambda} f||^2 / (R ||f||^2) for bumps supported in
    B(R): the supremum over bumps and lambda changes by at most a factor two
    per doubling of R. Tapered Poisson transforms (eigensections) concentrate
    at their spectral parameter and are reported.

    Settings:

    * ``n``           - dimension (default: 2)
    * ``radii``       - support radii (default: [1, 2, 4, 8])
    * ``lambda``      - spectral grid (default: 40 points on [0.1, 8])
    * ``count``       - bumps per radius (default: 5)
    * ``eigenlambda`` - spectral parameter of the eigensections (default: 2)
    * ``grid``        - order of the boundary quadrature (default: 64)
    * ``horo_order``  - radial nodes per horocycle (default: 24)
    """

    CRITERION = 14
    TOLERANCES = { 'doubling': 0 }

    def verifysettings(self):
        super().verifysettings()
        self.n = self.getnumber('n', 2, int)
        self.radii = self.ladder([1, 2, 4, 8])
        self.count = self.getnumber('count', 5, int)
        self.eigenlambda = self.getnumber('eigenlambda', 2.0)
        self.lams = sorted(set(self.lambdas(np.linspace(0.1, 8, 40).tolist())) | {self.eigenlambda})
        self.horoorder = self.getnumber('horo_order', 24, int)
        self.tau, sigmas = self.labels(self.n)
        self.sigma = sigmas[0]

    def points(self):
        return self.radii

    def runpoint(self, R, rng):
        n = self.n
        spec = SphericalSpec(n, self.tau, self.sigma, self.eigenlambda)
        grid = descended_grid(n, self.gridorder(n, { n: 64 }))
        order = max(64, int(np.ceil(4 * max(self.lams) * R)))
        sup = 0.0
        for _ in range(self.count):
            f = random_bump(spec.rep, R, rng)
            fourier = HorosphericalFourier(f, grid, order=order, horo_order=self.horoorder)
            sup = max(sup, restriction_check(f, spec, self.lams, fourier=fourier).sup)
        records = [ self.record(n, self.sigma, None, R, sup, provenance='horospherical', label='sup', judged=False) ]
        f = eigen_section(PFunctionCombo.random(spec, rng), R)
        fourier = HorosphericalFourier(f, grid, order=order, horo_order=self.horoorder)
        report = restriction_check(f, spec, self.lams, fourier=fourier)
        peak = report.lams[np.argmax(report.ratios)]
        records.append(self.record(n, self.sigma, self.eigenlambda, R, report.ratios[self.lams.index(self.eigenlambda)], provenance='horospherical', label='eigen', judged=False))
        records.append(self.record(n, self.sigma, peak, R, report.sup, provenance='horospherical', label='eigen-peak', judged=False))
        return records

    def judge(self, records):
        """Adds one doubling record per consecutive pair of radii to the merged records"""
        sups = sorted( (r.x, r.computed.real) for r in records if r.label == 'sup' )
        for (R1, s1), (R2, s2) in zip(sups[:-1], sups[1:]):
            ratio = s2 / s1 if s1 > 0 else float('inf')
            inside = 0.5 <= ratio <= 2.0
            records.append(self.record(self.n, self.sigma, None, R2, ratio, abs_err=0.0 if inside else abs(ratio), provenance='horospherical', label='doubling', judged=bool(np.isclose(R2, 2 * R1))))
        return super().judge(records)


class Plancherel(Scenario):
    """For a bump f the Plancherel energy int nu(lambda) sum_sigma ||F f||^2
    equals ||f||^2, and the inversion formula recovers f inside its support.

    Settings:

    * ``n``           - list of dimensions (default: [2])
    * ``support``     - support radius of the bump (default: 2)
    * ``lambda``      - ends of the truncated spectral range (default: [0.05, 12])
    * ``nodes``       - Gauss-Legendre nodes in lambda (default: 240)
    * ``grid``        - order of the boundary quadrature (default: 64 for n=2, 24 for n=3)
    * ``order``       - nodes of the horocycle transform in s (default: 96 for n=2, 48 for n=3)
    """

    CRITERION = 15
    TOLERANCES = { 'plancherel': 0.1, 'inversion': 0.1 }

    #boundary, order, horo_order
    DEFAULTORDERS = { 2: (64, 96, 24), 3: (24, 48, 16) }

    def verifysettings(self):
        super().verifysettings()
        self.ns = self.dimensions([2])
        for n in self.ns:
            if n not in self.DEFAULTORDERS:
                raise ConfigurationError("No quadrature orders for n=" + str(n))
        self.support = self.getnumber('support', 2.0)
        self.range = self.lambdas([0.05, 12.0])
        if len(self.range) != 2 or self.range[0] >= self.range[1]:
            raise ConfigurationError("The spectral range needs two increasing ends, got " + str(self.range))
        self.nodes = self.getnumber('nodes', 240, int)
        self.checkparity(self.ns)

    def points(self):
        return self.ns

    def runpoint(self, n, rng):
        tau, _ = self.labels(n)
        boundary, order, horoorder = self.DEFAULTORDERS[n]
        grid = descended_grid(n, self.gridorder(n, { n: boundary }))
        f = random_bump(build_representation(n, tau), self.support, rng)
        fourier = HorosphericalFourier(f, grid, order=self.getnumber('order', order, int), horo_order=horoorder)
        lams, weights = gauss_legendre(self.range[0], self.range[1], self.nodes)
        result = plancherel_energy(f, tau, lams, weights, grid, fourier)
        norm2 = l2_norm2(f)
        records = [ self.record(n, None, None, self.support, result.energy, target=norm2, provenance='horospherical', label='plancherel'),
                    self.record(n, None, self.range[1], self.support, result.tail / result.energy, provenance='horospherical', label='tail', judged=False) ]
        ball = BallGrid(n, self.support / 2, 6, 16)
        x = ball.points()
        recovered = inversion(f, tau, lams, weights, x, grid, fourier)
        exact = f(x)
        error = np.sqrt(float(ball.integrate(energy(recovered - exact))) / float(ball.integrate(energy(exact))))
        records.append(self.record(n, None, None, self.support / 2, error, target=0, abs_err=error, provenance='horospherical', label='inversion'))
        return records


class Scattering(Scenario):
    """The Poisson transform of a p-function combination is asymptotic in the
    ball-averaged sense to its scattering profile, and the profile is
    invariant under the Weyl intertwiner.

    Settings:

    * ``n``           - dimension (default: 2)
    * ``lambda``      - spectral parameter (default: 1)
    * ``radii``       - R-ladder (default: [1, 2, 5, 10, 20, 40])
    * ``samples``     - number of points of the invariance check (default: 8)
    * ``panel_order`` - radial nodes per unit panel (default: 16)
    * ``grid``        - angular order of the ball quadrature (default: 64)
    """

    CRITERION = 12
    TOLERANCES = { 'equivalence': 0.05, 'weyl': 1e-9 }

    def verifysettings(self):
        super().verifysettings()
        self.n = self.getnumber('n', 2, int)
        self.lam = self.lambdas([1.0])[0]
        self.radii = self.ladder([1, 2, 5, 10, 20, 40])
        self.samples = self.getnumber('samples', 8, int)
        self.panelorder = self.getnumber('panel_order', 16, int)
        self.tau, sigmas = self.labels(self.n)
        self.sigma = sigmas[0]

    def points(self):
        return [ (self.n, self.lam) ]

    def runpoint(self, point, rng):
        n, lam = point
        spec = SphericalSpec(n, self.tau, self.sigma, lam)
        combo = PFunctionCombo.random(spec, rng)
        equivalence = asymptotic_equivalence(combo, self.radii, self.panelorder, self.gridorder(n, { n: 64 }))
        records = [ self.record(n, self.sigma, lam, self.radii[-1], equivalence, target=0, abs_err=equivalence, provenance='quadrature', label='equivalence') ]
        x = randomelements(n - 1, rng, self.samples, tmax=6.0, xscale=1.0)
        distance, relative = vectorerror(scattering_profile(intertwiner_U(combo, 'w'), x), scattering_profile(combo, x))
        records.append(self.record(n, self.sigma, lam, None, relative, target=0, abs_err=distance, rel_err=relative, provenance='closed-form', label='weyl'))
        return records


class Adjointness(Scenario):
    """<F f, F> = <f, P F> for a bump f and a p-function boundary section F,
    and the horospherical and polar Fourier transforms agree.

    Settings:

    * ``n``           - list of dimensions (default: [2, 3])
    * ``lambda``      - spectral parameters (default: [0.5, 1.3])
    * ``support``     - support radius of the bump (default: 1.5)
    * ``grid``        - boundary order by n (default: 64 for n=2, 24 for n=3)
    """

    CRITERION = 15
    TOLERANCES = { 'adjointness': 1e-5, 'fourier': 1e-4 }

    #boundary, panel_order, angular_order, order, horo_order
    DEFAULTORDERS = { 2: (64, 16, 64, 64, 24), 3: (24, 12, 24, 48, 16) }

    def verifysettings(self):
        super().verifysettings()
        self.ns = self.dimensions([2,3])
        self.lams = self.lambdas([0.5, 1.3])
        self.support = self.getnumber('support', 1.5)
        for n in self.ns:
            if n not in self.DEFAULTORDERS:
                raise ConfigurationError("No quadrature orders for n=" + str(n))
        self.checkparity(self.ns)

    def points(self):
        return [ (n, lam) for n in self.ns for lam in self.lams ]

    def runpoint(self, point, rng):
        n, lam = point
        tau, sigmas = self.labels(n)
        spec = SphericalSpec(n, tau, sigmas[0], lam)
        boundary, panelorder, angularorder, order, horoorder = self.DEFAULTORDERS[n]
        grid = descended_grid(n, self.gridorder(n, { n: boundary }))
        f = random_bump(spec.rep, self.support, rng)
        F = PFunctionCombo.random(spec, rng).boundary(grid)
        horospherical = HorosphericalFourier(f, grid, order=order, horo_order=horoorder, angular_order=angularorder)
        defect = adjointness_defect(f, F, horospherical, panelorder, angularorder)
        records = [ self.record(n, sigmas[0], lam, self.support, defect, target=0, abs_err=defect, provenance='horospherical', label='adjointness') ]
        reference = horospherical.transform(spec)
        polar = PolarFourier(f, grid, panelorder, angularorder).transform(spec)
        error = np.sqrt((polar - reference).norm2() / reference.norm2())
        records.append(self.record(n, sigmas[0], lam, self.support, error, target=0, abs_err=error, provenance='ball', label='fourier'))
        return records
