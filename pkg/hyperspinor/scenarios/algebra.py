#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

import itertools
import numpy as np

from hyperspinor.hyperspinor import Scenario, ConfigurationError
from hyperspinor.clifford import cliffordproduct, applyinvolution, paravectorarray, randomversors, checkgenerators
from hyperspinor.spinreps import build_representation, isotypic_projector, evaluate, taulabels, commutant_dimension, randomM
from hyperspinor.vahlen import randomelements, randomK, iwasawa, cartan, make_a, make_n, make_k, multiply, inverse, \
        reconstruction_defect, cartan_A, E_function, cartan_limit_defect
from hyperspinor.helpers.common import dagger, operatornorm, logslope


class CliffordAxioms(Scenario):
    """Exhaustive check of the Clifford relations xy + yx = -2<x,y>, associativity and the
    three involutions over all blade pairs and triples, in exact integer arithmetic.

    Settings:

    * ``m``        - list of generator counts (default: [1, 2, 3, 4])
    """

    CRITERION = 1
    TOLERANCES = { 'anticommutation': 0, 'associativity': 0, 'involutions': 0, 'paravector-norm': 0 }

    def verifysettings(self):
        super().verifysettings()
        self.ms = self.getlist('m', [1,2,3,4], int)
        for m in self.ms:
            checkgenerators(m)

    def points(self):
        return self.ms

    def runpoint(self, m, rng):
        size = 2**m
        blades = np.eye(size, dtype=int)
        violations = {}

        generators = blades[[ 1 << i for i in range(m) ]]
        anticommutator = cliffordproduct(generators[:,None,:], generators[None,:,:], m) + cliffordproduct(generators[None,:,:], generators[:,None,:], m)
        expected = np.zeros_like(anticommutator)
        expected[np.arange(m), np.arange(m), 0] = -2
        violations['anticommutation'] = int(np.sum(np.any(anticommutator != expected, axis=-1)))

        A = blades[:,None,None,:]
        B = blades[None,:,None,:]
        C = blades[None,None,:,:]
        left = cliffordproduct(cliffordproduct(A, B, m), C, m)
        right = cliffordproduct(A, cliffordproduct(B, C, m), m)
        violations['associativity'] = int(np.sum(np.any(left != right, axis=-1)))

        P = blades[:,None,:]
        Q = blades[None,:,:]
        PQ = cliffordproduct(P, Q, m)
        count = 0
        for kind, anti in (('conjugate', True), ('main', False), ('reversion', True)):
            lhs = applyinvolution(PQ, m, kind)
            if anti:
                rhs = cliffordproduct(applyinvolution(Q, m, kind), applyinvolution(P, m, kind), m)
            else:
                rhs = cliffordproduct(applyinvolution(P, m, kind), applyinvolution(Q, m, kind), m)
            count += int(np.sum(np.any(lhs != rhs, axis=-1)))
            #involutions square to the identity
            count += int(np.sum(applyinvolution(applyinvolution(blades, m, kind), m, kind) != blades))
        signs = { 'conjugate': -1, 'main': -1, 'reversion': 1 }
        for kind, sign in signs.items():
            count += int(np.sum(applyinvolution(generators, m, kind) != sign * generators))
        violations['involutions'] = count

        coords = np.array(list(itertools.product((-1,0,1), repeat=m+1)), dtype=int)
        x = paravectorarray(coords, m)
        xx = cliffordproduct(x, applyinvolution(x, m, 'conjugate'), m)
        expected = np.zeros_like(xx)
        expected[:,0] = np.sum(coords**2, axis=-1)
        violations['paravector-norm'] = int(np.sum(np.any(xx != expected, axis=-1)))

        return [ self.record(m + 1, None, None, m, violations[label], target=0, abs_err=violations[label], provenance='exact', label=label) for label in sorted(violations) ]


class SpinIntegrity(Scenario):
    """Spin representations: anticommutation of the generator images, the
    homomorphism property and unitarity on random unit group elements, and
    the dimension of the commutant of tau restricted to M.

    Settings:

    * ``n``        - list of dimensions (default: [2, 3, 4, 5])
    * ``samples``  - number of random unit group elements per representation (default: 1000)
    """

    CRITERION = 2
    TOLERANCES = { 'anticommutation': 1e-12, 'homomorphism': 1e-8, 'unitarity': 1e-8, 'commutant': 0 }

    def verifysettings(self):
        super().verifysettings()
        self.ns = self.dimensions([2,3,4,5])
        self.samples = self.getnumber('samples', 1000, int)
        self.checkparity(self.ns)

    def points(self):
        return [ (n, tau) for n in self.ns for tau in taulabels(n) ]

    def runpoint(self, point, rng):
        n, tau = point
        m = n - 1
        rep = build_representation(n, tau)
        identity = np.eye(rep.dim)
        anticommutation = max( float(np.max(np.abs(Gi @ Gj + Gj @ Gi + 2 * (i == j) * identity)))
                               for i, Gi in enumerate(rep.generators) for j, Gj in enumerate(rep.generators) )
        u = randomversors(m, rng, self.samples)
        v = randomversors(m, rng, self.samples)
        Tu = evaluate(rep, u)
        Tv = evaluate(rep, v)
        homomorphism = float(np.max(operatornorm(evaluate(rep, cliffordproduct(u, v, m)) - Tu @ Tv)))
        unitarity = float(np.max(operatornorm(Tu @ dagger(Tu) - identity)))
        commutant = commutant_dimension(rep, randomM(m, rng, 8))
        expected = 1 if n % 2 == 0 else 2
        return [
            self.record(n, None, None, None, anticommutation, target=0, abs_err=anticommutation, provenance='exact', label='anticommutation'),
            self.record(n, None, None, self.samples, homomorphism, target=0, abs_err=homomorphism, provenance='sampled', label='homomorphism'),
            self.record(n, None, None, self.samples, unitarity, target=0, abs_err=unitarity, provenance='sampled', label='unitarity'),
            self.record(n, None, None, None, commutant, target=expected, provenance='sampled', label='commutant'),
        ]


class IwasawaCartan(Scenario):
    """Round trips of the Iwasawa and Cartan decompositions on random group
    elements k a_t n_x (t uniform on [0,3], x normal), and invariance of
    tau(k2)^-1 P_sigma tau(k1)^-1 under the M-gauge k1 -> k1 m, k2 -> m^-1 k2.

    Settings:

    * ``n``        - list of dimensions (default: [2, 3, 4, 5])
    * ``samples``  - random elements per dimension (default: 2500)
    * ``batch``    - elements per point (default: 500)
    """

    CRITERION = 3
    TOLERANCES = { 'iwasawa': 1e-9, 'cartan': 1e-9, 'gauge': 1e-9 }

    def verifysettings(self):
        super().verifysettings()
        self.ns = self.dimensions([2,3,4,5])
        self.samples = self.getnumber('samples', 2500, int)
        self.batch = self.getnumber('batch', 500, int)
        if self.samples < 1 or self.batch < 1:
            raise ConfigurationError("samples and batch must be positive")
        self.checkparity(self.ns)

    def points(self):
        points = []
        for n in self.ns:
            for start in range(0, self.samples, self.batch):
                points.append((n, min(self.batch, self.samples - start)))
        return points

    def runpoint(self, point, rng):
        n, count = point
        m = n - 1
        g = randomelements(m, rng, count, tmax=3.0, xscale=1.0)
        records = []

        factors = iwasawa(g)
        rebuilt = multiply(multiply(factors.k, make_a(factors.t, m)), make_n(factors.x))
        defect = float(np.max(reconstruction_defect(g, rebuilt)))
        records.append(self.record(n, None, None, count, defect, target=0, abs_err=defect, provenance='closed-form', label='iwasawa'))

        factors = cartan(g)
        rebuilt = multiply(multiply(factors.k1, make_a(factors.t, m)), factors.k2)
        defect = float(np.max(reconstruction_defect(g, rebuilt)))
        if np.any(factors.t < 0):
            defect = float('inf')
        records.append(self.record(n, None, None, count, defect, target=0, abs_err=defect, provenance='closed-form', label='cartan'))

        tau, sigmas = self.labels(n)
        rep = build_representation(n, tau)
        gauge = make_k(randomM(m, rng, count))
        k1 = multiply(factors.k1, gauge)
        k2 = multiply(inverse(gauge), factors.k2)
        for sigma in sigmas:
            P = isotypic_projector(rep, sigma).matrix
            before = dagger(evaluate(rep, factors.k2.a)) @ P @ dagger(evaluate(rep, factors.k1.a))
            after = dagger(evaluate(rep, k2.a)) @ P @ dagger(evaluate(rep, k1.a))
            defect = float(np.max(operatornorm(before - after)))
            records.append(self.record(n, sigma, None, count, defect, target=0, abs_err=defect, provenance='closed-form', label='gauge'))
        return records


class CliffLemma(Scenario):
    """The function E(g,x) = A(gx) - A(x) - H(g k1(x)) (matrix units) satisfies
    0 <= E <= exp(2(A(g) - A(x))) on random pairs and decays like exp(-2t)
    along x = k a_t h.

    Settings:

    * ``n``        - dimension (default: 3)
    * ``samples``  - random pairs (default: 10000)
    * ``batch``    - pairs per point (default: 2000)
    * ``t``        - matrix parameters of the decay fit (default: 11 points on [3, 8])
    """

    CRITERION = 9
    TOLERANCES = { 'bound': 1e-12, 'slope': 0.1 }

    def verifysettings(self):
        super().verifysettings()
        self.n = self.getnumber('n', 3, int)
        self.samples = self.getnumber('samples', 10000, int)
        self.batch = self.getnumber('batch', 2000, int)
        self.ts = self.getlist('t', np.linspace(3, 8, 11).tolist())
        if len(self.ts) < 2:
            raise ConfigurationError("The decay fit needs at least two t values")

    def points(self):
        return [ ('bound', min(self.batch, self.samples - start)) for start in range(0, self.samples, self.batch) ] + [ ('decay', len(self.ts)) ]

    def runpoint(self, point, rng):
        kind, count = point
        m = self.n - 1
        if kind == 'bound':
            g = randomelements(m, rng, count)
            x = randomelements(m, rng, count)
            E = E_function(g, x)
            bound = np.exp(2 * (cartan_A(g) - cartan_A(x)))
            violation = float(np.max(np.maximum(np.maximum(-E, 0), E - bound)))
            return [ self.record(self.n, None, None, count, violation, target=0, abs_err=violation, provenance='closed-form', label='bound') ]
        g = randomelements(m, rng, tmax=1.0)
        k = randomK(m, rng)
        h = randomK(m, rng)
        ts = np.asarray(self.ts)
        x = multiply(multiply(k, make_a(ts, m)), h)
        E = E_function(g, x)
        records = [ self.record(self.n, None, None, t, e, provenance='closed-form', label='decay', judged=False) for t, e in zip(ts, E) ]
        slope = logslope(ts, E)
        records.append(self.record(self.n, None, None, float(ts[-1]), slope, target=-2.0, abs_err=abs(slope + 2.0), provenance='fit', label='slope'))
        return records


class CartanLimit(Scenario):
    """tau(k2(g a_R))^-1 P_sigma tau(k1(g a_R))^-1 tends to P_sigma tau(kappa(g))^-1 as
    R grows (matrix units); the defect at the top radius is compared with its
    value at R = 0 and its decay rate is fitted.

    Settings:

    * ``n``        - dimension (default: 3)
    * ``sigma``    - plus, minus or all (default: all)
    * ``samples``  - random group elements (default: 100)
    * ``radii``    - matrix parameters R (default: 0, 1, ..., 8)
    * ``fit``      - smallest R used in the decay fit (default: 2)
    """

    CRITERION = 10
    TOLERANCES = { 'ratio': 1e-3, 'slope': 0.2 }

    def verifysettings(self):
        super().verifysettings()
        self.n = self.getnumber('n', 3, int)
        self.samples = self.getnumber('samples', 100, int)
        self.radii = self.getlist('radii', list(range(9)))
        self.fit = self.getnumber('fit', 2.0)
        if self.radii[0] != 0 or any( b <= a for a, b in zip(self.radii[:-1], self.radii[1:]) ):
            raise ConfigurationError("radii must start at 0 and increase, got " + str(self.radii))
        self.tau, self.sigmas = self.labels(self.n)

    def points(self):
        return self.sigmas

    def runpoint(self, sigma, rng):
        m = self.n - 1
        rep = build_representation(self.n, self.tau)
        projector = isotypic_projector(rep, sigma)
        g = randomelements(m, rng, self.samples, tmax=1.0, xscale=0.5)
        defects = np.array([ cartan_limit_defect(g, R, rep, projector) for R in self.radii ])
        records = [ self.record(self.n, sigma, None, R, float(np.max(d)), provenance='closed-form', label='defect', judged=False) for R, d in zip(self.radii, defects) ]
        ratio = float(np.max(defects[-1] / defects[0]))
        records.append(self.record(self.n, sigma, None, self.radii[-1], ratio, target=0, abs_err=ratio, provenance='closed-form', label='ratio'))
        radii = np.asarray(self.radii)
        fitted = radii >= self.fit
        slope = logslope(radii[fitted], np.median(defects[fitted], axis=1))
        records.append(self.record(self.n, sigma, None, self.radii[-1], slope, target=-2.0, abs_err=abs(slope + 2.0), provenance='fit', label='slope'))
        return records
