#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""Quadrature on K, K/M = S^{n-1}, geodesic balls and horospheres.

Sphere coordinates put the base point 1 of the paravector space at index 0,
so a node xi of S^{n-1} is the boundary point k(xi).1 of the section
element k(xi).
"""

import numpy as np
import scipy.integrate
import scipy.special

from hyperspinor.vahlen import make_k, rotor, geodesic_a, multiply, VahlenElement
from hyperspinor.spinreps import randomM
from hyperspinor.helpers.caching import cached

MINVARIANCETOLERANCE = 1e-8
BALLTOLERANCE = 1e-10

SPHEREAREA = { 0: 2.0, 1: 2*np.pi, 2: 4*np.pi, 3: 2*np.pi**2, 4: 8*np.pi**2/3 }


class GridError(Exception):
    pass


class SphereGrid:
    """Nodes on S^dim in R^(dim+1) with normalized positive weights"""

    def __init__(self, dim, order, nodes, weights, degree):
        self.dim = dim
        self.order = order
        self.nodes = nodes
        self.weights = weights
        self.degree = degree

    def __len__(self):
        return len(self.weights)

    def integrate(self, values):
        return np.tensordot(self.weights, values, axes=1)


def gauss_legendre(lo, hi, count):
    x, w = scipy.special.roots_legendre(count)
    return lo + (hi - lo) * (x + 1) / 2, w * (hi - lo) / 2

@cached(64)
def sphere_grid(dim, order):
    if dim == 0:
        grid = SphereGrid(0, order, np.array([[1.0],[-1.0]]), np.array([0.5,0.5]), 1)
    elif dim == 1:
        theta = 2 * np.pi * (np.arange(order) + 0.5) / order
        nodes = np.stack((np.cos(theta), np.sin(theta)), axis=-1)
        grid = SphereGrid(1, order, nodes, np.full(order, 1.0 / order), order - 1)
    elif dim >= 2:
        count = max(order // 2, 1)
        u, wu = scipy.special.roots_jacobi(count, (dim - 2) / 2, (dim - 2) / 2)
        sub = sphere_grid(dim - 1, order)
        radius = np.sqrt(1 - u**2)
        nodes = np.concatenate((np.repeat(u, len(sub))[:,None], (radius[:,None,None] * sub.nodes[None,:,:]).reshape(-1, dim)), axis=-1)
        weights = (wu[:,None] * sub.weights[None,:]).ravel()
        grid = SphereGrid(dim, order, nodes, weights / weights.sum(), min(2 * count - 1, sub.degree))
    else:
        raise GridError("Sphere dimension must be nonnegative")
    return grid


def k_section(xi):
    """k(xi) in K with k(xi).1 = xi, for unit coordinates xi of shape (..., n)"""
    xi = np.asarray(xi, dtype=float)
    return make_k(rotor(xi, xi.shape[-1] - 1))


class KGrid:
    """Quadrature for the normalized Haar measure of K

    A descended grid integrates M-invariant functions through the section
    k(xi) over S^{n-1}; a full grid covers K itself (n <= 3).
    """

    def __init__(self, n, elements, weights, sphere=None):
        self.n = n
        self.elements = elements
        self.weights = weights
        self.sphere = sphere

    @property
    def descended(self):
        return self.sphere is not None

    def __len__(self):
        return len(self.weights)


@cached(64)
def descended_grid(n, order):
    sphere = sphere_grid(n - 1, order)
    grid = KGrid(n, k_section(sphere.nodes), sphere.weights, sphere)
    return grid

def full_k_grid(n, order):
    m = n - 1
    if n == 2:
        theta = 2 * np.pi * (np.arange(order) + 0.5) / order
        coeffs = np.stack((np.cos(theta), np.sin(theta)), axis=-1)
        weights = np.full(order, 1.0 / order)
    elif n == 3:
        sphere = sphere_grid(3, order)
        coeffs = sphere.nodes #quaternion coefficients on 1, e1, e2, e1e2
        weights = sphere.weights
    else:
        raise GridError("Full K grids are available for n <= 3 only, got n=" + str(n))
    return KGrid(n, make_k(coeffs.reshape(-1, 2**m)), weights)


def integrate_K(f, grid, check=True, rng=None, samples=4):
    """Quadrature of f over K; f maps a batch of K elements to an array of values"""
    values = np.asarray(f(grid.elements))
    if grid.descended and check:
        rng = rng if rng is not None else np.random.default_rng(0)
        index = np.linspace(0, len(grid) - 1, samples).astype(int)
        sample = grid.elements[index]
        shifted = multiply(sample, make_k(randomM(grid.n - 1, rng, len(index))))
        reference = values[index]
        scale = max(1.0, float(np.max(np.abs(reference))))
        defect = float(np.max(np.abs(np.asarray(f(shifted)) - reference)))
        if defect > MINVARIANCETOLERANCE * scale:
            raise GridError("Integrand is not M-invariant (defect " + str(defect) + "), it does not descend to K/M")
    return np.tensordot(grid.weights, values, axes=1)


def radialmeasure(t, n):
    return (2 * np.sinh(t))**(n - 1)

class BallGrid:
    """Polar quadrature on the geodesic ball B(R) for the measure (2 sinh t)^(n-1) dt dk

    The radial direction is split into panels of length ``panel`` with
    Gauss-Legendre nodes each, so integrals over B(r) for every panel edge r
    come out of one evaluation.
    """

    def __init__(self, n, R, panel_order=16, angular_order=64, panel=1.0, check=True, breakpoints=()):
        self.n = n
        self.R = float(R)
        edges = sorted(set(np.arange(0, self.R, panel).tolist()) | { float(r) for r in breakpoints if 0 < r < self.R })
        edges = [ e for i, e in enumerate(edges) if i == 0 or e - edges[i-1] > 1e-9 ]
        if self.R - edges[-1] < 1e-9:
            del edges[-1]
        edges.append(self.R)
        self.edges = np.array(edges)
        t = []
        w = []
        panels = []
        for i, (lo, hi) in enumerate(zip(self.edges[:-1], self.edges[1:])):
            x, wx = gauss_legendre(lo, hi, panel_order)
            t.append(x)
            w.append(wx * radialmeasure(x, n))
            panels.append(np.full(panel_order, i))
        self.t = np.concatenate(t)
        self.radialweights = np.concatenate(w)
        self.panels = np.concatenate(panels)
        self.sphere = sphere_grid(n - 1, angular_order)
        self.kgrid = descended_grid(n, angular_order)
        self.weights = self.radialweights[:,None] * self.sphere.weights[None,:]
        self._points = None
        if check:
            reference = scipy.integrate.quad(lambda s: radialmeasure(s, n), 0, self.R, epsabs=0, epsrel=1e-13, limit=200)[0]
            total = self.radialweights.sum()
            if abs(total - reference) > BALLTOLERANCE * reference:
                raise GridError("Radial quadrature total " + str(total) + " deviates from " + str(reference))

    @property
    def shape(self):
        return self.weights.shape

    def points(self):
        """The group elements k(xi) a_t for all (t, xi) nodes, shape (len(t), len(sphere))"""
        if self._points is None:
            k = self.kgrid.elements
            a = geodesic_a(self.t, self.n - 1)
            self._points = multiply(VahlenElement(k.a[None,:,:], k.b[None,:,:], validate=False), VahlenElement(a.a[:,None,:], a.b[:,None,:], validate=False))
        return self._points

    def integrate(self, values):
        """Integral over B(R) of node values of shape (len(t), len(sphere), ...)"""
        return np.tensordot(self.weights, values, axes=2)

    def ballintegrals(self, values):
        """Integrals over B(r) for each panel edge r > 0 of real node values; returns (radii, integrals)"""
        perpanel = np.zeros(len(self.edges) - 1)
        np.add.at(perpanel, self.panels, np.sum(self.weights * values, axis=1))
        return self.edges[1:], np.cumsum(perpanel)

    def volume(self, r):
        radii, integrals = self.ballintegrals(np.ones(self.shape))
        return integrals[self.radiusindex(r)]

    def radiusindex(self, r):
        index = np.nonzero(np.isclose(self.edges[1:], r))[0]
        if len(index) == 0:
            raise GridError("Radius " + str(r) + " is not a panel edge of the ball grid")
        return index[0]


def horosphere_grid(n, t, R0, order, angular_order=None):
    """Nodes y in R^(n-1) with weights for int dy over {y : d(o, a_t n_y o) <= R0}

    The radial variable is w in [0,1] with distance A = |t| + (R0-|t|) w^2,
    which removes the square-root endpoint behaviour of |y|.
    """
    m = n - 1
    if abs(t) >= R0:
        return np.zeros((0, m)), np.zeros(0)
    if angular_order is None:
        angular_order = 2 * order
    w, ww = gauss_legendre(0.0, 1.0, order)
    at = abs(t)
    A = at + (R0 - at) * w**2
    h = np.sinh((A + at) / 2) * np.sinh((A - at) / 2)
    radius = np.exp(-t / 2) * np.sqrt(h)
    dradius = np.exp(-t / 2) * np.sinh(A) * (R0 - at) * w / (2 * np.sqrt(h))
    sphere = sphere_grid(m - 1, angular_order)
    radialweights = ww * radius**(m - 1) * dradius * SPHEREAREA[m - 1]
    nodes = (radius[:,None,None] * sphere.nodes[None,:,:]).reshape(-1, m)
    weights = (radialweights[:,None] * sphere.weights[None,:]).ravel()
    return nodes, weights

def haar_N_constant(n):
    """C_n with dx = C_n dt dy in horospherical coordinates k a_t n_y"""
    return 2.0**(2*n - 2) / SPHEREAREA[n - 1]
