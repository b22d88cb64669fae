#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""The group G = Spin0(1,n) as Vahlen matrices (a b; b' a') over Cl(0,n-1).

An element is stored by its first row (a, b); the second row follows from
the main involution. Elements may be batched: a and b then have shape
(..., 2**m) and every operation acts elementwise over the leading axes.

The A-parameter of make_a(), iwasawa(), cartan(), E_function() and
distance() is the matrix parameter: make_a(t) moves the origin of the unit
ball to tanh(t), which is geodesic distance 2t. geodesic_a(),
hyperbolic_H() and hyperbolic_A() convert to geodesic units.
"""

from collections import namedtuple
import numpy as np

from hyperspinor.clifford import cliffordproduct, applyinvolution, norm2, scalararray, paravectorarray, \
        paravectorcoords, higherpart, lipschitzmask, randomversors, grades, checkgenerators, \
        CliffordElement, CliffordGroupElement, Paravector
from hyperspinor.spinreps import evaluate
from hyperspinor.helpers.common import dagger, operatornorm

RENORMALIZEDEPTH = 100
DETTOLERANCE = 1e-8
RECONSTRUCTIONTOLERANCE = 1e-9
DEGENERATE = 1e-14


class InvariantError(Exception):
    pass


IwasawaFactors = namedtuple('IwasawaFactors', ('k','t','x'))
CartanFactors = namedtuple('CartanFactors', ('k1','t','k2'))


def _coeffs(value):
    if isinstance(value, CliffordGroupElement):
        value = value.value
    if isinstance(value, CliffordElement):
        return value.coeffs
    return np.asarray(value)


class VahlenElement:
    """A (batch of) Vahlen matrices with |a|^2 - |b|^2 = 1 and b a* a paravector

    ``depth`` counts chained products since the last renormalization.
    """

    def __init__(self, a, b, depth=0, validate=True):
        a = np.asarray(_coeffs(a), dtype=float)
        b = np.asarray(_coeffs(b), dtype=float)
        a, b = np.broadcast_arrays(a, b)
        self.a = np.array(a)
        self.b = np.array(b)
        self.m = checkgenerators(int(round(np.log2(self.a.shape[-1]))))
        if 2**self.m != self.a.shape[-1]:
            raise InvariantError("Entries are not Clifford coefficient arrays")
        self.depth = depth
        if validate:
            defect = self.detdefect()
            if np.any(~np.isfinite(defect)) or np.any(defect > DETTOLERANCE):
                raise InvariantError("Vahlen determinant |a|^2-|b|^2 deviates from 1 by " + str(np.max(defect)))

    @property
    def shape(self):
        return self.a.shape[:-1]

    def __len__(self):
        return self.shape[0]

    def __getitem__(self, index):
        if not self.shape:
            raise TypeError("Single Vahlen element is not subscriptable")
        return VahlenElement(self.a[index], self.b[index], self.depth, validate=False)

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        if self.shape:
            return "VahlenElement(batch of " + str(self.shape) + " in Cl(0," + str(self.m) + "))"
        return "VahlenElement(a=" + repr(self.a.tolist()) + ", b=" + repr(self.b.tolist()) + ")"

    def det(self):
        return norm2(self.a) - norm2(self.b)

    def detdefect(self):
        """|det - 1| relative to |a|^2 + |b|^2"""
        return np.abs(self.det() - 1) / np.maximum(norm2(self.a) + norm2(self.b), 1.0)

    def reshape(self, shape):
        return VahlenElement(self.a.reshape(tuple(shape) + (-1,)), self.b.reshape(tuple(shape) + (-1,)), self.depth, validate=False)

    def isvalid(self, tol=1e-10):
        """Full check of the Vahlen conditions, elementwise"""
        scale = np.maximum(norm2(self.a) + norm2(self.b), 1.0)
        ok = self.detdefect() <= tol
        bra = cliffordproduct(self.b, applyinvolution(self.a, self.m, 'reversion'), self.m)
        ok &= np.all(np.abs(higherpart(bra, self.m)) <= tol * scale[...,None], axis=-1)
        ok &= lipschitzmask(self.a, self.m, tol)
        bzero = norm2(self.b) <= (tol * scale)**2
        ok &= bzero | lipschitzmask(self.b, self.m, tol)
        return ok

    def renormalize(self):
        det = self.det()
        if np.any(det <= 0):
            raise InvariantError("Cannot renormalize, determinant is not positive")
        scale = np.sqrt(det)[...,None]
        return VahlenElement(self.a / scale, self.b / scale, 0, validate=False)


def stack(elements):
    return VahlenElement(np.stack([ g.a for g in elements ]), np.stack([ g.b for g in elements ]), validate=False)


def identity(m, shape=()):
    return VahlenElement(scalararray(1.0, m, shape), scalararray(0.0, m, shape), validate=False)

def make_a(t, m):
    """a_t = (cosh t, sinh t), t in matrix units (array t gives a batch)"""
    t = np.asarray(t, dtype=float)
    return VahlenElement(scalararray(np.cosh(t), m, t.shape), scalararray(np.sinh(t), m, t.shape))

def geodesic_a(t, m):
    """The element moving the origin over geodesic distance t"""
    return make_a(np.asarray(t, dtype=float) / 2, m)

def make_n(x):
    """n_x = (1-x, x) for x in R^m, shape (..., m)"""
    x = np.asarray(x, dtype=float)
    m = x.shape[-1]
    vector = paravectorarray(np.concatenate((np.zeros(x.shape[:-1] + (1,)), x), axis=-1), m)
    return VahlenElement(scalararray(1.0, m, x.shape[:-1]) - vector, vector)

def make_k(u):
    """k = (u, 0) for a unit Clifford group element u"""
    u = np.asarray(_coeffs(u), dtype=float)
    return VahlenElement(u, np.zeros_like(u))


def multiply(g, h):
    if g.m != h.m:
        raise InvariantError("Mismatched Vahlen groups over Cl(0," + str(g.m) + ") and Cl(0," + str(h.m) + ")")
    m = g.m
    a = cliffordproduct(g.a, h.a, m) + cliffordproduct(g.b, applyinvolution(h.b, m, 'main'), m)
    b = cliffordproduct(g.a, h.b, m) + cliffordproduct(g.b, applyinvolution(h.a, m, 'main'), m)
    product = VahlenElement(a, b, max(g.depth, h.depth) + 1, validate=False)
    if np.any(product.detdefect() > DETTOLERANCE):
        raise InvariantError("Accumulated drift in Vahlen product: determinant defect " + str(np.max(product.detdefect())))
    if product.depth >= RENORMALIZEDEPTH:
        product = product.renormalize()
    return product

def inverse(g):
    m = g.m
    return VahlenElement(applyinvolution(g.a, m, 'conjugate'), -applyinvolution(g.b, m, 'reversion'), g.depth, validate=False)


def iwasawa_H(g):
    """H(g) = log|a+b|, matrix units"""
    return 0.5 * np.log(norm2(g.a + g.b))

def iwasawa_kappa(g):
    """The unit Clifford element u of kappa(g) = (u, 0)"""
    s = g.a + g.b
    return s / np.sqrt(norm2(s))[...,None]

def cartan_A(g):
    """A+(g) = log(|a|+|b|), matrix units"""
    return np.log(np.sqrt(norm2(g.a)) + np.sqrt(norm2(g.b)))

def hyperbolic_H(g):
    return 2 * iwasawa_H(g)

def hyperbolic_A(g):
    return 2 * cartan_A(g)


def reconstruction_defect(g, h):
    scale = np.sqrt(norm2(g.a)) + np.sqrt(norm2(g.b))
    defect = np.sqrt(norm2(g.a - h.a) + norm2(g.b - h.b))
    return defect / np.maximum(scale, 1.0)

def iwasawa(g):
    """g = k a_t n_x with t = log|a+b| and k built from (a+b)/|a+b|"""
    m = g.m
    s = g.a + g.b
    t = 0.5 * np.log(norm2(s))
    u = s * np.exp(-t)[...,None]
    ub = cliffordproduct(applyinvolution(u, m, 'conjugate'), g.b, m)
    ub[...,0] -= np.sinh(t)
    xfull = ub * np.exp(-t)[...,None]
    x = paravectorcoords(xfull, m)[...,1:]
    offvector = np.sqrt(np.abs(xfull[...,0])**2 + norm2(higherpart(xfull, m)))
    k = VahlenElement(u, np.zeros_like(u), validate=False)
    reconstructed = multiply(multiply(k, make_a(t, m)), make_n(x))
    defect = np.maximum(reconstruction_defect(g, reconstructed), offvector)
    if np.any(defect > RECONSTRUCTIONTOLERANCE):
        raise InvariantError("Iwasawa reconstruction failed, defect " + str(np.max(defect)))
    return IwasawaFactors(k, t, x)


def rotor(xi, m):
    """Unit paravector u with u rev(u) = xi for unit paravector coordinates xi (..., m+1)"""
    xi = np.asarray(xi, dtype=float)
    scalar = xi[...,0]
    base = np.zeros(m+1)
    base[0] = 1.0
    direct = xi + base
    direct /= np.maximum(np.linalg.norm(direct, axis=-1, keepdims=True), DEGENERATE)
    eta = np.array(xi)
    eta[...,0] = -scalar
    eta[...,1] = -xi[...,1]
    alternate = eta + base
    alternate /= np.maximum(np.linalg.norm(alternate, axis=-1, keepdims=True), DEGENERATE)
    e1 = np.zeros(2**m)
    e1[1] = 1.0
    alternate = cliffordproduct(e1, paravectorarray(alternate, m), m)
    return np.where((scalar > -0.5)[...,None], paravectorarray(direct, m), alternate)

def origin_image(g):
    """g.0 = b (a')^-1 as paravector coordinates"""
    bra = cliffordproduct(g.b, applyinvolution(g.a, g.m, 'reversion'), g.m)
    return paravectorcoords(bra, g.m) / norm2(g.a)[...,None]

def cartan(g):
    """g = k1 a_t k2 with t = log(|a|+|b|); k1 rotates the base point 1 to the direction of g.0"""
    m = g.m
    na = np.sqrt(norm2(g.a))
    nb = np.sqrt(norm2(g.b))
    degenerate = nb <= DEGENERATE * na
    t = np.where(degenerate, 0.0, np.log(na + nb))
    xi = origin_image(g)
    xinorm = np.linalg.norm(xi, axis=-1, keepdims=True)
    base = np.zeros(m+1)
    base[0] = 1.0
    xi = np.where(degenerate[...,None], base, xi / np.where(xinorm > 0, xinorm, 1.0))
    u1 = rotor(xi, m)
    unita = g.a / na[...,None]
    u1 = np.where(degenerate[...,None], unita, u1)
    u2 = cliffordproduct(applyinvolution(u1, m, 'conjugate'), unita, m)
    k1 = VahlenElement(u1, np.zeros_like(u1), validate=False)
    k2 = VahlenElement(u2, np.zeros_like(u2), validate=False)
    reconstructed = multiply(multiply(k1, make_a(t, m)), k2)
    defect = reconstruction_defect(g, reconstructed)
    if np.any(defect > RECONSTRUCTIONTOLERANCE):
        raise InvariantError("Cartan factor k2 is not in K, reconstruction defect " + str(np.max(defect)))
    return CartanFactors(k1, t, k2)


def ball_action(g, p):
    """(a p + b)(b' p + a')^-1 on paravector coordinates (..., m+1) or a Paravector"""
    single = isinstance(p, Paravector)
    coords = p.coordinates() if single else np.asarray(p, dtype=float)
    m = g.m
    x = paravectorarray(coords, m)
    numerator = cliffordproduct(g.a, x, m) + g.b
    denominator = cliffordproduct(applyinvolution(g.b, m, 'main'), x, m) + applyinvolution(g.a, m, 'main')
    dn2 = norm2(denominator)
    image = cliffordproduct(numerator, applyinvolution(denominator, m, 'conjugate'), m) / dn2[...,None]
    if np.any(np.abs(higherpart(image, m)) > 1e-9 * np.maximum(np.sqrt(norm2(image)), 1.0)[...,None]):
        raise InvariantError("Ball action left the paravector space")
    result = paravectorcoords(image, m)
    return Paravector.fromcoordinates(result) if single else result

def distance(g, h):
    """A+(g^-1 h), matrix units"""
    return cartan_A(multiply(inverse(g), h))


def E_function(g, x):
    """A+(gx) - A+(x) - H(g k1(x))"""
    k1 = cartan(x).k1
    return cartan_A(multiply(g, x)) - cartan_A(x) - iwasawa_H(multiply(g, k1))

def cartan_limit_defect(g, R, rep, projector):
    """|| tau(k2(g a_R))^-1 P tau(k1(g a_R))^-1 - P tau(kappa(g))^-1 ||, spectral norm"""
    P = getattr(projector, 'matrix', projector)
    factors = cartan(multiply(g, make_a(R, g.m)))
    tk1 = evaluate(rep, factors.k1.a)
    tk2 = evaluate(rep, factors.k2.a)
    lhs = dagger(tk2) @ P @ dagger(tk1)
    tkappa = evaluate(rep, iwasawa_kappa(g))
    return operatornorm(lhs - P @ dagger(tkappa))


def randomK(m, rng, count=None, factors=3):
    return make_k(randomversors(m, rng, count, factors))

def randomelements(m, rng, count=None, tmax=3.0, xscale=1.0):
    """Random k a_t n_x with t uniform on [0,tmax] and x normal"""
    shape = () if count is None else (count,)
    k = randomK(m, rng, count)
    t = rng.uniform(0, tmax, shape)
    x = xscale * rng.standard_normal(shape + (m,))
    return multiply(multiply(k, make_a(t, m)), make_n(x))

def iseven(g, tol=1e-12):
    """Elementwise: the a-entry is even and b vanishes, i.e. g lies in M"""
    odd = grades(g.m) % 2 == 1
    return (np.sqrt(norm2(g.b)) <= tol) & np.all(np.abs(g.a[...,odd]) <= tol, axis=-1)
