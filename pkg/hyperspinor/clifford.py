#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""Dense arithmetic in the Clifford algebra Cl(0,m), m <= 4.

Multivectors are stored as coefficient arrays of length 2**m indexed by blade
bitmask: bit i set means e_{i+1} is present in the ascending-ordered blade.
All kernels work on arrays of shape (..., 2**m) so batches of elements can be
multiplied at once; CliffordElement wraps a single coefficient vector.
"""

from functools import lru_cache
import numpy as np

MAXGENERATORS = 4
TOLERANCE = 1e-10

INVOLUTIONS = ('conjugate','main','reversion')


class DimensionError(ValueError):
    pass

class NotInvertibleError(ValueError):
    pass


def bladesign(a, b):
    """Sign of the product of the blades with bitmasks a and b in Cl(0,m)"""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count('1')
        x >>= 1
    swaps += bin(a & b).count('1') #e_i^2 = -1
    return -1 if swaps % 2 else 1

def checkgenerators(m):
    if not isinstance(m, (int, np.integer)) or m < 1 or m > MAXGENERATORS:
        raise DimensionError("Number of generators must be in 1.." + str(MAXGENERATORS) + ", got " + str(m))
    return int(m)

@lru_cache(maxsize=None)
def producttable(m):
    """Returns (index, sign) with out[k] = sum_i a[i] * b[index[i,k]] * sign[i,k]"""
    checkgenerators(m)
    size = 2**m
    index = np.empty((size,size), dtype=int)
    sign = np.empty((size,size), dtype=int)
    for i in range(size):
        for k in range(size):
            j = i ^ k
            index[i,k] = j
            sign[i,k] = bladesign(i, j)
    index.setflags(write=False)
    sign.setflags(write=False)
    return index, sign

@lru_cache(maxsize=None)
def grades(m):
    g = np.array([ bin(i).count('1') for i in range(2**checkgenerators(m)) ], dtype=int)
    g.setflags(write=False)
    return g

@lru_cache(maxsize=None)
def involutionsigns(m, kind):
    k = grades(m)
    if kind == 'conjugate':
        signs = (-1) ** (k * (k+1) // 2)
    elif kind == 'main':
        signs = (-1) ** k
    elif kind == 'reversion':
        signs = (-1) ** (k * (k-1) // 2)
    else:
        raise ValueError("Unknown involution: " + str(kind))
    signs.setflags(write=False)
    return signs


def cliffordproduct(a, b, m):
    """Batched geometric product of coefficient arrays of shape (..., 2**m)"""
    a = np.asarray(a)
    b = np.asarray(b)
    size = 2**m
    if a.shape[-1] != size or b.shape[-1] != size:
        raise DimensionError("Coefficient arrays do not match Cl(0," + str(m) + ")")
    index, sign = producttable(m)
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape, dtype=np.result_type(a, b, sign))
    for i in range(size):
        out += a[...,i:i+1] * b[...,index[i]] * sign[i]
    return out

def applyinvolution(arr, m, kind):
    return np.asarray(arr) * involutionsigns(m, kind)

def scalararray(value, m, shape=()):
    arr = np.zeros(tuple(shape) + (2**m,), dtype=np.result_type(value, float))
    arr[...,0] = value
    return arr

def paravectorarray(coords, m):
    """Embeds paravector coordinates (..., m+1), index 0 the scalar, into (..., 2**m)"""
    coords = np.asarray(coords)
    if coords.shape[-1] != m + 1:
        raise DimensionError("Expected " + str(m+1) + " paravector coordinates, got " + str(coords.shape[-1]))
    arr = np.zeros(coords.shape[:-1] + (2**m,), dtype=np.result_type(coords, float))
    arr[...,0] = coords[...,0]
    for i in range(m):
        arr[...,1 << i] = coords[...,i+1]
    return arr

def paravectorcoords(arr, m):
    """Inverse of paravectorarray, ignores higher grades"""
    arr = np.asarray(arr)
    return np.stack([arr[...,0]] + [ arr[...,1 << i] for i in range(m) ], axis=-1)

def higherpart(arr, m):
    """The coefficients of grade >= 2"""
    return np.asarray(arr)[..., grades(m) >= 2]

def norm2(arr):
    """Squared Euclidean norm of the coefficient vectors; equals the scalar part of u*conj(u)"""
    arr = np.asarray(arr)
    return np.sum(np.abs(arr)**2, axis=-1)

def groupinverse(arr, m):
    """u^-1 = conj(u)/|u|^2, valid on the Clifford group"""
    n2 = norm2(arr)
    if np.any(n2 <= 0):
        raise NotInvertibleError("Zero norm element has no inverse")
    return applyinvolution(arr, m, 'conjugate') / n2[...,None]

def leftmatrix(arr, m):
    """Matrix L with (a*b) = L @ b"""
    return cliffordproduct(np.asarray(arr)[...,None,:], np.eye(2**m), m).swapaxes(-1,-2)

def lipschitzmask(arr, m, tol=TOLERANCE):
    """Batched Clifford group membership test, see lipschitz_check()"""
    arr = np.asarray(arr, dtype=float)
    scale = norm2(arr)
    uu = cliffordproduct(arr, applyinvolution(arr, m, 'conjugate'), m)
    ok = (scale > 0) & (np.abs(uu[...,0] - scale) <= tol * np.maximum(scale,1.0))
    ok &= np.all(np.abs(uu[...,1:]) <= tol * np.maximum(scale,1.0)[...,None], axis=-1)
    safe = np.where(scale[...,None] > 0, arr, scalararray(1.0, m, arr.shape[:-1]))
    rev = applyinvolution(safe, m, 'reversion')
    for coords in np.eye(m+1):
        x = paravectorarray(coords, m)
        image = cliffordproduct(cliffordproduct(safe, x, m), rev, m)
        ok &= np.all(np.abs(higherpart(image, m)) <= tol * np.maximum(scale,1.0)[...,None], axis=-1)
    return ok


def randomversors(m, rng, count=None, factors=3, paravectors=True):
    """Products of random unit paravectors (or pure unit vectors when paravectors is False)"""
    shape = () if count is None else (count,)
    result = scalararray(1.0, m, shape)
    for _ in range(factors):
        coords = rng.standard_normal(shape + (m+1,))
        if not paravectors:
            coords[...,0] = 0.0
        coords /= np.linalg.norm(coords, axis=-1, keepdims=True)
        result = cliffordproduct(result, paravectorarray(coords, m), m)
    return result


class CliffordElement:
    """A multivector of Cl(0,m) with read-only dense coefficients"""

    def __init__(self, m, coeffs):
        self.m = checkgenerators(m)
        coeffs = np.array(coeffs)
        if coeffs.shape != (2**self.m,):
            raise DimensionError("Expected " + str(2**self.m) + " coefficients, got shape " + str(coeffs.shape))
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("Clifford coefficients must be finite")
        coeffs.setflags(write=False)
        self.coeffs = coeffs

    @staticmethod
    def scalar(value, m):
        return CliffordElement(m, scalararray(value, m))

    @staticmethod
    def blade(mask, m, value=1):
        coeffs = np.zeros(2**m, dtype=np.result_type(value, int))
        coeffs[mask] = value
        return CliffordElement(m, coeffs)

    @staticmethod
    def generator(i, m):
        """e_i for i in 1..m"""
        if i < 1 or i > m:
            raise DimensionError("No generator e_" + str(i) + " in Cl(0," + str(m) + ")")
        return CliffordElement.blade(1 << (i-1), m)

    @staticmethod
    def vector(components):
        components = np.asarray(components)
        m = len(components)
        return CliffordElement(m, paravectorarray(np.concatenate(([0], components)), m))

    def _check(self, other):
        if not isinstance(other, CliffordElement):
            return CliffordElement.scalar(other, self.m)
        if other.m != self.m:
            raise DimensionError("Mismatched Clifford algebras: Cl(0," + str(self.m) + ") and Cl(0," + str(other.m) + ")")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CliffordElement(self.m, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return CliffordElement(self.m, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return CliffordElement(self.m, -self.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return CliffordElement(self.m, self.coeffs * other)
        return geometric_product(self, other)

    def __rmul__(self, other):
        if np.isscalar(other):
            return CliffordElement(self.m, self.coeffs * other)
        return geometric_product(self._check(other), self)

    def __truediv__(self, value):
        return CliffordElement(self.m, self.coeffs / value)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.m, self.coeffs.tobytes()))

    def __repr__(self):
        return "CliffordElement(" + str(self.m) + ", " + repr(self.coeffs.tolist()) + ")"

    def grade(self, k):
        coeffs = np.where(grades(self.m) == k, self.coeffs, 0)
        return CliffordElement(self.m, coeffs)

    def scalarpart(self):
        return self.coeffs[0]

    def isclose(self, other, tol=TOLERANCE):
        other = self._check(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= tol)

    def isparavector(self, tol=TOLERANCE):
        return bool(np.all(np.abs(higherpart(self.coeffs, self.m)) <= tol))


class Paravector:
    """An element of R + R^m inside Cl(0,m), the model of R^{1,m}"""

    def __init__(self, scalar, vector):
        self.scalar = float(scalar)
        self.vector = np.array(vector, dtype=float)
        self.m = checkgenerators(len(self.vector))

    @staticmethod
    def fromcoordinates(coords):
        coords = np.asarray(coords, dtype=float)
        return Paravector(coords[0], coords[1:])

    @staticmethod
    def fromelement(element, tol=TOLERANCE):
        if not element.isparavector(tol):
            raise ValueError("Clifford element is not a paravector")
        coords = paravectorcoords(element.coeffs, element.m)
        return Paravector.fromcoordinates(np.real(coords))

    def coordinates(self):
        return np.concatenate(([self.scalar], self.vector))

    def toelement(self):
        return CliffordElement(self.m, paravectorarray(self.coordinates(), self.m))

    def norm2(self):
        return self.scalar**2 + float(np.dot(self.vector, self.vector))

    def __repr__(self):
        return "Paravector(" + str(self.scalar) + ", " + repr(self.vector.tolist()) + ")"


class CliffordGroupElement:
    """A validated element of the Clifford group generated by nonzero paravectors"""

    def __init__(self, value, tol=TOLERANCE):
        if not isinstance(value, CliffordElement):
            raise TypeError("Expected a CliffordElement")
        if not lipschitz_check(value, tol):
            raise NotInvertibleError("Element is not in the Clifford group: " + repr(value))
        self.value = value
        self.norm = norm(value)
        self.m = value.m

    @staticmethod
    def fromparavectors(*paravectors):
        if not paravectors:
            raise ValueError("Need at least one paravector")
        value = paravectors[0].toelement()
        for p in paravectors[1:]:
            value = value * p.toelement()
        return CliffordGroupElement(value)

    def __mul__(self, other):
        return CliffordGroupElement(self.value * other.value)

    def __repr__(self):
        return "CliffordGroupElement(" + repr(self.value) + ")"



def geometric_product(a, b):
    if a.m != b.m:
        raise DimensionError("Mismatched Clifford algebras: Cl(0," + str(a.m) + ") and Cl(0," + str(b.m) + ")")
    return CliffordElement(a.m, cliffordproduct(a.coeffs, b.coeffs, a.m))

def conjugate(a):
    return CliffordElement(a.m, applyinvolution(a.coeffs, a.m, 'conjugate'))

def main_involution(a):
    return CliffordElement(a.m, applyinvolution(a.coeffs, a.m, 'main'))

def reversion(a):
    return CliffordElement(a.m, applyinvolution(a.coeffs, a.m, 'reversion'))

def norm(a):
    return float(np.sqrt(norm2(a.coeffs)))

def inverse(a):
    """General inverse by solving the left multiplication system"""
    matrix = leftmatrix(a.coeffs, a.m)
    if np.linalg.cond(matrix) > 1e12:
        raise NotInvertibleError("Element is not invertible: " + repr(a))
    unit = scalararray(1.0, a.m)
    return CliffordElement(a.m, np.linalg.solve(matrix, unit))

def invert_group(u):
    """Inverse of a Clifford group element as conj(u)/|u|^2"""
    if u.norm <= 0:
        raise NotInvertibleError("Zero norm element has no inverse")
    return CliffordGroupElement(CliffordElement(u.m, groupinverse(u.value.coeffs, u.m)))

def lipschitz_check(u, tol=TOLERANCE):
    """True iff u x (u')^-1 is a paravector for every basis paravector x"""
    try:
        uinv = inverse(main_involution(u))
    except NotInvertibleError:
        return False
    scale = max(norm(u) * norm(uinv), 1.0)
    for coords in np.eye(u.m+1):
        x = CliffordElement(u.m, paravectorarray(coords, u.m))
        image = u * x * uinv
        if np.any(np.abs(higherpart(image.coeffs, u.m)) > tol * scale):
            return False
    return True
