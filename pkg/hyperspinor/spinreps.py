#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""Matrix models of the spin representation of K = Spin(n) inside Cl(0,n-1).

For n = 2m+1 the representation (tau 'full') is the irreducible Cl(0,2m)
module of dimension 2^m and splits under M = Spin(n-1) into the two
half-spin blocks (sigma 'plus' and 'minus'). For n = 2m the Cl(0,2m-1)
module of dimension 2^m is reducible; its two chirality blocks are the
half-spin representations tau 'plus' and 'minus', which stay irreducible
under M (sigma 'full').
"""

from functools import reduce
import numpy as np
import scipy.linalg

from hyperspinor.clifford import randomversors, norm2
from hyperspinor.helpers.caching import cached

MINDIM = 2
MAXDIM = 5

PAULI_X = np.array([[0,1],[1,0]], dtype=complex)
PAULI_Y = np.array([[0,-1j],[1j,0]], dtype=complex)
PAULI_Z = np.array([[1,0],[0,-1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

PHASES = (1, 1j, -1, -1j)


class BranchingError(ValueError):
    pass


def taulabels(n):
    return ('full',) if n % 2 else ('plus','minus')

def sigmalabels(n):
    return ('plus','minus') if n % 2 else ('full',)

def checkdimension(n):
    if not isinstance(n, (int, np.integer)) or n < MINDIM or n > MAXDIM:
        raise BranchingError("Dimension n must be in " + str(MINDIM) + ".." + str(MAXDIM) + ", got " + str(n))
    return int(n)

def checklabels(n, tau, sigma=None):
    n = checkdimension(n)
    if tau not in taulabels(n):
        raise BranchingError("tau=" + str(tau) + " is not a spin representation of Spin(" + str(n) + "), expected one of " + ", ".join(taulabels(n)))
    if sigma is not None and sigma not in sigmalabels(n):
        raise BranchingError("sigma=" + str(sigma) + " does not occur in tau for n=" + str(n) + ", expected one of " + ", ".join(sigmalabels(n)))


def hermitiangammas(qubits):
    """2*qubits+1 pairwise anticommuting Hermitian involutions (Jordan-Wigner)"""
    def kron(factors):
        return reduce(np.kron, factors, np.eye(1, dtype=complex))
    gammas = []
    for j in range(qubits):
        for pauli in (PAULI_X, PAULI_Y):
            gammas.append(kron([PAULI_Z]*j + [pauli] + [IDENTITY2]*(qubits-j-1)))
    gammas.append(kron([PAULI_Z]*qubits))
    return gammas

def normalizedproduct(matrices):
    """c * M1...Mp with c the first phase in PHASES making the square the identity"""
    product = reduce(np.matmul, matrices)
    dim = product.shape[0]
    for c in PHASES:
        if np.allclose((c*product) @ (c*product), np.eye(dim), atol=1e-12):
            return c * product
    raise BranchingError("Volume element does not square to a scalar")


class SpinRepresentation:
    """Generator images of a (half-)spin representation of Spin(n) and their multiplicative extension"""

    def __init__(self, n, variant, generators):
        self.n = n
        self.m = n - 1
        self.variant = variant
        self.generators = generators
        self.dim = generators[0].shape[0]
        images = np.empty((2**self.m, self.dim, self.dim), dtype=complex)
        for mask in range(2**self.m):
            image = np.eye(self.dim, dtype=complex)
            for i in range(self.m):
                if mask & (1 << i):
                    image = image @ generators[i]
            images[mask] = image
        self.bladeimages = images

    def __call__(self, coeffs):
        return evaluate(self, coeffs)

    def __repr__(self):
        return "SpinRepresentation(n=" + str(self.n) + ", " + self.variant + ", dim=" + str(self.dim) + ")"


class IsotypicProjector:
    def __init__(self, sigma, matrix):
        self.sigma = sigma
        self.matrix = matrix

    @property
    def rank(self):
        return int(round(np.real(np.trace(self.matrix))))


class GradingMap:
    def __init__(self, matrix):
        self.matrix = matrix



@cached(32)
def build_representation(n, variant):
    checklabels(n, variant)
    if n % 2:
        q = (n - 1) // 2
        gammas = hermitiangammas(q)[:n-1]
        generators = [ 1j * g for g in gammas ]
    else:
        q = n // 2
        gammas = hermitiangammas(q)[:n-1]
        full = [ 1j * g for g in gammas ]
        omega = normalizedproduct(full)
        omega = (omega + omega.conj().T) / 2
        eigenvalues, eigenvectors = np.linalg.eigh(omega)
        wanted = 1.0 if variant == 'plus' else -1.0
        block = eigenvectors[:, np.isclose(eigenvalues, wanted)]
        generators = [ block.conj().T @ g @ block for g in full ]
    return SpinRepresentation(n, variant, generators)

def evaluate(rep, coeffs):
    """Image of a (batch of) Cl(0,n-1) coefficient arrays under the algebra map"""
    coeffs = getattr(coeffs, 'value', coeffs) #CliffordGroupElement
    coeffs = getattr(coeffs, 'coeffs', coeffs)
    return np.einsum('...a,aij->...ij', np.asarray(coeffs), rep.bladeimages)

def evaluate_unit(rep, coeffs, tol=1e-8):
    """As evaluate(), but for group elements of norm one only"""
    if hasattr(coeffs, "value"):
        coeffs = coeffs.value
    coeffs = np.asarray(getattr(coeffs, "coeffs", coeffs))
    if np.any(np.abs(norm2(coeffs) - 1) > tol):
        raise ValueError("Spin representation is evaluated on unit group elements only")
    return evaluate(rep, coeffs)

@cached(8)
def grading_map(rep):
    if rep.n % 2 == 0:
        raise BranchingError("The grading map exists for odd n only, got n=" + str(rep.n))
    gamma = normalizedproduct(rep.generators)
    gamma = (gamma + gamma.conj().T) / 2
    return GradingMap(gamma)

def isotypic_projector(rep, sigma):
    checklabels(rep.n, rep.variant, sigma)
    if rep.n % 2 == 0:
        return IsotypicProjector(sigma, np.eye(rep.dim, dtype=complex))
    gamma = grading_map(rep).matrix
    sign = 1 if sigma == 'plus' else -1
    matrix = (np.eye(rep.dim) + sign * gamma) / 2
    return IsotypicProjector(sigma, (matrix + matrix.conj().T) / 2)

def weylsigma(n, sigma):
    """The Weyl element fixes sigma for n even and swaps plus and minus for n odd"""
    if n % 2 == 0:
        return sigma
    return 'minus' if sigma == 'plus' else 'plus'

def dimensionratio(n):
    """d = dim tau / dim sigma"""
    return 2 if n % 2 else 1

def randomM(m, rng, count=None, factors=2):
    """Random elements of M = Spin(m): even products of unit vectors of R^m"""
    return randomversors(m, rng, count, factors=2*factors, paravectors=False)

def commutant_dimension(rep, samples):
    """Dimension of the space of matrices commuting with all sampled images"""
    dim = rep.dim
    identity = np.eye(dim)
    system = np.concatenate([ np.kron(T, identity) - np.kron(identity, T.T) for T in evaluate(rep, samples) ])
    return scipy.linalg.null_space(system, rcond=1e-10).shape[1]
