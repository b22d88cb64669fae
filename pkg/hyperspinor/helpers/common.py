#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

import numpy as np


def dagger(matrices):
    """Conjugate transpose over the last two axes"""
    return np.conj(np.swapaxes(matrices, -1, -2))

def operatornorm(matrices):
    """Largest singular value over the last two axes"""
    return np.linalg.norm(matrices, ord=2, axis=(-2,-1))

def energy(values):
    """Squared Euclidean norm over the last axis"""
    return np.sum(np.abs(values)**2, axis=-1)


def fitslope(x, y):
    """Least-squares slope of y against x"""
    slope, _ = np.polyfit(np.asarray(x, dtype=float), np.asarray(y, dtype=float), 1)
    return float(slope)

def logslope(x, values):
    """Slope of log(values) against x, values must be positive"""
    values = np.asarray(values, dtype=float)
    if np.any(values <= 0):
        raise ValueError("logslope needs positive values")
    return fitslope(x, np.log(values))

def richardson(fine, coarse, order=1):
    """One Richardson step for an error of the form C h^order, fine at h and coarse at 2h"""
    factor = 2.0**order
    return (factor * fine - coarse) / (factor - 1)


def generator(seed, *key):
    """Independent generator for the stream identified by key"""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key)))


def smoothbump(s):
    """exp(1 - 1/(1-s^2)) on |s| < 1, zero outside; equals 1 at s = 0"""
    s = np.asarray(s, dtype=float)
    inside = np.abs(s) < 1
    result = np.zeros(s.shape)
    result[inside] = np.exp(1 - 1 / (1 - s[inside]**2))
    return result[()] if result.ndim == 0 else result

def smoothstep(x):
    """Quintic step: 0 for x <= 0, 1 for x >= 1, C2 in between"""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    return x**3 * (10 - 15 * x + 6 * x**2)
