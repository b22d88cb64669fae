#========================================================================
#HyperSpinor - Harmonic analysis on the spinor bundle over hyperbolic space
#
# Licensed under the GNU Public License v3
#
#=======================================================================

"""Bounded caches for representations and quadrature grids"""

import functools
from collections import OrderedDict


def cached(size):
    """Memoizes a function of hashable positional arguments

    At most ``size`` results are kept and the first one stored is dropped
    when a new one arrives; size 0 disables memoization. The store is
    exposed as ``function.cache``.
    """
    def decorator(function):
        store = OrderedDict()

        @functools.wraps(function)
        def wrapper(*args):
            try:
                return store[args]
            except KeyError:
                pass
            value = function(*args)
            if size > 0:
                while len(store) >= size:
                    store.popitem(last=False)
                store[args] = value
            return value

        wrapper.cache = store
        return wrapper
    return decorator
