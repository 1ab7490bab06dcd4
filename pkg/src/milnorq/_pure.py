"""Pure-Python sparse polynomial kernel.

A polynomial in n variables over F_p is a dict mapping exponent tuples of
length n to coefficients in 1..p-1.  This module is the fallback for the
compiled kernel in ``_speedups``; both must compute identical dicts.
"""

BACKEND = "pure"


def poly_mul(a, b, p):
    """Product of two sparse polynomials mod p."""
    if len(a) < len(b):
        a, b = b, a
    acc = {}
    get = acc.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            acc[k] = get(k, 0) + ca * cb
    return {k: c for k, c in ((k, c % p) for k, c in acc.items()) if c}
