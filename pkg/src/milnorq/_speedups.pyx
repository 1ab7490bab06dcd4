# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernel.

Exponent tuples (n <= 4) are packed into 16-bit fields of a 64-bit word, so
monomials multiply by integer addition and accumulate in a C++ hash map.
Raises OverflowError whenever packing would not be faithful; the caller
falls back to the pure-Python kernel in that case.
"""

from cython.operator cimport dereference, preincrement
from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

BACKEND = "speedups"


def poly_mul(dict a, dict b, long p):
    """Product of two sparse exponent-tuple polynomials mod p."""
    if not a or not b:
        return {}
    if p > 100000:
        raise OverflowError("modulus too large for the compiled kernel")
    cdef int n = len(next(iter(a)))
    if n > 4:
        raise OverflowError("too many variables for 64-bit packing")
    cdef vector[uint64_t] ka, kb
    cdef vector[int64_t] ca, cb
    cdef uint64_t amax[4]
    cdef uint64_t bmax[4]
    cdef int j
    for j in range(4):
        amax[j] = 0
        bmax[j] = 0
    cdef uint64_t packed, e
    cdef tuple key
    for key, val in a.items():
        packed = 0
        for j in range(n):
            e = key[j]
            if e > 0xFFFF:
                raise OverflowError("exponent too large to pack")
            if e > amax[j]:
                amax[j] = e
            packed = (packed << 16) | e
        ka.push_back(packed)
        ca.push_back(<int64_t> val)
    for key, val in b.items():
        packed = 0
        for j in range(n):
            e = key[j]
            if e > 0xFFFF:
                raise OverflowError("exponent too large to pack")
            if e > bmax[j]:
                bmax[j] = e
            packed = (packed << 16) | e
        kb.push_back(packed)
        cb.push_back(<int64_t> val)
    for j in range(n):
        if amax[j] + bmax[j] > 0xFFFF:
            raise OverflowError("product exponent would overflow a field")
    cdef unordered_map[uint64_t, int64_t] acc
    acc.reserve((ka.size() + kb.size()) * 4)
    cdef size_t i, t, nb = kb.size()
    cdef uint64_t k
    cdef int64_t cav
    for i in range(ka.size()):
        k = ka[i]
        cav = ca[i]
        for t in range(nb):
            acc[k + kb[t]] += cav * cb[t]
    out = {}
    cdef unordered_map[uint64_t, int64_t].iterator it = acc.begin()
    cdef int64_t c
    while it != acc.end():
        c = dereference(it).second % p
        if c != 0:
            k = dereference(it).first
            key = tuple([(k >> (16 * (n - 1 - j))) & 0xFFFF for j in range(n)])
            out[key] = c
        preincrement(it)
    return out
