# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-map kernels; mirrors the API of `_poly_py`.

Coefficients stay arbitrary-precision Python ints, so the speedup comes
from the tight loops and tuple handling, not from fixed-width arithmetic.
"""

KERNEL = "cython"


def terms_add(dict a, dict b):
    cdef dict out = dict(a)
    for exp, c in b.items():
        s = out.get(exp, 0) + c
        if s:
            out[exp] = s
        else:
            out.pop(exp, None)
    return out


def terms_sub(dict a, dict b):
    cdef dict out = dict(a)
    for exp, c in b.items():
        s = out.get(exp, 0) - c
        if s:
            out[exp] = s
        else:
            out.pop(exp, None)
    return out


def terms_neg(dict a):
    cdef dict out = {}
    for exp, c in a.items():
        out[exp] = -c
    return out


def terms_scale(dict a, k):
    cdef dict out = {}
    if k == 0:
        return out
    if k == 1:
        return dict(a)
    for exp, c in a.items():
        out[exp] = c * k
    return out


def terms_mul(dict a, dict b):
    cdef dict out = {}
    cdef Py_ssize_t i, m
    cdef tuple ea, eb, key
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        m = len(ea)
        for eb, cb in b.items():
            key = tuple([ea[i] + eb[i] for i in range(m)])
            s = out.get(key, 0) + ca * cb
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def terms_mul_monomial(dict a, tuple exp, k):
    cdef dict out = {}
    cdef Py_ssize_t i, m = len(exp)
    cdef tuple e
    for e, c in a.items():
        out[tuple([e[i] + exp[i] for i in range(m)])] = c * k
    return out
