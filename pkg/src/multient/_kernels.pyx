# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled purity-numerator kernel for permutation (and signed) states.

For a state with integer amplitudes T on d^4 basis points, the numerator of
Tr rho_S^2 over the common denominator (sum T^2)^2 = d^4 is sum_{r,r'} G[r,r']^2
with G the Gram matrix of T reshaped to (parties in S) x (rest).
"""
import numpy as np
cimport numpy as cnp

DEF MAXD4 = 256
DEF NSUB = 7


cdef void _fill(long long *T, const cnp.int64_t *img, const signed char *sg,
                int d, int d2, int has_signs) noexcept nogil:
    cdef int t, q
    for q in range(d2 * d2):
        T[q] = 0
    for t in range(d2):
        # row = image (composite i alpha), column = t (composite j beta)
        T[img[t] * d2 + t] = sg[t] if has_signs else 1


cdef long long _gram_sq(const long long *T, const int *rmap, const int *cmap,
                        int nrows, int ncols, long long *M) noexcept nogil:
    cdef int q, r, s, c
    cdef long long g, acc = 0
    cdef int n = nrows * ncols
    for q in range(n):
        M[rmap[q] * ncols + cmap[q]] = T[q]
    for r in range(nrows):
        for s in range(r, nrows):
            g = 0
            for c in range(ncols):
                g += M[r * ncols + c] * M[s * ncols + c]
            acc += g * g if r == s else 2 * g * g
    return acc


def _index_maps(int d):
    """Row/column index of every flat basis index for the seven subsets."""
    subsets = [(0,), (1,), (2,), (3,), (0, 1), (0, 2), (0, 3)]
    rmaps = np.zeros((NSUB, d ** 4), dtype=np.int32)
    cmaps = np.zeros((NSUB, d ** 4), dtype=np.int32)
    nrows = np.zeros(NSUB, dtype=np.int32)
    digits = np.array(np.unravel_index(np.arange(d ** 4), (d,) * 4)).T
    for k, sub in enumerate(subsets):
        rest = [p for p in range(4) if p not in sub]
        # Gram over the smaller side: rows are the kept parties when |S| <= 2
        for q in range(d ** 4):
            r = 0
            for p in sub:
                r = r * d + digits[q, p]
            c = 0
            for p in rest:
                c = c * d + digits[q, p]
            rmaps[k, q] = r
            cmaps[k, q] = c
        nrows[k] = d ** len(sub)
    return rmaps, cmaps, nrows


def purity_numerators(images, signs, int d):
    """(N, 7) int64 numerators of Tr rho^2 for parties 1, 2, 3, 4, 12, 13, 14."""
    cdef const cnp.int64_t[:, ::1] img = np.ascontiguousarray(images, dtype=np.int64)
    cdef int d2 = d * d
    cdef Py_ssize_t N = img.shape[0]
    if d2 * d2 > MAXD4:
        raise ValueError("compiled kernel supports d <= 4")
    if img.shape[1] != d2:
        raise ValueError("images must have d^2 columns")
    cdef int has_signs = signs is not None
    cdef const signed char[:, ::1] sg
    if has_signs:
        sg = np.ascontiguousarray(signs, dtype=np.int8)
        if sg.shape[0] != N or sg.shape[1] != d2:
            raise ValueError("signs must match images in shape")
    else:
        sg = np.ones((1, d2), dtype=np.int8)
    rm, cm, nr = _index_maps(d)
    cdef int[:, ::1] rmap = rm
    cdef int[:, ::1] cmap = cm
    cdef int[::1] nrows = nr
    out = np.zeros((N, NSUB), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef long long T[MAXD4]
    cdef long long M[MAXD4]
    cdef Py_ssize_t i
    cdef int k
    cdef const signed char *sp
    with nogil:
        for i in range(N):
            sp = &sg[i, 0] if has_signs else &sg[0, 0]
            _fill(T, &img[i, 0], sp, d, d2, has_signs)
            for k in range(NSUB):
                o[i, k] = _gram_sq(T, &rmap[k, 0], &cmap[k, 0], nrows[k], d2 * d2 // nrows[k], M)
    return out
