# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""C implementations of the enumeration kernels."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def eval_poly_logs(coeff_logs, zech, Py_ssize_t qm1):
    cdef const i64[::1] zt = np.ascontiguousarray(zech, dtype=np.int64)
    cdef const i64[::1] cl = np.ascontiguousarray(list(coeff_logs), dtype=np.int64)
    out_arr = np.empty(qm1, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef Py_ssize_t j, i, nc = cl.shape[0]
    cdef i64 acc, c, z
    with nogil:
        for j in range(qm1):
            acc = -1
            for i in range(nc - 1, -1, -1):
                if acc >= 0:
                    acc = (acc + j) % qm1
                c = cl[i]
                if c < 0:
                    continue
                if acc < 0:
                    acc = c
                else:
                    z = zt[((c - acc) % qm1 + qm1) % qm1]
                    if z < 0:
                        acc = -1
                    else:
                        acc = (acc + z) % qm1
            out[j] = acc
    return out_arr


def ratio_logs(num, den, Py_ssize_t qm1):
    cdef const i64[::1] a = np.ascontiguousarray(num, dtype=np.int64)
    cdef const i64[::1] b = np.ascontiguousarray(den, dtype=np.int64)
    cdef Py_ssize_t j, n = a.shape[0]
    out_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    with nogil:
        for j in range(n):
            if a[j] < 0 or b[j] < 0:
                out[j] = -1
            else:
                out[j] = ((a[j] - b[j]) % qm1 + qm1) % qm1
    return out_arr


def count_joint_residues(a, i64 ga, b, i64 gb):
    cdef const i64[::1] x = np.ascontiguousarray(a, dtype=np.int64)
    cdef const i64[::1] y = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t j, n = x.shape[0]
    cdef i64 total = 0
    with nogil:
        for j in range(n):
            if x[j] >= 0 and y[j] >= 0 and x[j] % ga == 0 and y[j] % gb == 0:
                total += 1
    return total
