"""Numpy implementations of the enumeration kernels (fallback when the C extension is absent)."""

import numpy as np

LOG_ZERO = -1


def eval_poly_logs(coeff_logs, zech, qm1):
    """Logs of f(xi^j) for j = 0..qm1-1, LOG_ZERO where the value vanishes.

    coeff_logs lists log(c_i) low degree first (LOG_ZERO for zero coefficients).
    """
    zech = np.asarray(zech, dtype=np.int64)
    j = np.arange(qm1, dtype=np.int64)
    acc = np.full(qm1, LOG_ZERO, dtype=np.int64)
    for cl in reversed(list(coeff_logs)):
        nz = acc >= 0
        acc = np.where(nz, (acc + j) % qm1, LOG_ZERO)
        if cl < 0:
            continue
        out = np.full(qm1, cl, dtype=np.int64)
        a = acc[nz]
        # xi^a + xi^c = xi^a (1 + xi^(c-a))
        z = zech[(cl - a) % qm1]
        out[nz] = np.where(z < 0, LOG_ZERO, (a + z) % qm1)
        acc = out
    return acc


def ratio_logs(num, den, qm1):
    num = np.asarray(num, dtype=np.int64)
    den = np.asarray(den, dtype=np.int64)
    ok = (num >= 0) & (den >= 0)
    return np.where(ok, (num - den) % qm1, LOG_ZERO)


def count_joint_residues(a, ga, b, gb):
    """#{j : a[j] >= 0, b[j] >= 0, ga | a[j], gb | b[j]}."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    ok = (a >= 0) & (b >= 0) & (a % ga == 0) & (b % gb == 0)
    return int(ok.sum())
