import os
import subprocess
import sys

import numpy as np
import pytest

from recipcurves import kernels
from recipcurves.field_tower import make_tower
from recipcurves.kernels import _pykernels

needs_c = pytest.mark.skipif(kernels.BACKEND != "c", reason="compiled kernels not built")


@needs_c
@pytest.mark.parametrize("p,n", [(3, 1), (5, 2), (7, 2), (2, 4)])
def test_compiled_matches_numpy(p, n):
    from recipcurves.kernels import _ckernels

    E = make_tower(p, n).big
    rng = np.random.default_rng(p * 100 + n)
    coeffs = [int(c) for c in rng.integers(0, E.order, size=6)] + [1]
    a = kernels.eval_poly_logs(E, coeffs, _pykernels)
    b = kernels.eval_poly_logs(E, coeffs, _ckernels)
    assert list(map(int, a)) == list(map(int, b))
    c = kernels.eval_poly_logs(E, [3 % E.order, 1], _pykernels)
    qm1 = E.order - 1
    r1 = kernels.ratio_logs(a, c, qm1, _pykernels)
    r2 = kernels.ratio_logs(a, c, qm1, _ckernels)
    assert list(map(int, r1)) == list(map(int, r2))
    for ga, gb in [(1, 1), (2, 4), (3, 2)]:
        if qm1 % ga == 0 and qm1 % gb == 0:
            assert kernels.count_joint_residues(r1, ga, a, gb, _pykernels) == kernels.count_joint_residues(r1, ga, a, gb, _ckernels)


def test_eval_matches_direct_evaluation():
    E = make_tower(3, 2).big
    coeffs = [2, 0, 5, 1]
    logs = kernels.eval_poly_logs(E, coeffs, _pykernels)
    for j in range(E.order - 1):
        x = E.pow(E.xi, j)
        v = 0
        for c in reversed(coeffs):
            v = E.add(E.mul(v, x), c)
        assert int(logs[j]) == (E.log(v) if v else -1)


def test_pure_python_switch():
    env = dict(os.environ, RECIPCURVES_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from recipcurves import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
    code = (
        "from recipcurves.kummer_curve import ReciprocalKummer, count_points\n"
        "from recipcurves.polynomial import parse_poly\n"
        "from recipcurves.field_tower import tower_for_q\n"
        "T = tower_for_q(17)\n"
        "print(count_points(ReciprocalKummer(17, 18, 2, -1, 1, parse_poly('x^2+2', T.small), T)).points)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "1088"
