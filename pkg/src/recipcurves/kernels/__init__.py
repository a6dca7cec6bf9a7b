"""Enumeration kernels.

The compiled extension is used when it was built; otherwise the numpy versions
are used.  Setting RECIPCURVES_PURE_PYTHON=1 forces the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("RECIPCURVES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:  # pragma: no cover - depends on the build
        pass


def eval_poly_logs(ctx, coeffs, impl=None):
    """Logs of f(xi^j), j = 0..|F|-2, for f given by its coefficient codes over ctx."""
    impl = impl or _impl
    logs = [ctx.log(c) if c else -1 for c in coeffs]
    return impl.eval_poly_logs(logs, ctx.zech_table, ctx.order - 1)


def ratio_logs(num, den, qm1, impl=None):
    return (impl or _impl).ratio_logs(num, den, qm1)


def count_joint_residues(a, ga, b, gb, impl=None):
    return int((impl or _impl).count_joint_residues(a, ga, b, gb))
