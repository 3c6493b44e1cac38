"""Integer hot loops with a numba backend and a pure-numpy fallback.

Set ``COHIGGS_DISABLE_NUMBA=1`` to force the numpy versions. ``BACKEND``
names the one in use. Both backends work in int64 and report when an
exact Python fallback is needed, so results never depend on the backend.
"""
import os

import numpy as np

from . import _numpy

_impl = _numpy
BACKEND = "numpy"
if os.environ.get("COHIGGS_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes", "on"):
    try:
        from . import _jit
    except ImportError:  # numba missing or broken
        _jit = None
    if _jit is not None:
        _impl = _jit
        BACKEND = "numba"

_SAFE = 1 << 62


def get_backend(name: str):
    """Return the raw kernel module ``"numba"`` or ``"numpy"`` (for benchmarks/tests)."""
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _jit as mod
        return mod
    raise ValueError(name)


def iterate_fits_int64(max_coeff: int, r: int, length: int, cap: int) -> bool:
    """True when every coefficient of Phi^(i), i <= cap, is provably below 2**62."""
    bound = max(int(max_coeff), 1)
    step = max(int(max_coeff), 1) * r * length
    for _ in range(2, cap + 1):
        bound *= step
        if bound >= _SAFE:
            return False
    return True


def nilpotency_indices(fields, degrees, gamma: int, cap: int, backend=None):
    """Nilpotency index of each field in a batch; -1 when not reached by ``cap``.

    ``fields`` is int64 of shape (N, r, r, L), entry (p, q) holding the
    coefficients of a form of degree ``degrees[p, q]`` (negative means the
    entry is structurally zero) padded with zeros to length L.
    Raises OverflowError if int64 could overflow; callers then use the exact path.
    """
    fields = np.ascontiguousarray(fields, dtype=np.int64)
    degrees = np.ascontiguousarray(degrees, dtype=np.int64)
    impl = _impl if backend is None else get_backend(backend)
    if fields.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    max_coeff = int(np.abs(fields).max())
    if not iterate_fits_int64(max_coeff, fields.shape[1], fields.shape[3], cap):
        raise OverflowError("coefficients too large for the int64 kernel")
    return impl.nilpotency_indices(fields, degrees, int(gamma), int(cap))


def int_rank(matrix, backend=None) -> int:
    """Exact rank of an integer matrix."""
    try:
        a = np.ascontiguousarray(matrix, dtype=np.int64)
    except OverflowError:
        from ..linalg import rank_exact
        return rank_exact([list(row) for row in matrix])
    if a.ndim != 2 or a.size == 0:
        return 0
    impl = _impl if backend is None else get_backend(backend)
    rank, overflow = impl.int_rank(a)
    if overflow:
        from ..linalg import rank_exact
        return rank_exact(a.tolist())
    return int(rank)


def commutant_layout(twists, gamma: int):
    """Index tables for the commutant system of a split bundle with flat ``twists``.

    Returns ``(phi_deg, end_deg, eq_off, var_off, neq, nvar)``: unknowns are the
    coefficients of f in End(E), equations the coefficients of
    Phi o f - f o Phi in Hom(E, E(gamma)), both laid out entry by entry.
    """
    a = np.asarray(twists, dtype=np.int64)
    phi_deg = a[:, None] + gamma - a[None, :]
    end_deg = a[:, None] - a[None, :]
    eq_sizes = np.maximum(phi_deg + 1, 0).ravel()
    var_sizes = np.maximum(end_deg + 1, 0).ravel()
    eq_off = (np.cumsum(eq_sizes) - eq_sizes).reshape(phi_deg.shape)
    var_off = (np.cumsum(var_sizes) - var_sizes).reshape(end_deg.shape)
    return phi_deg, end_deg, eq_off, var_off, int(eq_sizes.sum()), int(var_sizes.sum())


def commutant_ranks(fields, twists, gamma: int, backend=None):
    """Rank of the linear system f -> Phi o f - f o Phi for each integral field.

    Entries of -1 mark int64 overflow; the caller must redo those exactly.
    """
    fields = np.ascontiguousarray(fields, dtype=np.int64)
    impl = _impl if backend is None else get_backend(backend)
    phi_deg, end_deg, eq_off, var_off, neq, nvar = commutant_layout(twists, gamma)
    if fields.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return impl.commutant_ranks(fields, phi_deg, end_deg, eq_off, var_off, neq, nvar)
