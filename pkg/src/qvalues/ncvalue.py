"""Noncommutative values ``{f; V_n}`` of observables at a pure state.

``f`` is the expectation-value function ``<phi|B|phi>`` and ``V_n`` its
derivative with respect to the amplitude ``z_n``::

    V_n = -f conj(z_n) + sum_m conj(z_m) <m|B|n>

The barred components ``V_{n-bar}`` are never stored; they are
``conj(V_n)``.  Operators may be dense arrays, :class:`~qvalues.hilbert.Observable`
instances or :class:`scipy.sparse.linalg.LinearOperator` objects (the grid
observables of :mod:`qvalues.continuum` are matrix-free).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import LinearOperator

from .hilbert import DEFAULT_TOL, as_vector, max_abs_diff, phase_aligned_diff


@dataclass(frozen=True, eq=False)
class NCValue:
    """Noncommutative value: scalar part ``f`` and derivative vector ``v``."""

    f: complex
    v: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=complex).reshape(-1)
        v.flags.writeable = False
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "f", complex(self.f))

    @property
    def dim(self) -> int:
        return self.v.size

    def __add__(self, other):
        if not isinstance(other, NCValue):
            return NotImplemented
        _check_same_dim(self, other)
        return NCValue(self.f + other.f, self.v + other.v)

    def __sub__(self, other):
        if not isinstance(other, NCValue):
            return NotImplemented
        _check_same_dim(self, other)
        return NCValue(self.f - other.f, self.v - other.v)

    def __mul__(self, alpha):
        if isinstance(alpha, NCValue):
            return NotImplemented
        return NCValue(alpha * self.f, alpha * self.v)

    __rmul__ = __mul__

    def __truediv__(self, alpha):
        return NCValue(self.f / alpha, self.v / alpha)

    def __neg__(self):
        return NCValue(-self.f, -self.v)

    def conj_v(self) -> np.ndarray:
        """The barred components ``V_{n-bar}``."""
        return self.v.conj()

    def to_dict(self):
        from .jsonio import encode_complex, encode_vector
        return {"f": encode_complex(self.f), "v": encode_vector(self.v)}

    @classmethod
    def from_dict(cls, d):
        from .jsonio import decode_complex, decode_vector
        return cls(decode_complex(d["f"]), decode_vector(d["v"]))


def _check_same_dim(a, b):
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def nc_diff(a: NCValue, b: NCValue) -> float:
    """Componentwise max-abs difference of two values (f and all V_n)."""
    _check_same_dim(a, b)
    return max(abs(a.f - b.f), max_abs_diff(a.v, b.v))


def nc_diff_up_to_phase(a: NCValue, b: NCValue) -> float:
    """Like :func:`nc_diff` but ignoring a common phase on the V components."""
    _check_same_dim(a, b)
    return max(abs(a.f - b.f), phase_aligned_diff(a.v, b.v))


# --------------------------------------------------------------------------- #
#                             operator plumbing                               #
# --------------------------------------------------------------------------- #

def _dim_of(B):
    if isinstance(B, LinearOperator):
        return B.shape[0]
    return np.shape(np.asarray(B))[0]


def _matvec(B, z):
    if isinstance(B, LinearOperator):
        return B.matvec(z)
    return np.asarray(B, dtype=complex) @ z


def _row_times(w, B):
    """Row vector ``w^T B`` (no conjugation of w)."""
    if isinstance(B, LinearOperator):
        return B.rmatvec(w.conj()).conj()
    return w @ np.asarray(B, dtype=complex)


def _state(phi, B):
    z = as_vector(phi)
    d = _dim_of(B)
    if z.size != d:
        raise ValueError(f"dimension mismatch: state has {z.size}, operator {d}")
    return z


# --------------------------------------------------------------------------- #
#                                 operations                                  #
# --------------------------------------------------------------------------- #

def expectation_fn(B, phi) -> complex:
    """``<phi|B|phi>`` for a normalized state."""
    z = _state(phi, B)
    return complex(np.vdot(z, _matvec(B, z)))


def v_components(B, phi) -> np.ndarray:
    """``V_n = -f conj(z_n) + sum_m conj(z_m) B_mn``."""
    z = _state(phi, B)
    row = _row_times(z.conj(), B)
    f = row @ z
    return row - f * z.conj()


def nc_value(B, phi) -> NCValue:
    """The tuple ``{f; V_0, ..., V_{D-1}}`` of ``B`` at ``phi``."""
    z = _state(phi, B)
    row = _row_times(z.conj(), B)
    f = complex(row @ z)
    return NCValue(f, row - f * z.conj())


def star_scalar(a: NCValue, b: NCValue) -> complex:
    """Scalar part of ``a * b``: ``f_a f_b + sum_n V_a,n conj(V_b,n)``."""
    _check_same_dim(a, b)
    return complex(a.f * b.f + np.sum(a.v * b.v.conj()))


def nc_value_of_product(B, C, phi) -> NCValue:
    """Value of the product ``BC`` from the factor values and matrix elements.

    The scalar part comes from :func:`star_scalar`; the V part needs
    ``sum_{m,l} conj(z_m) B_ml C_ln`` and so the operators themselves.
    """
    z = _state(phi, B)
    _state(z, C)
    f_bc = star_scalar(nc_value(B, z), nc_value(C, z))
    row = _row_times(_row_times(z.conj(), B), C)
    return NCValue(f_bc, row - f_bc * z.conj())


def uncertainty(a: NCValue) -> float:
    """``sum_n |V_n|^2``, which equals ``<B^2> - <B>^2`` for Hermitian B."""
    return float(np.sum(np.abs(a.v) ** 2))


def _commutator_norm(B, W):
    B = np.asarray(B, dtype=complex)
    W = np.asarray(W, dtype=complex)
    return max_abs_diff(B @ W, W @ B)


def transport_under_local_process(a: NCValue, B, W, phi,
                                  tol=DEFAULT_TOL) -> NCValue:
    """Value of ``B`` at ``W phi`` for a process ``W`` commuting with ``B``.

    The result is computed afresh at the new state and then checked against
    the representation-change law ``f' = f``, ``v' = conj(W) v``; a
    ``ValueError`` is raised if ``W`` does not commute with ``B`` or the law
    fails beyond ``tol``.
    """
    comm = _commutator_norm(B, W)
    if comm > tol:
        raise ValueError(
            f"process does not commute with the observable "
            f"(commutator norm {comm:.3e}); no invariance is claimed")
    z = _state(phi, B)
    Wm = np.asarray(W, dtype=complex)
    moved = nc_value(B, Wm @ z)
    expected_v = Wm.conj() @ a.v
    dev = max(abs(moved.f - a.f), max_abs_diff(moved.v, expected_v))
    if dev > tol:
        raise ValueError(f"transported value deviates by {dev:.3e}")
    return moved
