"""Dense complex linear algebra over tensor-product Hilbert spaces.

Index convention is lexicographic throughout: for factor dimensions
``(d0, d1, ..., dk)`` the basis vector ``|i0 i1 ... ik>`` sits at the
row-major flat index, so ``|00>, |01>, |10>, |11>`` for two qubits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
DEFAULT_TOL = 1e-10

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)

for _m in (SIGMA0, SIGMA1, SIGMA2, SIGMA3, CNOT):
    _m.flags.writeable = False


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


def _check_dims(dim, factor_dims):
    if factor_dims is None:
        return None
    factor_dims = tuple(int(d) for d in factor_dims)
    if any(d < 1 for d in factor_dims):
        raise ValueError(f"factor dimensions must be positive, got {factor_dims}")
    if prod(factor_dims) != dim:
        raise ValueError(
            f"factor dimensions {factor_dims} multiply to {prod(factor_dims)}, "
            f"not {dim}")
    return factor_dims


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state ``sum_n z_n |n>``.

    Amplitudes are normalized on construction; a zero vector is rejected.
    """

    amplitudes: np.ndarray
    factor_dims: tuple | None = None

    def __post_init__(self):
        z = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if z.size == 0:
            raise ValueError("state must have at least one amplitude")
        norm = np.linalg.norm(z)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        object.__setattr__(self, "amplitudes", _frozen(z / norm))
        object.__setattr__(self, "factor_dims",
                           _check_dims(z.size, self.factor_dims))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __len__(self):
        return self.dim


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian operator given by its matrix elements ``<m|B|n>``.

    Non-Hermitian input is rejected rather than symmetrized.
    """

    matrix: np.ndarray
    factor_dims: tuple | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"observable must be square, got shape {m.shape}")
        dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if dev > HERMITIAN_TOL:
            raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e})")
        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "factor_dims",
                           _check_dims(m.shape[0], self.factor_dims))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True, eq=False)
class Unitary:
    """Unitary matrix, checked to ``U^dag U = I`` within 1e-10."""

    matrix: np.ndarray
    factor_dims: tuple | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"unitary must be square, got shape {m.shape}")
        dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        if dev > UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (deviation {dev:.3e})")
        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "factor_dims",
                           _check_dims(m.shape[0], self.factor_dims))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def as_matrix(a) -> np.ndarray:
    """Return ``a`` (array-like, Observable or Unitary) as a 2D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {m.shape}")
    return m


def as_vector(a) -> np.ndarray:
    v = np.asarray(a, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got array of shape {v.shape}")
    return v


def max_abs_diff(a, b) -> float:
    """Entrywise max-abs difference, the comparison metric used everywhere."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def allclose(a, b, tol=DEFAULT_TOL) -> bool:
    return max_abs_diff(a, b) <= tol


def phase_aligned_diff(a, b) -> float:
    """Max-abs difference after removing the best global phase between a and b.

    ``b`` is rotated by ``e^{i alpha}`` with alpha chosen from the overlap
    ``<b|a>``; zero overlap leaves ``b`` untouched.
    """
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    overlap = np.vdot(b, a)
    if abs(overlap) > 0:
        b = b * (overlap / abs(overlap))
    return max_abs_diff(a, b)


def equal_up_to_phase(a, b, tol=DEFAULT_TOL) -> bool:
    return phase_aligned_diff(a, b) <= tol


def is_hermitian(a, tol=HERMITIAN_TOL) -> bool:
    m = as_matrix(a)
    return max_abs_diff(m, m.conj().T) <= tol


def is_unitary(a, tol=UNITARY_TOL) -> bool:
    m = as_matrix(a)
    return max_abs_diff(m.conj().T @ m, np.eye(m.shape[0])) <= tol


# --------------------------------------------------------------------------- #
#                              Tensor structure                               #
# --------------------------------------------------------------------------- #

def _factors_of(x, size):
    dims = getattr(x, "factor_dims", None)
    return tuple(dims) if dims is not None else (size,)


def tensor(a, b):
    """Kronecker product with index ``i * dim_b + j``.

    StateVectors give a StateVector, anything 2D gives an ndarray, and
    Observables/Unitaries keep their type.  ``factor_dims`` are concatenated.
    """
    if isinstance(a, StateVector) != isinstance(b, StateVector):
        raise TypeError("cannot tensor a state with an operator")
    if isinstance(a, StateVector):
        dims = _factors_of(a, a.dim) + _factors_of(b, b.dim)
        return StateVector(np.kron(a.amplitudes, b.amplitudes), dims)

    ma, mb = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    if ma.ndim != mb.ndim:
        raise TypeError(
            f"kind mismatch: {ma.ndim}-d and {mb.ndim}-d operands")
    out = np.kron(ma, mb)
    if ma.ndim == 2:
        dims = _factors_of(a, ma.shape[0]) + _factors_of(b, mb.shape[0])
        if isinstance(a, Observable) and isinstance(b, Observable):
            return Observable(out, dims)
        if isinstance(a, Unitary) and isinstance(b, Unitary):
            return Unitary(out, dims)
    return out


def _embed(op, slots, factor_dims):
    """Place ``op`` on the given slots and identities everywhere else."""
    k = len(factor_dims)
    slots = tuple(slots)
    if len(set(slots)) != len(slots):
        raise ValueError(f"repeated slot in {slots}")
    for s in slots:
        if not 0 <= s < k:
            raise ValueError(f"slot {s} out of range for {k} factors")
    sub = [factor_dims[s] for s in slots]
    d_sub = prod(sub)
    if op.shape != (d_sub, d_sub):
        raise ValueError(
            f"operator of shape {op.shape} does not fit slots {slots} "
            f"with dims {sub}")
    rest = [i for i in range(k) if i not in slots]
    d_rest = prod(factor_dims[i] for i in rest)
    full = np.kron(op, np.eye(d_rest, dtype=complex))
    # full acts on the ordering (slots..., rest...); permute back
    order = list(slots) + rest
    dims_perm = [factor_dims[i] for i in order]
    inv = np.argsort(order)
    t = full.reshape(dims_perm + dims_perm)
    t = t.transpose(list(inv) + [k + i for i in inv])
    D = prod(factor_dims)
    return t.reshape(D, D)


def lift_local(op, slot, factor_dims: Sequence[int]):
    """Lift ``op`` to ``I x ... x op x ... x I``.

    ``slot`` is an int, or a tuple of slots when ``op`` acts on several
    factors jointly (in the order given).  Hermitian input stays an
    :class:`Observable`.
    """
    factor_dims = tuple(int(d) for d in factor_dims)
    slots = (slot,) if np.isscalar(slot) else tuple(slot)
    m = as_matrix(op)
    out = _embed(m, slots, factor_dims)
    if isinstance(op, Observable):
        return Observable(out, factor_dims)
    if isinstance(op, Unitary):
        return Unitary(out, factor_dims)
    return out


def density_matrix(phi) -> np.ndarray:
    z = as_vector(phi)
    return np.outer(z, z.conj())


def partial_trace(rho, keep_slot, factor_dims: Sequence[int]) -> np.ndarray:
    """Reduced matrix on ``keep_slot`` (int or tuple of slots)."""
    factor_dims = tuple(int(d) for d in factor_dims)
    m = as_matrix(rho)
    D = prod(factor_dims)
    if m.shape != (D, D):
        raise ValueError(f"rho of shape {m.shape} does not match dims {factor_dims}")
    keep = (keep_slot,) if np.isscalar(keep_slot) else tuple(keep_slot)
    k = len(factor_dims)
    for s in keep:
        if not 0 <= s < k:
            raise ValueError(f"slot {s} out of range for {k} factors")
    t = m.reshape(factor_dims + factor_dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:k])
    col = list(letters[k:2 * k])
    for i in range(k):
        if i not in keep:
            col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    d_keep = prod(factor_dims[i] for i in keep)
    return np.einsum("".join(row) + "".join(col) + "->" + out, t).reshape(d_keep, d_keep)


def purity(rho) -> float:
    m = as_matrix(rho)
    return float(np.real(np.trace(m @ m)))


def operator_schmidt_coefficients(U, factor_dims: Sequence[int]) -> np.ndarray:
    """Singular values of the realigned ``dA^2 x dB^2`` matrix of ``U``."""
    factor_dims = tuple(int(d) for d in factor_dims)
    if len(factor_dims) != 2:
        raise ValueError(
            f"operator Schmidt rank needs exactly two factors, got {factor_dims}")
    dA, dB = factor_dims
    m = as_matrix(U)
    if m.shape != (dA * dB, dA * dB):
        raise ValueError(f"operator of shape {m.shape} does not match dims {factor_dims}")
    realigned = m.reshape(dA, dB, dA, dB).transpose(0, 2, 1, 3).reshape(dA * dA, dB * dB)
    return np.linalg.svd(realigned, compute_uv=False)


def operator_schmidt_rank(U, factor_dims: Sequence[int], tol=DEFAULT_TOL) -> int:
    """Number of product terms needed to write ``U`` across the A|B cut.

    Rank 1 iff ``U = A x B``.
    """
    return int(np.sum(operator_schmidt_coefficients(U, factor_dims) > tol))


def state_schmidt_rank(phi, factor_dims: Sequence[int], tol=1e-6) -> int:
    dA, dB = factor_dims
    s = np.linalg.svd(as_vector(phi).reshape(dA, dB), compute_uv=False)
    return int(np.sum(s > tol))


# --------------------------------------------------------------------------- #
#                               Random sampling                               #
# --------------------------------------------------------------------------- #

def _ginibre(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary_from(rng, dim) -> np.ndarray:
    """Haar unitary via QR with the diagonal of R made real positive."""
    q, r = np.linalg.qr(_ginibre(rng, (dim, dim)))
    d = np.diagonal(r)
    ph = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return q * ph


def sample_random(kind: str, dim: int, seed: int):
    """Seeded random ``"state"``, ``"unitary"`` or ``"hermitian"``.

    The same ``(kind, dim, seed)`` always produces the same object.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    if kind == "state":
        return StateVector(_ginibre(rng, dim))
    if kind == "unitary":
        return Unitary(random_unitary_from(rng, dim))
    if kind == "hermitian":
        g = _ginibre(rng, (dim, dim))
        h = (g + g.conj().T) / 2
        return Observable(h)
    raise ValueError(f"unknown kind {kind!r}; use state, unitary or hermitian")
