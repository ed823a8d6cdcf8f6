"""Deutsch-Hayden matrix values ``[B]_phi = U_phi^dag B U_phi``.

``U_phi`` is any unitary carrying the reference basis vector (``e_0`` by
default) to ``phi``.  Only that one column is fixed by the state, so every
function here takes the completion explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .hilbert import (DEFAULT_TOL, SIGMA1, SIGMA3, Unitary, as_matrix,
                      as_vector, lift_local, max_abs_diff, random_unitary_from)


@dataclass(frozen=True, eq=False)
class UnitaryCompletion:
    """A unitary whose column ``reference_state_index`` is the target state."""

    u: Unitary
    reference_state_index: int = 0
    completion_id: str = "custom"

    @property
    def dim(self) -> int:
        return self.u.dim

    @property
    def state(self) -> np.ndarray:
        return self.u.matrix[:, self.reference_state_index]

    @classmethod
    def from_unitary(cls, u, completion_id="custom", reference_state_index=0):
        if not isinstance(u, Unitary):
            u = Unitary(u)
        return cls(u, reference_state_index, completion_id)


@dataclass(frozen=True, eq=False)
class DHMatrixValue:
    matrix: np.ndarray
    completion_id: str = "custom"

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def to_dict(self):
        from .jsonio import encode_matrix
        return {"matrix": encode_matrix(self.matrix),
                "completion_id": self.completion_id}

    @classmethod
    def from_dict(cls, d):
        from .jsonio import decode_matrix
        return cls(decode_matrix(d["matrix"]), d["completion_id"])


def _gram_schmidt_fill(first, dim, skip):
    cols = [first]
    for k in range(dim):
        if k == skip:
            continue
        w = np.zeros(dim, dtype=complex)
        w[k] = 1.0
        # two passes keep the columns orthonormal to ~1e-16
        for _ in range(2):
            for c in cols:
                w = w - np.vdot(c, w) * c
        cols.append(w / np.linalg.norm(w))
    return np.column_stack(cols)


def complete_unitary(phi, seed=None, reference_state_index=0) -> UnitaryCompletion:
    """Deterministic unitary completion of ``phi``.

    The standard basis is orthonormalized against ``phi`` after dropping the
    basis vector with the largest ``|<e_k|phi>|`` (lowest ``k`` on ties).
    With ``seed`` the complementary block is rotated by a seeded random
    unitary ``U_{-1}``, giving ``U' = U (1 + U_{-1})``.
    """
    z = as_vector(phi)
    z = z / np.linalg.norm(z)
    dim = z.size
    if not 0 <= reference_state_index < dim:
        raise ValueError(f"reference index {reference_state_index} out of range")
    skip = int(np.argmax(np.abs(z)))
    cols = _gram_schmidt_fill(z, dim, skip)
    tag = "gram-schmidt"
    if seed is not None and dim > 1:
        rng = np.random.default_rng(seed)
        rest = cols[:, 1:] @ random_unitary_from(rng, dim - 1)
        cols = np.column_stack([cols[:, 0], rest])
        tag = f"gram-schmidt+seed={seed}"
    if reference_state_index != 0:
        order = list(range(1, dim))
        order.insert(reference_state_index, 0)
        cols = cols[:, order]
    return UnitaryCompletion(Unitary(cols), reference_state_index, tag)


def dh_value(B, comp: UnitaryCompletion) -> DHMatrixValue:
    """``U^dag B U`` for the completion's unitary ``U``."""
    m = as_matrix(B)
    U = comp.u.matrix
    if m.shape != U.shape:
        raise ValueError(f"dimension mismatch: operator {m.shape}, completion {U.shape}")
    return DHMatrixValue(U.conj().T @ m @ U, comp.completion_id)


def dh_descriptor(qubit_slot, comp: UnitaryCompletion, factor_dims):
    """Pair of DH values of the lifted sigma_1 and sigma_3 of one qubit."""
    factor_dims = tuple(factor_dims)
    if not 0 <= qubit_slot < len(factor_dims):
        raise ValueError(f"slot {qubit_slot} out of range")
    if factor_dims[qubit_slot] != 2:
        raise ValueError(f"slot {qubit_slot} has dimension "
                         f"{factor_dims[qubit_slot]}, not a qubit")
    s1 = lift_local(SIGMA1, qubit_slot, factor_dims)
    s3 = lift_local(SIGMA3, qubit_slot, factor_dims)
    return dh_value(s1, comp), dh_value(s3, comp)


def verify_dh_homomorphism(B, C, comp: UnitaryCompletion) -> float:
    """Max-abs residual of ``[BC] - [B][C]``."""
    B, C = as_matrix(B), as_matrix(C)
    lhs = dh_value(B @ C, comp).matrix
    rhs = dh_value(B, comp).matrix @ dh_value(C, comp).matrix
    return max_abs_diff(lhs, rhs)


def verify_strong_locality(B_local, slot, U_other, comp: UnitaryCompletion,
                           factor_dims) -> float:
    """Residual of ``[W^dag B W] - [B]`` with ``B`` on ``slot`` and ``W`` on the rest.

    ``U_other`` acts jointly on all factors other than ``slot``, in their
    natural order.
    """
    factor_dims = tuple(factor_dims)
    others = tuple(i for i in range(len(factor_dims)) if i != slot)
    B = lift_local(as_matrix(B_local), slot, factor_dims)
    W = lift_local(as_matrix(U_other), others, factor_dims)
    moved = W.conj().T @ B @ W
    return max_abs_diff(dh_value(moved, comp).matrix, dh_value(B, comp).matrix)


@dataclass
class CompletionReport:
    completion_ids: list
    corner_entries: list
    max_corner_spread: float
    max_conjugation_residual: float
    max_fixing_residual: float
    max_homomorphism_residual: float
    tol: float = DEFAULT_TOL
    pairs: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return max(self.max_corner_spread, self.max_conjugation_residual,
                   self.max_fixing_residual,
                   self.max_homomorphism_residual) <= self.tol

    def to_dict(self):
        return {
            "completion_ids": self.completion_ids,
            "corner_entries": self.corner_entries,
            "residuals": {
                "corner_spread": self.max_corner_spread,
                "conjugation": self.max_conjugation_residual,
                "reference_fixing": self.max_fixing_residual,
                "homomorphism": self.max_homomorphism_residual,
            },
            "pass": self.passed,
        }


def completion_independence_report(B, phi, seeds, tol=DEFAULT_TOL) -> CompletionReport:
    """Compare DH values of ``B`` across seeded completions of ``phi``.

    For every pair: the (0,0) entries agree, and the matrices are related by
    ``X^dag M_1 X`` with ``X = U_1^dag U_2`` a unitary fixing ``e_0``.
    """
    seeds = list(seeds)
    if len(seeds) < 2:
        raise ValueError("need at least two seeds")
    B = as_matrix(B)
    comps = [complete_unitary(phi, seed=s) for s in seeds]
    values = [dh_value(B, c).matrix for c in comps]
    corners = [complex(v[0, 0]) for v in values]
    spread = max(abs(a - b) for a, b in itertools.combinations(corners, 2))

    e0 = np.zeros(B.shape[0], dtype=complex)
    e0[0] = 1.0
    conj_res, fix_res, pairs = 0.0, 0.0, []
    for (i, ci), (j, cj) in itertools.combinations(enumerate(comps), 2):
        X = ci.u.matrix.conj().T @ cj.u.matrix
        fix = max(max_abs_diff(X[:, 0], e0), max_abs_diff(X[0, :], e0))
        res = max_abs_diff(X.conj().T @ values[i] @ X, values[j])
        pairs.append({"pair": [seeds[i], seeds[j]],
                      "conjugation": res, "reference_fixing": fix})
        conj_res = max(conj_res, res)
        fix_res = max(fix_res, fix)

    hom = max(verify_dh_homomorphism(B, B, c) for c in comps)
    return CompletionReport([c.completion_id for c in comps], corners, spread,
                            conj_res, fix_res, hom, tol, pairs)
