"""The two-qubit family: state parametrization, completions and fixtures.

A generic two-qubit state (up to a global phase) is fixed by six real
parameters ``r, zeta, theta_A, theta_B, psi_A, psi_B``.  At
``theta = psi = 0`` it reduces to the generalized Bell state::

    psi(r, zeta) = e^{-i zeta/2} q_+ |00> + e^{i zeta/2} q_- |11>,
    q_pm = sqrt((1 +- r) / 2),

whose completion ``U_q`` gives the closed-form fixtures below.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from .dhvalue import UnitaryCompletion, dh_value
from .hilbert import (CNOT, SIGMA1, SIGMA3, Observable, StateVector, Unitary,
                      lift_local, max_abs_diff, operator_schmidt_rank, tensor)
from .ncvalue import NCValue, nc_value

DIMS = (2, 2)
NAMES = ("sigma1A", "sigma1B", "sigma3A", "sigma3B")


@dataclass(frozen=True)
class TwoQubitParams:
    r: float
    zeta: float = 0.0
    theta_A: float = 0.0
    theta_B: float = 0.0
    psi_A: float = 0.0
    psi_B: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"r must lie in [0, 1], got {self.r}")
        for name in ("theta_A", "theta_B"):
            val = getattr(self, name)
            if not 0.0 <= val <= pi:
                raise ValueError(f"{name} must lie in [0, pi], got {val}")
        for name in ("zeta", "psi_A", "psi_B"):
            val = getattr(self, name)
            if not 0.0 <= val < 2 * pi:
                raise ValueError(f"{name} must lie in [0, 2pi), got {val}")

    @property
    def q_plus(self) -> float:
        return np.sqrt((1 + self.r) / 2)

    @property
    def q_minus(self) -> float:
        return np.sqrt((1 - self.r) / 2)

    def local_factors(self):
        """``(c_A, s_A, c_B, s_B)``."""
        cA = np.cos(self.theta_A / 2) * np.exp(-0.5j * self.psi_A)
        sA = np.sin(self.theta_A / 2) * np.exp(0.5j * self.psi_A)
        cB = np.cos(self.theta_B / 2) * np.exp(-0.5j * self.psi_B)
        sB = np.sin(self.theta_B / 2) * np.exp(0.5j * self.psi_B)
        return cA, sA, cB, sB


def _q(r):
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    return np.sqrt((1 + r) / 2), np.sqrt((1 - r) / 2)


def state_from_params(p: TwoQubitParams) -> StateVector:
    """Amplitudes ``z_00, z_01, z_10, z_11`` of the parametrized state."""
    cA, sA, cB, sB = p.local_factors()
    em, ep = np.exp(-0.5j * p.zeta), np.exp(0.5j * p.zeta)
    qp, qm = p.q_plus, p.q_minus
    z = np.array([
        em * qp * cA * cB + ep * qm * np.conj(sA) * np.conj(sB),
        em * qp * cA * sB - ep * qm * np.conj(sA) * np.conj(cB),
        em * qp * sA * cB - ep * qm * np.conj(cA) * np.conj(sB),
        em * qp * sA * sB + ep * qm * np.conj(cA) * np.conj(cB),
    ])
    return StateVector(z, DIMS)


def bell_like_state(r, zeta) -> StateVector:
    return state_from_params(TwoQubitParams(r, zeta))


def entanglement(p) -> float:
    """``sqrt(1 - r^2)``; accepts params or a bare ``r``."""
    r = p.r if isinstance(p, TwoQubitParams) else float(p)
    return float(np.sqrt(max(0.0, 1.0 - r * r)))


def u_q(r, zeta) -> Unitary:
    qp, qm = _q(r)
    em, ep = np.exp(-0.5j * zeta), np.exp(0.5j * zeta)
    m = np.array([[em * qp, 0, 0, -em * qm],
                  [0, 1, 0, 0],
                  [0, 0, 1, 0],
                  [ep * qm, 0, 0, ep * qp]], dtype=complex)
    return Unitary(m, DIMS)


def local_unitary(c, s) -> np.ndarray:
    return np.array([[c, -np.conj(s)], [s, np.conj(c)]], dtype=complex)


def u_psi(p: TwoQubitParams) -> Unitary:
    """``(U_A x U_B) U_q``, the completion with the SU(3) block set to 1."""
    cA, sA, cB, sB = p.local_factors()
    local = np.kron(local_unitary(cA, sA), local_unitary(cB, sB))
    return Unitary(local @ u_q(p.r, p.zeta).matrix, DIMS)


def u_q_completion(r, zeta) -> UnitaryCompletion:
    return UnitaryCompletion(u_q(r, zeta), 0, f"u_q(r={r!r},zeta={zeta!r})")


def u_psi_completion(p: TwoQubitParams) -> UnitaryCompletion:
    return UnitaryCompletion(u_psi(p), 0, f"u_psi({p!r})")


def basic_observables():
    """Lifted ``sigma_1``/``sigma_3`` of both qubits, keyed by name."""
    s1, s3 = Observable(SIGMA1), Observable(SIGMA3)
    return {
        "sigma1A": lift_local(s1, 0, DIMS),
        "sigma1B": lift_local(s1, 1, DIMS),
        "sigma3A": lift_local(s3, 0, DIMS),
        "sigma3B": lift_local(s3, 1, DIMS),
    }


# --------------------------------------------------------------------------- #
#                             closed-form fixtures                            #
# --------------------------------------------------------------------------- #

def closed_form_dh(r, zeta, as_printed=False):
    """Closed-form DH values of the basic observables for completion ``U_q``.

    With ``as_printed=True`` the matrices are returned literally as they are
    usually quoted, which differs from the true values in two places: the
    (2,3)/(3,2) phases of ``sigma1B`` are swapped, and ``sigma3B`` is quoted
    as equal to ``sigma3A`` although its middle block is ``diag(-1, 1)``.
    """
    qp, qm = _q(r)
    em, ep = np.exp(-0.5j * zeta), np.exp(0.5j * zeta)
    ent = np.sqrt(1 - r * r)
    s1a = np.array([[0, em * qm, ep * qp, 0],
                    [ep * qm, 0, 0, ep * qp],
                    [em * qp, 0, 0, -em * qm],
                    [0, em * qp, -ep * qm, 0]], dtype=complex)
    s1b = np.array([[0, ep * qp, em * qm, 0],
                    [em * qp, 0, 0, -em * qm],
                    [ep * qm, 0, 0, ep * qp],
                    [0, -ep * qm, em * qp, 0]], dtype=complex)
    s3a = np.array([[r, 0, 0, -ent],
                    [0, 1, 0, 0],
                    [0, 0, -1, 0],
                    [-ent, 0, 0, -r]], dtype=complex)
    s3b = s3a.copy()
    if as_printed:
        s1b[2, 3], s1b[3, 2] = em * qp, ep * qp
    else:
        s3b[1, 1], s3b[2, 2] = -1, 1
    return {"sigma1A": s1a, "sigma1B": s1b, "sigma3A": s3a, "sigma3B": s3b}


def closed_form_nc(r, zeta):
    """Closed-form noncommutative values at ``psi(r, zeta)``.

    Components are ordered ``V^00, V^01, V^10, V^11``.
    """
    qp, qm = _q(r)
    em, ep = np.exp(-0.5j * zeta), np.exp(0.5j * zeta)
    s1a = NCValue(0.0, [0, em * qm, ep * qp, 0])
    s1b = NCValue(0.0, [0, ep * qp, em * qm, 0])
    s3 = NCValue(r, [(1 - r) * ep * qp, 0, 0, -(1 + r) * em * qm])
    return {"sigma1A": s1a, "sigma1B": s1b, "sigma3A": s3, "sigma3B": s3}


def engine_dh(r, zeta):
    comp = u_q_completion(r, zeta)
    return {k: dh_value(B, comp).matrix for k, B in basic_observables().items()}


def engine_nc(r, zeta):
    phi = bell_like_state(r, zeta)
    return {k: nc_value(B, phi) for k, B in basic_observables().items()}


# --------------------------------------------------------------------------- #
#                          pointer model and collapse                         #
# --------------------------------------------------------------------------- #

def cnot_pointer(state_ab) -> StateVector:
    """Couple qubit B (control) to a fresh pointer C in ``|0>`` (target).

    Qubit order is A, B, C, so ``|abc>`` sits at index ``4a + 2b + c``.
    """
    if not isinstance(state_ab, StateVector):
        state_ab = StateVector(state_ab)
    if state_ab.dim != 4:
        raise ValueError(f"expected a two-qubit state, got dimension {state_ab.dim}")
    ab = StateVector(state_ab.amplitudes, DIMS)
    abc = tensor(ab, StateVector([1, 0], (2,)))
    gate = lift_local(CNOT, (1, 2), (2, 2, 2))
    return StateVector(gate @ abc.amplitudes, (2, 2, 2))


@dataclass
class CollapseReport:
    r: float
    zeta: float
    inverse_residual: float
    rank_inverse_AB: int
    cnot_ranks: dict
    tol: float

    @property
    def passed(self) -> bool:
        return self.inverse_residual <= self.tol

    def to_dict(self):
        return {
            "r": self.r,
            "zeta": self.zeta,
            "inverse_residual": self.inverse_residual,
            "operator_schmidt_rank": {"U_q^-1 A|B": self.rank_inverse_AB,
                                      **self.cnot_ranks},
            "pass": self.passed,
        }


def collapse_analysis(r, zeta, tol=1e-12) -> CollapseReport:
    """Check ``U_q^-1 psi = |00>`` and report how non-local the maps are.

    Ranks are operator Schmidt ranks: ``U_q^-1`` across A|B, the pointer
    coupling ``I_A x CNOT_BC`` across the A|BC and AB|C cuts, and the bare
    CNOT across B|C.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("r must satisfy 0 <= r < 1; at r = 1 the state is already |00>")
    U = u_q(r, zeta).matrix
    inv = U.conj().T
    e0 = np.zeros(4, dtype=complex)
    e0[0] = 1.0
    residual = max_abs_diff(inv @ bell_like_state(r, zeta).amplitudes, e0)
    lifted = lift_local(CNOT, (1, 2), (2, 2, 2))
    ranks = {
        "I_A x CNOT_BC A|BC": operator_schmidt_rank(lifted, (2, 4)),
        "I_A x CNOT_BC AB|C": operator_schmidt_rank(lifted, (4, 2)),
        "CNOT B|C": operator_schmidt_rank(CNOT, (2, 2)),
    }
    return CollapseReport(r, zeta, residual,
                          operator_schmidt_rank(inv, DIMS), ranks, tol)
