"""Thermal states of the coupled spin pair and their concurrence.

Basis order is fixed as {|uu>, |ud>, |du>, |dd>} throughout; the spin-flip
matrix sigma_y x sigma_y depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .medium import CycleSpec, MediumKind

__all__ = [
    "ConcurrencePair",
    "spin_pair_hamiltonian",
    "spin_pair_hamiltonian_batch",
    "thermal_state",
    "thermal_state_batch",
    "validate_density_matrix",
    "concurrence",
    "concurrence_batch",
    "cycle_concurrences",
]

# sigma_y x sigma_y in the product basis; real because the i's cancel.
SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)

_CLAMP = 1e-12  # eigenvalues in (-_CLAMP, 0) are rounding noise -> 0
_BROKEN = 1e-10  # anything below -_BROKEN signals a broken state


@dataclass(frozen=True)
class ConcurrencePair:
    """Concurrence at the end of the hot (Stage 1) and cold (Stage 3)
    thermalization strokes."""

    c_h: float
    c_c: float


def spin_pair_hamiltonian(omega: float, j_x: float, j_y: float) -> np.ndarray:
    """4x4 coupled spin-pair Hamiltonian in the ladder convention.

    Diagonal (3w, 2w, 2w, w); flip-flop entries (j_x + j_y)/2 between
    |ud> and |du>; double-flip entries (j_x - j_y)/2 between |uu> and
    |dd>.  Real symmetric.
    """
    if not omega > 0.0:
        raise DomainError(f"bare frequency must be positive, got {omega}")
    l_plus = 0.5 * (j_x + j_y)
    l_minus = 0.5 * (j_x - j_y)
    return np.array(
        [
            [3.0 * omega, 0.0, 0.0, l_minus],
            [0.0, 2.0 * omega, l_plus, 0.0],
            [0.0, l_plus, 2.0 * omega, 0.0],
            [l_minus, 0.0, 0.0, omega],
        ]
    )


def spin_pair_hamiltonian_batch(omega, j_x, j_y) -> np.ndarray:
    """Stacked (n, 4, 4) Hamiltonians for arrays of parameters."""
    omega, j_x, j_y = np.broadcast_arrays(
        np.asarray(omega, dtype=float), np.asarray(j_x, dtype=float), np.asarray(j_y, dtype=float)
    )
    n = omega.shape[0]
    l_plus = 0.5 * (j_x + j_y)
    l_minus = 0.5 * (j_x - j_y)
    h = np.zeros((n, 4, 4))
    h[:, 0, 0] = 3.0 * omega
    h[:, 1, 1] = 2.0 * omega
    h[:, 2, 2] = 2.0 * omega
    h[:, 3, 3] = omega
    h[:, 1, 2] = h[:, 2, 1] = l_plus
    h[:, 0, 3] = h[:, 3, 0] = l_minus
    return h


def thermal_state(h: np.ndarray, beta: float) -> np.ndarray:
    """Gibbs state exp(-beta H)/Z via spectral decomposition.

    The spectrum is shifted by its minimum before exponentiation, so cold
    (large beta) states never overflow.
    """
    if not beta > 0.0:
        raise DomainError(f"inverse temperature must be positive, got {beta}")
    evals, vecs = np.linalg.eigh(h)
    weights = np.exp(-beta * (evals - evals.min()))
    weights /= weights.sum()
    return (vecs * weights) @ vecs.conj().T


def thermal_state_batch(h: np.ndarray, beta) -> np.ndarray:
    """Batched Gibbs states for stacked Hamiltonians (n, d, d)."""
    beta = np.asarray(beta, dtype=float).reshape(-1, 1)
    evals, vecs = np.linalg.eigh(h)
    weights = np.exp(-beta * (evals - evals.min(axis=1, keepdims=True)))
    weights /= weights.sum(axis=1, keepdims=True)
    return np.einsum("nik,nk,njk->nij", vecs, weights, vecs.conj())


def validate_density_matrix(rho: np.ndarray, tol: float = 1e-12) -> None:
    """Check Hermiticity, unit trace and positivity; DomainError on failure."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise DomainError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol or abs(np.trace(rho).imag) > tol:
        raise DomainError("density matrix does not have unit trace")
    if np.linalg.eigvalsh((rho + rho.conj().T) / 2.0).min() < -tol:
        raise DomainError("density matrix has a negative eigenvalue")


def _sqrt_psd(evals: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    w = np.where(evals > 0.0, evals, np.where(evals > -_CLAMP, 0.0, np.nan))
    if np.isnan(w).any():
        raise NumericalError("state has an eigenvalue below the clamp threshold")
    root = np.sqrt(w)
    return (vecs * root[..., None, :]) @ np.swapaxes(vecs.conj(), -1, -2)


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit state.

    Computes the eigenvalues of R = rho (sy x sy) rho* (sy x sy) through
    the Hermitian equivalent sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho)
    (R itself is not Hermitian) and returns
    max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) with the l_i in
    descending order.

    Raises NumericalError if an eigenvalue falls below -1e-10, which
    signals a broken (non-positive) input state.
    """
    rho = np.asarray(rho)
    evals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2.0)
    sqrt_rho = _sqrt_psd(evals, vecs)
    rho_tilde = SPIN_FLIP @ rho.conj() @ SPIN_FLIP
    m = sqrt_rho @ rho_tilde @ sqrt_rho
    lam = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    if lam.min() < -_BROKEN:
        raise NumericalError(
            f"spin-flipped spectrum has eigenvalue {lam.min():.3e} < -{_BROKEN:g}"
        )
    lam = np.sqrt(np.clip(lam, 0.0, None))
    return float(max(0.0, 2.0 * lam[-1] - lam.sum()))


def concurrence_batch(rho: np.ndarray) -> np.ndarray:
    """Concurrences for stacked states (n, 4, 4)."""
    rho = np.asarray(rho)
    herm = (rho + np.swapaxes(rho.conj(), -1, -2)) / 2.0
    evals, vecs = np.linalg.eigh(herm)
    sqrt_rho = _sqrt_psd(evals, vecs)
    rho_tilde = SPIN_FLIP @ rho.conj() @ SPIN_FLIP
    m = sqrt_rho @ rho_tilde @ sqrt_rho
    lam = np.linalg.eigvalsh((m + np.swapaxes(m.conj(), -1, -2)) / 2.0)
    if lam.min() < -_BROKEN:
        raise NumericalError("a batched state has a spin-flipped eigenvalue below -1e-10")
    lam = np.sqrt(np.clip(lam, 0.0, None))
    return np.maximum(0.0, 2.0 * lam[..., -1] - lam.sum(axis=-1))


def cycle_concurrences(spec: CycleSpec) -> ConcurrencePair:
    """Concurrence of the thermal states at the ends of Stages 1 and 3.

    C_h comes from the hot-point Hamiltonian at beta_h, C_c from the
    cold-point Hamiltonian at beta_c.  Spin medium only.
    """
    if spec.kind is not MediumKind.SPIN:
        raise DomainError("cycle concurrences are defined for the spin medium only")
    h_hot = spin_pair_hamiltonian(spec.hot.omega, spec.hot.coupling.j_x, spec.hot.coupling.j_y)
    h_cold = spin_pair_hamiltonian(
        spec.cold.omega, spec.cold.coupling.j_x, spec.cold.coupling.j_y
    )
    c_h = concurrence(thermal_state(h_hot, spec.baths.beta_h))
    c_c = concurrence(thermal_state(h_cold, spec.baths.beta_c))
    return ConcurrencePair(c_h=c_h, c_c=c_c)
