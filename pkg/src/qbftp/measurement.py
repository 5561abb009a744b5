"""Born-rule probabilities and the atomic-instrument state update."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, ImpossibleOutcomeError, ProbabilityError
from .linalg import DEFAULT_TOL, as_square


def as_probability_vector(values, tol: float = DEFAULT_TOL.tol_verify, clamp: bool = True):
    """Check a probability vector; entries in ``[-tol, 0)`` are clamped to zero.

    Raises ProbabilityError when an entry falls outside ``[-tol, 1 + tol]`` or
    the sum is off by more than ``tol``.
    """
    p = np.asarray(values, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DimensionError(f"expected a nonempty 1-d vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ProbabilityError("probabilities must be finite")
    if p.min() < -tol or p.max() > 1 + tol:
        raise ProbabilityError(f"probability out of range: min {p.min():.3e}, max {p.max():.3e}")
    if abs(p.sum() - 1.0) > tol:
        raise ProbabilityError(f"probabilities sum to {p.sum()!r}, not 1")
    if clamp:
        p = np.where(p < 0, 0.0, p)
    return p


def _effects(povm) -> np.ndarray:
    return np.asarray(getattr(povm, "effects", povm), dtype=np.complex128)


def _check_dims(state: np.ndarray, effects: np.ndarray) -> None:
    if effects.ndim != 3 or effects.shape[1:] != state.shape:
        raise DimensionError(
            f"state has shape {state.shape}, effects have shape {effects.shape[1:]}"
        )


def born(state, povm, tol: float = DEFAULT_TOL.tol_verify) -> np.ndarray:
    """Outcome probabilities ``Tr(F_j rho)``.

    ``povm`` is a :class:`~qbftp.povm.Povm`, a :class:`~qbftp.povm.SicPovm` or
    an ``(n, d, d)`` array of effects.
    """
    rho = as_square(state)
    effects = _effects(povm)
    _check_dims(rho, effects)
    p = np.einsum("jab,ba->j", effects, rho).real
    return as_probability_vector(p, tol)


def atomic_update(state, effect, tol: float = DEFAULT_TOL.tol_verify) -> np.ndarray:
    """Post-measurement state ``E rho E / Tr(E rho E)`` of an atomic instrument."""
    rho = as_square(state)
    e = as_square(effect)
    if e.shape != rho.shape:
        raise DimensionError(f"state has shape {rho.shape}, effect has shape {e.shape}")
    post = e @ rho @ e
    norm = np.trace(post).real
    if norm <= tol:
        raise ImpossibleOutcomeError(f"outcome weight Tr(E rho E) = {norm:.3e} is not positive")
    post = post / norm
    return (post + post.conj().T) / 2


def reference_probabilities(state, sic, tol: float = DEFAULT_TOL.tol_verify) -> np.ndarray:
    """Probabilities ``p(E_i) = Tr(E_i rho)`` of the SIC reference measurement."""
    return born(state, sic.effects, tol)


def conditional_matrix(sic, target) -> np.ndarray:
    """Matrix ``p(F_j | E_i) = Tr(F_j Pi_i)`` with rows indexed by SIC outcome.

    The atomic update by the rank-1 effect ``E_i`` sends every state to
    ``Pi_i``, so no state argument is needed.
    """
    projectors = np.asarray(sic.projectors)
    effects = _effects(target)
    _check_dims(projectors[0], effects)
    return np.einsum("jab,iba->ij", effects, projectors).real
