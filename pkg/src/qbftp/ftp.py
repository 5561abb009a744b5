"""Formulas of total probability and state reconstruction.

The classical rule mixes conditional probabilities with the prior weights
``p(E_i)``. The SIC rule replaces the weights by the affine quasi-priors
``(d+1) p(E_i) - 1/d``, and with SIC reference data this reproduces the Born
probabilities exactly. Reconstruction inverts the reference statistics back
to a density operator, either in closed form for a SIC or by linear inversion
for any informationally complete reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    InconsistentDataError,
    ReconstructionInfeasibleError,
    UnderdeterminedError,
)
from .linalg import DEFAULT_TOL, Tolerances, validate_density
from .measurement import born, conditional_matrix, reference_probabilities
from .povm import as_effects, gram_matrix, informational_rank


def _square_dim(n: int, d: int | None) -> int:
    root = math.isqrt(n)
    if root * root != n:
        raise DimensionError(f"length {n} is not a perfect square d^2")
    if d is not None and d != root:
        raise DimensionError(f"length {n} does not match d^2 = {d * d}")
    return root


def _vector(values) -> np.ndarray:
    p = np.asarray(values, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DimensionError(f"expected a nonempty 1-d vector, got shape {p.shape}")
    return p


def _cond(cond, rows: int) -> np.ndarray:
    c = np.asarray(cond, dtype=float)
    if c.ndim != 2 or c.shape[0] != rows:
        raise DimensionError(f"conditional matrix shape {c.shape} does not have {rows} rows")
    return c


def quasi_priors(priors, d: int | None = None) -> np.ndarray:
    """Affine weights ``(d+1) p_i - 1/d``; they always sum to one and may be negative."""
    p = _vector(priors)
    d = _square_dim(p.size, d)
    return (d + 1) * p - 1.0 / d


def classical_ftp(priors, cond) -> np.ndarray:
    """``q_j = sum_i p_i r(j|i)``."""
    p = _vector(priors)
    return p @ _cond(cond, p.size)


def qbist_ftp(priors, cond, d: int | None = None) -> np.ndarray:
    """``q_j = sum_i ((d+1) p_i - 1/d) r(j|i)`` for a SIC reference of dimension ``d``."""
    w = quasi_priors(priors, d)
    return w @ _cond(cond, w.size)


def is_coherent(priors, cond, d: int | None = None, tol: float = DEFAULT_TOL.tol_verify) -> bool:
    """Whether the SIC rule maps these inputs to a probability vector.

    Hand-built prior/conditional pairs need not come from any state and
    measurement; for those the output can leave ``[0, 1]``.
    """
    q = qbist_ftp(priors, cond, d)
    return bool(q.min() >= -tol and q.max() <= 1 + tol and abs(q.sum() - 1) <= tol)


@dataclass(frozen=True)
class FtpComparison:
    born: np.ndarray
    classical: np.ndarray
    qbist: np.ndarray
    deviation_classical: float
    deviation_qbist: float
    # Max |Tr(F_j rho_i) - qbist_j| over i, j: the residual of reading the
    # middle term of the SIC rule with the posterior in place of the prior state.
    deviation_posterior_reading: float


def compare_ftp(state, sic, target) -> FtpComparison:
    """Born, classical and SIC-rule probabilities for one state and target POVM."""
    priors = reference_probabilities(state, sic)
    cond = conditional_matrix(sic, target)
    exact = born(state, target)
    classical = classical_ftp(priors, cond)
    qbist = qbist_ftp(priors, cond, sic.dim)
    return FtpComparison(
        born=exact,
        classical=classical,
        qbist=qbist,
        deviation_classical=float(np.max(np.abs(classical - exact))),
        deviation_qbist=float(np.max(np.abs(qbist - exact))),
        deviation_posterior_reading=float(np.max(np.abs(cond - qbist[None, :]))),
    )


def _finish(candidate: np.ndarray, tol: Tolerances) -> np.ndarray:
    candidate = (candidate + candidate.conj().T) / 2
    report = validate_density(candidate, tol)
    if not report.passed:
        raise ReconstructionInfeasibleError(candidate, report)
    return candidate


def reconstruct_from_sic(priors, sic, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``rho = sum_i ((d+1) p_i - 1/d) Pi_i``.

    Raises ReconstructionInfeasibleError, carrying the candidate matrix, when
    the result is not a density operator.
    """
    w = quasi_priors(priors, sic.dim)
    if w.size != len(sic):
        raise DimensionError(f"{w.size} probabilities for {len(sic)} SIC outcomes")
    candidate = np.einsum("i,iab->ab", w, np.asarray(sic.projectors))
    return _finish(candidate, tol)


def reconstruct_linear_inversion(probs, reference, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Least-squares solution of ``Tr(G_i rho) = p_i`` over Hermitian operators.

    The estimate is expanded in the reference effects, ``rho = sum_k c_k G_k``,
    with ``c`` the minimum-norm solution of ``Gram c = p``. For effects
    Hermitian the Gram matrix is real symmetric, so ``c`` is real and the
    estimate Hermitian.
    """
    effects = as_effects(reference)
    p = _vector(probs)
    n, d = effects.shape[0], effects.shape[1]
    if p.size != n:
        raise DimensionError(f"{p.size} probabilities for {n} effects")
    rank = informational_rank(effects)
    if rank < d * d:
        raise UnderdeterminedError(
            f"reference spans {rank} of {d * d} operator dimensions; not informationally complete"
        )
    gram = gram_matrix(effects).real
    coeffs, *_ = np.linalg.lstsq(gram, p, rcond=None)
    candidate = np.einsum("k,kab->ab", coeffs, effects)
    candidate = (candidate + candidate.conj().T) / 2
    predicted = np.einsum("iab,ba->i", effects, candidate).real
    residual = float(np.max(np.abs(predicted - p)))
    if residual > tol.tol_verify:
        raise InconsistentDataError(
            f"no operator reproduces the probabilities (residual {residual:.3e})"
        )
    return _finish(candidate, tol)
