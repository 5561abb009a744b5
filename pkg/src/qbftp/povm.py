"""POVM validity, informational completeness and SIC verification."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArityError, DimensionError, SicViolationError
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    ValidationReport,
    as_square,
    as_state_vector,
    hermitian_residual,
)


def as_effects(effects) -> np.ndarray:
    """Stack a sequence of square matrices into an ``(n, d, d)`` array."""
    if isinstance(effects, (Povm, SicPovm)):
        return effects.effects
    mats = [as_square(e) for e in effects]
    if not mats:
        raise ArityError("a POVM needs at least one effect")
    d = mats[0].shape[0]
    for k, m in enumerate(mats):
        if m.shape[0] != d:
            raise DimensionError(f"effect {k} has dimension {m.shape[0]}, expected {d}")
    return np.stack(mats)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


def validate_povm(effects, tol: Tolerances = DEFAULT_TOL) -> ValidationReport:
    """Check that every effect is Hermitian PSD and that they sum to identity.

    Residuals: ``completeness`` is the max-entry deviation of the effect sum
    from the identity, ``min_eigenvalues`` lists the smallest eigenvalue of
    each effect and ``hermitian`` the worst Hermiticity residual.
    """
    mats = as_effects(effects)
    d = mats.shape[1]
    herm = max(hermitian_residual(m) for m in mats)
    min_eigs = [float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0]) for m in mats]
    completeness = float(np.max(np.abs(mats.sum(axis=0) - np.eye(d))))
    failures = []
    if herm > tol.tol_hermitian:
        failures.append("hermitian")
    if min(min_eigs) < -tol.tol_psd:
        failures.append("psd")
    if completeness > tol.tol_verify:
        failures.append("completeness")
    return ValidationReport(
        "povm",
        {"hermitian": herm, "completeness": completeness, "min_eigenvalues": min_eigs},
        tuple(failures),
    )


@dataclass(frozen=True)
class Povm:
    """An ordered, validated family of effects stored as an ``(n, d, d)`` array."""

    effects: np.ndarray

    @classmethod
    def from_effects(cls, effects, tol: Tolerances = DEFAULT_TOL) -> "Povm":
        mats = as_effects(effects)
        report = validate_povm(mats, tol)
        if not report.passed:
            raise ValueError(f"invalid POVM: {report.summary()}")
        return cls(_frozen(mats))

    @property
    def dim(self) -> int:
        return self.effects.shape[1]

    def __len__(self) -> int:
        return self.effects.shape[0]


def gram_matrix(effects) -> np.ndarray:
    """Matrix of Hilbert-Schmidt inner products ``Tr(A_i^dagger A_j)``."""
    mats = as_effects(effects)
    flat = mats.reshape(mats.shape[0], -1)
    return flat.conj() @ flat.T


def informational_rank(effects) -> int:
    """Numerical dimension of the operator span of ``effects``.

    Singular values of the Gram matrix count when they exceed
    ``d^2 * eps * largest``.
    """
    mats = as_effects(effects)
    d = mats.shape[1]
    s = np.linalg.svd(gram_matrix(mats), compute_uv=False)
    if s[0] == 0:
        return 0
    cutoff = d * d * np.finfo(float).eps * s[0]
    return int(np.sum(s > cutoff))


def is_informationally_complete(effects) -> tuple[bool, int]:
    """Return ``(complete, rank)``; complete iff the effects span all d x d operators."""
    mats = as_effects(effects)
    d = mats.shape[1]
    rank = informational_rank(mats)
    return rank == d * d, rank


def _as_vectors(vectors, tol: float) -> np.ndarray:
    vecs = [as_state_vector(v, tol) for v in vectors]
    if not vecs:
        raise ArityError("expected d^2 vectors, got none")
    d = vecs[0].shape[0]
    for k, v in enumerate(vecs):
        if v.shape[0] != d:
            raise DimensionError(f"vector {k} has dimension {v.shape[0]}, expected {d}")
    return np.stack(vecs)


def check_sic(vectors, tol: float = DEFAULT_TOL.tol_verify) -> ValidationReport:
    """Verify that ``vectors`` define a SIC-POVM.

    All three defining properties are measured independently: pairwise
    squared overlaps ``|<phi_i|phi_j>|^2 = 1/(d+1)``, trace symmetry
    ``Tr(E_i E_j) = 1/(d^2 (d+1))`` and ``sum_i E_i = I``, where
    ``E_i = |phi_i><phi_i| / d``.

    Raises ArityError unless exactly ``d^2`` vectors are given.
    """
    vecs = _as_vectors(vectors, DEFAULT_TOL.tol_norm)
    n, d = vecs.shape
    if n != d * d:
        raise ArityError(f"a SIC in dimension {d} needs {d * d} vectors, got {n}")
    off = ~np.eye(n, dtype=bool)

    overlaps = np.abs(vecs.conj() @ vecs.T) ** 2
    overlap_dev = float(np.max(np.abs(overlaps[off] - 1.0 / (d + 1)))) if n > 1 else 0.0

    effects = np.einsum("ia,ib->iab", vecs, vecs.conj()) / d
    traces = np.einsum("iab,jba->ij", effects, effects).real
    trace_dev = float(np.max(np.abs(traces[off] - 1.0 / (d * d * (d + 1))))) if n > 1 else 0.0

    completeness = float(np.max(np.abs(effects.sum(axis=0) - np.eye(d))))

    failures = []
    if overlap_dev > tol:
        failures.append("overlap")
    if trace_dev > tol:
        failures.append("trace_symmetry")
    if completeness > tol:
        failures.append("completeness")
    return ValidationReport(
        "sic",
        {
            "overlap": overlap_dev,
            "trace_symmetry": trace_dev,
            "completeness": completeness,
            "min_overlap": float(overlaps[off].min()) if n > 1 else 0.0,
            "max_overlap": float(overlaps[off].max()) if n > 1 else 0.0,
        },
        tuple(failures),
    )


@dataclass(frozen=True)
class SicPovm:
    """SIC-POVM: unit vectors, their projectors and effects ``projector / d``."""

    vectors: np.ndarray
    projectors: np.ndarray
    effects: np.ndarray

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return self.vectors.shape[0]


def sic_effects(vectors, tol: float = DEFAULT_TOL.tol_verify) -> SicPovm:
    """Build a :class:`SicPovm` after checking ``vectors`` with :func:`check_sic`."""
    report = check_sic(vectors, tol)
    if not report.passed:
        raise SicViolationError(report)
    vecs = np.stack([np.asarray(v, dtype=np.complex128) for v in vectors])
    d = vecs.shape[1]
    projectors = np.einsum("ia,ib->iab", vecs, vecs.conj())
    return SicPovm(_frozen(vecs), _frozen(projectors), _frozen(projectors / d))
