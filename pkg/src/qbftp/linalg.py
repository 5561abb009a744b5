"""Dense complex operator algebra: density operators, projectors and sampling.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Nothing here
mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NormalizationError, SymmetryError


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by every check in the package."""

    tol_hermitian: float = 1e-10
    tol_trace: float = 1e-10
    tol_psd: float = 1e-9
    tol_norm: float = 1e-10
    tol_verify: float = 1e-8
    tol_opt: float = 1e-12

    def __post_init__(self):
        for name, value in vars(self).items():
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and nonnegative, got {value!r}")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validity check.

    ``residuals`` maps check names to the measured deviation; ``failures``
    lists the names of checks that exceeded their tolerance.
    """

    kind: str
    residuals: dict = field(default_factory=dict)
    failures: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        status = "pass" if self.passed else "fail (" + ", ".join(self.failures) + ")"
        parts = ", ".join(f"{k}={_fmt(v)}" for k, v in self.residuals.items())
        return f"{self.kind}: {status}; {parts}"


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return f"{value:.3e}"
    return str(value)


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite complex128 2-d array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionError("matrix has no entries")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def as_square(m) -> np.ndarray:
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def as_state_vector(v, tol: float = DEFAULT_TOL.tol_norm) -> np.ndarray:
    """Return ``v`` as a complex 1-d array, checking unit Euclidean norm."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"expected a nonempty 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite entries")
    norm_sq = float(np.vdot(arr, arr).real)
    if abs(norm_sq - 1.0) > tol:
        raise NormalizationError(f"vector is not unit-normalized: |v|^2 = {norm_sq!r}")
    return arr


def hermitian_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def validate_density(m, tol: Tolerances = DEFAULT_TOL) -> ValidationReport:
    """Check Hermiticity, unit trace and positivity of ``m``.

    The smallest eigenvalue is taken from the Hermitian part, so the PSD
    residual stays meaningful even when the Hermiticity check fails.
    """
    m = as_square(m)
    herm = hermitian_residual(m)
    trace_dev = float(abs(np.trace(m) - 1.0))
    min_eig = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
    failures = []
    if herm > tol.tol_hermitian:
        failures.append("hermitian")
    if trace_dev > tol.tol_trace:
        failures.append("trace")
    if min_eig < -tol.tol_psd:
        failures.append("psd")
    return ValidationReport(
        "density",
        {"hermitian": herm, "trace": trace_dev, "min_eigenvalue": min_eig},
        tuple(failures),
    )


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``Tr(A^dagger B)``."""
    a, b = as_square(a), as_square(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def projector_from_vector(v, tol: float = DEFAULT_TOL.tol_norm) -> np.ndarray:
    """Rank-1 projector ``|v><v|`` onto a unit vector."""
    v = as_state_vector(v, tol)
    return np.outer(v, v.conj())


def random_density(d: int, seed: int) -> np.ndarray:
    """Sample a density operator from the Hilbert-Schmidt measure.

    Draws a complex Ginibre matrix ``G`` and returns ``G G^dagger / Tr``.
    The stream is keyed on ``(seed, d)``, so equal arguments give equal
    matrices.
    """
    if int(d) < 1:
        raise DimensionError(f"dimension must be >= 1, got {d}")
    d = int(d)
    rng = np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, d])
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_unit_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def eigen_hermitian(m, tol: Tolerances = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as orthonormal columns.
    """
    m = as_square(m)
    herm = hermitian_residual(m)
    if herm > tol.tol_hermitian:
        raise SymmetryError(f"matrix is not Hermitian (residual {herm:.3e})")
    return np.linalg.eigh((m + m.conj().T) / 2)
