"""Numerical construction of Weyl-Heisenberg covariant SIC fiducials.

A fiducial ``phi`` generates the d^2 vectors ``X^k Z^l phi``. Its orbit is a
SIC exactly when the frame potential

    sum_{k,l} |<phi| X^k Z^l |phi>|^4

attains its lower bound ``2d/(d+1)``. The search minimizes this potential by
gradient descent with a backtracking line search from seeded random starts,
then polishes a near-optimal candidate with Gauss-Newton steps on the
overlap residuals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import DimensionError
from .linalg import DEFAULT_TOL, as_state_vector

_MAX_DIM = 16


def _check_dim(d) -> int:
    if int(d) != d or d < 2:
        raise DimensionError(f"Weyl-Heisenberg construction needs d >= 2, got {d}")
    return int(d)


def shift_clock(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Shift ``X|j> = |j+1 mod d>`` and clock ``Z|j> = w^j |j>``, ``w = exp(2 pi i/d)``."""
    d = _check_dim(d)
    x = np.roll(np.eye(d, dtype=np.complex128), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return x, z


@lru_cache(maxsize=None)
def _displacements(d: int) -> np.ndarray:
    x, z = shift_clock(d)
    ops = np.empty((d * d, d, d), dtype=np.complex128)
    xk = np.eye(d, dtype=np.complex128)
    for k in range(d):
        zl = np.eye(d, dtype=np.complex128)
        for l in range(d):
            ops[k * d + l] = xk @ zl
            zl = zl @ z
        xk = xk @ x
    ops.setflags(write=False)
    return ops


def displacement_operators(d: int) -> np.ndarray:
    """All ``X^k Z^l`` as a read-only ``(d*d, d, d)`` array, index ``k*d + l``."""
    return _displacements(_check_dim(d))


def wh_orbit(fiducial) -> np.ndarray:
    """The d^2 vectors ``X^k Z^l phi`` as rows, in displacement-index order."""
    phi = as_state_vector(fiducial)
    d = _check_dim(phi.shape[0])
    return displacement_operators(d) @ phi


def potential_minimum(d: int) -> float:
    return 2.0 * d / (d + 1)


def _overlaps(phi: np.ndarray, ops: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    dphi = ops @ phi
    return dphi, dphi @ phi.conj()


def frame_potential(fiducial) -> float:
    """Sum of ``|<phi|D|phi>|^4`` over all displacements, identity included."""
    phi = as_state_vector(fiducial)
    d = _check_dim(phi.shape[0])
    _, a = _overlaps(phi, displacement_operators(d))
    return float(np.sum(np.abs(a) ** 4))


def _potential_and_gradient(phi: np.ndarray, ops: np.ndarray):
    """Potential and its Wirtinger gradient d/d(conj phi), projected to the sphere.

    Evaluated on the scale-invariant extension ``F(z) = sum|z^dag D z|^4 / |z|^8``
    at unit ``phi``.
    """
    dphi, a = _overlaps(phi, ops)
    adj = np.conj(np.swapaxes(ops, 1, 2)) @ phi
    w = np.abs(a) ** 2
    value = float(np.sum(w * w))
    grad = 2.0 * ((w * np.conj(a)) @ dphi + (w * a) @ adj) - 4.0 * value * phi
    return value, grad


def _residuals_and_jacobian(phi: np.ndarray, ops: np.ndarray, d: int):
    """Overlap residuals ``|<phi|D|phi>|^2 - 1/(d+1)`` for D != I and their real Jacobian."""
    ops = ops[1:]
    dphi, a = _overlaps(phi, ops)
    adj = np.conj(np.swapaxes(ops, 1, 2)) @ phi
    w = np.abs(a) ** 2
    wirt = np.conj(a)[:, None] * dphi + a[:, None] * adj - 2.0 * w[:, None] * phi
    # d/dx = 2 Re(wirt), d/dy = 2 Im(wirt) for z = x + i y.
    jac = np.hstack([2.0 * wirt.real, 2.0 * wirt.imag])
    return w - 1.0 / (d + 1), jac


@dataclass(frozen=True)
class SearchConfig:
    dim: int
    seed: int = 0
    restarts: int = 8
    max_iterations: int = 20000
    tol_opt: float = DEFAULT_TOL.tol_opt
    tol_accept: float = 1e-9

    def __post_init__(self):
        _check_dim(self.dim)
        if self.dim > _MAX_DIM:
            raise DimensionError(f"dimension {self.dim} exceeds supported maximum {_MAX_DIM}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not (self.tol_opt > 0 and self.tol_accept > 0):
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class SearchResult:
    status: str
    fiducial: np.ndarray | None
    final_potential: float
    potential_gap: float
    iterations_used: int
    restart_index: int

    @property
    def converged(self) -> bool:
        return self.status == "converged"


def restart_rng(seed: int, restart_index: int) -> np.random.Generator:
    """Counter-based stream keyed on ``(seed, restart_index)``."""
    key = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, int(restart_index)])
    return np.random.Generator(np.random.Philox(key))


def _descend(phi, ops, target, max_iterations, stop_gap, tol_opt):
    """Armijo backtracking gradient descent on the unit sphere.

    Stops once the gap falls below ``stop_gap`` or the gradient norm below
    ``tol_opt``. Moving along the Wirtinger gradient ``g`` with step ``s`` is a
    real gradient step of length ``s/2``; the Armijo test accounts for that.
    """
    value, grad = _potential_and_gradient(phi, ops)
    step = 1.0
    it = 0
    while it < max_iterations:
        it += 1
        gnorm_sq = 2.0 * float(np.vdot(grad, grad).real)
        if value - target < stop_gap or 2.0 * np.linalg.norm(grad) < tol_opt:
            break
        step = min(step * 2.0, 10.0)
        while True:
            trial = phi - step * grad
            trial /= np.linalg.norm(trial)
            t_value, t_grad = _potential_and_gradient(trial, ops)
            if t_value <= value - 1e-4 * step * gnorm_sq or step < 1e-16:
                break
            step *= 0.5
        if t_value >= value:
            break
        phi, value, grad = trial, t_value, t_grad
    return phi, value, it


def _polish(phi, ops, d, steps=20):
    """Gauss-Newton on overlap residuals; returns the iterate with the smallest residual."""
    best_phi = phi
    best_res = float(np.linalg.norm(_residuals_and_jacobian(phi, ops, d)[0]))
    for _ in range(steps):
        res, jac = _residuals_and_jacobian(phi, ops, d)
        delta, *_ = np.linalg.lstsq(jac, -res, rcond=None)
        phi = phi + delta[:d] + 1j * delta[d:]
        phi /= np.linalg.norm(phi)
        norm = float(np.linalg.norm(_residuals_and_jacobian(phi, ops, d)[0]))
        if norm >= best_res:
            break
        best_phi, best_res = phi, norm
    return best_phi


_POLISH_GAP = 1e-6


def find_fiducial(cfg: SearchConfig) -> SearchResult:
    """Multi-restart frame-potential minimization.

    Every restart runs to completion; the result is the restart with the
    lowest final potential (ties to the lowest index). ``converged`` means
    the gap to ``2d/(d+1)`` is at most ``cfg.tol_accept``.
    """
    d = cfg.dim
    ops = displacement_operators(d)
    target = potential_minimum(d)
    best = None
    for r in range(cfg.restarts):
        rng = restart_rng(cfg.seed, r)
        z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        phi = z / np.linalg.norm(z)
        stop_gap = max(cfg.tol_opt, _POLISH_GAP)
        phi, value, iters = _descend(phi, ops, target, cfg.max_iterations, stop_gap, cfg.tol_opt)
        if value - target < _POLISH_GAP:
            phi = _polish(phi, ops, d)
            value = frame_potential(phi)
        if best is None or value < best[1]:
            best = (phi, value, iters, r)
    phi, value, iters, r = best
    gap = value - target
    status = "converged" if gap <= cfg.tol_accept else "failed"
    phi = np.array(phi)
    phi.setflags(write=False)
    return SearchResult(status, phi, value, gap, iters, r)


@lru_cache(maxsize=1)
def _catalogue() -> dict:
    text = resources.files("qbftp").joinpath("data/fiducials.json").read_text("utf-8")
    doc = json.loads(text)
    return {int(k): v for k, v in doc["fiducials"].items()}


def known_fiducial(d: int) -> np.ndarray | None:
    """Catalogued fiducial for ``2 <= d <= 6``; ``None`` outside the catalogue."""
    entry = _catalogue().get(int(d))
    if entry is None:
        return None
    return np.array([complex(re, im) for re, im in entry], dtype=np.complex128)
