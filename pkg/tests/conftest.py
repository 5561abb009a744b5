import numpy as np
import pytest
from hypothesis import settings

from qbftp import known_fiducial, sic_effects, wh_orbit

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def catalogued_sic(d):
    return sic_effects(wh_orbit(known_fiducial(d)))


@pytest.fixture(params=[2, 3, 4, 5, 6], ids=lambda d: f"d{d}")
def sic(request):
    return catalogued_sic(request.param)


@pytest.fixture
def sic2():
    return catalogued_sic(2)


def random_unitary(d, rng):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_povm(d, n, rng):
    """Random n-outcome POVM: A_k A_k^dag conjugated by S^{-1/2}, S = sum A_k A_k^dag."""
    raw = []
    for _ in range(n):
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        raw.append(a @ a.conj().T)
    s = sum(raw)
    w, v = np.linalg.eigh(s)
    s_inv_half = v @ np.diag(w ** -0.5) @ v.conj().T
    return np.stack([s_inv_half @ m @ s_inv_half for m in raw])


def random_basis_povm(d, rng):
    u = random_unitary(d, rng)
    return np.stack([np.outer(u[:, k], u[:, k].conj()) for k in range(d)])


ACCEPTANCE_LINES = []


def record_acceptance(label, passed, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}")
    print(ACCEPTANCE_LINES[-1])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
