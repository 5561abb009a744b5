import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import catalogued_sic, random_unitary
from qbftp import (
    ArityError,
    DimensionError,
    Povm,
    SicViolationError,
    check_sic,
    hs_inner,
    is_informationally_complete,
    known_fiducial,
    sic_effects,
    validate_povm,
    wh_orbit,
)


def test_projective_measurement_valid():
    assert validate_povm([np.diag([1, 0]), np.diag([0, 1])]).passed


def test_trivial_povm_valid():
    assert validate_povm([np.eye(3)]).passed


def test_incomplete_povm_fails():
    report = validate_povm([np.diag([0.7, 0]), np.diag([0.1, 1])])
    assert report.failures == ("completeness",)
    assert report.residuals["completeness"] == pytest.approx(0.2)


def test_negative_effect_fails():
    report = validate_povm([np.diag([1.5, 0]), np.diag([-0.5, 1])])
    assert "psd" in report.failures
    assert report.residuals["min_eigenvalues"] == pytest.approx([0.0, -0.5])


def test_validate_povm_arity_and_dimension_errors():
    with pytest.raises(ArityError):
        validate_povm([])
    with pytest.raises(DimensionError):
        validate_povm([np.eye(2), np.eye(3)])


def test_povm_from_effects_validates():
    p = Povm.from_effects([np.diag([1, 0]), np.diag([0, 1])])
    assert p.dim == 2 and len(p) == 2
    with pytest.raises(ValueError):
        Povm.from_effects([np.diag([0.7, 0])])
    with pytest.raises(ValueError):
        p.effects[0, 0, 0] = 2


def test_sic_is_informationally_complete():
    assert is_informationally_complete(catalogued_sic(2)) == (True, 4)


def test_projective_not_ic():
    assert is_informationally_complete([np.diag([1, 0]), np.diag([0, 1])]) == (False, 2)


def test_duplicated_effect_drops_rank():
    effects = np.array(catalogued_sic(2).effects)
    effects[3] = effects[2]
    # Oracle: rank of the flattened effects by SVD, independent of the Gram route.
    assert np.linalg.matrix_rank(effects.reshape(4, -1)) == 3
    assert is_informationally_complete(effects) == (False, 3)


@pytest.mark.parametrize("d", range(2, 7))
def test_projective_measurements_never_ic(d):
    ic, rank = is_informationally_complete(np.eye(d)[:, :, None] * np.eye(d)[:, None, :])
    assert not ic and rank == d


def test_check_sic_passes_on_orbit(sic):
    d = sic.dim
    report = check_sic(sic.vectors)
    assert report.passed
    assert report.residuals["overlap"] <= 1e-8
    assert report.residuals["min_overlap"] == pytest.approx(1 / (d + 1), abs=1e-8)


def test_check_sic_d3_overlaps():
    vecs = wh_orbit(known_fiducial(3))
    for i, j in itertools.permutations(range(9), 2):
        assert abs(np.vdot(vecs[i], vecs[j])) ** 2 == pytest.approx(0.25, abs=1e-8)
    assert check_sic(vecs).passed


def test_check_sic_rejects_basis_plus_superpositions():
    s = 1 / np.sqrt(2)
    vecs = [[1, 0], [0, 1], [s, s], [s, -s]]
    report = check_sic(vecs)
    assert not report.passed
    assert report.residuals["min_overlap"] == pytest.approx(0, abs=1e-15)
    assert report.residuals["max_overlap"] == pytest.approx(0.5)
    assert "overlap" in report.failures


def test_check_sic_wrong_count():
    with pytest.raises(ArityError, match="needs 4 vectors"):
        check_sic([[1, 0], [0, 1]])


@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_check_sic_invariances(d, seed):
    rng = np.random.default_rng(seed)
    vecs = np.array(catalogued_sic(d).vectors)
    phases = np.exp(2j * np.pi * rng.random(d * d))
    perm = rng.permutation(d * d)
    u = random_unitary(d, rng)
    moved = (vecs * phases[:, None])[perm] @ u.T
    report = check_sic(moved)
    assert report.passed
    assert report.residuals["overlap"] <= 1e-12


def test_sic_effects_traces(sic):
    d = sic.dim
    for e in sic.effects:
        assert np.trace(e).real == pytest.approx(1 / d)
        assert hs_inner(e, e).real == pytest.approx(1 / d**2)
    assert validate_povm(sic.effects).passed
    assert is_informationally_complete(sic)[0]


def test_sic_off_diagonal_trace_d3():
    sic = catalogued_sic(3)
    for i, j in itertools.permutations(range(9), 2):
        assert hs_inner(sic.effects[i], sic.effects[j]).real == pytest.approx(1 / 36, abs=1e-9)


def test_sic_resolution_of_identity(sic):
    d = sic.dim
    assert np.max(np.abs(sic.effects.sum(axis=0) - np.eye(d))) <= 1e-8
    assert np.max(np.abs(sic.projectors.sum(axis=0) - d * np.eye(d))) <= 1e-8


def test_sic_effects_raises_with_report():
    s = 1 / np.sqrt(2)
    with pytest.raises(SicViolationError) as info:
        sic_effects([[1, 0], [0, 1], [s, s], [s, -s]])
    assert not info.value.report.passed
