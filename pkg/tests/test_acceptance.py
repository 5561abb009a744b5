"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary. Run on its own with ``pytest tests/test_acceptance.py``.
"""

import itertools
import time

import numpy as np

from conftest import catalogued_sic, random_povm, record_acceptance
from qbftp import (
    SearchConfig,
    born,
    check_sic,
    cli,
    compare_ftp,
    conditional_matrix,
    find_fiducial,
    frame_potential,
    qbist_ftp,
    quasi_priors,
    random_density,
    reconstruct_from_sic,
    reconstruct_linear_inversion,
    reference_probabilities,
    wh_orbit,
)
from qbftp import documents as docs
from qbftp.sicsearch import potential_minimum

DIMS = (2, 3, 4, 5, 6)


def _basis(d):
    return np.stack([np.diag(np.eye(d)[k]) for k in range(d)]).astype(complex)


def test_ac1_urgleichung_equals_born():
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    worst, cases = 0.0, 0
    for d in DIMS:
        sic = catalogued_sic(d)
        targets = [_basis(d), random_povm(d, 3, rng), sic.effects]
        for s in range(50):
            rho = random_density(d, 10_000 + s)
            priors = reference_probabilities(rho, sic)
            for target in targets:
                q = qbist_ftp(priors, conditional_matrix(sic, target), d)
                worst = max(worst, float(np.max(np.abs(q - born(rho, target)))))
                cases += 1
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 30
    record_acceptance(
        "AC1 urgleichung = Born", ok, f"{cases} cases, max dev {worst:.2e} (tol 1e-9), {elapsed:.1f}s"
    )
    assert worst <= 1e-9
    assert elapsed < 30


def test_ac2_sic_construction():
    start = time.perf_counter()
    details = []
    ok = True
    for d in DIMS:
        result = find_fiducial(SearchConfig(dim=d, seed=0, restarts=32))
        vecs = wh_orbit(result.fiducial)
        effects = np.einsum("ia,ib->iab", vecs, vecs.conj()) / d
        overlap_dev = max(
            abs(abs(np.vdot(vecs[i], vecs[j])) ** 2 - 1 / (d + 1))
            for i, j in itertools.permutations(range(d * d), 2)
        )
        trace_dev = max(
            abs(np.trace(effects[i] @ effects[j]).real - 1 / (d * d * (d + 1)))
            for i, j in itertools.permutations(range(d * d), 2)
        )
        completeness = float(np.max(np.abs(effects.sum(axis=0) - np.eye(d))))
        gap = frame_potential(result.fiducial) - potential_minimum(d)
        d_ok = (
            result.converged
            and overlap_dev <= 1e-8
            and trace_dev <= 1e-9
            and completeness <= 1e-9
            and gap <= 1e-9
            and check_sic(vecs).passed
        )
        ok &= d_ok
        details.append(f"d={d} overlap {overlap_dev:.1e} gap {gap:.1e}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    record_acceptance("AC2 SIC construction", ok, "; ".join(details) + f"; {elapsed:.1f}s")
    assert ok


def test_ac3_reconstruction_round_trip():
    worst_sic, worst_cross = 0.0, 0.0
    for d in DIMS:
        sic = catalogued_sic(d)
        for s in range(100):
            rho = random_density(d, 20_000 + s)
            p = reference_probabilities(rho, sic)
            est = reconstruct_from_sic(p, sic)
            inv = reconstruct_linear_inversion(p, sic.effects)
            worst_sic = max(worst_sic, float(np.max(np.abs(est - rho))))
            worst_cross = max(worst_cross, float(np.max(np.abs(inv - est))))
    ok = worst_sic <= 1e-9 and worst_cross <= 1e-9
    record_acceptance(
        "AC3 reconstruction round trip",
        ok,
        f"max |rho_hat - rho| {worst_sic:.2e}, max |inversion - sic| {worst_cross:.2e} (tol 1e-9)",
    )
    assert ok


def test_ac4_classical_differs_from_quantum():
    # Witness recorded by tools/find_witness.py.
    rho = np.diag([1.0, 0.0])
    target = _basis(2)
    cmp = compare_ftp(rho, catalogued_sic(2), target)
    ok = cmp.deviation_classical > 0.05 and cmp.deviation_qbist <= 1e-9
    record_acceptance(
        "AC4 classical != quantum",
        ok,
        f"pure |0><0|, computational basis: classical dev {cmp.deviation_classical:.4f} (> 0.05), "
        f"qbist dev {cmp.deviation_qbist:.1e} (<= 1e-9)",
    )
    assert ok


def test_ac5_quasi_prior_normalization():
    rng = np.random.default_rng(5)
    worst = 0.0
    for k in range(1000):
        d = DIMS[k % len(DIMS)]
        p = rng.dirichlet(np.ones(d * d))
        worst = max(worst, abs(quasi_priors(p, d).sum() - 1))
    ok = worst <= 1e-12
    record_acceptance("AC5 quasi-prior normalization", ok, f"1000 vectors, max |sum - 1| {worst:.1e}")
    assert ok


def test_ac6_conditional_matrix_closed_form():
    worst = 0.0
    for d in DIMS:
        sic = catalogued_sic(d)
        c = conditional_matrix(sic, sic)
        expected = np.full_like(c, 1 / (d * (d + 1)))
        np.fill_diagonal(expected, 1 / d)
        worst = max(worst, float(np.max(np.abs(c - expected))))
    ok = worst <= 1e-9
    record_acceptance("AC6 conditional matrix closed form", ok, f"max dev {worst:.1e} (tol 1e-9)")
    assert ok


def test_ac7_cli_determinism_round_trip_exit_codes(tmp_path, capsys):
    def run(*argv):
        code = cli.main([str(a) for a in argv])
        capsys.readouterr()
        return code

    failures = []
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run("sic-find", "--dim", 3, "--seed", 7, "--restarts", 8, "--out", path)
    if a.read_bytes() != b.read_bytes():
        failures.append("sic-find not byte-identical")

    sic2 = tmp_path / "sic2.json"
    basis = tmp_path / "basis.json"
    state = tmp_path / "state.json"
    probs = tmp_path / "probs.json"
    bad_probs = tmp_path / "bad_probs.json"
    not_sic = tmp_path / "not_sic.json"
    truncated = tmp_path / "trunc.json"
    s = 1 / np.sqrt(2)
    expected = {
        ("sic-find", "--dim", 2, "--seed", 1, "--restarts", 8, "--out", sic2): 0,
        ("sic-find", "--dim", 2, "--restarts", 1, "--max-iter", 1, "--out", tmp_path / "f.json"): 2,
        ("sic-find", "--dim", 1): 64,
    }
    outcomes = {}
    for argv, code in expected.items():
        outcomes[argv] = run(*argv)
    docs.write_document(docs.povm_document(_basis(2)), basis)
    docs.write_document(docs.state_document(random_density(2, 1)), state)
    sic = docs.read_document(sic2)
    p = reference_probabilities(random_density(2, 1), catalogued_sic(2))
    docs.write_document(docs.probabilities_document(p), probs)
    docs.write_document(docs.probabilities_document([1.0, 0, 0, 0]), bad_probs)
    docs.write_document(docs.sic_document(np.array([[1, 0], [0, 1], [s, s], [s, -s]])), not_sic)
    truncated.write_text(sic2.read_text()[:100])
    p2 = tmp_path / "p2.json"
    docs.write_document(docs.probabilities_document([1.0, 0.0]), p2)
    more = {
        ("verify", "--input", sic2): 0,
        ("verify", "--input", not_sic): 1,
        ("verify", "--input", truncated): 65,
        ("ftp-compare", "--sic", sic2, "--target", basis, "--random", 50, "--seed", 3,
         "--out", tmp_path / "cmp.json"): 0,
        ("ftp-compare", "--sic", sic2, "--target", tmp_path / "missing.json", "--random", 1): 65,
        ("reconstruct", "--probs", probs, "--reference", sic2, "--out", tmp_path / "rec.json"): 0,
        ("reconstruct", "--probs", bad_probs, "--reference", sic2, "--out", tmp_path / "inf.json"): 3,
        ("reconstruct", "--probs", probs, "--reference", basis, "--method", "inversion"): 65,
        ("reconstruct", "--probs", p2, "--reference", basis): 65,
        ("reconstruct", "--probs", p2, "--reference", basis, "--method", "inversion"): 3,
        ("reconstruct", "--method", "bogus"): 64,
    }
    for argv, code in more.items():
        outcomes[argv] = run(*argv)
    expected.update(more)
    for argv, code in expected.items():
        if outcomes[argv] != code:
            failures.append(f"{argv[0]} {argv[1:3]} exit {outcomes[argv]} != {code}")

    emitted = [a, sic2, tmp_path / "f.json", tmp_path / "cmp.json", tmp_path / "rec.json",
               tmp_path / "inf.json"]
    for path in emitted:
        text = path.read_text(encoding="utf-8")
        if docs.dumps(docs.loads(text)) != text:
            failures.append(f"{path.name} does not reparse to itself")
    ok = not failures and sic.kind == "sic"
    record_acceptance(
        "AC7 CLI determinism/round trip/exit codes",
        ok,
        f"{len(expected)} exit-code cases, {len(emitted)} documents reparsed"
        + ("" if ok else "; " + "; ".join(failures)),
    )
    assert ok, failures
