"""Command-line front end.

Exit codes: 0 success, 1 check failed, 2 search failed, 3 reconstruction
infeasible, 64 usage error, 65 bad input data.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import documents as docs
from .errors import (
    DimensionError,
    InconsistentDataError,
    ReconstructionInfeasibleError,
    SicViolationError,
    UnderdeterminedError,
)
from .ftp import compare_ftp, reconstruct_from_sic, reconstruct_linear_inversion
from .linalg import DEFAULT_TOL, Tolerances, random_density
from .povm import check_sic, is_informationally_complete, sic_effects, validate_povm
from .sicsearch import (
    SearchConfig,
    find_fiducial,
    frame_potential,
    known_fiducial,
    potential_minimum,
    wh_orbit,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_SEARCH_FAILED = 2
EXIT_INFEASIBLE = 3
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(doc: docs.Document, out: str | None) -> None:
    text = docs.dumps(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _summary(**fields) -> None:
    print(json.dumps(docs.to_plain(fields), sort_keys=False))


# -- sic-find ---------------------------------------------------------------


def cmd_sic_find(args) -> int:
    if args.dim < 2:
        args.parser.error("--dim must be >= 2")
    if args.dim > 16:
        args.parser.error("--dim must be <= 16")
    if args.restarts < 1 or args.max_iter < 1:
        args.parser.error("--restarts and --max-iter must be >= 1")
    if not args.tol > 0:
        args.parser.error("--tol must be positive")
    cfg = SearchConfig(
        dim=args.dim,
        seed=args.seed,
        restarts=args.restarts,
        max_iterations=args.max_iter,
        tol_accept=args.tol,
    )
    result = find_fiducial(cfg)
    search = {
        "seed": cfg.seed,
        "restarts": cfg.restarts,
        "max_iterations": cfg.max_iterations,
        "tol_accept": cfg.tol_accept,
        "status": result.status,
        "restart_index": result.restart_index,
        "iterations_used": result.iterations_used,
        "final_potential": result.final_potential,
        "potential_gap": result.potential_gap,
    }
    if result.converged:
        doc = docs.sic_document(wh_orbit(result.fiducial), result.fiducial, search)
        code = EXIT_OK
    else:
        doc = docs.report_document({"command": "sic-find", "dim": cfg.dim, **search})
        code = EXIT_SEARCH_FAILED
    _emit(doc, args.out)
    _summary(command="sic-find", dim=cfg.dim, **search)
    return code


# -- verify -----------------------------------------------------------------


def cmd_verify(args) -> int:
    doc = docs.read_document(args.input, kinds=("sic", "povm"))
    tol = args.tol
    if doc.kind == "sic":
        vectors = doc.payload["vectors"]
        d = doc.payload["dim"]
        report = check_sic(vectors, tol)
        body = {
            "command": "verify",
            "kind": "sic",
            "dim": d,
            "tolerance": tol,
            "passed": report.passed,
            "failures": list(report.failures),
            "overlap_expected": 1.0 / (d + 1),
            "overlap_min": report.residuals["min_overlap"],
            "overlap_max": report.residuals["max_overlap"],
            "overlap_deviation": report.residuals["overlap"],
            "trace_symmetry_deviation": report.residuals["trace_symmetry"],
            "completeness_residual": report.residuals["completeness"],
            "frame_potential_gap": None,
        }
        fid = doc.payload.get("fiducial")
        if fid is not None:
            gap = frame_potential(fid) - potential_minimum(d)
            body["frame_potential_gap"] = gap
            orbit_dev = float(np.max(np.abs(wh_orbit(fid) - vectors)))
            body["orbit_deviation"] = orbit_dev
            if gap > tol:
                body["failures"].append("frame_potential")
            if orbit_dev > tol:
                body["failures"].append("orbit")
            body["passed"] = not body["failures"]
    else:
        effects = doc.payload["effects"]
        tols = Tolerances(tol_verify=tol)
        report = validate_povm(effects, tols)
        ic, rank = is_informationally_complete(effects)
        body = {
            "command": "verify",
            "kind": "povm",
            "dim": doc.payload["dim"],
            "tolerance": tol,
            "passed": report.passed,
            "failures": list(report.failures),
            "completeness_residual": report.residuals["completeness"],
            "min_eigenvalues": report.residuals["min_eigenvalues"],
            "informationally_complete": ic,
            "rank": rank,
        }
    _emit(docs.report_document(body), args.out)
    _summary(**body)
    return EXIT_OK if body["passed"] else EXIT_CHECK_FAILED


# -- ftp-compare ------------------------------------------------------------


def _load_sic(args):
    path, d = args.sic, args.dim
    if path is None:
        if d is None:
            args.parser.error("either --sic or --dim is required")
        fid = known_fiducial(d)
        if fid is None:
            args.parser.error(f"no catalogued SIC for dimension {d}; pass --sic")
        return sic_effects(wh_orbit(fid))
    doc = docs.read_document(path, kinds=("sic",))
    if d is not None and doc.payload["dim"] != d:
        raise docs.DocumentError("payload.dim", f"SIC has dimension {doc.payload['dim']}, expected {d}")
    try:
        return sic_effects(doc.payload["vectors"])
    except SicViolationError as exc:
        raise docs.DocumentError("payload.vectors", str(exc)) from None


def _load_target(path: str, d: int) -> np.ndarray:
    doc = docs.read_document(path, kinds=("povm", "sic"))
    if doc.payload["dim"] != d:
        raise docs.DocumentError("payload.dim", f"target has dimension {doc.payload['dim']}, expected {d}")
    if doc.kind == "sic":
        vecs = doc.payload["vectors"]
        return np.einsum("ia,ib->iab", vecs, vecs.conj()) / d
    effects = doc.payload["effects"]
    report = validate_povm(effects)
    if not report.passed:
        raise docs.DocumentError("payload.effects", f"not a POVM ({report.summary()})")
    return effects


def cmd_ftp_compare(args) -> int:
    sic = _load_sic(args)
    d = sic.dim
    target = _load_target(args.target, d)
    if args.state is not None:
        doc = docs.read_document(args.state, kinds=("state",))
        if doc.payload["dim"] != d:
            raise docs.DocumentError("payload.dim", f"state has dimension {doc.payload['dim']}, expected {d}")
        states = [doc.payload["matrix"]]
    else:
        if args.random < 1:
            args.parser.error("--random must be >= 1")
        states = [random_density(d, args.seed + k) for k in range(args.random)]
    cases = []
    for k, rho in enumerate(states):
        cmp = compare_ftp(rho, sic, target)
        cases.append(
            {
                "case": k,
                "born": cmp.born,
                "classical": cmp.classical,
                "qbist": cmp.qbist,
                "deviation_classical": cmp.deviation_classical,
                "deviation_qbist": cmp.deviation_qbist,
                "deviation_posterior_reading": cmp.deviation_posterior_reading,
            }
        )
    max_q = max(c["deviation_qbist"] for c in cases)
    max_c = max(c["deviation_classical"] for c in cases)
    passed = max_q <= args.tol
    body = {
        "command": "ftp-compare",
        "dim": d,
        "tolerance": args.tol,
        "passed": passed,
        "max_deviation_classical": max_c,
        "max_deviation_qbist": max_q,
        "max_deviation_posterior_reading": max(c["deviation_posterior_reading"] for c in cases),
        "cases": cases,
    }
    _emit(docs.report_document(body), args.out)
    _summary(
        command="ftp-compare",
        dim=d,
        cases=len(cases),
        passed=passed,
        max_deviation_classical=max_c,
        max_deviation_qbist=max_q,
    )
    return EXIT_OK if passed else EXIT_CHECK_FAILED


# -- reconstruct ------------------------------------------------------------


def cmd_reconstruct(args) -> int:
    probs = docs.read_document(args.probs, kinds=("probabilities",)).payload["values"]
    ref = docs.read_document(args.reference, kinds=("sic", "povm"))
    d = ref.payload["dim"]
    try:
        if args.method == "sic":
            if ref.kind != "sic":
                raise docs.DocumentError("kind", "method 'sic' needs a sic reference document")
            try:
                sic = sic_effects(ref.payload["vectors"])
            except SicViolationError as exc:
                raise docs.DocumentError("payload.vectors", str(exc)) from None
            if probs.size != len(sic):
                raise docs.DocumentError("payload.values", f"expected {len(sic)} probabilities")
            rho = reconstruct_from_sic(probs, sic)
        else:
            if ref.kind == "sic":
                vecs = ref.payload["vectors"]
                effects = np.einsum("ia,ib->iab", vecs, vecs.conj()) / d
            else:
                effects = ref.payload["effects"]
            if probs.size != effects.shape[0]:
                raise docs.DocumentError("payload.values", f"expected {effects.shape[0]} probabilities")
            rho = reconstruct_linear_inversion(probs, effects)
    except ReconstructionInfeasibleError as exc:
        body = {
            "command": "reconstruct",
            "method": args.method,
            "status": "infeasible",
            "reason": str(exc),
            "residuals": exc.report.residuals,
            "candidate": docs.encode_matrix(exc.candidate),
        }
        return _infeasible(body, args.out)
    except (UnderdeterminedError, InconsistentDataError) as exc:
        body = {
            "command": "reconstruct",
            "method": args.method,
            "status": "underdetermined" if isinstance(exc, UnderdeterminedError) else "inconsistent",
            "reason": str(exc),
        }
        return _infeasible(body, args.out)
    _emit(docs.state_document(rho), args.out)
    _summary(command="reconstruct", method=args.method, status="ok", dim=d)
    return EXIT_OK


def _infeasible(body: dict, out: str | None) -> int:
    _emit(docs.report_document(body), out)
    _summary(**{k: v for k, v in body.items() if k != "candidate"})
    return EXIT_INFEASIBLE


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qbftp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sic-find", help="search for a Weyl-Heisenberg SIC fiducial")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iter", type=int, default=20000)
    p.add_argument("--tol", type=float, default=1e-9, help="acceptance threshold on the potential gap")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sic_find, parser=p)

    p = sub.add_parser("verify", help="check a sic or povm document")
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL.tol_verify)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify, parser=p)

    p = sub.add_parser("ftp-compare", help="compare Born, classical and SIC-rule probabilities")
    p.add_argument("--dim", type=int)
    p.add_argument("--sic", help="sic document; defaults to the catalogued SIC for --dim")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", help="state document")
    src.add_argument("--random", type=int, help="number of random states")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", required=True, help="povm or sic document")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ftp_compare, parser=p)

    p = sub.add_parser("reconstruct", help="reconstruct a state from reference probabilities")
    p.add_argument("--probs", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--method", choices=("sic", "inversion"), default="sic")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reconstruct, parser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (docs.DocumentError, DimensionError) as exc:
        print(f"qbftp: invalid data: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
