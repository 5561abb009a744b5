"""Regenerate src/qbftp/data/fiducials.json from seeded fiducial searches.

    python tools/build_catalogue.py
"""

import json
from pathlib import Path

from qbftp.documents import encode_vector
from qbftp.povm import check_sic
from qbftp.sicsearch import SearchConfig, find_fiducial, wh_orbit

SEED = 20240101
OUT = Path(__file__).resolve().parents[1] / "src" / "qbftp" / "data" / "fiducials.json"


def main():
    fiducials = {}
    for d in range(2, 7):
        result = find_fiducial(SearchConfig(dim=d, seed=SEED, restarts=32))
        report = check_sic(wh_orbit(result.fiducial), tol=1e-12)
        if not (result.converged and report.passed):
            raise SystemExit(f"d={d}: search did not produce a SIC ({report.summary()})")
        fiducials[str(d)] = encode_vector(result.fiducial)
        print(f"d={d}: gap {result.potential_gap:.2e}, {report.summary()}")
    body = {"schema_version": "1", "kind": "catalogue", "seed": SEED, "fiducials": fiducials}
    OUT.write_text(json.dumps(body, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
