"""Brute-force search for a d=2 case where the classical total-probability rule
disagrees with the Born rule.

Scans random pure states and random projective targets against the catalogued
d=2 SIC, evaluating every quantity with explicit loops (no library update
rules), and prints the worst case found next to the frozen witness
rho = |0><0|, F = {|0><0|, |1><1|}.

    python tools/find_witness.py
"""

import numpy as np

from qbftp import known_fiducial, wh_orbit


def tr(a, b):
    return sum(a[i, j] * b[j, i] for i in range(2) for j in range(2)).real


def classical_and_born(rho, target, vecs):
    proj = [np.outer(v, v.conj()) for v in vecs]
    priors = [tr(p / 2, rho) for p in proj]
    classical = [sum(priors[i] * tr(f, proj[i]) for i in range(4)) for f in target]
    born = [tr(f, rho) for f in target]
    return classical, born


def pure(v):
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def main():
    vecs = wh_orbit(known_fiducial(2))
    rng = np.random.default_rng(0)
    best = (0.0, None)
    for _ in range(2000):
        psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        u_perp = np.array([-u[1].conjugate(), u[0].conjugate()])
        target = [pure(u), pure(u_perp)]
        c, b = classical_and_born(pure(psi), target, vecs)
        dev = max(abs(x - y) for x, y in zip(c, b))
        if dev > best[0]:
            best = (dev, (psi, u))
    print(f"random search: max classical deviation {best[0]:.6f}")
    c, b = classical_and_born(pure([1, 0]), [pure([1, 0]), pure([0, 1])], vecs)
    print(f"witness |0><0| with computational basis: born {b}, classical {c}")
    print(f"witness deviation {max(abs(x - y) for x, y in zip(c, b))!r}")


if __name__ == "__main__":
    main()
