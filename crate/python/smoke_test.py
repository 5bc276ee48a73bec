"""Smoke test for the pyrelqi extension.

Build and run from the workspace root:

    cargo build -p relqi-py --features extension-module --release
    cp target/release/libpyrelqi.so python/pyrelqi.so
    python3 python/smoke_test.py
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import pyrelqi  # noqa: E402


def close(a, b, tol=1e-12):
    assert abs(a - b) <= tol, f"{a} != {b}"


def main():
    delta = pyrelqi.wigner_angle(0.99, 0.99)
    assert 0.0 < delta < math.pi / 2

    psi = pyrelqi.PureState.total(math.pi / 4, beta=0.0)
    assert psi.num_factors() == 4
    close(psi.norm(), 1.0)
    boosted = psi.boost(math.pi / 2)
    four = [[0], [1], [2], [3]]
    alice_bob = [[0, 2], [1, 3]]
    close(boosted.entanglement(four) - psi.entanglement(four), 1.0)
    close(boosted.entanglement(alice_bob), psi.entanglement(alice_bob))
    cf = pyrelqi.closed_forms_bell(math.pi / 4, 0.0, math.pi / 2)
    close(cf["e_4q_diff"], 1.0)
    close(sum(boosted.schmidt(alice_bob)), 1.0)

    singlet = pyrelqi.DensityMatrix.bell("psi-")
    close(singlet.concurrence(), 1.0)
    close(singlet.horodecki_m(), 2.0)
    close(singlet.bell_parameter(), -2.0 * math.sqrt(2.0))
    close(pyrelqi.DensityMatrix.maximally_mixed(2).concurrence(), 0.0)

    spins = boosted.reduce([2, 3])
    assert spins.dim() == 4
    close(sum(spins.eigenvalues()), 1.0)

    report = pyrelqi.run_scenario(
        '{"family": {"kind": "triplet_type", "theta": 0.3, "phi": 1.1}, "alpha": 0.4, "delta": 0.9}'
    )
    assert report["max_residual"] < 1e-9

    demo = pyrelqi.chsh_demo(0.8, 0.8)
    close(abs(demo["s_boosted_transformed"]), 2.0 * math.sqrt(2.0), 1e-10)

    header, rows = pyrelqi.sweep(preset="fig1")
    assert header == ["v", "w", "delta"] and len(rows) == 51 * 51

    numeric, formula = pyrelqi.gaussian_spin_entropy(1.0, 0.05, 2.0)
    assert abs(numeric / formula - 1.0) < 0.01

    try:
        pyrelqi.PureState([1.0, 0.0, 0.0])
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("pyrelqi smoke test: ok")


if __name__ == "__main__":
    main()
