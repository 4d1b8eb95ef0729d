"""Smoke test for the Python bindings.

Build and run from the repository root:

    cargo build --release -p tangle-roof-py
    cp target/release/libtangle_roof_py.so crates/python/python/tangle_roof_py.so
    python3 crates/python/python/smoke_test.py

(or `maturin develop` inside crates/python).
"""

import math

import tangle_roof_py as tr


def close(a, b, tol=1e-12):
    assert abs(a - b) <= tol, f"{a} != {b}"


def main():
    phi2 = tr.PureState.named("phi2")
    close(tr.measure("F1", phi2), 8 / 9)
    close(tr.measure("F3", tr.PureState.named("phi3")), 1.0)
    close(tr.measure("tau3", tr.PureState.named("ghz3")), 1.0)
    assert dict(phi2.measures())["G1"] > 0.9

    bell = tr.PureState.from_kets([("00", 1.0), ("11", 1.0)])
    close(bell.density().concurrence(), 1.0)
    close(tr.eof(1.0, log2=True), 1.0)

    fam = tr.RankTwoFamily.named("rho1")
    z = fam.superpose(0.8, 0.0)
    close(tr.measure("F1", z), 0.416)
    rho = fam.mix(0.0)
    close(rho.partial_trace([0, 1]).concurrence(), 0.5, 1e-9)

    p1 = tr.solve_p1()
    assert abs(p1 - 0.861) < 1e-3

    env = tr.envelope("F1-rho1", p_points=201, phi_points=72)
    assert env.max_deviation() < 5e-3, env.max_deviation()
    assert len(env.p_values) == 201

    d = tr.build_decomposition("F1-rho1", 0.8)
    residual, avg = d.verify("F1")
    assert residual < 1e-10 and abs(avg - 0.416) < 1e-9
    assert len(d) == 4

    assert tr.in_zero_tetrahedron(0.0, 0.0, 0.0)
    assert not tr.in_zero_tetrahedron(0.0, 0.0, 1.0)
    w = tr.zero_witness(0.0, 0.0, -0.5)
    residual, avg = w.verify("F1")
    assert residual < 1e-10 and avg < 1e-10
    x, y, z = w.target.bloch()
    close(z, -0.5)

    try:
        tr.build_decomposition("F1-rho9", 0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    assert "F1-rho1" in tr.cases()
    assert math.isclose(tr.reference_value("G3-rho3", 0.7), 0.25)
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
