#!/usr/bin/env python3
"""Smoke test for the qfg_python extension module.

Build the module and put it on sys.path first; `./python/run_smoke.sh`
does both and then runs this script.
"""
import math
import sys

import qfg_python as qfg


def approx(a, b, tol=1e-10):
    assert abs(a - b) <= tol, f"{a!r} != {b!r} (tol {tol})"


def main():
    print("module version:", qfg.__version__)
    assert qfg.binary_alphabet() == ["0", "1"]

    # Golden Mean process: spin-1 system observed through J_y^2.
    gm = qfg.Generator.spin1("y")
    print(repr(gm))
    assert gm.dim() == 3
    assert gm.alphabet() == "01"
    assert all(ok for (_, _, ok) in gm.axiom_checks())
    assert all(res < 1e-12 for (_, res, _) in gm.axiom_checks())

    approx(gm.word_probability(""), 1.0)
    approx(gm.word_probability("0"), 1.0 / 3.0)
    approx(gm.word_probability("1"), 2.0 / 3.0)
    assert gm.word_probability("00") < 1e-12

    dist = gm.distribution(2)
    assert set(dist) == {"00", "01", "10", "11"}
    approx(dist["00"], 0.0, tol=1e-12)
    approx(dist["11"], 1.0 / 3.0)
    approx(sum(dist.values()), 1.0)

    forbidden, irreducible = gm.forbidden_words(6)
    assert irreducible == ["00"]
    assert all("00" in w for w in forbidden)

    approx(gm.block_entropy(1), math.log2(3) - 2.0 / 3.0, tol=1e-12)
    approx(gm.entropy_rate(3), 2.0 / 3.0, tol=1e-12)

    cond = gm.conditional_after("0")
    approx(cond["0"], 0.0, tol=1e-12)
    approx(cond["1"], 1.0, tol=1e-12)
    cond = gm.conditional_after("1")
    approx(cond["0"], 0.5, tol=1e-12)
    approx(cond["1"], 0.5, tol=1e-12)

    stream = gm.sample(100_000, seed=7)
    assert len(stream) == 100_000
    assert "00" not in stream
    ones = stream.count("1") / len(stream)
    assert 0.66 < ones < 0.68, ones
    assert gm.sample(500, seed=1) == gm.sample(500, seed=1)

    # Even process: same unitary, observed through J_x^2.
    even = qfg.Generator.spin1("x")
    assert even.word_probability("010") < 1e-12
    approx(even.word_probability("0110"), 1.0 / 12.0)
    _, irreducible = even.forbidden_words(8)
    assert irreducible == ["010", "01110", "0111110"]

    points = even.figure2(6)
    assert len(points) == 64
    assert points[16][0] == 0.25  # word 010000
    assert points[16][1] == float("-inf")
    assert all(x == i / 64.0 for i, (x, _) in enumerate(points))

    stream = even.sample(100_000, seed=11)
    blocks = stream.split("0")
    assert all(len(b) % 2 == 0 for b in blocks[1:-1]), "odd 1-block between zeros"

    # Classical oracles agree with the quantum models.
    approx(qfg.compare(gm, qfg.Oracle.golden_mean(), 8), 0.0, tol=1e-10)
    approx(qfg.compare(even, qfg.Oracle.even(), 8), 0.0, tol=1e-10)
    assert qfg.compare(gm, qfg.Oracle.even(), 3) > 1.0 / 12.0

    oracle = qfg.Oracle.golden_mean()
    print(repr(oracle))
    approx(oracle.word_probability("11"), 1.0 / 3.0, tol=1e-15)
    assert oracle.word_probability("00") == 0.0
    assert "00" not in oracle.sample(50_000, seed=3)

    # Model files round-trip through JSON.
    sqrt_half = 1.0 / math.sqrt(2.0)
    fair_coin = f"""{{
      "dim": 2,
      "alphabet": ["0", "1"],
      "unitary": [[[{sqrt_half}, 0.0], [{sqrt_half}, 0.0]],
                  [[{sqrt_half}, 0.0], [{-sqrt_half}, 0.0]]],
      "projectors": {{
        "0": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
        "1": [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
      }}
    }}"""
    coin = qfg.Generator.from_json(fair_coin)
    approx(coin.block_entropy(5), 5.0, tol=1e-12)
    assert all(abs(y) < 1e-12 for (_, y) in coin.figure2(4))

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
