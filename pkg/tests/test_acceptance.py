"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import itertools
import json
import math
import random
import time

import numpy as np
import pytest

import oracles
from sawskel.bounds import burnside_bound, burnside_holds, entropy_sandwich
from sawskel.cli import main
from sawskel.geodesic import count_geodesics, geodesic_connective, is_geodesic
from sawskel.groups import ALL_PRESETS, preset
from sawskel.shift import compile_forbidden, parse_pattern, plain_forbidden_words, rauzy_upper_bound, words_pattern
from sawskel.walks import (
    CERTIFIED_YES,
    algorithm_M,
    bridge_words,
    count_bridges,
    count_periodic,
    count_saps,
    count_saws,
    is_periodic_word,
)

GOLDEN = (1 + math.sqrt(5)) / 2
MU_S3 = 2.8698315
MU_Z2 = 2.63815853
HEX_MU = math.sqrt(2 + math.sqrt(2))
LADDER_PATTERN = "s t+ s T | s T+ s t | t s T+ s | T s t+ s | s s | t T | T t"


class Timer:
    def __init__(self, number, name, limit):
        self.number, self.name, self.limit = number, name, limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        self.detail = ""
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.t0
        ok = exc_type is None and self.elapsed < self.limit
        extra = f"{self.detail}; " if self.detail else ""
        print(f"ACCEPTANCE {self.number} {self.name}: {'PASS' if ok else 'FAIL'} "
              f"({extra}{self.elapsed:.2f}s of {self.limit:g}s)")
        if exc_type is None:
            assert self.elapsed < self.limit, f"runtime {self.elapsed:.2f}s exceeds {self.limit}s"
        return False


def cli_json(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    assert code == 0, err
    return json.loads(out)["result"]


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv("SKELETON_CACHE", raising=False)


def test_1_ladder_sofic_entropy(capsys):
    with Timer(1, "ladder sofic entropy", 1.0) as t:
        res = cli_json(capsys, "sofic-entropy", "--group", "ladder", "--forbidden", "ladder-builtin")
        b = res["bounds"][0]
        t.detail = f"value={res['value']:.15f} width={res['width']:.1e}"
        assert b["certified"] and b["role"] == "exact"
        assert b["value_lo"] - 1e-12 <= math.log(GOLDEN) <= b["value_hi"] + 1e-12
        assert abs(res["value"] - math.log(GOLDEN)) <= 1e-9
        assert res["width"] <= 1e-9


def test_2_plain_sft_constant(capsys):
    with Timer(2, "S3*Z/3 SFT constant", 10.0) as t:
        res = cli_json(capsys, "sft-entropy", "--group", "s3-star-z3")
        # independent root of x^7 - 4x^5 - 8x^4 - 8x^3 - 8x^2 - 8x - 4
        roots = np.roots([1, 0, -4, -8, -8, -8, -8, -4])
        target = max(r.real for r in roots if abs(r.imag) < 1e-9)
        lo, hi = res["bounds"][0]["params"]["perron_root_exact"]
        t.detail = f"mu={res['mu']:.10f} exact root in [{lo:.13f}, {hi:.13f}]"
        assert abs(res["mu"] - MU_S3) <= 1e-6
        assert abs(lo - target) <= 1e-9 and abs(hi - target) <= 1e-9
        assert abs(float(np.polyval(res["characteristic_polynomial"], target))) <= 1e-6


def test_3_free_group_exactness():
    with Timer(3, "free group exactness", 1.0) as t:
        g = preset("free(2)")
        n_max = 8
        c = count_saws(g, n_max).counts
        assert c[1:] == [4 * 3 ** (n - 1) for n in range(1, n_max + 1)]
        roots = [c[n] ** (1 / n) for n in range(1, n_max + 1)]
        # c_n^(1/n) is 3 * (4/3)^(1/n): the infimum over n is 3
        assert all(r >= 3 for r in roots)
        assert all(c[n] == 4 * 3 ** (n - 1) for n in range(1, n_max + 1))
        rauzy = rauzy_upper_bound(g, 1)
        assert abs(rauzy.value_hi - math.log(3)) <= 1e-12 and rauzy.value_lo <= math.log(3) + 1e-15
        rho = count_saps(g, n_max).counts
        assert not any(rho)
        t.detail = f"c_{n_max}^(1/{n_max})={roots[-1]:.6f} rauzy={rauzy.value_hi:.15f}"


def test_4_z2_bracket():
    with Timer(4, "Z^2 bracket", 300.0) as t:
        report = entropy_sandwich(preset("z2"), 14, height="linear:1,0", workers=4)
        lo, hi = report.bracket
        t.detail = f"bracket=[{math.exp(lo):.5f}, {math.exp(hi):.5f}]"
        assert lo >= math.log(2.0)
        assert hi <= math.log(2.9)
        assert lo <= math.log(MU_Z2) <= hi
        assert report.consistent()


def test_5_hexagonal_upper_bound():
    with Timer(5, "hexagonal upper bound", 120.0) as t:
        c = count_saws(preset("a2-coxeter"), 16).counts
        even = [c[n] ** (1 / n) for n in range(2, 17, 2)]
        t.detail = f"min c_n^(1/n)={min(even):.6f}"
        assert all(b <= a for a, b in zip(even, even[1:]))
        assert all(v >= HEX_MU - 1e-12 for v in even)
        assert min(c[n] ** (1 / n) for n in range(1, 17)) <= 2.1


def test_6_algorithm_M_equivalence():
    with Timer(6, "algorithm M equivalence", 120.0) as t:
        sizes = {}
        for name in ("z2", "dihedral-ab", "heisenberg"):
            g = preset(name)
            direct = oracles.trivial_words(g, 8)
            for n in range(2, 9):
                assert algorithm_M(g, n) == {w for w in direct if len(w) <= n}, (name, n)
            sizes[name] = len(direct)
        t.detail = " ".join(f"{k}={v}" for k, v in sizes.items())


def test_7_dihedral_degenerate_skeleton():
    with Timer(7, "dihedral degenerate skeleton", 1.0) as t:
        g = preset("dihedral-ab")
        c = count_saws(g, 20).counts
        assert all(c[n] == 2 for n in range(1, 21))
        e = count_periodic(g, 20)
        assert e.counts[2] == 2
        assert all(x == 0 for n, x in enumerate(e.counts) if n != 2)
        assert all(e.certified)
        lo, hi = entropy_sandwich(g, 20).bracket
        t.detail = f"bracket=[{lo:g}, {hi:g}]"
        assert abs(lo) <= 1e-12 and abs(hi) <= 1e-12


def test_8_bridges_are_periodic():
    with Timer(8, "bridge-to-periodic soundness", 30.0) as t:
        g = preset("z2")
        rng = random.Random(1)
        chosen = []
        for n in range(1, 11):
            words = bridge_words(g, n, "linear:1,0")
            chosen += words if len(words) <= 14 else rng.sample(words, 14)
        chosen = sorted(rng.sample(chosen, 100), key=lambda w: (len(w), w))
        assert len(chosen) == 100
        verdicts = [is_periodic_word(g, w).status for w in chosen]
        t.detail = f"{verdicts.count(CERTIFIED_YES)}/100 certified-yes"
        assert all(v == CERTIFIED_YES for v in verdicts)


def test_9_burnside_bounds():
    with Timer(9, "Burnside bounds", 1.0):
        for m, n in ((2, 5), (2, 7), (3, 13), (2, 557)):
            res = burnside_bound(m, n)
            gamma = (n - 1) / n * (2 * m - 1)
            assert res.gamma_closed == pytest.approx(gamma, rel=1e-15)
            assert burnside_holds(gamma, n, 2 * m - 1)
            assert gamma / (gamma ** (n - 1) - 1) + gamma <= 2 * m - 1
            assert res.beta_star is not None and gamma <= res.beta_star


def test_10_geodesic_growth():
    with Timer(10, "geodesic growth", 120.0) as t:
        ladder = count_geodesics(preset("ladder"), 25).cumulative
        assert all(ladder[n] == n * n + 3 * n for n in range(2, 26))

        z2 = preset("z2")
        strict = count_geodesics(z2, 12).strict
        assert all(strict[n] == 4 * 2 ** n - 4 for n in range(1, 13))
        ball = z2.ball(9)
        filtered = [sum(1 for w in itertools.product(range(z2.degree), repeat=n) if is_geodesic(z2, w, ball)) for n in range(1, 9)]
        assert filtered == strict[1:9]

        rate = geodesic_connective(count_geodesics(preset("a2-coxeter"), 20))
        ratio = dict(rate.two_step)[18]  # strict(20) / strict(18)
        t.detail = f"hex two-step ratio={ratio:.5f}"
        assert abs(ratio - 2) <= 0.2


def test_11_oracle_equivalence():
    with Timer(11, "oracle equivalence", 300.0):
        for name in ALL_PRESETS:
            g = preset(name)
            saw, sap, geo = oracles.walk_statistics(g, 8)
            assert count_saws(g, 8).counts == saw, name
            assert count_saps(g, 8).counts == sap, name
            assert count_geodesics(g, 8).strict == geo, name
            assert count_geodesics(g, 8, method="dfs").strict == geo, name

        ladder = preset("ladder")
        auto = compile_forbidden(parse_pattern(LADDER_PATTERN, ladder.alphabet), 3, trim=False)
        assert auto.count_words(12) == oracles.avoiding_counts_regex(3, "ca+cb|cb+ca|acb+c|bca+c|cc|ab|ba", 12)

        s3 = preset("s3-star-z3")
        words = plain_forbidden_words(s3)
        auto = compile_forbidden(words_pattern(words), s3.degree, trim=False)
        assert auto.count_words(12) == oracles.avoiding_counts_words(s3.degree, words, 12)

        # golden mean shift: forbid "b b" over two letters
        auto = compile_forbidden(words_pattern([(1, 1)]), 2, trim=False)
        assert auto.count_words(12) == oracles.avoiding_counts_words(2, [(1, 1)], 12)


def test_12_determinism():
    with Timer(12, "determinism", 300.0):
        jobs = [
            ("saw", lambda w: count_saws(preset("z2"), 11, workers=w).counts),
            ("sap", lambda w: count_saps(preset("a2-coxeter"), 12, workers=w).counts),
            ("bridge", lambda w: count_bridges(preset("z2"), 11, "linear:1,0", workers=w).counts),
            ("saw-heis", lambda w: count_saws(preset("heisenberg"), 7, workers=w).counts),
        ]
        for name, job in jobs:
            results = [job(w) for w in (1, 4, 8) for _ in range(2)]
            assert all(r == results[0] for r in results), name
        assert count_periodic(preset("z2"), 6).counts == count_periodic(preset("z2"), 6).counts
        assert count_geodesics(preset("a2-coxeter"), 12).strict == count_geodesics(preset("a2-coxeter"), 12).strict
