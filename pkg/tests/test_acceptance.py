"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run ``pytest -s tests/test_acceptance.py`` to see the per-criterion lines;
every tolerance and runtime bound is pinned here, nothing is deferred.
"""

import math
import time

import numpy as np

from szeta.cli import main as cli_main
from szeta.kernels import check_identity, khat
from szeta.paircorr import lemma5_check, lemma6_eval, pcf_curve, tail_integral
from szeta.primes import (build_prime_table, closed_form_S1_minus_2S2,
                          prime_sum_terms)
from szeta.s_of_t import SEvaluator, s_exact, s_explicit
from szeta.theorem import full_report, theorem_rhs
from szeta.zeros import ZeroSet, export_zeros, find_zeros, riemann_siegel_Z

PI = math.pi


def _line(num, ok, msg):
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {msg}")
    assert ok, f"criterion {num}: {msg}"


def test_criterion_1_kernel_derivative_constants():
    t0 = time.perf_counter()
    rep = check_identity("lemma3")
    dt = time.perf_counter() - t0
    rel = rep.detail["relative_errors"]
    ok = (rel["k_dprime_0"] < 1e-4
          and all(rel[k] < 1e-3 for k in ("k_prime_left", "k_prime_right",
                                          "k_dprime_left", "k_dprime_right"))
          and dt < 1.0)
    _line(1, ok, f"finite differences vs closed forms, worst rel "
                 f"{max(rel.values()):.2e}, {dt:.2f}s")


def test_criterion_2_fourier_identity():
    t0 = time.perf_counter()
    worst = max(abs(khat(y, "direct") - khat(y, "closed"))
                for y in (0.5, 1.0, 2.0, 5.0, 10.0))
    dt = time.perf_counter() - t0
    ok = worst < 1e-6 and dt < 10.0
    _line(2, ok, f"max |direct - closed| = {worst:.2e}, {dt:.1f}s")


def test_criterion_3_pair_sum_rearrangement(zeros_220):
    t0 = time.perf_counter()
    real = lemma5_check(zeros_220, 200.0, 0.5)
    synth = lemma5_check(
        ZeroSet(ordinates=np.arange(15.0, 41.0), t_max=200.0,
                source="imported"), 200.0, 0.5)
    dt = time.perf_counter() - t0
    ok = (real.discrepancy_rel < 1e-4 and synth.discrepancy_rel < 1e-4
          and dt < 60.0)
    _line(3, ok, f"rel discrepancy real {real.discrepancy_rel:.2e}, "
                 f"synthetic {synth.discrepancy_rel:.2e}, {dt:.1f}s")


def test_criterion_4_r_decomposition(zeros_220):
    t0 = time.perf_counter()
    dec = lemma6_eval(zeros_220, 100.0, 0.4)
    dt = time.perf_counter() - t0
    term_sum = dec.term_main + dec.term_F_beta - dec.term_k2_integral
    rel = abs(dec.r_total - term_sum) / abs(dec.r_total)
    band = 50.0 * math.log(100.0) ** 3
    remainder = abs(dec.r_total_direct - term_sum)
    ok = rel < 1e-6 and remainder <= band and dt < 300.0
    _line(4, ok, f"regroup rel {rel:.2e}, direct remainder {remainder:.3f} "
                 f"(band {band:.0f}), {dt:.1f}s")


def test_criterion_5_partition_and_bracket_algebra():
    u = np.linspace(-10.0, 10.0, 10_000)
    worst = float(np.max(np.abs(4.0 / (4.0 + u * u)
                                + u * u / (4.0 + u * u) - 1.0)))
    brackets_equal = all(
        theorem_rhs(T, f).rhs_theorem == theorem_rhs(T, f).rhs_goldston
        for T in (100.0, 1000.0) for f in (0.7, 1.0, 1.3))
    ok = worst <= 1e-15 and brackets_equal
    _line(5, ok, f"w-partition worst {worst:.2e}, bracket forms bit-equal "
                 f"{brackets_equal}")


def test_criterion_6_zero_pipeline():
    t0 = time.perf_counter()
    zs = find_zeros(100.0)
    resid = float(np.max(np.abs(riemann_siegel_Z(zs.ordinates))))
    dt = time.perf_counter() - t0
    ok = len(zs) == 29 and zs.claimed_complete and resid < 1e-6 and dt < 10.0
    _line(6, ok, f"count {len(zs)} (expect 29), max |Z(gamma)| "
                 f"{resid:.2e}, {dt:.1f}s")


def test_criterion_7_s_route_agreement(zeros_120, prime_table_small):
    ev = SEvaluator(zeros=zeros_120, prime_table=prime_table_small)
    worst = 0.0
    for t in (30.0, 50.0, 80.0):
        val, _ = s_explicit(t, t, ev)
        worst = max(worst, abs(val - s_exact(t, ev)))
    g1 = float(zeros_120.ordinates[0])
    mid_gap = abs(s_exact(g1, ev)
                  - 0.5 * (s_exact(g1 - 1e-9, ev) + s_exact(g1 + 1e-9, ev)))
    ok = worst < 0.15 and mid_gap < 1e-5
    _line(7, ok, f"worst |explicit - exact| {worst:.3f}, midpoint gap "
                 f"{mid_gap:.1e}")


def test_criterion_8_goldston_window(zeros_1010):
    t0 = time.perf_counter()
    curve = pcf_curve(zeros_1010, 1000.0, 4.0, 0.02)
    vals = {m: tail_integral(curve, 2, 4.0, m)
            for m in ("constant_one", "last_value")}
    dt = time.perf_counter() - t0
    ok = all(2 / 3 - 0.1 < v < 2 + 0.1 for v in vals.values()) and dt < 120.0
    _line(8, ok, "tail integral " + ", ".join(
        f"{m}={v:.4f}" for m, v in vals.items()) + f", {dt:.1f}s")


def test_criterion_9_prime_sum_closed_form(prime_table_1e6):
    diffs = []
    for x in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
        b = prime_sum_terms(x, prime_table_1e6)
        diffs.append(abs((b.s1 - 2 * b.s2) - closed_form_S1_minus_2S2(x)))
    ok = all(a >= b for a, b in zip(diffs, diffs[1:])) and diffs[-1] < 1e-2
    _line(9, ok, "closed-form gaps " + ", ".join(f"{d:.2e}" for d in diffs))


def test_criterion_10_headline_trend():
    t0 = time.perf_counter()
    zeros = find_zeros(5001.0)
    table = build_prime_table(64)
    ratios = []
    rels = []
    for T in (500.0, 1000.0, 5000.0):
        rep = full_report(T, 20.0, zeros, prime_table=table)
        ratios.append(rep.lhs_integral / rep.breakdown.rhs_theorem)
        rels.append(abs(rep.discrepancy_rel))
    dt = time.perf_counter() - t0
    ok = (all(0.5 <= r <= 2.0 for r in ratios)
          and all(a >= b for a, b in zip(rels, rels[1:]))
          and dt < 600.0)
    _line(10, ok, "ratios " + ", ".join(f"{r:.3f}" for r in ratios)
          + "; |rel| " + ", ".join(f"{r:.4f}" for r in rels)
          + f"; {dt:.0f}s")


def test_criterion_11_report_determinism(tmp_path, zeros_220):
    zpath = tmp_path / "z.txt"
    zpath.write_text(export_zeros(zeros_220), encoding="ascii")
    outs = []
    for tag in ("a", "b"):
        rep = tmp_path / f"rep_{tag}.json"
        csv = tmp_path / f"pcf_{tag}.csv"
        rc = cli_main(["report", "--t", "200", "--x", "9",
                       "--zeros", str(zpath), "--out", str(rep),
                       "--pcf-out", str(csv)])
        assert rc == 0
        outs.append((rep.read_bytes(), csv.read_bytes()))
    ok = outs[0] == outs[1]
    _line(11, ok, f"JSON bytes {len(outs[0][0])}, CSV bytes "
                  f"{len(outs[0][1])}, identical across reruns: {ok}")
