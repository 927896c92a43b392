import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import theta_binet_oracle, zeta_em_oracle
from szeta.errors import DomainError, ZerosParseError
from szeta.zeros import (RS_MIN_T, ZeroSet, export_zeros, find_zeros,
                         import_zeros, riemann_siegel_Z, theta, theta_exact)

PI = math.pi


def test_theta_monotone_and_domain():
    assert theta(100.0) > theta(50.0)
    with pytest.raises(DomainError):
        theta(9.99)
    with pytest.raises(DomainError):
        theta(2 * PI)    # stationary region sits below the domain floor


def test_theta_against_loggamma_quadrature():
    for t in (14.0, 100.0):
        assert theta(t) == pytest.approx(theta_binet_oracle(t), abs=1e-10)


def test_theta_exact_matches_series_overlap():
    t = np.array([10.0, 25.0, 300.0])
    assert np.max(np.abs(theta_exact(t) - theta(t))) < 1e-9


def test_z_sign_change_brackets_first_zero():
    assert riemann_siegel_Z(14.0) * riemann_siegel_Z(14.2) < 0
    # bisection oracle
    lo, hi = 14.0, 14.2
    flo = riemann_siegel_Z(lo)
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        fm = riemann_siegel_Z(mid)
        if flo * fm <= 0:
            hi = mid
        else:
            lo, flo = mid, fm
    gamma1 = 0.5 * (lo + hi)
    assert gamma1 == pytest.approx(14.134725, abs=1e-6)


def test_z_squared_matches_zeta_oracle():
    # dual route: the Riemann-Siegel branch vs an independent
    # Euler-Maclaurin |zeta|^2; t chosen above the dispatch threshold and
    # away from a main-sum transition so "auto" really exercises the
    # Riemann-Siegel formula
    t = 1200.0
    assert t > RS_MIN_T
    p = math.sqrt(t / (2 * PI)) % 1.0
    assert 0.02 < p < 0.98
    oracle = abs(zeta_em_oracle(t)) ** 2
    assert riemann_siegel_Z(t, "rs") ** 2 == pytest.approx(oracle, abs=1e-6)
    assert riemann_siegel_Z(t) ** 2 == pytest.approx(oracle, abs=1e-6)


def test_z_branches_agree_on_overlap():
    # the dispatcher hands near-transition points (sqrt(t/2pi) close to an
    # integer) to the Euler-Maclaurin branch, so compare the dispatched
    # result against pure Euler-Maclaurin: this certifies the documented
    # sub-1e-6 accuracy of what callers actually get
    ts = np.linspace(500.0, 1500.0, 700)
    d = np.abs(riemann_siegel_Z(ts, "auto") - riemann_siegel_Z(ts, "em"))
    assert np.max(d) < 1e-6
    # and the pure Riemann-Siegel branch itself is good away from
    # transitions
    rt = np.sqrt(ts / (2 * PI))
    p = rt - rt.astype(int)
    away = (p > 0.02) & (p < 0.98)
    d_rs = np.abs(riemann_siegel_Z(ts[away], "rs")
                  - riemann_siegel_Z(ts[away], "em"))
    assert np.max(d_rs) < 1e-6


def test_z_is_real_valued():
    vals = riemann_siegel_Z(np.linspace(20.0, 80.0, 50))
    assert vals.dtype == np.float64


def test_z_domain():
    with pytest.raises(DomainError):
        riemann_siegel_Z(5.0)
    with pytest.raises(DomainError):
        riemann_siegel_Z(50.0, "bogus")


def test_find_zeros_first_zero_only():
    zs = find_zeros(20.0)
    assert len(zs) == 1
    assert zs.ordinates[0] == pytest.approx(14.134725, abs=1e-6)
    assert zs.claimed_complete


def test_find_zeros_count_at_100():
    zs = find_zeros(100.0)
    # count cross-check via theta(100)/pi + 1 rounding (no external table)
    smooth = theta(100.0) / PI + 1.0
    assert len(zs) == round(smooth) == 29
    assert np.max(np.abs(riemann_siegel_Z(zs.ordinates))) < 1e-6


def test_find_zeros_idempotent():
    a = find_zeros(60.0)
    b = find_zeros(60.0)
    assert np.array_equal(a.ordinates, b.ordinates)


def test_find_zeros_domain():
    with pytest.raises(DomainError):
        find_zeros(5.0)
    with pytest.raises(DomainError):
        find_zeros(40.0, step=0.5)


def test_against_reference_table(zeros_120):
    # reference file as an external table would supply it (6 decimals,
    # frozen from the bisection oracle at first run)
    ref = "\n".join(["# reference ordinates", "14.134725", "21.022040",
                     "25.010858", "30.424876", "32.935062", "37.586178",
                     "40.918719", "43.327073", "48.005151", "49.773832"])
    imported = import_zeros(ref)
    ours = zeros_120.ordinates[:10]
    assert np.max(np.abs(ours - imported.ordinates)) < 1e-5


def test_import_basic_and_t_max():
    zs = import_zeros("14.134725\n21.022040\n25.010858\n")
    assert len(zs) == 3
    assert zs.t_max == 25.010858
    assert zs.source == "imported"
    assert zs.claimed_complete


def test_import_errors_name_lines():
    with pytest.raises(ZerosParseError) as info:
        import_zeros("14.1\n13.9\n")
    assert info.value.line_number == 2
    with pytest.raises(ZerosParseError):
        import_zeros("")
    with pytest.raises(ZerosParseError) as info2:
        import_zeros("14.1\nbogus\n")
    assert info2.value.line_number == 2


def test_export_import_roundtrip(zeros_120):
    again = import_zeros(export_zeros(zeros_120))
    assert np.array_equal(again.ordinates, zeros_120.ordinates)
    # export is byte-stable
    assert export_zeros(zeros_120) == export_zeros(again)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(min_value=1.01, max_value=1e4,
                          allow_nan=False), min_size=1, max_size=40))
def test_roundtrip_random_sets(vals):
    vals = sorted(set(round(v, 6) for v in vals))
    arr = np.array(vals)
    if len(arr) > 1 and (np.any(np.diff(arr) <= 0)
                         or np.any(np.diff(arr) >= 10)):
        return
    zs = ZeroSet(ordinates=arr, t_max=float(arr[-1]), source="imported")
    again = import_zeros(export_zeros(zs))
    assert np.array_equal(again.ordinates, zs.ordinates)


def test_zeroset_invariants():
    with pytest.raises(DomainError):
        ZeroSet(ordinates=np.array([14.0, 13.0]), t_max=20.0)
    with pytest.raises(DomainError):
        ZeroSet(ordinates=np.array([14.0, 25.0]), t_max=30.0)  # gap >= 10
    with pytest.raises(DomainError):
        ZeroSet(ordinates=np.array([0.5]), t_max=20.0)
    with pytest.raises(DomainError):
        ZeroSet(ordinates=np.array([14.0]), t_max=12.0)
    with pytest.raises(DomainError):
        ZeroSet(ordinates=np.array([14.0]), t_max=20.0, source="guessed")


def test_count_up_to_half_weight(zeros_120):
    g0 = float(zeros_120.ordinates[0])
    assert zeros_120.count_up_to(g0 - 1e-9) == 0
    assert zeros_120.count_up_to(g0) == 0.5
    assert zeros_120.count_up_to(g0 + 1e-9) == 1


def test_threads_give_same_result():
    a = find_zeros(80.0, threads=1)
    b = find_zeros(80.0, threads=3)
    assert np.array_equal(a.ordinates, b.ordinates)


def test_persistent_deficit_raises_with_gap(monkeypatch):
    from szeta import zeros as zmod
    from szeta.errors import MissedZerosError
    monkeypatch.setattr(zmod, "_median_fluctuation",
                        lambda ordinates, t_max: -1.0)
    with pytest.raises(MissedZerosError) as info:
        zmod.find_zeros(40.0)
    lo, hi = info.value.gap
    assert 14.0 < lo < hi < 40.0
