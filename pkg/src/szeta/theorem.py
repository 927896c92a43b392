"""Assembly of the headline second-moment comparison and its companions.

The target statement reads

    int_0^T |S|^2 = (T/2pi^2) log log T
        + (T/2pi^2) [ int_1^inf F(alpha,T)/alpha^2 + C0
                      - sum_{m>=2} sum_p (1/m - 1/m^2) p^-m ]
        + error

with the F-tail integral taken either from the empirical pair-correlation
curve or from the piecewise conjectural model of F.  Everything conditional
is evaluated, never asserted: the per-lemma evaluators report discrepancies
next to the printed sizes of the error terms they drop.

The bracket also appears with the opposite-sign double sum (the earlier
form of the result); both are computed and their equality is exact by sign
algebra, which the breakdown asserts bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kernels import (CheckReport, k_values, kpp_values,
                      t_weighted_kernel_integral)
from .paircorr import (PairCorrelationCurve, f_weighted_kernel_integral,
                       lemma6_eval, pcf_curve, tail_integral)
from .primes import (build_prime_table, euler_constant,
                     prime_power_double_sum)
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate
from .s_of_t import SEvaluator, g_and_h_direct, second_moment
from .zeros import ZeroSet

PI = math.pi

# constant of the conjectural F main term: -2 log(2 pi) - 2
EQ2_CONSTANT = -2.0 * math.log(2.0 * PI) - 2.0


@dataclass(frozen=True)
class FModel:
    """Parameters of the piecewise conjectural pair-correlation model.

    The regime boundary 1 - 3 log log T / log T is negative below
    T ~ e^4.54 ~ 93, so the model floor sits at T = 100 (the first-branch
    window is empty before that and the piecewise form degenerates).
    """

    T: float
    epsilon: float = 0.1

    def __post_init__(self):
        if self.T < 100.0:
            raise DomainError("model needs T >= 100")
        if not 0.0 < self.regime_boundary < 1.0:
            raise DomainError("regime boundary outside (0,1)")

    @property
    def regime_boundary(self) -> float:
        logT = math.log(self.T)
        return 1.0 - 3.0 * math.log(logT) / logT


def conjectural_F(alpha, model: FModel):
    """Main terms of the conjectural F: alpha + T^(-2 alpha)(log T + C) up
    to the regime boundary, alpha up to 1, then the constant 1 (the
    uniformity conjecture as a model).  Even in alpha; O-terms dropped."""
    scalar = np.isscalar(alpha)
    a = np.abs(np.asarray(alpha, dtype=float))
    logT = math.log(model.T)
    b = model.regime_boundary
    low = a + model.T ** (-2.0 * a) * (logT + EQ2_CONSTANT)
    out = np.where(a <= b, low, np.where(a <= 1.0, a, 1.0))
    return float(out) if scalar else out


def g_plus_h_closed(T: float, x: float, p_cutoff: int = 10 ** 6,
                    m_cutoff: int = 64) -> float:
    """(T/2pi^2) [ -log log x + log(pi/2) - pi^2/8 + 1 - C0
    + sum (1/m - 1/m^2) p^-m ]."""
    if x < 16:
        raise DomainError("closed form stated for x >= 16")
    ds, _ = prime_power_double_sum(lambda m: 1.0 / m - 1.0 / m ** 2,
                                   p_cutoff, m_cutoff)
    bracket = (-math.log(math.log(x)) + math.log(PI / 2.0) - PI ** 2 / 8.0
               + 1.0 - euler_constant() + ds)
    return T / (2.0 * PI ** 2) * bracket


@dataclass(frozen=True)
class TheoremBreakdown:
    """Right-hand side of the second-moment formula, term by term.

    ``rhs_theorem`` is defined as the exact floating-point sum of the four
    stored terms; ``rhs_goldston`` carries the sign-flipped double sum and
    is bit-identical by construction.
    """

    T: float
    f_tail: float
    loglog_term: float
    f_tail_term: float
    euler_term: float
    prime_sum_term: float
    rhs_theorem: float
    rhs_goldston: float


def theorem_rhs(T: float, f_tail: float, p_cutoff: int = 10 ** 6,
                m_cutoff: int = 64) -> TheoremBreakdown:
    """Evaluate the right-hand side with a given F-tail integral."""
    if T < 100.0:
        raise DomainError("bracket evaluation stated for T >= 100")
    scale = T / (2.0 * PI ** 2)
    ds_pos, _ = prime_power_double_sum(lambda m: 1.0 / m - 1.0 / m ** 2,
                                       p_cutoff, m_cutoff)
    ds_neg, _ = prime_power_double_sum(lambda m: -1.0 / m + 1.0 / m ** 2,
                                       p_cutoff, m_cutoff)
    gamma = euler_constant()
    loglog = scale * math.log(math.log(T))
    f_term = scale * f_tail
    e_term = scale * gamma
    p_term = scale * (-ds_pos)
    rhs = loglog + f_term + e_term + p_term
    rhs_g = loglog + f_term + e_term + scale * ds_neg
    assert rhs == rhs_g, "sign algebra of the two bracket forms broke"
    return TheoremBreakdown(T=T, f_tail=f_tail, loglog_term=loglog,
                            f_tail_term=f_term, euler_term=e_term,
                            prime_sum_term=p_term, rhs_theorem=rhs,
                            rhs_goldston=rhs_g)


# ----------------------------------------------------------------------
# conditional-asymptotic evaluators
# ----------------------------------------------------------------------

def _model_kernel_integral(T: float, beta: float, spec: QuadratureSpec,
                           deriv: bool) -> float:
    """int over R of F_model(alpha) k(alpha/(2 pi beta)) d alpha (or k'').

    [0, 1] by quadrature with breakpoints at the kernel edge alpha = beta
    and at the regime boundary; [1, inf) closed-form with F == 1."""
    model = FModel(T)
    fn = kpp_values if deriv else k_values
    pts = tuple(p for p in sorted({beta, model.regime_boundary}) if p < 1.0)
    sp = spec.with_breakpoints(pts)
    val, _ = integrate(
        lambda a: conjectural_F(a, model) * fn(a / (2.0 * PI * beta)),
        0.0, 1.0, sp)
    tail = 8.0 * PI ** 4 * beta ** 4 if deriv else PI ** 2 * beta ** 2
    return 2.0 * (val + tail)


def _f_tail_values(f_source, curve, alpha_cut, tail_model):
    """(int_1^inf F/a^2, int_1^inf F/a^4) from curve or model."""
    if f_source == "model":
        return 1.0, 1.0 / 3.0
    return (tail_integral(curve, 2, alpha_cut, tail_model),
            tail_integral(curve, 4, alpha_cut, tail_model))


def _require_curve(zeros, T, curve):
    if curve is not None:
        return curve
    return pcf_curve(zeros, T, alpha_max=4.0, step=0.025)


def lemma8_check(T: float, beta: float, zeros: ZeroSet | None = None,
                 spec: QuadratureSpec = DEFAULT_SPEC,
                 f_source: str = "empirical",
                 curve: PairCorrelationCurve | None = None,
                 tail_model: str = "constant_one") -> CheckReport:
    """F-weighted kernel integral vs its conditional closed form."""
    if not 0.0 < beta < 1.0:
        raise DomainError("beta in (0,1) required")
    logT = math.log(T)
    if f_source == "empirical":
        curve = _require_curve(zeros, T, curve)
        lhs = f_weighted_kernel_integral(zeros, T, beta, deriv=False)
    else:
        lhs = _model_kernel_integral(T, beta, spec, deriv=False)
    ft2, _ = _f_tail_values(f_source, curve, 4.0, tail_model)
    rhs = 2.0 * PI ** 2 * beta ** 2 * (
        1.0 - PI ** 2 / 8.0 + math.log(PI / 2.0) + ft2 - math.log(beta)) \
        + 2.0 * (logT + EQ2_CONSTANT) \
        * t_weighted_kernel_integral(T, beta, spec)
    scales = {
        "inv_beta2_log4T": 1.0 / (beta ** 2 * logT ** 4),
        "logT_T_pow": logT * T ** (-(0.5 - 0.1) * beta),
        "beta2_inv_log2T": beta ** 2 / logT ** 2,
    }
    d = lhs - rhs
    return CheckReport(
        name="lemma8", params={"T": T, "beta": beta, "f_source": f_source},
        lhs=lhs, rhs=rhs, discrepancy_abs=abs(d),
        discrepancy_rel=abs(d) / max(abs(lhs), abs(rhs)),
        tolerance=0.0, passed=True, assertable=False, error_scales=scales,
        notes=["conditional asymptotic: discrepancy reported against the "
               "printed error scales, never asserted"])


def lemma9_check(T: float, beta: float, zeros: ZeroSet | None = None,
                 spec: QuadratureSpec = DEFAULT_SPEC,
                 f_source: str = "empirical",
                 curve: PairCorrelationCurve | None = None,
                 tail_model: str = "constant_one") -> CheckReport:
    """Same comparison with the second-derivative kernel."""
    if not 0.0 < beta < 1.0:
        raise DomainError("beta in (0,1) required")
    logT = math.log(T)
    if f_source == "empirical":
        curve = _require_curve(zeros, T, curve)
        lhs = f_weighted_kernel_integral(zeros, T, beta, deriv=True)
    else:
        lhs = _model_kernel_integral(T, beta, spec, deriv=True)
    _, ft4 = _f_tail_values(f_source, curve, 4.0, tail_model)
    rhs = 4.0 * PI ** 6 * beta ** 2 - 24.0 * PI ** 4 * beta ** 4 \
        + 48.0 * PI ** 4 * beta ** 4 * ft4 \
        + 32.0 * PI ** 2 * beta ** 2 * logT ** 2 * (logT + EQ2_CONSTANT) \
        * t_weighted_kernel_integral(T, beta, spec)
    scales = {
        "inv_log2T": 1.0 / logT ** 2,
        "logT_T_pow": logT * T ** (-(0.5 - 0.1) * beta),
    }
    d = lhs - rhs
    return CheckReport(
        name="lemma9", params={"T": T, "beta": beta, "f_source": f_source},
        lhs=lhs, rhs=rhs, discrepancy_abs=abs(d),
        discrepancy_rel=abs(d) / max(abs(lhs), abs(rhs)),
        tolerance=0.0, passed=True, assertable=False, error_scales=scales,
        notes=["shares the T^(-2 alpha) kernel integral implementation "
               "with the parts-integration check"])


def lemma10_check(T: float, beta: float, zeros: ZeroSet,
                  spec: QuadratureSpec = DEFAULT_SPEC,
                  f_source: str = "empirical",
                  curve: PairCorrelationCurve | None = None,
                  tail_model: str = "constant_one") -> CheckReport:
    """R (pair-sum route) vs its combined conditional closed form."""
    if not 0.0 < beta < 1.0:
        raise DomainError("beta in (0,1) required")
    logT = math.log(T)
    dec = lemma6_eval(zeros, T, beta, spec, direct_limit=0.0)
    lhs = dec.r_total
    if f_source == "empirical":
        curve = _require_curve(zeros, T, curve)
    ft2, ft4 = _f_tail_values(f_source, curve, 4.0, tail_model)
    rhs = T / (2.0 * PI ** 2) * (
        1.0 - PI ** 2 / 8.0 + math.log(PI / 2.0) + ft2 - math.log(beta)) \
        + 3.0 * T / (8.0 * PI ** 2 * logT ** 2) \
        - 3.0 * T / (4.0 * PI ** 2 * logT ** 2) * ft4
    scales = {
        "T_inv_log2T": T / logT ** 2,
        "T_inv_beta4_log4T": T / (beta ** 4 * logT ** 4),
    }
    d = lhs - rhs
    return CheckReport(
        name="lemma10", params={"T": T, "beta": beta, "f_source": f_source},
        lhs=lhs, rhs=rhs, discrepancy_abs=abs(d),
        discrepancy_rel=abs(d) / max(abs(lhs), abs(rhs)),
        tolerance=0.0, passed=True, assertable=False, error_scales=scales,
        notes=["the source display shows the F-tail integral from 0; it is "
               "evaluated from 1 here (the 0 end diverges as printed and "
               "the final statement uses the from-1 form)"])


def lemma_8_9_10_eval(zeros: ZeroSet | None, T: float, beta: float,
                      spec: QuadratureSpec = DEFAULT_SPEC,
                      f_source: str = "empirical",
                      tail_model: str = "constant_one") -> dict:
    """All three conditional evaluators over one shared curve."""
    curve = None
    if f_source == "empirical":
        curve = _require_curve(zeros, T, curve)
    out = {
        "lemma8": lemma8_check(T, beta, zeros, spec, f_source, curve,
                               tail_model),
        "lemma9": lemma9_check(T, beta, zeros, spec, f_source, curve,
                               tail_model),
    }
    if zeros is not None:
        out["lemma10"] = lemma10_check(T, beta, zeros, spec, f_source,
                                       curve, tail_model)
    return out


# ----------------------------------------------------------------------
# the full report
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MomentReport:
    """Side-by-side decomposition of the measured and predicted moments."""

    T: float
    x: float
    beta: float
    lhs_integral: float
    breakdown: TheoremBreakdown
    f_tail_source: str
    discrepancy_abs: float
    discrepancy_rel: float
    notes: tuple = ()
    curve: PairCorrelationCurve | None = None


def full_report(T: float, x: float, zeros: ZeroSet,
                spec: QuadratureSpec = DEFAULT_SPEC,
                alpha_max: float = 4.0, alpha_step: float = 0.025,
                f_tail_source: str = "empirical",
                tail_model: str = "constant_one",
                prime_table=None, section3: bool = True) -> MomentReport:
    """Measure int_0^T S^2 and compare against the assembled right side.

    Also evaluates the squared-formula intermediate identity
    ``int_1^T S^2 + G + H = R + O(sqrt(T x))`` when ``section3`` is on,
    reporting the residual against its sqrt(T x) scale in the notes.
    Deterministic: identical inputs give identical reports.
    """
    if x < 4.0:
        raise DomainError("x >= 4 required")
    beta = math.log(x) / math.log(T)
    if beta >= 0.5:
        raise DomainError("regime requires x = T^beta with beta < 1/2")
    if f_tail_source not in ("empirical", "model"):
        raise DomainError("f_tail_source must be empirical|model")
    if zeros.t_max < T:
        raise DomainError("zero coverage below T")

    if prime_table is None:
        prime_table = build_prime_table(max(64, int(x) + 1))
    ev = SEvaluator(zeros=zeros, prime_table=prime_table)
    lhs = second_moment(T, ev, spec)

    curve = pcf_curve(zeros, T, alpha_max, alpha_step)
    if f_tail_source == "empirical":
        f_tail = tail_integral(curve, 2, alpha_max, tail_model)
    else:
        f_tail = 1.0
    bd = theorem_rhs(T, f_tail)
    d = lhs - bd.rhs_theorem
    notes = [
        f"f-tail integral {f_tail:.12g} from source={f_tail_source} "
        f"tail_model={tail_model} alpha_max={alpha_max:.12g}",
        "F(alpha)=1 beyond the curve is the uniformity conjecture used as "
        "a labeled model, not an assumption being verified",
    ]
    if section3:
        sm_1 = second_moment(T, ev, spec, t_lo=1.0)
        gh = g_and_h_direct(T, x, ev, spec)
        dec = lemma6_eval(zeros, T, beta, spec, direct_limit=0.0)
        resid = sm_1 + gh.g + gh.h - dec.r_total
        scale = math.sqrt(T * x)
        notes.append(
            f"squared-formula identity: int_1^T S^2 + G + H = {sm_1 + gh.g + gh.h:.12g}, "
            f"R = {dec.r_total:.12g}, residual = {resid:.12g}, "
            f"sqrt(T x) scale = {scale:.12g}")
    return MomentReport(T=T, x=x, beta=beta, lhs_integral=lhs, breakdown=bd,
                        f_tail_source=f_tail_source, discrepancy_abs=d,
                        discrepancy_rel=d / bd.rhs_theorem,
                        notes=tuple(notes), curve=curve)
