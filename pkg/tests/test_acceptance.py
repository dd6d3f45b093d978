"""Acceptance criteria 1-15, one test each.

Every test prints (and collects for the session summary) a line
``CRITERION n: PASS|FAIL <measured values>``. Criteria 8-11 read the checks
of an in-process ``verify`` run at seed 7; the others are recomputed here
with their own random draws.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

import conftest
from conftest import checks_named
from iwcelab.bounds import cor21_exponential_limit
from iwcelab.closed_forms import (
    closed_form_icre_exp, closed_form_iwce_gev, closed_form_iwcre_exp_expweight,
    closed_form_iwcre_exp_poly,
)
from iwcelab.distributions import GEV, Exponential, Uniform
from iwcelab.entropy import (
    TruncationInterval, delta, delta_bar, delta_bar_psi_form, delta_psi_form, icpe, iwce,
    iwce_equivalent_form, iwce_weight_derivative_form, iwcre, iwcre_equivalent_form,
    vartheta_decomposition, wcre,
)
from iwcelab.numerics import QuadratureConfig, lower_incomplete_gamma, quad
from iwcelab.oracle import ecdf_plugin_entropy
from iwcelab.scan import first_differences, t1_sweep
from iwcelab.weights import ConstantOne, ExponentialWeight, GEVPolynomialWeight, PolynomialWeight

TIGHT = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-13, max_subdivisions=5000)


def record(n, ok, detail):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def make(d, t1, t2, conv="ratio"):
    return TruncationInterval.make(d, t1, t2, conv)


def random_case(rng):
    fam = int(rng.integers(0, 3))
    if fam == 0:
        d = Exponential(float(rng.uniform(0.3, 3.0)))
    elif fam == 1:
        lo = float(rng.uniform(0.0, 1.0))
        d = Uniform(lo, lo + float(rng.uniform(0.5, 3.0)))
    else:
        xi = float(rng.uniform(0.3, 1.0))
        sigma = float(rng.uniform(0.5, 2.0))
        d = GEV(sigma / xi + float(rng.uniform(0.0, 1.0)), sigma, xi)
    p1 = float(rng.uniform(0.01, 0.6))
    p2 = p1 + float(rng.uniform(0.1, 0.38))
    kind = int(rng.integers(0, 3))
    if kind == 0:
        wf = ConstantOne()
    elif kind == 1:
        wf = ExponentialWeight(float(rng.uniform(-0.5, 0.5)))
    else:
        wf = PolynomialWeight([float(c) for c in rng.uniform(0.0, 2.0, 3)])
    return d, wf, make(d, float(d.quantile(p1)), float(d.quantile(p2)))


def test_criterion_01_special_functions():
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(50):
        b, z = float(rng.uniform(0.1, 6.0)), float(rng.uniform(0.0, 10.0))
        # t = s^(1/b) turns t^(b-1) e^-t dt into e^(-s^(1/b)) ds / b
        ref = quad(lambda s, b=b: np.exp(-np.power(s, 1.0 / b)), 0.0, z ** b, TIGHT).value / b
        worst = max(worst, abs(lower_incomplete_gamma(b, z) - ref))
    worst_b1 = max(abs(lower_incomplete_gamma(1.0, z) - (-math.expm1(-z)))
                   for z in rng.uniform(0.0, 20.0, 50))
    ok = worst <= 1e-10 and worst_b1 <= 1e-12
    assert record(1, ok, f"max|gamma - quad| = {worst:.2e} (tol 1e-10), "
                         f"max|gamma(1,z) - (1-e^-z)| = {worst_b1:.2e} (tol 1e-12)")


def test_criterion_02_closed_forms():
    rng = np.random.default_rng(102)
    w = [0.0, 0.0, 0.0, 0.0]
    for _ in range(100):
        lam = float(rng.uniform(0.2, 5.0))
        t1 = float(rng.uniform(0.0, 3.0 / lam))
        t2 = t1 + float(rng.uniform(0.05, 4.0 / lam))
        d = Exponential(lam)
        q = iwcre(d, ConstantOne(), make(d, t1, t2)).value
        w[0] = max(w[0], rel(closed_form_icre_exp(lam, t1, t2), q))
    for _ in range(100):
        lam = float(rng.uniform(0.2, 5.0))
        alpha = lam - float(rng.uniform(0.1, 2.0))
        t1 = float(rng.uniform(0.0, 3.0 / lam))
        t2 = t1 + float(rng.uniform(0.05, 4.0 / lam))
        d = Exponential(lam)
        q = iwcre(d, ExponentialWeight(alpha), make(d, t1, t2)).value
        w[1] = max(w[1], rel(closed_form_iwcre_exp_expweight(lam, alpha, t1, t2), q))
    for _ in range(50):
        scale = float(rng.uniform(0.3, 3.0))
        coeffs = [float(c) for c in rng.uniform(0.0, 2.0, int(rng.integers(1, 5)))]
        t1 = float(rng.uniform(0.0, 2.0 * scale))
        t2 = t1 + float(rng.uniform(0.05, 3.0 * scale))
        d = Exponential.from_scale(scale)
        q = iwcre(d, PolynomialWeight(coeffs), make(d, t1, t2)).value
        w[2] = max(w[2], rel(closed_form_iwcre_exp_poly(scale, coeffs, t1, t2), q))
    for _ in range(25):
        xi = float(rng.uniform(0.3, 1.0))
        sigma = float(rng.uniform(0.5, 2.0))
        g = GEV(sigma / xi + float(rng.uniform(0.0, 1.0)), sigma, xi)
        coeffs = [float(c) for c in rng.uniform(0.0, 1.5, int(rng.integers(1, 4)))]
        p1 = float(rng.uniform(0.02, 0.6))
        t1, t2 = float(g.quantile(p1)), float(g.quantile(p1 + float(rng.uniform(0.1, 0.35))))
        q = iwce(g, GEVPolynomialWeight(coeffs, g), make(g, t1, t2)).value
        w[3] = max(w[3], rel(closed_form_iwce_gev(g, coeffs, t1, t2), q))
    ok = w[0] <= 1e-8 and w[1] <= 1e-8 and w[2] <= 1e-8 and w[3] <= 1e-6
    assert record(2, ok, f"icre {w[0]:.1e}, exp-weight {w[1]:.1e}, poly {w[2]:.1e} "
                         f"(tol 1e-8); gev {w[3]:.1e} (tol 1e-6)")


def test_criterion_03_errata():
    d2 = Exponential.from_scale(2.0)
    q = iwcre(d2, PolynomialWeight(1.0, 1.0), make(d2, 0.5, 3.0)).value
    poly_gap = abs(closed_form_iwcre_exp_poly(2.0, [1.0, 1.0], 0.5, 3.0, as_printed=True) - q)
    d1 = Exponential(1.0)
    q = iwcre(d1, ExponentialWeight(0.5), make(d1, 0.5, 1.5)).value
    exp_gap = abs(closed_form_iwcre_exp_expweight(1.0, 0.5, 0.5, 1.5, as_printed=True) - q)
    same = abs(closed_form_iwcre_exp_poly(1.0, [1.0, 2.0, 0.5], 0.3, 2.2, as_printed=True)
               - closed_form_iwcre_exp_poly(1.0, [1.0, 2.0, 0.5], 0.3, 2.2))
    ok = poly_gap > 1e-3 and exp_gap > 1e-3 and same <= 1e-10
    assert record(3, ok, f"printed poly @scale 2 off by {poly_gap:.3e}, printed exp-weight "
                         f"off by {exp_gap:.3e} (need > 1e-3); scale 1 printed vs corrected "
                         f"{same:.1e} (tol 1e-10)")


def test_criterion_04_lemma_identities():
    rng = np.random.default_rng(104)
    worst = 0.0
    families = set()
    for _ in range(100):
        d, wf, iv = random_case(rng)
        families.add(type(d).__name__)
        worst = max(worst,
                    rel(iwcre_equivalent_form(d, wf, iv).value, iwcre(d, wf, iv).value),
                    rel(iwce_equivalent_form(d, wf, iv).value, iwce(d, wf, iv).value),
                    rel(delta_psi_form(d, wf, iv), delta(d, wf, iv)),
                    rel(delta_bar_psi_form(d, wf, iv), delta_bar(d, wf, iv)))
    ok = worst <= 1e-8 and len(families) == 3
    assert record(4, ok, f"max deviation {worst:.2e} over 100 cases "
                         f"({', '.join(sorted(families))}) (tol 1e-8)")


def test_criterion_05_weight_derivative_representation():
    cases = [(Exponential(1.0), ExponentialWeight(0.3), 0.5, 1.5),
             (Exponential(1.0), PolynomialWeight(1.0, 1.0), 0.5, 1.5),
             (Uniform(0.0, 1.0), ExponentialWeight(0.3), 0.2, 0.7)]
    w_lower = w_upper = w_sign = 0.0
    min_mismatch = math.inf
    gap = 0.0
    for d, wf, t1, t2 in cases:
        iv = make(d, t1, t2)
        ref = iwce(d, wf, iv).value
        lower = iwce_weight_derivative_form(d, wf, iv, variant="lower").value
        upper = iwce_weight_derivative_form(d, wf, iv, variant="upper").value
        printed = iwce_weight_derivative_form(d, wf, iv, variant="upper", as_printed=True).value
        w_lower = max(w_lower, abs(lower - ref))
        w_upper = max(w_upper, abs(upper - ref))
        # the printed upper form is the corrected one with both signs flipped
        w_sign = max(w_sign, abs(printed + upper))
        min_mismatch = min(min_mismatch, abs(printed - ref))
        gap = max(gap, abs(printed + upper - 2.0 * float(wf.phi(t2)) * icpe(d, iv).value))
    ok = w_lower <= 1e-8 and w_upper <= 1e-8 and w_sign <= 1e-8 and min_mismatch > 1e-8
    assert record(5, ok, f"lower {w_lower:.1e}, corrected upper {w_upper:.1e} (tol 1e-8); "
                         f"printed = -corrected to {w_sign:.1e}, printed vs iwce >= "
                         f"{min_mismatch:.3e}; |printed + corrected - 2 phi(t2) E| = {gap:.3e}")


def test_criterion_06_vartheta():
    rng = np.random.default_rng(106)
    worst = 0.0
    for _ in range(50):
        d, wf, iv = random_case(rng)
        ref = iwce(d, wf, iv).value
        s = vartheta_decomposition(d, wf, iv)
        worst = max(worst, abs(sum(s.upper) - ref), abs(sum(s.lower) - ref))
    assert record(6, worst <= 1e-7, f"max |split sum - iwce| = {worst:.2e} over 50 cases "
                                    f"(tol 1e-7)")


@pytest.mark.xfail(strict=True, reason="the window (eps, Q(1-eps)) omits an upper tail of "
                                       "order eps(1 + log(1/eps)) ~ 1e-3 at eps = 1e-4")
def test_criterion_07_limit_recovery():
    d = Exponential(1.0)
    eps = 1e-4
    iv = make(d, eps, float(d.quantile(1.0 - eps)))
    gaps = {}
    for name, wf in (("const", ConstantOne()), ("exp:0.3", ExponentialWeight(0.3))):
        gaps[name] = abs(iwcre(d, wf, iv).value - wcre(d, wf).value)
    ok = all(g <= 1e-4 for g in gaps.values())
    record(7, ok, "  ".join(f"{k}: |iwcre - wcre| = {v:.3e}" for k, v in gaps.items())
           + " (tol 1e-4 at eps 1e-4)")
    assert ok


def _all_pass(result, name):
    items = checks_named(result, name)
    return items, bool(items) and all(c["passed"] for c in items)


def test_criterion_08_margin_bound(verify_seed7):
    items, ok = _all_pass(verify_seed7, "T2_2_margin")
    worst = min(c["value"] for c in items)
    anchors = [c for c in verify_seed7["checks"] if c["name"] in ("T2_2_anchor_lhs",
                                                                   "T2_2_anchor_rhs")]
    ok = ok and len(items) == 240 and all(c["passed"] for c in anchors) and len(anchors) == 2
    vals = {c["name"]: c["value"] for c in anchors}
    assert record(8, ok, f"{len(items)} grid nodes, min margin {worst:.3e} (need >= -1e-10); "
                         f"anchor lhs {vals['T2_2_anchor_lhs']:.6f} rhs "
                         f"{vals['T2_2_anchor_rhs']:.6f}")


def test_criterion_09_derivative_residual(verify_seed7):
    items, ok = _all_pass(verify_seed7, "T2_4_derivative_residual")
    worst = max(c["value"] for c in items)
    ok = ok and len(items) == 120
    assert record(9, ok, f"{len(items)} ratio-convention nodes, max residual {worst:.2e} "
                         f"(tol 1e-4)")


def test_criterion_10_expectation_routes(verify_seed7):
    items, ok = _all_pass(verify_seed7, "T2_5_routes_mc_vs_double_quadrature")
    worst = max(c["value"] / c["tolerance"] for c in items if c["tolerance"] > 0)
    anchor = checks_named(verify_seed7, "T2_5_anchor_monte_carlo")
    neg = checks_named(verify_seed7, "T2_5_paper_integral_negative_on_lower_half")
    ok = ok and len(items) == 120 and all(c["passed"] for c in anchor + neg)
    assert record(10, ok, f"{len(items)} nodes agree within 3 sigma (worst at "
                          f"{worst:.2f} of the band); 1/6 anchor off by {anchor[0]['value']:.2e}"
                          f" (3 sigma {anchor[0]['tolerance']:.2e}); printed integral on "
                          f"(0, 0.5) = {neg[0]['value']:.4f}")


def test_criterion_11_halved_tolerances(verify_seed7):
    names = ("T2_1_halved_tolerance", "T2_1_IWCRE_halved_tolerance", "T2_3_halved_tolerance",
             "T2_3_IWCRE_halved_tolerance", "T2_5_halved_tolerance", "P2_1_halved_tolerance")
    ok = True
    worst = 0.0
    count = 0
    for n in names:
        items, passed = _all_pass(verify_seed7, n)
        ok = ok and passed
        count += len(items)
        worst = max([worst] + [c["value"] for c in items])
    lower, passed = _all_pass(verify_seed7, "T2_3_margin_at_support_lower")
    ok = ok and passed and len(lower) == 2 * 3 * 5 * 2
    assert record(11, ok, f"{count} reports recomputed at halved tolerance, max shift "
                          f"{worst:.2e} (tol 1e-6); T2_3 margin >= 0 at all {len(lower)} "
                          f"support-edge nodes (min {min(c['value'] for c in lower):.3e})")


def test_criterion_12_corollary_limit():
    rng = np.random.default_rng(112)
    worst_margin = math.inf
    worst_arith = 0.0
    for _ in range(50):
        eps = [float(v) for v in rng.uniform(0.0, 2.0, int(rng.integers(1, 6)))]
        rep = cor21_exponential_limit(eps)
        worst_margin = min(worst_margin, rep.margin)
        lhs = sum(e * math.factorial(i) * (1 - 2.0 ** (-i - 1)) for i, e in enumerate(eps))
        rhs = sum(e * math.factorial(i + 1) for i, e in enumerate(eps))
        worst_arith = max(worst_arith, abs(rep.lhs - lhs), abs(rep.rhs - rhs))
    n0 = cor21_exponential_limit([1.0])
    ok = worst_margin >= 0 and worst_arith <= 1e-10 and n0.lhs == 0.5 and n0.rhs == 1.0
    assert record(12, ok, f"min margin {worst_margin:.3f} over 50 vectors, Gamma arithmetic "
                          f"{worst_arith:.1e} (tol 1e-10); n=0: lhs {n0.lhs}, rhs {n0.rhs}")


def test_criterion_13_example_behaviour(verify_seed7):
    worst = -math.inf
    for t2 in (1.0, 2.0, 5.0):
        vals = [closed_form_icre_exp(1.0, t1, t2) for t1 in t1_sweep(t2, 50)]
        worst = max(worst, float(first_differences(vals).max()))
    w = verify_seed7["witness"]
    golden = __import__("json").loads(
        (__import__("pathlib").Path(__file__).parent / "golden" / "verify_seed7.json")
        .read_text())["witness"]
    ok = worst <= 0 and w is not None and w["first_difference"] > 0 and golden == w
    assert record(13, ok, f"icre max first difference {worst:.3e} (need <= 0); witness "
                          f"rate={w['rate']} alpha={w['alpha']} t2={w['t2']} "
                          f"t1*={w['t1_star']:.5f} first difference "
                          f"{w['first_difference']:.4f}, stored in golden report")


def test_criterion_14_plugin_oracle():
    d = Exponential(1.0)
    parts = []
    ok = True
    for conv in ("ratio", "proper"):
        iv = make(d, 0.5, 1.5, conv)
        for k, (measure, fn) in enumerate((("iwce", iwce), ("iwcre", iwcre))):
            ref = fn(d, ConstantOne(), iv).value
            est = ecdf_plugin_entropy(d, ConstantOne(), iv, measure, 100_000, seed=140 + k)
            z = abs(est.mean - ref) / est.std_error
            ok = ok and est.within(ref)
            parts.append(f"{measure}/{conv} {z:.2f} sigma")
    assert record(14, ok, ", ".join(parts) + " (need <= 3)")


def test_criterion_15_determinism(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.json"
        res = subprocess.run([sys.executable, "-m", "iwcelab", "verify", "--seed", "7",
                              "--output", "report.json"], cwd=tmp_path, capture_output=True)
        assert res.returncode == 0, res.stderr.decode()[-2000:]
        (tmp_path / "report.json").rename(path)
        outs.append(path.read_bytes())
    ok = outs[0] == outs[1]
    assert record(15, ok, f"two runs of verify --seed 7: {len(outs[0])} bytes each, "
                          f"{'identical' if ok else 'different'}")
