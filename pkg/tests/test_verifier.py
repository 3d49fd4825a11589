import math

import numpy as np
import pytest

from carleson.functionals import ParameterError
from carleson.geometry import DiskPoint
from carleson.measures import AlphaArea, Atomic, QuadratureConfig, RadialPower, zero_measure
from carleson.verifier import (
    CONSISTENT,
    INCONCLUSIVE,
    INCONSISTENT,
    approach_window,
    classify,
    equivalence_family,
    kernel_sides,
    standard_family,
    trend_slope,
    verify_equivalence_2_2,
    verify_lorentz_representation,
    verify_theorem,
)

FAST = QuadratureConfig(depth=12, base_angular=16, angular_cap=2**12, radial_sub=2)


def test_trend_slope_exact_power():
    ks = np.arange(1, 11)
    assert trend_slope(ks, 2.0 ** (0.5 * ks)) == pytest.approx(0.5, abs=1e-12)
    assert trend_slope(ks, np.zeros(10)) == 0.0
    assert math.isnan(trend_slope(ks, np.r_[np.ones(9), -1.0]))


def test_approach_window():
    assert approach_window(10) == slice(5, 10)
    assert approach_window(3) == slice(0, 3)


@pytest.mark.parametrize("ratios, verdict", [
    (np.ones(10), CONSISTENT),
    (np.zeros(10), CONSISTENT),
    (2.0 ** (0.5 * np.arange(1, 11)), INCONSISTENT),
    # saturating transient: growth early, flat in the approach window
    (np.r_[2.0 ** np.arange(1, 6), np.full(5, 32.0)], CONSISTENT),
    (2.0 ** (0.1 * np.arange(1, 11)), INCONCLUSIVE),
])
def test_classify(ratios, verdict):
    assert classify(np.arange(1, 11), ratios)[0] == verdict


def test_classify_unstable_refinement_is_inconclusive():
    verdict, summary = classify(np.arange(1, 11), np.ones(10), 1.5 * np.ones(10))
    assert verdict == INCONCLUSIVE and summary["refinement_change"] == pytest.approx(0.5)


def test_family_classification():
    fam = standard_family()
    assert len(fam) == 7 and len(equivalence_family()) == 6
    carleson = {m.id for m in fam if m.expected("T1", {"alpha": 0.0})}
    assert carleson == {"single_atom", "double_atom", "chasing_atoms", "alpha_area_0", "alpha_area_1",
                        "radial_power_1"}
    assert not fam.get("alpha_area_0").expected("T1", {"alpha": 1.0})
    assert fam.get("radial_power_-0.5").expected("T2")
    assert not fam.get("radial_power_-0.5").expected("T4", {"p": 1.2, "alpha": 0.5})
    assert fam.get("radial_power_1").expected("T4", {"p": 1.2, "alpha": 0.5})
    with pytest.raises(KeyError):
        fam.get("missing")


def test_t1_area_consistent():
    rep = verify_theorem("T1", AlphaArea(0.0), {"alpha": 0.0, "q": 2.0}, quad=FAST, M=2**12, N=10)
    assert rep.verdict == CONSISTENT
    assert rep.summary["conditions"]["T1c"]["value"] == pytest.approx(2 - 2**-10, abs=1e-4)
    assert 1 / 32 <= rep.summary["conditions"]["b_over_c"] <= 32
    assert rep.summary["refinement_change"] <= 0.2


def test_t1_non_carleson_control():
    mu = RadialPower(-0.5, 1 - 2.0**-20)
    rep = verify_theorem("T1", mu, {"alpha": 0.0}, quad=FAST, M=2**12, N=12, refine=False)
    assert rep.verdict == INCONSISTENT
    assert rep.summary["conditions"]["T1c_depth_slope"] == pytest.approx(0.5, abs=0.05)


def test_t3_zero_measure():
    rep = verify_theorem("T3", zero_measure(), {"p": 1.5, "q": 3.0}, quad=FAST, M=2**12, N=10)
    assert rep.verdict == CONSISTENT
    assert all(r.lhs == 0 for r in rep.rows)
    assert rep.summary["conditions"]["T3"]["value"] == 0.0


def test_kernel_sides_row():
    row = kernel_sides("T2", Atomic(((DiskPoint(0.5, 0.0), 1.0),)), 0.9, quad=FAST, M=2**12, N=10)
    assert row.lhs > 0 and row.rhs > 0 and row.ratio == pytest.approx(row.lhs / row.rhs)


def test_verify_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        verify_theorem("T2", AlphaArea(0.0), {"t": 1.0, "beta": 1.0})
    with pytest.raises(ValueError):
        verify_theorem("T9", AlphaArea(0.0))


def test_equivalence_zero_measure():
    rep = verify_equivalence_2_2(zero_measure(), 0.5)
    assert rep.verdict == CONSISTENT and rep.summary["ratio"] == 1.0


def test_equivalence_atom():
    rep = verify_equivalence_2_2(Atomic(((DiskPoint(0.5, 0.0), 1.0),)), 0.5, 2.0)
    assert rep.verdict == CONSISTENT
    assert 1e-2 <= rep.summary["ratio"] <= 1e2


def test_equivalence_truncates_divergent_density():
    rep = verify_equivalence_2_2(AlphaArea(0.0), 0.5, N=10, M=2**12, quad=FAST)
    assert any("truncated" in n for n in rep.notes)
    assert rep.verdict == CONSISTENT


def test_equivalence_large_s_is_one_sided():
    rep = verify_equivalence_2_2(Atomic(((DiskPoint(0.9, 0.0), 1.0),)), 1.5)
    assert any("one-sided" in n for n in rep.notes)
    assert rep.summary["A_over_B"] <= 1e2


def test_lorentz_constant_trace():
    rep = verify_lorentz_representation([0.0], 0.5)
    assert rep.rows[0].ratio == pytest.approx(1.0, abs=1e-6)


def test_lorentz_sweeps():
    ws = [1 - 2.0**-k for k in range(1, 11)]
    bounded = verify_lorentz_representation(ws, 0.5, 2.0, 1.0, 2**14)
    diverging = verify_lorentz_representation(ws, 1.0, 2.0, 1.0, 2**14)
    assert bounded.verdict == CONSISTENT and bounded.summary["trend_slope"] <= 0.05
    assert diverging.verdict == INCONSISTENT and diverging.summary["trend_slope"] > 0.2


def test_lorentz_rejects_r_at_least_q():
    with pytest.raises(ValueError, match="r < q"):
        verify_lorentz_representation([0.5], 0.5, 2.0, 2.0)


def test_report_serializes():
    rep = verify_lorentz_representation([0.0, 0.5], 0.5)
    d = rep.to_dict()
    assert d["theorem"] == "2.3" and len(d["rows"]) == 2


@pytest.mark.parametrize("member", ["single_atom", "alpha_area_0", "radial_power_1"])
def test_resolution_never_flips_to_inconsistent(member):
    mu = standard_family().get(member).measure
    coarse = verify_theorem("T2", mu, quad=FAST, M=2**12, N=10, refine=False)
    fine = verify_theorem("T2", mu, refine=False)
    assert coarse.verdict == CONSISTENT
    assert fine.verdict != INCONSISTENT


def test_converse_note():
    rep = verify_theorem("T3", zero_measure(), quad=FAST, M=2**12, N=10, refine=False)
    assert any("test-function family" in n for n in rep.notes)
