import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from obtuse.analysis import (GoodNodeModel, ball_volume, compare_model, gamma_ratio,
                             good_fraction_asymptotic, good_fraction_exact, tree_estimate)
from obtuse.core import LatticeBasis, gram
from obtuse.enumeration import EnumConfig, EnumStats, Levels, enumerate_svp
from obtuse.generate import gen
from obtuse.lll import lll_reduce

# Values computed with mpmath at 40 digits.
FROZEN_EXACT = {
    (50, 10.0): 0.28350870334436269,
    (20, 1.0): 1.8065562537349504,
    (100, 1.0): 3.999408671744203,
    (150, 1.0): 4.8941752237265377,
    (200, 3.0): 1.8829841951398048,
}


def rel(a, b):
    return abs(a - b) / abs(b)


def test_ball_volume_examples():
    assert ball_volume(0, 1.0) == 1.0
    assert ball_volume(0, 7.0) == 1.0
    assert ball_volume(2, 1.0) == pytest.approx(math.pi, rel=1e-14)
    assert ball_volume(3, 2.0) == pytest.approx(33.510321638291128, rel=1e-14)
    assert ball_volume(20, 1.5) == pytest.approx(85.814539277078849, rel=1e-12)


def test_good_fraction_examples():
    assert good_fraction_exact(1, 1.0) == pytest.approx(0.5, rel=1e-14)
    assert good_fraction_exact(2, 1.0) == pytest.approx(2 / math.pi, rel=1e-14)
    assert rel(good_fraction_exact(50, 10.0), math.sqrt(49 / 2) / (math.sqrt(math.pi) * 10)) < 0.02
    assert good_fraction_asymptotic(1, 1.0) == 0.0
    assert good_fraction_asymptotic(3, 1.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-14)
    assert good_fraction_asymptotic(51, 5.0) == pytest.approx(0.5641895835477563, rel=1e-14)


@pytest.mark.parametrize("key", sorted(FROZEN_EXACT))
def test_good_fraction_frozen(key):
    assert good_fraction_exact(*key) == pytest.approx(FROZEN_EXACT[key], rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 300), st.floats(0.05, 50.0))
def test_gamma_ratio_against_mpmath(d, R):
    mpmath.mp.dps = 30
    expect = mpmath.gamma(mpmath.mpf(d) / 2 + 1) / mpmath.gamma(mpmath.mpf(d - 1) / 2 + 1)
    assert gamma_ratio(d) == pytest.approx(float(expect), rel=1e-11)
    assert good_fraction_exact(d, R) == pytest.approx(float(expect / (mpmath.sqrt(mpmath.pi) * R)),
                                                      rel=1e-11)


def test_volume_identity_to_1e9():
    for d in range(1, 201):
        for R in (0.3, 1.0, 4.0):
            lhs = ball_volume(d, R) / ball_volume(d - 1, R) * gamma_ratio(d)
            assert lhs == pytest.approx(math.sqrt(math.pi) * R, rel=1e-9)
            assert good_fraction_exact(d, R) * ball_volume(d, R) / ball_volume(d - 1, R) == \
                pytest.approx(1.0, rel=1e-9)


def test_asymptotic_within_5_percent_from_20():
    assert all(rel(good_fraction_asymptotic(d, 2.0), good_fraction_exact(d, 2.0)) < 0.05
               for d in range(20, 3000))


def test_asymptotic_within_half_percent_from_150():
    assert all(rel(good_fraction_asymptotic(d, 2.0), good_fraction_exact(d, 2.0)) < 0.005
               for d in range(150, 3000))
    # at d = 100 the gap is still 0.75 %
    assert rel(good_fraction_asymptotic(100, 1.0), good_fraction_exact(100, 1.0)) == \
        pytest.approx(0.0074969, rel=1e-4)
    assert rel(good_fraction_asymptotic(149, 1.0), good_fraction_exact(149, 1.0)) > 0.005


def test_invalid_arguments():
    for f in (good_fraction_exact, good_fraction_asymptotic):
        with pytest.raises(ValueError):
            f(0, 1.0)
        with pytest.raises(ValueError):
            f(3, 0.0)
    with pytest.raises(ValueError):
        ball_volume(-1, 1.0)


def test_model_rescales_radius_per_level():
    m = GoodNodeModel.at(10, 3, 6.0, gs_normsq=4.0)
    assert m.exact_fraction == pytest.approx(good_fraction_exact(7, 3.0))
    assert m.asymptotic_fraction == pytest.approx(math.sqrt(6) / (math.sqrt(2 * math.pi) * 3.0))


def test_tree_estimate_shape():
    t = tree_estimate(10, 2.0, 3.0)
    assert t["alpha"] == pytest.approx(1 - 1 / (8 * math.sqrt(2 * math.pi)))
    assert t["unrestricted"] == pytest.approx(3.0 ** 10)
    assert t["restricted"] == pytest.approx(t["alpha"] ** 10 * 3.0 ** 10)


def test_compare_model_absent_levels():
    stats = EnumStats(3)
    stats.nodes_visited[2] = 1
    stats.good_nodes[2] = 1
    rep = compare_model(stats, 1.0, [1.0, 1.0, 1.0])
    assert rep["levels"][0]["empirical"] is None and rep["levels"][0]["ratio"] is None
    assert rep["levels"][2]["empirical"] == 1.0
    assert rep["theorem_level0"] is rep["levels"][0]


def test_compare_model_identity_z10():
    b = LatticeBasis([[int(i == j) for j in range(10)] for i in range(10)])
    _, stats = enumerate_svp(b, config=EnumConfig(1.0))
    rep = compare_model(stats, 1.0, Levels(gram(b)).normsq)
    rows = rep["levels"]
    assert [r["dim"] for r in rows] == list(range(10, 0, -1))
    assert all(r["empirical"] is not None for r in rows)
    assert rep["radius_normalized"] == pytest.approx(1.0)


def test_compare_model_lll_20():
    b = lll_reduce(gen("uniform", 20, 50, 7)).output
    _, stats = enumerate_svp(b)
    rep = compare_model(stats, math.sqrt(min(b.norms_sq())), Levels(gram(b)).normsq)
    assert len(rep["levels"]) == 20
    assert rep["tree_estimate"]["mean_interval"] > 0
    for r in rep["levels"]:
        assert r["exact"] >= 0 and r["asymptotic"] >= 0
        if r["empirical"] is not None:
            assert 0 <= r["empirical"] <= 1


def test_fraction_depends_only_on_dim_and_radius():
    # two different lattices, same (d, R) per level, same model values
    a = GoodNodeModel.at(5, 1, 3.0, 1.0)
    b = GoodNodeModel.at(5, 1, 6.0, 4.0)
    assert a.exact_fraction == b.exact_fraction
