import cmath
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biunivalent.bounds import (
    bounds_for,
    corollary_bounds,
    s_class_bounds,
    s_bounds_from_phi,
    k_class_bounds,
    k_bounds_from_phi,
)
from biunivalent.classes import ClassParams
from biunivalent.errors import DegenerateDenominator, ParameterError
from biunivalent.hypergeom import HohlovParams

ONE = HohlovParams(1, 1, 1)


def test_s_bound_examples():
    r = s_class_bounds(ClassParams(1, 0, 0), ONE)
    assert r.a2_branches == pytest.approx((math.sqrt(2 / 3), 1.0), rel=1e-12)
    assert r.a2_bound == pytest.approx(0.816496580927726, rel=1e-12)
    assert r.a3_bound == pytest.approx(2 / 3, rel=1e-12)
    r = s_class_bounds(ClassParams(1, 1, 0), ONE)
    assert r.a2_branches == pytest.approx((math.sqrt(2), 2.0), rel=1e-12)
    assert r.a2_bound == pytest.approx(math.sqrt(2), rel=1e-12)


def test_k_bound_examples():
    r = k_class_bounds(ClassParams(1, 0, 0), ONE)
    assert r.a2_branches == pytest.approx((math.sqrt(2 / 9), 0.5), rel=1e-12)
    assert r.a2_bound == pytest.approx(0.4714045207910317, rel=1e-12)
    assert r.a3_bound == pytest.approx(2 / 9, rel=1e-12)
    r = k_class_bounds(ClassParams(1, 1, 0), ONE)
    assert r.a2_branches == pytest.approx((1.0, 1.0), rel=1e-12)
    assert r.a2_bound == pytest.approx(1.0, rel=1e-12)
    assert r.a2_argmin == 0


@pytest.mark.parametrize("kind", ["s", "k"])
def test_beta_to_one_collapses(kind):
    r = bounds_for(kind, ClassParams(1.3j, 0.4, 1 - 1e-12, 3), HohlovParams(1, 2, 3))
    assert max(r.a2_branches + r.a3_branches) < 1e-5


@pytest.mark.parametrize("kind", ["s", "k"])
def test_gamma_phase_invariance(kind):
    hp = HohlovParams(2, 1, 5)
    base = bounds_for(kind, ClassParams(0.7, 0.3, 0.2, 3), hp).to_dict()
    for theta in (0.4, 2.0, -3.0):
        other = bounds_for(kind, ClassParams(0.7 * cmath.exp(1j * theta), 0.3, 0.2, 3), hp).to_dict()
        for key in ("a2_branches", "a3_branches"):
            assert other[key] == pytest.approx(base[key], rel=1e-13)


def test_corollary_examples():
    cp = ClassParams(1, 0.5, 0)
    h = corollary_bounds("h0", cp, 1, 1)
    assert h.a2_bound == pytest.approx(math.sqrt(2 / 3), rel=1e-12)
    assert h.a3_bound == pytest.approx(2 / 3, rel=1e-12)
    q = corollary_bounds("Q_lambda0", cp, 1, 1)
    assert q.a2_bound == pytest.approx(math.sqrt(2) / 3, rel=1e-12)
    assert q.a3_bound == pytest.approx(2 / 9, rel=1e-12)
    assert h.class_params.lam == 0
    with pytest.raises(ParameterError):
        corollary_bounds("x9", cp, 1, 1)


@pytest.mark.parametrize("which,lam,fn", [
    ("s1", 1, s_bounds_from_phi), ("h0", 0, s_bounds_from_phi),
    ("k1", 1, k_bounds_from_phi), ("q0", 0, k_bounds_from_phi),
])
def test_corollaries_match_theorems(which, lam, fn):
    for phi2, phi3 in ((1, 1), (2 / 3, 0.5), (0.4, 0.1), (1.7, 2.2)):
        cp = ClassParams(0.5 + 0.5j, lam, 0.3, 3)
        thm = fn(cp, phi2, phi3)
        cor = corollary_bounds(which, cp, phi2, phi3)
        assert cor.a2_branches == pytest.approx(thm.a2_branches, rel=1e-12)
        assert cor.a2_bound == pytest.approx(thm.a2_bound, rel=1e-12)
        assert cor.a3_bound == pytest.approx(thm.a3_bound, rel=1e-12)
        if len(cor.a3_branches) == 3:
            assert cor.a3_branches == pytest.approx(thm.a3_branches, rel=1e-12)


def test_degenerate_branch_is_infinite():
    # lambda = 1 and phi2^2 = 2 phi3 make A + B vanish
    r = s_bounds_from_phi(ClassParams(1, 1, 0), 1.0, 0.5)
    assert math.isinf(r.a2_branches[0])
    assert r.a2_argmin == 1
    doc = json.loads(r.to_json())
    assert doc["a2_branches"][0] == "inf"
    assert doc["params"]["phi2"] == 1.0


def test_all_branches_degenerate_raises():
    with pytest.raises(DegenerateDenominator):
        from biunivalent.bounds import BoundReport
        BoundReport("x", "s", (math.inf,), (1.0,), 1, 1, ClassParams(1, 0, 0))


def test_report_json_fields():
    doc = k_class_bounds(ClassParams(2j, 0.25, 0.7, 4), HohlovParams(1, 2, 3)).to_dict()
    assert list(doc) == ["label", "kind", "a2_branches", "a2_bound", "a2_argmin",
                         "a3_branches", "a3_bound", "a3_argmin", "params"]
    assert doc["params"]["gamma"] == [0.0, 2.0]
    assert doc["params"]["hohlov"] == {"a": 1.0, "b": 2.0, "c": 3.0}


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from(["s", "k"]),
    st.floats(0, 1), st.floats(0, 0.95), st.floats(2, 6), st.floats(0.1, 3),
)
def test_bounds_monotone_in_m_and_beta(kind, lam, beta, m, g):
    hp = HohlovParams(1, 2, 3)
    base = bounds_for(kind, ClassParams(g, lam, beta, m), hp)
    bigger_m = bounds_for(kind, ClassParams(g, lam, beta, m * 1.1), hp)
    bigger_beta = bounds_for(kind, ClassParams(g, lam, min(beta + 0.04, 0.99), m), hp)
    assert bigger_m.a2_bound >= base.a2_bound and bigger_m.a3_bound >= base.a3_bound
    assert bigger_beta.a2_bound <= base.a2_bound and bigger_beta.a3_bound <= base.a3_bound
