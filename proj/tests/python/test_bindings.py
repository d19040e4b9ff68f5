import math

import pytest

stabkit = pytest.importorskip("stabkit")


def test_ratfunc_canonical_form():
    f = stabkit.RatFunc([-1.0, 0.0, 1.0], [-1.0, 1.0])
    assert f.num == pytest.approx([1.0, 1.0])
    assert f.den == [1.0]
    g = stabkit.RatFunc([0.0, 2.0], [2.0, 2.0])
    assert g.num == pytest.approx([0.0, 1.0])
    assert g.den == pytest.approx([1.0, 1.0])
    assert math.isinf(stabkit.RatFunc([1.0], [-1.0, 1.0])(1.0))


def test_roots_and_routh():
    roots = stabkit.poly_roots([0.0, 0.0, 0.0, 1.0])
    assert roots == [(0j, 3)]
    assert stabkit.hurwitz_stable([6.0, 11.0, 6.0, 1.0])
    assert not stabkit.hurwitz_stable([1.0, 1.0, 1.0, 1.0])


def test_internal_stabilization():
    p = stabkit.RatFunc([1.0], [-1.0, 1.0])
    report = stabkit.internal_check(p, -2.0, region="rhp")
    assert report["ok"] is True
    assert report["gang_of_four_stable"] == [True] * 4
    assert stabkit.internal_check(p, 0.0, region="rhp")["ok"] is False
    assert stabkit.avoids(-2.0, stabkit.RatFunc([-1.0, 1.0]), region="rhp")


def test_pip():
    assert not stabkit.pip_check(stabkit.RatFunc([-2.0, 1.0], [3.0, -4.0, 1.0]))
    assert stabkit.pip_check(stabkit.RatFunc([3.0, -4.0, 1.0], [16.0, -12.0, 0.0, 1.0]))
    assert stabkit.pip_check(stabkit.RatFunc([1.0], [1.0, 1.0]))


def test_realize_and_simulate():
    A, B, C = stabkit.realize(stabkit.RatFunc([2.0, 1.0], [5.0, 3.0, 1.0]))
    assert A.tolist() == [[0.0, 1.0], [-5.0, -3.0]]
    back = stabkit.transfer_function(A, B, C)
    assert back.num == pytest.approx([2.0, 1.0])
    y = stabkit.simulate([[0.5]], [[1.0]], [[1.0]], [1.0, 0.0, 0.0, 0.0])
    assert y == pytest.approx([0.0, 1.0, 0.5, 0.25, 0.125])


def test_theorem1_jet_case():
    phi = (0.0, stabkit.RatFunc([0.0, 0.0, 1.0]), stabkit.RatFunc([0.0, 0.0, 0.0, 1.0]))
    data = stabkit.interpolation_data(*phi)
    assert len(data["jets"]) == 1
    g = stabkit.cross_ratio_fg(1.0, *phi)
    assert stabkit.verify_g(g, *phi)
    f = stabkit.inverse_cross_ratio(g, *phi)
    assert f.num == pytest.approx([1.0]) and f.den == [1.0]


def test_thresholds_and_goldberg():
    k = stabkit.constants()
    assert k["A0"] == pytest.approx(0.003701599, abs=1e-8)
    assert k["caratheodory"] == 0.0625
    assert stabkit.decide("patel", 0.1)["status"] == "Stabilizable"
    assert stabkit.decide("chocolate", 0.05)["status"] == "Unknown"
    assert stabkit.decide("bistable", 0.1j)["status"] == "Stabilizable"
    prof = stabkit.goldberg_profile(stabkit.RatFunc([0.0, 2.0]))
    assert prof["rho"] == pytest.approx(0.5)
    assert prof["classes"]["F2"] is False


def test_search_and_cli():
    result = stabkit.search('{"plants":[{"num":[1],"den":[-1,1]}],"region":"rhp","budget":2000,"seed":42}')
    assert result["status"] == "found"
    assert result["margin"] > 1e-3
    code, out, err = stabkit.run_cli(["decide", "chocolate", "0.05"])
    assert code == 2 and '"Unknown"' in out and err == ""


def test_errors_are_raised():
    with pytest.raises(stabkit.StabkitError, match="ZeroDenominator"):
        stabkit.RatFunc([1.0], [0.0])
    with pytest.raises(stabkit.StabkitError, match="NonPositiveParameter"):
        stabkit.decide("patel", -1.0)
