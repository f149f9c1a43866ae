"""Pipeline report: serialization, internal consistency, robustness."""

import json

from curvpar.report import analyze_germ, fmt_float, render_json

from conftest import germ, jet2_to_germ, random_jet2


def test_fmt_float_12_significant_digits():
    assert fmt_float(1.0 / 3.0) == 0.333333333333
    assert fmt_float(-0.0) == 0.0
    assert fmt_float(123456789.123456789) == 123456789.123


def test_report_json_round_trips():
    res = analyze_germ("(x, x*y, y^2 + 1/3*x^2, 2*x^2)")
    text = render_json(res.report)
    assert json.loads(text) == res.report


def test_report_matches_library_values():
    res = analyze_germ("(x, x*y, y^2, x^2)")
    assert res.report["umbilic"]["kappa_u"] == fmt_float(res.umbilic.kappa_u)
    assert res.report["parabola"]["stratum"] == f"M{res.profile.stratum}"
    assert res.report["point_type"] == res.ptype


def test_report_consistency_flags_random(rng):
    kinds = ["any", "collinear", "line", "point"]
    for i in range(30):
        j2 = random_jet2(rng, kinds[i % 4])
        res = analyze_germ(jet2_to_germ(j2, order=3))
        assert res.report["orbit"]["consistent"], j2
        assert res.report["kappa_stratum_consistent"], j2
        assert res.report["heights"]["corank2"]["agrees"], j2
        assert res.report["heights"]["cone_parabola_orthogonal"], j2
        assert res.report["transfer"]["directions_match"], j2
        assert res.report["transfer"]["types_match"], j2


def test_analysis_on_higher_order_input():
    res = analyze_germ("(x, x*y + y^6, y^2 - x^5, y^5)", order=8)
    assert res.profile.shape.kind == "parabola"
    assert res.germ.order == 8
