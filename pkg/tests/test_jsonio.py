from fractions import Fraction as F

import pytest
from hypothesis import given

from dhtoric import jsonio
from dhtoric import logconcave as lc
from dhtoric import polytope as pt
from dhtoric import pushforward as pf
from dhtoric import sl2forms as sl
from dhtoric.exact import PiecewisePoly, UniPoly
from strategies import piecewise, rationals


@given(rationals)
def test_rational_round_trip(x):
    assert jsonio.rational_from_json(jsonio.rational_to_json(x)) == x


def test_rational_schema():
    assert jsonio.rational_to_json(F(-3, 2)) == "-3/2"
    assert jsonio.rational_to_json(F(4)) == "4"
    assert jsonio.rational_from_json(3) == 3
    for bad in (0.5, True, "1/0", "abc", None):
        with pytest.raises(jsonio.SchemaError):
            jsonio.rational_from_json(bad)


def test_piecewise_schema_example():
    obj = {"breakpoints": ["0", "1", "2"], "pieces": [{"coeffs": ["0", "1"]}, {"coeffs": ["2", "-1"]}]}
    f = jsonio.pw_from_json(obj)
    assert f == PiecewisePoly.from_intervals([(0, 1, UniPoly((0, 1))), (1, 2, UniPoly((2, -1)))])
    assert jsonio.pw_to_json(f) == obj


@given(piecewise())
def test_piecewise_round_trip(f):
    assert jsonio.pw_from_json(jsonio.pw_to_json(f)) == f


def test_syntax_error_has_line_and_column():
    with pytest.raises(jsonio.SchemaError) as e:
        jsonio.loads('{"dim": 2,\n "vertices": [1,}')
    assert (e.value.line, e.value.col) == (2, 17)
    assert "line 2, column 17" in str(e.value)


def test_structural_errors_name_the_path():
    with pytest.raises(jsonio.SchemaError, match=r"\$\.vertices\[1\]"):
        jsonio.polytope_from_json({"dim": 2, "vertices": [["0", "0"], ["1"]]})
    with pytest.raises(jsonio.SchemaError, match="missing key 'pieces'"):
        jsonio.pw_from_json({"breakpoints": []})
    with pytest.raises(jsonio.SchemaError):
        jsonio.model_from_json({"polytope": {"dim": 2, "vertices": [["0", "0"]]}, "projection": [[1.5, 1]]})


def test_model_and_dh_round_trip():
    model = pf.ToricModel.rank_one(pt.cube(2), (1, 1))
    assert jsonio.model_from_json(jsonio.model_to_json(model)) == model
    f = pf.dh_compute(model)
    obj = jsonio.dh_to_json(f)
    assert obj["walls"] == ["0", "1", "2"] and obj["n"] == 2 and obj["k"] == 1
    assert jsonio.dh_from_json(obj) == f


def test_halfspace_and_components():
    assert jsonio.halfspace_from_json({"normal": [1, 1], "bound": "1/2"}) == ((1, 1), F(1, 2))
    c = pf.FixedComponent(F(1, 4), (-1, 1), 2)
    assert jsonio.component_from_json(jsonio.component_to_json(c)) == c
    crits = jsonio.criticals_from_json([{"level": "1/4", "components": [jsonio.component_to_json(c)]}])
    assert crits[0].level == F(1, 4)


def test_verdict_json():
    v = lc.LogConcavityVerdict(lc.Status.NOT_LOG_CONCAVE, lc.Witness(F(0), lc.Reason.PIECE_FAILURE))
    assert jsonio.verdict_to_json(v) == {"status": "NotLogConcave", "witness": {"location": "0", "reason": "PieceFailure"}}


def test_circle_json():
    obj = {"breakpoints": ["0", "1"], "pieces": [{"coeffs": ["3"]}], "period": "1"}
    f = jsonio.circle_from_json(obj)
    assert jsonio.circle_to_json(f) == obj
    with pytest.raises(jsonio.SchemaError):
        jsonio.circle_from_json({**obj, "period": "2"})


def test_form_json():
    obj = {"n": 2, "terms": [{"indices": ["x1", "x2"], "coeff": "1"}, {"indices": ["y1", "y2"], "coeff": "1"}]}
    g = jsonio.form_from_json(obj)
    assert g == sl.ExteriorForm.monomial(2, ["x1", "x2"]) + sl.ExteriorForm.monomial(2, ["y1", "y2"])
    assert jsonio.form_to_json(g) == obj
    flipped = {"n": 2, "terms": [{"indices": ["x2", "x1"], "coeff": "1"}]}
    assert jsonio.form_to_json(jsonio.form_from_json(flipped)) == {"n": 2, "terms": [{"indices": ["x1", "x2"], "coeff": "-1"}]}
    with pytest.raises(jsonio.SchemaError):
        jsonio.form_from_json({"n": 2, "terms": [{"indices": ["x3"], "coeff": "1"}]})


def test_mc_csv_columns():
    est = pf.MCEstimate((F(1, 2),), (0.5,), (0.01,), 7, 10**4)
    assert jsonio.mc_to_csv(est) == "t,estimate,stderr,N,seed\n1/2,0.5,0.01,10000,7\n"
