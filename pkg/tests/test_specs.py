import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from iwcelab.distributions import GEV, Empirical, Exponential, Uniform
from iwcelab.specs import (
    RunSpec, SpecError, parse_axis, parse_dist, parse_real, parse_weight,
)
from iwcelab.weights import ConstantOne, ExponentialWeight, GEVPolynomialWeight, PolynomialWeight


@pytest.mark.parametrize("text,cls", [
    ("exp:rate=1", Exponential), ("exp:scale=2", Exponential),
    ("unif:lower=0,upper=1", Uniform), ("gev:mu=2,sigma=1,xi=0.5", GEV),
])
def test_parse_dist(text, cls):
    d = parse_dist(text)
    assert isinstance(d, cls)
    assert parse_dist(d.spec()).spec() == d.spec()


def test_parse_dist_scale():
    assert parse_dist("exp:scale=2").rate == 0.5


def test_parse_dist_empirical(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("1\n2\n3\n")
    d = parse_dist(f"emp:{p}")
    assert isinstance(d, Empirical) and d.n == 3
    assert parse_dist(d.spec()).spec() == d.spec()


@pytest.mark.parametrize("bad", ["exp", "exp:rate=abc", "exp:rate=-1", "norm:mu=0",
                                 "unif:lower=1", "gev:mu=2,sigma=1", "exp:rte=1"])
def test_parse_dist_errors(bad):
    with pytest.raises(SpecError):
        parse_dist(bad)


def test_error_names_token():
    with pytest.raises(SpecError) as info:
        parse_dist("exp:rate=abc")
    assert "abc" in str(info.value)


@pytest.mark.parametrize("text,cls", [("const", ConstantOne), ("poly:1,0.5", PolynomialWeight),
                                      ("exp:0.3", ExponentialWeight),
                                      ("exp:alpha=0.3", ExponentialWeight)])
def test_parse_weight(text, cls):
    w = parse_weight(text)
    assert isinstance(w, cls)
    assert parse_weight(w.spec()).spec() == w.spec()


def test_parse_gev_weight():
    g = parse_dist("gev:mu=2,sigma=1,xi=0.5")
    w = parse_weight("gevpoly:1,0.5", g)
    assert isinstance(w, GEVPolynomialWeight)
    with pytest.raises(SpecError):
        parse_weight("gevpoly:1,0.5", parse_dist("exp:rate=1"))
    with pytest.raises(SpecError):
        parse_weight("poly:")


def test_parse_real():
    assert parse_real("inf") == math.inf
    assert parse_real(" 0.5 ") == 0.5
    for bad in ("nan", "x", ""):
        with pytest.raises(SpecError):
            parse_real(bad)


def test_parse_axis():
    assert parse_axis("0:1:5", "t1") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_axis("0.1,0.2", "t1") == [0.1, 0.2]
    assert parse_axis("3", "t1") == [3.0]
    with pytest.raises(SpecError):
        parse_axis("0:1:0", "t1")
    with pytest.raises(SpecError):
        parse_axis("0:1", "t1")


def test_runspec_validation():
    with pytest.raises(SpecError):
        RunSpec("bogus")
    with pytest.raises(SpecError):
        RunSpec("compute", convention="other")
    with pytest.raises(SpecError):
        RunSpec("compute", measure="entropy")
    with pytest.raises(SpecError):
        RunSpec("compute", tolerances={"tol": 1.0})
    with pytest.raises(SpecError):
        RunSpec.from_dict({"command": "compute", "colour": "red"})


def test_runspec_file(tmp_path):
    p = tmp_path / "spec.json"
    p.write_text(json.dumps({"command": "compute", "t2": "inf", "measure": "iwcre"}))
    s = RunSpec.from_file(p)
    assert s.t2 == math.inf and s.measure == "iwcre"
    p.write_text("{bad json")
    with pytest.raises(SpecError):
        RunSpec.from_file(p)
    p.write_text("[1, 2]")
    with pytest.raises(SpecError):
        RunSpec.from_file(p)


_dist_text = st.one_of(
    st.floats(0.1, 10.0).map(lambda r: f"exp:rate={r!r}"),
    st.tuples(st.floats(0.0, 2.0), st.floats(0.1, 3.0)).map(
        lambda t: f"unif:lower={t[0]!r},upper={t[0] + t[1]!r}"),
)
_weight_text = st.one_of(
    st.just("const"),
    st.floats(-1.0, 1.0).map(lambda a: f"exp:{a!r}"),
    st.lists(st.floats(0.0, 3.0), min_size=1, max_size=4).map(
        lambda cs: "poly:" + ",".join(repr(c) for c in cs)),
)


@settings(max_examples=80, deadline=None)
@given(_dist_text, _weight_text, st.floats(0.0, 5.0), st.one_of(st.just(math.inf),
                                                                 st.floats(5.1, 20.0)),
       st.sampled_from(["ratio", "proper", "both"]), st.integers(0, 10 ** 6),
       st.booleans(), st.sampled_from(["json", "csv"]))
def test_canonical_round_trip(dist, weight, t1, t2, conv, seed, printed, fmt):
    s = RunSpec("compute", dist, weight, t1, t2, conv, "iwce", {}, seed,
                {"abs_tol": 1e-9}, printed, None, fmt)
    again = RunSpec.from_dict(json.loads(json.dumps(s.to_dict())))
    assert again.canonical() == s.canonical()
    # the canonical sub-specs are fixed points of the parser
    again.dist_spec = parse_dist(dist).spec()
    again.weight_spec = parse_weight(weight).spec()
    assert again.canonical() == s.canonical()
