import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from loglogbound.errors import MajorantDomainError, MajorantParseError, NonSummableTail
from loglogbound.majorant import (
    Constant,
    Derived,
    DistributionQuery,
    DoubleExpBlowup,
    ExpBlowup,
    Scaled,
    Tabulated,
    derived_majorant,
    distribution,
    evaluate,
    loglog_integral,
    majorant_from_dict,
    parse_majorant,
    soundness_factor,
    tail_envelope,
)

E = math.e

FAMILIES = [
    Constant(E),
    Constant(50.0),
    ExpBlowup(1.0),
    ExpBlowup(0.5, a=2.0),
    DoubleExpBlowup(0.25),
    DoubleExpBlowup(0.5),
    DoubleExpBlowup(0.9),
    Tabulated(((0.0, math.exp(10)), (0.2, 100.0), (0.5, E), (0.8, 1.0))),
    Scaled(DoubleExpBlowup(0.5), 3.0),
    Derived(ExpBlowup(1.0), 0.5),
]


def test_evaluate_examples():
    assert evaluate(Constant(E), 0.3) == E
    assert_allclose(evaluate(ExpBlowup(1.0), 0.5), math.exp(2))
    assert_allclose(evaluate(DoubleExpBlowup(0.5), 0.25), math.exp(math.exp(2)))


@pytest.mark.parametrize("y", [0.0, 1.0, -0.1, 1.5])
def test_evaluate_outside_domain(y):
    with pytest.raises(MajorantDomainError):
        evaluate(ExpBlowup(1.0), y)


@pytest.mark.parametrize("m", FAMILIES, ids=lambda m: m.spec)
@settings(max_examples=60, deadline=None)
@given(a=st.floats(1e-4, 0.9999), b=st.floats(1e-4, 0.9999))
def test_monotone(m, a, b):
    y1, y2 = sorted((a, b))
    assert m.log_value(y1) >= m.log_value(y2)


def test_doubleexp_at_least_e():
    ys = np.linspace(1e-3, 1.0 - 1e-9, 500)
    assert np.all(DoubleExpBlowup(0.7).log_value(ys) >= 1.0)


def test_loglog_integral_examples():
    assert loglog_integral(Constant(E)) == (0.0, True)
    val, finite = loglog_integral(DoubleExpBlowup(1.0))
    assert not finite and math.isinf(val)
    val, finite = loglog_integral(DoubleExpBlowup(0.5))
    assert finite
    assert_allclose(val, 2.0, rtol=1e-10)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_loglog_integral_closed_form(alpha):
    # log+log+ exp(exp(y**-alpha)) = y**-alpha on (0, 1]
    val, finite = loglog_integral(DoubleExpBlowup(alpha))
    assert finite
    assert_allclose(val, 1.0 / (1.0 - alpha), rtol=1e-9)


def test_loglog_integral_expblowup():
    # log+log+ exp(1/y) = log+(1/y) = -log y on (0, 1); integral 1
    val, finite = loglog_integral(ExpBlowup(1.0))
    assert finite
    assert_allclose(val, 1.0, rtol=1e-9)


def test_distribution_examples():
    assert distribution(Constant(E), DistributionQuery(0.5, 1.0)) == 2.0
    assert distribution(Constant(E), DistributionQuery(1.5, 1.0)) == 0.0
    assert_allclose(distribution(DoubleExpBlowup(0.5), DistributionQuery(E**2, 1.0)), 0.5, rtol=1e-12)


def test_distribution_query_validation():
    with pytest.raises(MajorantDomainError):
        DistributionQuery(0.0, 1.0)
    with pytest.raises(MajorantDomainError):
        DistributionQuery(1.0, -1.0)


@pytest.mark.parametrize("m", FAMILIES, ids=lambda m: m.spec)
def test_distribution_shape(m):
    t = np.logspace(-3, 4, 300)
    F = np.array([m.distribution(tt, 0.8) for tt in t])
    assert np.all(F <= 1.6 + 1e-15)
    assert np.all(F >= 0)
    assert np.all(np.diff(F) <= 1e-12)


def test_tabulated_right_continuity():
    m = Tabulated(((0.0, math.exp(10)), (0.2, 100.0), (0.5, E)))
    # log M = log 100 on [0.2, 0.5): the superlevel set for t = log 100 is (0, 0.5)
    level = math.log(100.0)
    assert_allclose(m.distribution(level, 1.0), 1.0, atol=1e-9)
    assert_allclose(m.distribution(level * (1 + 1e-12), 1.0), 0.4, atol=1e-9)
    assert m.evaluate(0.2) == 100.0
    assert m.evaluate(0.2 - 1e-12) == math.exp(10)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.9])
def test_doubleexp_closed_form_vs_bisection(alpha):
    m = DoubleExpBlowup(alpha)
    for t in np.logspace(0.05, 6, 50):
        assert abs(m.inverse(t) - m.inverse_by_bisection(t)) <= 1e-8


def test_derived_examples():
    zero = derived_majorant(Constant(0.0), 0.5)
    assert zero.evaluate(0.3) == 0.0
    assert_allclose(derived_majorant(Constant(E), 0.5).evaluate(0.25), 400 * E, rtol=1e-14)
    assert_allclose(
        derived_majorant(DoubleExpBlowup(0.5), 0.5).evaluate(0.5), 200 * math.exp(math.exp(2)), rtol=1e-12
    )


def test_soundness_factor():
    assert soundness_factor(0.5) == 1.0
    assert soundness_factor(2.0) == 2.0
    # eps = 2: s = 2 and the prefactor at h = 4 is 2 * max(50, 25)
    assert Derived(Constant(1.0), 2.0).prefactor(4.0) == 100.0


@pytest.mark.parametrize("m", FAMILIES[:8], ids=lambda m: m.spec)
@pytest.mark.parametrize("eps", [0.1, 0.5, 1.0])
def test_derived_transfer(m, eps):
    if loglog_integral(m)[1]:
        assert loglog_integral(derived_majorant(m, eps))[1]


def test_tail_envelope_examples():
    c = 5.0
    assert tail_envelope(Constant(c), math.log(c) + 1) == 0.0
    assert_allclose(tail_envelope(DoubleExpBlowup(0.5), math.exp(4)), 0.125, rtol=1e-12)
    tab = Tabulated(((0.0, math.exp(10)), (0.5, E)))
    assert tail_envelope(tab, 11.0) == 0.0


def test_tail_envelope_rejects_divergent():
    with pytest.raises(NonSummableTail):
        tail_envelope(DoubleExpBlowup(1.0), 2.0)


@pytest.mark.parametrize("m", FAMILIES, ids=lambda m: m.spec)
def test_envelope_dominates_distribution(m):
    for t in np.logspace(0, 5, 80):
        assert tail_envelope(m, t, 0.8) >= m.distribution(t, 0.8) - 1e-15


@pytest.mark.parametrize(
    "text,expected",
    [
        ("constant:c=2.718", Constant(2.718)),
        ("expblowup:beta=1", ExpBlowup(1.0)),
        ("expblowup:beta=1,a=0.5", ExpBlowup(1.0, a=0.5)),
        ("doubleexp:alpha=0.5", DoubleExpBlowup(0.5)),
        ("scaled:factor=2;doubleexp:alpha=0.5", Scaled(DoubleExpBlowup(0.5), 2.0)),
        ("derived:eps=0.5;constant:c=1", Derived(Constant(1.0), 0.5)),
    ],
)
def test_parse_majorant(text, expected):
    m = parse_majorant(text)
    assert m == expected
    assert parse_majorant(m.spec) == m
    assert majorant_from_dict(m.to_dict()) == m


def test_parse_tabulated(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("y,value\n0,100\n0.5,2.718281828\n")
    m = parse_majorant(f"tabulated:@{p}")
    assert m.evaluate(0.25) == 100.0
    rel = parse_majorant("tabulated:@m.csv", base_dir=tmp_path)
    assert rel.points == m.points


@pytest.mark.parametrize("text", ["constant", "nope:c=1", "constant:c=x", "expblowup:a=1", "tabulated:file.csv", "constant:c=-1"])
def test_parse_errors(text):
    with pytest.raises(MajorantParseError):
        parse_majorant(text)
