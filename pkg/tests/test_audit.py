import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GOLDEN, points, rationals
from helpers import rand_focal_spec, rand_line
from minkconic.audit import (FIGURE1_CAPTION, audit, printed_delta_ellipse, printed_delta_parabola,
                             printed_ellipse_quadric, printed_parabola_quadric)
from minkconic.core import ParamLine, Point
from minkconic.lens import discriminant
from minkconic.quadric import evaluate
from minkconic.synth import Circle, Ellipse, Hyperbola, Parabola, ellipse_implicit

P = Point
FIG1 = Parabola(P(2, 3), ParamLine(1, 0, 2, 0))


def test_printed_ellipse_witness():
    q = printed_ellipse_quadric(P(0, 0), P(2, 0), 16)
    assert q.D == 128
    assert evaluate(q, P(3, 0)) == -160


def test_printed_ellipse_equal_foci():
    q = printed_ellipse_quadric(P(1, 2), P(1, 2), 5)
    assert (q.A, q.B, q.C) == (-20, 0, 20)


@given(points, points, rationals)
def test_printed_quadratic_part_matches_derived(p, q, k2):
    if p == q and k2 == 0:
        return
    pr, de = printed_ellipse_quadric(p, q, k2), ellipse_implicit(p, q, k2)
    assert pr.coeffs[:3] == de.coeffs[:3]


def test_q1_reading_differs_only_in_x_term():
    a = printed_ellipse_quadric(P(1, 0), P(3, 1), 4)
    b = printed_ellipse_quadric(P(1, 0), P(3, 1), 4, x_factor="q1")
    assert a.coeffs[:3] + a.coeffs[4:] == b.coeffs[:3] + b.coeffs[4:]
    assert a.D != b.D


def test_printed_parabola_figure1():
    assert printed_parabola_quadric(FIG1.p, FIG1.line).coeffs == (-3, 12, -4, -36, -18, 15)
    assert FIGURE1_CAPTION.B == -12


def test_printed_parabola_constant_zero_offsets():
    assert printed_parabola_quadric(P(0, 0), ParamLine(3, 0, 1, 0)).F == 0


@pytest.mark.parametrize("p, q, k2, delta", [
    ((0, 0), (2, 0), 16, 12288),
    ((0, 0), (2, 0), 0, 0),
    ((0, 0), (0, 2), -1, -192),
])
def test_printed_delta_ellipse(p, q, k2, delta):
    assert printed_delta_ellipse(P(*p), P(*q), k2) == delta


@pytest.mark.parametrize("a, c, delta", [(1, 2, 96), (1, 0, 0), (2, 1, -384)])
def test_printed_delta_parabola(a, c, delta):
    assert printed_delta_parabola(ParamLine(a, 0, c, 0)) == delta


def test_audit_ellipse_witness():
    r = audit(Ellipse(P(0, 0), P(2, 0), 16), probe_count=16, seed=1)
    assert "ELLIPSE_LINEAR_TERM_MISMATCH" in r.findings
    assert r.printed_quadric.coeffs[:3] == r.derived_quadric.coeffs[:3]
    assert r.printed_delta == r.derived_delta == 12288
    assert r.delta_sign_match
    assert not r.scalar_equivalent
    assert len(r.membership_residuals) == 16
    assert set(r.variants) == {"literal", "q1"}
    assert r.variants["q1"]["max_abs_residual"] > 1e-8


def test_audit_hyperbola_uses_same_printed_equation():
    r = audit(Hyperbola(P(0, 0), P(2, 0), 1), probe_count=4)
    assert r.printed_quadric == printed_ellipse_quadric(P(0, 0), P(2, 0), 1)


def test_audit_figure1():
    r = audit(FIG1, probe_count=8)
    for code in ("PARABOLA_Y2_MISMATCH", "PARABOLA_DELTA_MISMATCH", "FIGURE1_CAPTION_MISMATCH"):
        assert code in r.findings
    assert r.printed_delta == 96 and r.derived_delta == 0
    assert not r.delta_sign_match


def test_audit_circle_not_applicable():
    r = audit(Circle(P(0, 0), 1), probe_count=8)
    assert r.findings == []
    assert not r.printed_applicable
    assert r.to_dict()["printed_quadric"] is None
    assert all(abs(v) < 1e-8 for _, v in r.membership_residuals)


def test_findings_empty_iff_clean():
    # a = 0 leaves only the y-term, where printed and derived happen to agree
    spec = Parabola(P(0, 0), ParamLine(0, 0, 1, 0))
    r = audit(spec, probe_count=8)
    clean = r.scalar_equivalent and r.delta_sign_match and all(abs(v) <= 1e-8 for _, v in r.membership_residuals)
    assert clean and r.findings == []


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_findings_iff_discrepancy(seed):
    rng = random.Random(seed)
    spec = rand_focal_spec(rng) if rng.random() < 0.5 else Parabola(P(0, 0), rand_line(rng))
    r = audit(spec, probe_count=4, seed=seed)
    clean = r.scalar_equivalent and r.delta_sign_match and all(abs(v) <= 1e-8 for _, v in r.membership_residuals)
    assert (r.findings == []) == clean


def test_audit_deterministic_and_pure():
    spec = Ellipse(P(0, 0), P(2, 0), 16)
    before = repr(spec)
    a = audit(spec, 12, seed=7).to_json()
    b = audit(spec, 12, seed=7, workers=4).to_json()
    assert a == b
    assert repr(spec) == before


def test_json_schema():
    d = json.loads(audit(FIG1, probe_count=2, seed=0).to_json())
    assert d["printed_quadric"]["B"] == "12/1"
    assert d["derived_delta"] == "0/1"
    assert set(d) >= {"case_id", "printed_quadric", "derived_quadric", "scalar_equivalent",
                      "printed_delta", "derived_delta", "delta_sign_match",
                      "membership_residuals", "findings"}


@pytest.mark.parametrize("name, spec", [
    ("audit_ellipse_seed7.json", Ellipse(P(0, 0), P(2, 0), 16)),
    ("audit_figure1_seed7.json", FIG1),
])
def test_golden(name, spec):
    text = audit(spec, 8, seed=7).to_json()
    assert text == (GOLDEN / name).read_text()
