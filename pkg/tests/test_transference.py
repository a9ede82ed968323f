"""Adelic bodies: polarity, successive minima, and transference verdicts."""

import math
from fractions import Fraction

import numpy as np
import pytest

from adelic import (
    AdelicBody,
    Ball,
    Box,
    FractionalIdeal,
    KModule,
    PlaceBody,
    ProductBody,
    adelic_equal,
    adelic_minima,
    adelic_polar,
    inhomogeneous_minimum,
    module_from_matrix,
    mu_product_report,
    preset_field,
    rational_field,
    standard_module,
    transference_check,
    uniform_ball_body,
)

F = Fraction

PRESETS = ("Q", "Q_sqrt2", "Q_sqrt5", "Q_i", "Q_sqrt-3")


def unit_ball_body(name: str, n: int = 1, radius=F(1)) -> AdelicBody:
    k = preset_field(name)
    return AdelicBody(standard_module(k, n), uniform_ball_body(k, n, radius))


def box_body_sqrt2(n: int = 1) -> AdelicBody:
    k = preset_field("Q_sqrt2")
    bodies = [PlaceBody("real", n, Box(tuple([F(1)] * n))) for _ in range(2)]
    return AdelicBody(standard_module(k, n), ProductBody(k, n, bodies))


# -- polarity ----------------------------------------------------------------


@pytest.mark.parametrize("name", PRESETS)
def test_adelic_biduality_is_exact(name):
    body = unit_ball_body(name, n=1, radius=F(3, 2))
    assert adelic_equal(adelic_polar(adelic_polar(body)), body)
    assert not adelic_equal(adelic_polar(body), body) or name == "Q"


def test_polar_flips_the_embedding_side():
    body = unit_ball_body("Q_i")
    star = adelic_polar(body)
    assert body.conjugated is False
    assert star.conjugated is True
    assert star.lattice().conjugated is True


def test_gaussian_polar_example():
    """Z[i] with the unit ball dualizes to (1/2)Z[i] with Ball(1/2)."""
    k = preset_field("Q_i")
    body = unit_ball_body("Q_i")
    star = adelic_polar(body)
    assert star.infinite_part.place_bodies[0].shape == Ball(F(1, 2))
    half = k.from_rational(F(1, 2))
    expected = KModule(
        k, [(FractionalIdeal.whole_ring(k).scaled(half), (k.one(),))])
    assert star.finite_part.equals(expected)


def test_worked_example_box_duality():
    body = box_body_sqrt2()
    star = adelic_polar(body)
    k = body.field
    dual_basis = FractionalIdeal.whole_ring(k).trace_dual()
    assert star.finite_part.equals(KModule(k, [(dual_basis, (k.one(),))]))
    # interval bodies are self-polar per place in dimension one
    from adelic import CrossPolytope
    assert star.infinite_part.place_bodies[0].shape == CrossPolytope((F(1),))


# -- minima ------------------------------------------------------------------


def test_sqrt2_example_minima():
    body = box_body_sqrt2()
    rep = adelic_minima(body)
    assert rep.minima[0] == pytest.approx(1.0, abs=1e-9)
    star_rep = adelic_minima(adelic_polar(body))
    assert star_rep.minima[0] == pytest.approx(math.sqrt(2) / 4, abs=1e-9)


def test_minima_witnesses_embed_onto_points():
    body = unit_ball_body("Q_sqrt5")
    rep = adelic_minima(body)
    k = body.field
    for witness, point in zip(rep.witnesses, rep.points):
        assert np.allclose(k.embed_vector(witness), point.point, atol=1e-9)


def test_minima_of_unit_lattices_are_one():
    for name in PRESETS:
        rep = adelic_minima(unit_ball_body(name))
        assert rep.minima[0] == pytest.approx(1.0, abs=1e-9)


def test_rank_two_minima_and_monotonicity():
    k = preset_field("Q_sqrt2")
    two, one, zero = k.from_rational(2), k.one(), k.zero()
    mod = module_from_matrix(k, [[two, zero], [zero, one]])
    body = AdelicBody(mod, uniform_ball_body(k, 2, F(1)))
    rep = adelic_minima(body)
    assert rep.minima == pytest.approx([1.0, 2.0], abs=1e-9)
    assert rep.minima == sorted(rep.minima)


def test_thunder_slacks_are_nonnegative():
    for name in ("Q_sqrt2", "Q_i"):
        k = preset_field(name)
        body = AdelicBody(standard_module(k, 2), uniform_ball_body(k, 2, F(1)))
        rep = adelic_minima(body)
        assert len(rep.thunder_slacks) == 2
        for slack in rep.thunder_slacks:
            assert slack >= -1e-9
        assert len(rep.classical) >= (2 - 1) * k.degree + 1


def test_minima_scaling_covariance():
    body = unit_ball_body("Q_sqrt2")
    rep = adelic_minima(body)
    rep2 = adelic_minima(body.scaled(F(2)))
    assert rep2.minima == pytest.approx([x / 2 for x in rep.minima], rel=1e-9)
    rep_half = adelic_minima(body.scaled(F(1, 2)))
    assert rep_half.minima == pytest.approx([2 * x for x in rep.minima], rel=1e-9)


def test_scaled_body_keeps_the_module():
    body = unit_ball_body("Q_i")
    scaled = body.scaled(F(3))
    assert scaled.finite_part is body.finite_part
    assert scaled.infinite_part.place_bodies[0].shape == Ball(F(3))


def test_adelic_body_validation():
    k2, k5 = preset_field("Q_sqrt2"), preset_field("Q_sqrt5")
    with pytest.raises(ValueError):
        AdelicBody(standard_module(k2, 1), uniform_ball_body(k5, 1, F(1)))
    with pytest.raises(ValueError):
        AdelicBody(standard_module(k2, 2), uniform_ball_body(k2, 1, F(1)))


# -- transference ------------------------------------------------------------


def test_sqrt2_example_transference_reaches_lower_bound():
    report = transference_check(box_body_sqrt2())
    assert report.passed
    assert report.flags.totally_real
    assert report.lower == pytest.approx(8 ** -0.5)
    row = report.rows[0]
    assert row.product == pytest.approx(8 ** -0.5, abs=1e-9)
    assert row.lower_verdict == "pass"
    assert row.upper_verdict == "pass"
    assert row.verdict == "pass"


def test_unit_ball_products_achieve_the_lower_bound():
    """For real quadratic rings the unit-ball product is exactly |disc|^(-1/2)."""
    for name in ("Q_sqrt2", "Q_sqrt5"):
        body = unit_ball_body(name)
        report = transference_check(body)
        want = abs(body.field.discriminant) ** -0.5
        assert report.rows[0].product == pytest.approx(want, abs=1e-9)
        assert report.passed


def test_gaussian_unit_ball_product_is_one():
    report = transference_check(unit_ball_body("Q_i"))
    assert report.rows[0].product == pytest.approx(1.0, abs=1e-9)
    assert report.lower == pytest.approx(0.5)
    assert report.flags.cm and not report.flags.cm_was_asserted
    assert report.passed


def test_eisenstein_unit_ball_product():
    report = transference_check(unit_ball_body("Q_sqrt-3"))
    assert report.rows[0].product == pytest.approx(2 / math.sqrt(3), abs=1e-9)
    assert report.passed


def test_rational_unit_lattice_products_are_one():
    q = rational_field()
    for n in (1, 2, 3):
        body = AdelicBody(standard_module(q, n), uniform_ball_body(q, n, F(1)))
        report = transference_check(body)
        assert report.lower == pytest.approx(1.0)
        for row in report.rows:
            assert row.product == pytest.approx(1.0, abs=1e-9)
        assert report.passed


def test_rank_two_transference_products():
    k = preset_field("Q_sqrt2")
    body = AdelicBody(standard_module(k, 2), uniform_ball_body(k, 2, F(1)))
    report = transference_check(body)
    assert report.n == 2 and report.d == 2
    assert report.upper == pytest.approx(8.0)  # (nd)^(3/2) = 4^1.5
    for row in report.rows:
        assert row.product == pytest.approx(8 ** -0.5, abs=1e-9)
    assert report.passed


def test_lower_bound_is_na_for_mixed_signature_fields():
    # a cubic field with one real and one complex place is neither totally
    # real nor CM, so the lower bound must report n/a rather than fail
    from adelic import NumberField
    k = NumberField([-2, 0, 0, 1],
                    [[1, 0, 0], [0, 1, 0], [0, 0, 1]])  # x^3 - 2, Z[2^(1/3)]
    assert k.signature == (1, 1)
    body = AdelicBody(standard_module(k, 1), uniform_ball_body(k, 1, F(1)))
    report = transference_check(body)
    assert report.lower is None
    assert not report.flags.lower_bound_applies
    for row in report.rows:
        assert row.lower_verdict == "n/a"
        assert row.upper_verdict == "pass"
        assert row.verdict == "pass"
    assert report.passed


def test_transference_products_are_scale_invariant():
    body = unit_ball_body("Q_sqrt5")
    base = [row.product for row in transference_check(body).rows]
    scaled = [row.product for row in transference_check(body.scaled(F(3))).rows]
    assert scaled == pytest.approx(base, rel=1e-9)


# -- inhomogeneous minimum and the mu product --------------------------------


def test_inhomogeneous_minimum_of_z():
    q = rational_field()
    body = AdelicBody(standard_module(q, 1), uniform_ball_body(q, 1, F(1)))
    lo, hi = inhomogeneous_minimum(body, resolution=64)
    assert lo <= 0.5 <= hi
    assert hi - lo < 0.05


def test_mu_product_report_brackets():
    body = box_body_sqrt2()
    rep = mu_product_report(body, resolution=32)
    assert rep.lambda1 == pytest.approx(1.0, abs=1e-9)
    lo, hi = rep.mu_bracket
    assert 0 < lo <= hi
    assert rep.product_bracket == (pytest.approx(rep.lambda1 * lo),
                                   pytest.approx(rep.lambda1 * hi))
    nd = 2
    assert rep.reference == pytest.approx(nd * (1 + math.log(nd)))
    # the bracketed product should sit below the reference for this example
    assert hi < rep.reference
