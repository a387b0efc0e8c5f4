import math

import pytest

from l2stokes.defect import (
    CubicCutoff,
    CutoffPair,
    HarmonicFormSpec,
    RadialCoefficient,
    codifferential_coefficient,
    default_cutoffs,
    defect,
)
from l2stokes.errors import DegreeError, ParameterError, SingularEvaluationError, UnsupportedModelError
from l2stokes.geometry import WarpedModel, sphere, torus
from l2stokes.quadrature import quadrature

S1 = sphere(1)
TORUS_CONE = WarpedModel.of((S1, 1), (S1, 1))
FOUR_PI_SQ = 4 * math.pi**2


def test_cutoff_shape():
    c = CubicCutoff(2.0, 0.25, 0.5)
    assert c(0.0) == c(0.25) == 2.0
    assert c(0.5) == c(0.9) == 0.0
    assert c(0.375) == pytest.approx(1.0)
    assert c.derivative(0.25) == c.derivative(0.5) == 0.0
    # central difference of the cubic piece
    h = 1e-6
    assert c.derivative(0.3) == pytest.approx((c(0.3 + h) - c(0.3 - h)) / (2 * h), rel=1e-8)


def test_cutoff_ftc():
    psi = CubicCutoff(1.7, 0.1, 0.3)
    assert quadrature(psi.derivative, (0.0, 0.3), 1e-12, points=psi.knots) == pytest.approx(-1.7, abs=1e-12)


def test_cutoff_validation():
    with pytest.raises(ParameterError):
        CubicCutoff(1.0, 0.5, 0.25)
    with pytest.raises(ParameterError):
        CutoffPair(CubicCutoff(2.0), CubicCutoff(1.0, 0.1, 0.2))        # phi must reach 1
    with pytest.raises(ParameterError):
        CutoffPair(CubicCutoff(), CubicCutoff(1.0, 0.2, 0.3))           # psi leaks past {phi = 1}


def test_radial_coefficient():
    psi = CubicCutoff(1.0, 0.125, 0.25)
    c0 = RadialCoefficient(psi, 0)
    assert c0(0.0) == 0.0 and c0(0.2) == pytest.approx(-psi.derivative(0.2))
    c2 = codifferential_coefficient(TORUS_CONE, psi, 0)
    assert c2.beta == 2
    assert c2(0.1) == pytest.approx(-20.0)
    with pytest.raises(SingularEvaluationError):
        c2(0.0)
    assert c2.weighted(0.1) == pytest.approx(-0.2)
    vanishing = RadialCoefficient(CubicCutoff(0.0, 0.1, 0.2), 2)
    assert vanishing(0.0) == 0.0


def test_torus_cone_defect():
    res = defect(TORUS_CONE)
    assert res.beta == 0
    assert abs(res.defect) == pytest.approx(FOUR_PI_SQ, rel=1e-9)
    assert res.defect < 0
    assert res.closed_form == pytest.approx(-FOUR_PI_SQ)
    assert res.form_normalized == pytest.approx(-2 * math.pi)
    assert res.within_contract
    # d(mu) pairs with nu through phi' psi = 0, so the whole defect sits in (mu, d^t nu)
    assert res.d_mu_nu == 0.0


def test_off_critical_degree_has_no_defect():
    res = defect(TORUS_CONE, form=HarmonicFormSpec.unit(TORUS_CONE, 2, 0))
    assert res.beta == 2
    assert abs(res.defect) <= 1e-8
    assert res.closed_form == 0.0


def test_defect_scales_with_psi0_and_norm():
    cut = CutoffPair(CubicCutoff(), CubicCutoff(3.0, 0.1, 0.2))
    res = defect(TORUS_CONE, cut, HarmonicFormSpec(2, 1, 5.0))
    assert res.defect == pytest.approx(-2 * math.pi * 5.0 * 3.0, rel=1e-9)


def test_defect_independent_of_phi():
    other = CutoffPair(CubicCutoff(1.0, 0.3, 0.9), default_cutoffs().psi)
    a, b = defect(TORUS_CONE), defect(TORUS_CONE, other)
    assert a.defect == pytest.approx(b.defect, rel=1e-9)


def test_higher_dimensional_critical_model():
    model = WarpedModel.of((sphere(3), 1), (sphere(2), "3/2"))
    form = HarmonicFormSpec(2, 2, 1.0)
    res = defect(model, form=form)
    assert res.beta == 0
    assert res.defect == pytest.approx(-sphere(3).volume, rel=1e-9)


def test_torus_factor_model():
    t2 = torus([1.0, 2.0])
    model = WarpedModel.of((t2, 1), (t2, 1))
    res = defect(model)
    assert res.beta == 0
    assert res.defect == pytest.approx(-t2.volume**2, rel=1e-9)


def test_errors():
    with pytest.raises(UnsupportedModelError):
        defect(WarpedModel.of((S1, 1)))
    with pytest.raises(UnsupportedModelError):  # beta = 2 + 2 (2 - 4) = -2
        defect(WarpedModel.of((sphere(2), 1), (torus([1.0, 1.0]), 2)), form=HarmonicFormSpec(2, 2, 1.0))
    with pytest.raises(DegreeError):
        defect(WarpedModel.of((S1, 1), (sphere(2), 1)), form=HarmonicFormSpec(2, 1, 1.0))
    with pytest.raises(DegreeError):   # critical degree 3/2
        defect(WarpedModel.of((S1, 1), (sphere(2), 1)))


def test_result_dict():
    d = defect(TORUS_CONE).to_dict()
    assert set(d) >= {"beta", "defect", "closed_form", "abs_error", "form_normalized"}
    assert d["sign_convention"] == -1
