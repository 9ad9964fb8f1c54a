import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from risroom.materials import (
    MU0,
    CarrierConfig,
    Material,
    fresnel_spectrum,
    itu_permittivity,
    itu_table,
    material_from_itu,
    pec_surrogate,
    spatial_response,
)


def itu_by_hand(a, b, c, d, f_ghz):
    eps = a * f_ghz**b
    sigma = c * f_ghz**d
    return complex(eps, -17.98 * sigma / f_ghz)


def test_carrier():
    c = CarrierConfig(28e9)
    assert c.c == 299792458
    assert c.lambda_c == pytest.approx(299792458 / 28e9)
    assert c.k == pytest.approx(2 * math.pi / c.lambda_c)
    with pytest.raises(ValueError):
        CarrierConfig(0.0)
    assert MU0 == pytest.approx(4e-7 * math.pi)


def test_concrete_index_reference_value(concrete):
    # the reference index quoted for concrete at 28 GHz
    assert concrete.n.real == pytest.approx(5.31, abs=5e-3)
    assert concrete.n.imag == pytest.approx(-0.3106, abs=5e-3)


def test_itu_constants_by_hand():
    assert itu_permittivity("concrete", 28e9) == pytest.approx(itu_by_hand(5.31, 0, 0.0326, 0.8095, 28), rel=1e-12)
    assert itu_permittivity("plasterboard", 28e9) == pytest.approx(
        itu_by_hand(2.94, 0, 0.0116, 0.7076, 28), rel=1e-12
    )
    # hand-evaluated: 0.0116 * 28**0.7076 = 0.12260 S/m, 17.98 * 0.12260 / 28 = 0.07872
    assert itu_permittivity("plasterboard", 28e9).imag == pytest.approx(-0.07872, abs=1e-4)


def test_index_conventions():
    paper = material_from_itu("plasterboard", 28e9)
    physical = material_from_itu("plasterboard", 28e9, index_convention="physical")
    eps = itu_permittivity("plasterboard", 28e9)
    assert paper.n == pytest.approx(eps)
    assert physical.n == pytest.approx(cmath.sqrt(eps))
    assert physical.eps_r == pytest.approx(eps)
    for m in (paper, physical):
        assert m.n.imag <= 0
        assert m.n == pytest.approx(cmath.sqrt(m.eps_r * m.mu_r))


def test_custom_free_space(carrier):
    m = material_from_itu("custom", 28e9, eps_r=1.0, mu_r=1.0)
    assert m.n == 1
    assert fresnel_spectrum(0.3 * carrier.k, m, carrier) == pytest.approx(0, abs=1e-15)


def test_material_errors():
    with pytest.raises(ValueError):
        material_from_itu("unobtainium", 28e9)
    with pytest.raises(ValueError):
        material_from_itu("concrete", 150e9)
    with pytest.raises(ValueError):
        material_from_itu("concrete", 0.5e9)
    with pytest.raises(ValueError):
        material_from_itu("custom", 28e9)
    with pytest.raises(ValueError):
        material_from_itu("concrete", 28e9, index_convention="other")
    with pytest.raises(ValueError):
        Material.from_constitutive("gain", 4 + 1j)
    with pytest.raises(ValueError):
        Material.from_index("gain", 2 + 0.1j)


def test_table_ships_with_package():
    table = itu_table()
    assert {"concrete", "plasterboard"} <= set(table)


def test_normal_incidence(carrier, concrete):
    n = 5.31 - 0.310687j
    assert fresnel_spectrum(0.0, concrete, carrier) == pytest.approx((1 - n) / (1 + n), rel=1e-5)
    assert fresnel_spectrum(0.0, concrete, carrier) == pytest.approx((1 - concrete.n) / (1 + concrete.n), rel=1e-14)


def test_pec_limit(carrier, pec):
    kx = np.linspace(-carrier.k, carrier.k, 101)
    assert np.max(np.abs(fresnel_spectrum(kx, pec, carrier) + 1)) < 1e-5


def test_grazing_limit(carrier, concrete, plasterboard):
    for m in (concrete, plasterboard):
        assert abs(fresnel_spectrum(0.999999 * carrier.k, m, carrier) + 1) < 1e-2


def test_evanescent_rejected(carrier, concrete):
    with pytest.raises(ValueError):
        fresnel_spectrum(1.001 * carrier.k, concrete, carrier)


def test_array_and_scalar(carrier, concrete):
    assert isinstance(fresnel_spectrum(0.5 * carrier.k, concrete, carrier), complex)
    assert fresnel_spectrum(np.zeros(3), concrete, carrier).shape == (3,)


passive = st.builds(
    lambda re, im, mu: Material.from_constitutive("m", complex(re, -im), mu),
    st.floats(1.0, 80.0),
    st.floats(0.0, 30.0),
    st.floats(1.0, 5.0),
)


@given(passive, st.floats(-1.0, 1.0))
def test_passive_materials_never_amplify(material, t):
    carrier = CarrierConfig()
    assert abs(fresnel_spectrum(t * carrier.k, material, carrier)) <= 1 + 1e-12


@given(passive, st.floats(0.0, 1.0))
def test_spectrum_is_even(material, t):
    carrier = CarrierConfig()
    kx = t * carrier.k
    assert fresnel_spectrum(kx, material, carrier) == fresnel_spectrum(-kx, material, carrier)


def test_spatial_response_pec_is_band_limited_delta(carrier, pec, lam):
    step = lam / 8
    u = np.arange(-160, 161) * step
    resp = spatial_response(pec, carrier, u)
    # closed form of the band-limited -delta: -sin(k u) / (pi u)
    with np.errstate(invalid="ignore", divide="ignore"):
        exact = np.where(u == 0, -carrier.k / math.pi, -np.sin(carrier.k * u) / (math.pi * u))
    assert np.max(np.abs(resp - exact)) < 1e-6 * carrier.k
    area = np.trapezoid(resp, u)
    assert area.real == pytest.approx(-1, abs=0.02)
    assert abs(area.imag) < 1e-6


def test_spatial_response_even_and_refinement(carrier, concrete, lam):
    span = 5 * lam
    coarse = np.linspace(-span, span, 81)
    fine = np.linspace(-span, span, 161)
    rc = spatial_response(concrete, carrier, coarse)
    rf = spatial_response(concrete, carrier, fine)
    np.testing.assert_allclose(rc, rc[::-1], rtol=1e-9, atol=1e-9 * carrier.k)
    ic = np.trapezoid(np.abs(rc), coarse)
    if_ = np.trapezoid(np.abs(rf), fine)
    assert abs(ic / if_ - 1) < 0.01


def test_spatial_response_grid_checks(carrier, concrete, lam):
    with pytest.raises(ValueError):
        spatial_response(concrete, carrier, np.array([0.0, lam / 2]))
    with pytest.raises(ValueError):
        spatial_response(concrete, carrier, np.array([0.0, 1e-4, 3e-4]))
    with pytest.raises(ValueError):
        spatial_response(concrete, carrier, np.array([0.0]))


def test_pec_surrogate():
    assert pec_surrogate().n == 1e6
