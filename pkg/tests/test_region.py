import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyanalytic import (Disc, PolyElement, QuotientElement, Rect, SamplingConfig, min_modulus,
                          parse_region, quotient_seminorm, sample, sup_norm)
from polyanalytic.algebra import AnalyticComponent
from polyanalytic.errors import InputError, RegionSyntaxError, TaylorDomainError

from _gen import random_element

z = PolyElement.z()
zb = PolyElement.zbar()
SMALL_DISC = Disc(0.75, 0.25)
UNIT = Disc(0, 1)
NO_REFINE = SamplingConfig(grid_n=60, refine=False)
FAST = SamplingConfig(grid_n=40)


def poly_component(*coeffs):
    return AnalyticComponent(tuple(complex(c) for c in coeffs))


# sampling

def test_disc_sample_has_center_and_rim():
    pts = sample(UNIT, 2)
    assert np.any(pts == 0)
    assert np.any(np.isclose(np.abs(pts), 1.0, rtol=0, atol=1e-15))


def test_rect_sample_grid_with_corners():
    pts = sample(Rect(0, 1 + 1j), 3)
    assert pts.size == 9
    for c in (0, 1, 1j, 1 + 1j):
        assert np.any(pts == c)


@pytest.mark.parametrize("region", [UNIT, SMALL_DISC, Rect(-1 - 2j, 0.5 + 1j), Disc(2 - 1j, 1e-3)])
@pytest.mark.parametrize("n", [2, 3, 17, 64])
def test_samples_lie_in_region(region, n):
    assert np.all(region.contains(sample(region, n)))


def test_disc_grids_are_nested():
    small, big = set(np.round(sample(UNIT, 8), 14)), set(np.round(sample(UNIT, 16), 14))
    assert small <= big


def test_rect_grids_are_nested():
    R = Rect(0, 2 + 1j)
    small, big = set(np.round(sample(R, 5), 14)), set(np.round(sample(R, 9), 14))
    assert small <= big


def test_sample_rejects_small_n():
    with pytest.raises(InputError):
        sample(UNIT, 1)


# region construction and text format

def test_parse_region_round_trip():
    for text in ("disc:0.75,0,0.25", "rect:-1,-2,0.5,1", "disc:1e-3,-2.5,3"):
        R = parse_region(text)
        assert parse_region(str(R)) == R
    assert parse_region("disc:0.75,0,0.25") == SMALL_DISC


@pytest.mark.parametrize("text", ["disc:0,0", "disc:0,0,-1", "rect:0,0,0,1", "square:0,0,1",
                                  "disc:a,0,1", ""])
def test_parse_region_errors(text):
    with pytest.raises(InputError) as info:
        parse_region(text)
    offset = getattr(info.value, "offset", 0)
    assert 0 <= offset <= len(text)


def test_region_syntax_error_has_offset():
    with pytest.raises(RegionSyntaxError) as info:
        parse_region("disc:1,2")
    assert info.value.offset == 5


# sup norm

def test_sup_norm_small_disc_values():
    assert sup_norm(z * zb, SMALL_DISC).value == pytest.approx(1.0, abs=1e-9)
    assert sup_norm(1 - z * zb, SMALL_DISC).value == pytest.approx(0.75, abs=1e-9)


@pytest.mark.parametrize("c", [0, 1, -2.5, 3 + 4j])
def test_sup_norm_constant(c):
    assert sup_norm(PolyElement.constant(c), Rect(-1, 1 + 1j)).value == pytest.approx(abs(c))


def test_sup_norm_interior_maximum_found():
    # 1 - |z|^2 peaks at the center, where an analytic function never could
    est = sup_norm(1 - z * zb, UNIT)
    assert est.value == pytest.approx(1.0)
    assert abs(est.argmax) < 1e-12


def test_sup_norm_value_matches_argmax():
    rng = np.random.default_rng(0)
    for _ in range(10):
        f = random_element(rng, 3, 4)
        est = sup_norm(f, UNIT, FAST)
        assert est.value == abs(f(est.argmax))
        assert UNIT.contains(est.argmax)
        assert est.grid_n == 40 and est.refined


def test_refinement_never_lowers_grid_value():
    rng = np.random.default_rng(1)
    for _ in range(10):
        f = random_element(rng, 3, 4)
        coarse = sup_norm(f, UNIT, SamplingConfig(grid_n=10, refine=False)).value
        refined = sup_norm(f, UNIT, SamplingConfig(grid_n=10)).value
        assert refined >= coarse


@pytest.mark.parametrize("region,ns", [(UNIT, [(5, 10), (10, 20), (20, 40)]),
                                       (Rect(-1, 1 + 2j), [(5, 9), (9, 17), (17, 33)])])
def test_grid_monotonicity(region, ns):
    rng = np.random.default_rng(2)
    for _ in range(10):
        f = random_element(rng, 3, 5)
        for k, k2 in ns:
            a = sup_norm(f, region, SamplingConfig(grid_n=k, refine=False)).value
            b = sup_norm(f, region, SamplingConfig(grid_n=k2, refine=False)).value
            assert b >= a - 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1),
       st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_scaling(seed, c):
    f = random_element(np.random.default_rng(seed), 3, 4)
    base = sup_norm(f, UNIT, NO_REFINE).value
    assert sup_norm(c * f, UNIT, NO_REFINE).value == pytest.approx(abs(c) * base, rel=1e-10, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_triangle_inequality(seed):
    rng = np.random.default_rng(seed)
    f, g = random_element(rng, 3, 4), random_element(rng, 3, 4)
    lhs = sup_norm(f + g, SMALL_DISC, NO_REFINE).value
    rhs = sup_norm(f, SMALL_DISC, NO_REFINE).value + sup_norm(g, SMALL_DISC, NO_REFINE).value
    assert lhs <= rhs + 1e-9


@pytest.mark.parametrize("region", [UNIT, Rect(0, 1 + 1j), Disc(-3, 0.1)])
def test_argmax_in_region(region):
    rng = np.random.default_rng(3)
    for _ in range(10):
        est = sup_norm(random_element(rng, 3, 5), region, FAST)
        assert region.contains(est.argmax)


def test_sup_norm_taylor_domain_checked():
    t = (1 + z).as_taylor(0, 8, radius=0.5)
    assert sup_norm(t, Disc(0, 0.4), FAST).value == pytest.approx(1.4)
    with pytest.raises(TaylorDomainError):
        sup_norm(t, UNIT)


# min modulus

def test_min_modulus_examples():
    a = poly_component(0, 1)
    assert min_modulus(a, 3, UNIT).value == pytest.approx(2.0, abs=1e-12)
    assert min_modulus(a, 0.5, UNIT).value == pytest.approx(0.0, abs=1e-6)


def test_min_modulus_against_dense_boundary():
    a = poly_component(0, 0, 1)
    theta = np.linspace(0, 2 * np.pi, 200001)
    dense = np.min(np.abs(2 - np.exp(2j * theta)))
    est = min_modulus(a, 2, UNIT)
    assert est.value == pytest.approx(dense, abs=1e-9)
    assert est.value == pytest.approx(1.0, abs=1e-9)


def test_min_modulus_accepts_element_row_zero():
    f = QuotientElement(2, 3 + z + zb * z)
    assert min_modulus(f.component(0), 0, UNIT).value == pytest.approx(2.0, abs=1e-12)


# quotient seminorm

def test_seminorm_of_ideal_member_is_zero():
    assert quotient_seminorm(QuotientElement(3, zb ** 3), UNIT, cfg=FAST).value == 0.0
    # as a raw representative the tail-cancelling start finds h = -1
    est = quotient_seminorm(zb ** 2, UNIT, cfg=FAST, q=2)
    assert est.value <= 1e-6
    assert est.witness == -(zb ** 2)


def test_seminorm_of_one_on_unit_disc():
    est = quotient_seminorm(QuotientElement.one(2), UNIT, cfg=FAST)
    assert est.value == pytest.approx(1.0, abs=1e-6)
    assert est.upper_bound


def test_seminorm_of_z_zbar_below_norm():
    f = QuotientElement(2, z * zb)
    est = quotient_seminorm(f, SMALL_DISC, cfg=FAST)
    assert est.value <= 1.0 + 1e-9
    # a representative with a zbar^2 tail attached is no larger than ||f||
    assert est.value <= sup_norm(z * zb, SMALL_DISC, FAST).value + 1e-9


def test_seminorm_below_norm_random():
    rng = np.random.default_rng(4)
    for _ in range(50):
        q = int(rng.integers(1, 4))
        f = QuotientElement(q, random_element(rng, q, 4))
        est = quotient_seminorm(f, UNIT, h_degree=3, h_order=1, cfg=SamplingConfig(grid_n=20),
                                starts=1, opt_grid=12)
        assert est.value <= sup_norm(f, UNIT, SamplingConfig(grid_n=20)).value + 1e-9


def test_seminorm_witness_reproduces_value():
    f = PolyElement([[0.2, 1], [0, 0.5], [0.3]])
    est = quotient_seminorm(f, UNIT, cfg=FAST, q=2)
    assert sup_norm(f + est.witness, UNIT, FAST).value == pytest.approx(est.value)
    assert est.witness.is_zero() or est.witness.matrix[:2].max() == 0


def test_seminorm_argument_errors():
    with pytest.raises(InputError):
        quotient_seminorm(z, UNIT)
    with pytest.raises(InputError):
        quotient_seminorm(QuotientElement(2, z), UNIT, h_degree=-1)
    with pytest.raises(InputError):
        quotient_seminorm(QuotientElement(2, z), UNIT, q=3)
