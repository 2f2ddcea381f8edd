import numpy as np
import pytest

from polyanalytic import (Disc, PolyElement, QuotientElement, Rect, SampleSet, SamplingConfig,
                          convergence_check, evaluate, fit_components, peel_components)
from polyanalytic.decompose import design_matrix, interior_points, wirtinger_dzbar
from polyanalytic.errors import InputError, OrderMismatchError, RankDeficientError

from _gen import padded, random_disc_points, random_matrix, rel_err

z = PolyElement.z()
zb = PolyElement.zbar()
UNIT = Disc(0, 1)
FAST = SamplingConfig(grid_n=40)


def grid_points(n=40):
    side = int(np.ceil(np.sqrt(n)))
    x = np.linspace(-0.9, 0.9, side)
    pts = (x[:, None] + 1j * x[None, :]).ravel()
    return pts[:n]


def max_diff(A, B):
    PA, PB = padded(np.asarray(A), np.asarray(B))
    return float(np.max(np.abs(PA - PB)))


# fit_components

def test_fit_example():
    f = (1 + z) + z ** 2 * zb
    res = fit_components(SampleSet.from_function(f, grid_points(40)), 2, 2)
    assert res.residual <= 1e-9
    assert max_diff(res.element.rep.matrix, f.matrix) <= 1e-8


def test_fit_analytic_q1():
    res = fit_components(SampleSet.from_function(lambda w: w ** 3, grid_points(30)), 1, 3)
    assert max_diff(res.element.rep.matrix, [[0, 0, 0, 1]]) <= 1e-10


def test_fit_too_few_samples():
    with pytest.raises(InputError):
        fit_components(SampleSet([0, 0.5, 1j], [1, 2, 3]), 2, 2)


def test_fit_rank_deficient():
    # points on a circle: zbar = 1/z there, so z * zbar and 1 coincide
    pts = np.exp(2j * np.pi * np.arange(40) / 40)
    with pytest.raises(RankDeficientError):
        fit_components(SampleSet(pts, np.ones(40)), 2, 2)


def test_fit_round_trip_random():
    rng = np.random.default_rng(0)
    for _ in range(30):
        q, deg = int(rng.integers(1, 5)), int(rng.integers(0, 6))
        M = random_matrix(rng, q, deg)
        f = PolyElement.from_matrix(M)
        pts = random_disc_points(rng, 3 * q * (deg + 1) + 5)
        res = fit_components(SampleSet.from_function(f, pts), q, deg)
        assert rel_err(res.element.rep.matrix, f.matrix) <= 1e-8


def test_fit_distinguishes_distinct_elements():
    rng = np.random.default_rng(1)
    pts = random_disc_points(rng, 40)
    f = PolyElement.from_matrix(random_matrix(rng, 2, 3))
    g = f + 1e-6 * zb * z ** 2
    res = fit_components(SampleSet.from_function(g, pts), 2, 3)
    ff = fit_components(SampleSet.from_function(f, pts), 2, 3)
    assert res.residual <= 1e-9
    # the fit of g does not explain samples of f
    assert np.max(np.abs(evaluate(res.element.rep, pts) - evaluate(f, pts))) > 1e-9
    assert rel_err(ff.element.rep.matrix, f.matrix) <= 1e-8


def test_design_matrix_columns():
    A = design_matrix(np.array([2j]), 2, 1)
    assert np.allclose(A, [[1, 2j, -2j, 4]])


# peel_components

def test_peel_zbar_squared():
    res = peel_components(lambda w: np.conj(w) ** 2, UNIT, 3, h=1e-3, deg=2)
    top = np.array(res.component(2).coeffs)
    assert abs(top[0] - 1) <= 1e-5 and np.all(np.abs(top[1:]) <= 1e-5)


def test_peel_q1_is_plain_fit():
    f = lambda w: 1 + 2 * w - w ** 3
    res = peel_components(f, UNIT, 1, deg=3)
    assert max_diff(res.rep.matrix, [[1, 2, 0, -1]]) <= 1e-10


def test_peel_z_zbar():
    res = peel_components(lambda w: w * np.conj(w), UNIT, 2, h=1e-3, deg=3)
    assert max_diff(res.rep.matrix, [[0, 0], [0, 1]]) <= 1e-5


def test_peel_second_order_in_step():
    f = lambda w: w ** 5 * np.conj(w) + np.conj(w) ** 2 * w ** 3
    exact = (z ** 5 * zb + zb ** 2 * z ** 3).matrix
    errs = [max_diff(peel_components(f, UNIT, 3, h=h, deg=6).rep.matrix, exact)
            for h in (1e-2, 1e-3)]
    assert errs[1] <= 100 * 1e-3 ** 2
    assert 25 <= errs[0] / errs[1] <= 400


def test_peel_richardson_improves():
    f = lambda w: w ** 5 * np.conj(w)
    exact = (z ** 5 * zb).matrix
    plain = max_diff(peel_components(f, UNIT, 2, h=1e-2).rep.matrix, exact)
    rich = max_diff(peel_components(f, UNIT, 2, h=1e-2, richardson=True).rep.matrix, exact)
    assert rich < 1e-3 * plain


def test_peel_agrees_with_fit():
    f = PolyElement([[0.5, 1j, 0.2], [0.3, 0, 0.1], [1, -0.4]])
    R = Rect(-0.5 - 0.5j, 0.5 + 0.5j)
    h = 1e-3
    peeled = peel_components(f, R, 3, h=h, deg=4)
    fitted = fit_components(SampleSet.from_function(f, R.sample(12)), 3, 4)
    assert rel_err(peeled.rep.matrix, fitted.element.rep.matrix) <= 100 * h ** 2


@pytest.mark.parametrize("h", [0.0, -1e-3, 0.5])
def test_peel_step_errors(h):
    with pytest.raises(InputError):
        peel_components(lambda w: w, UNIT, 2, h=h)


def test_wirtinger_derivative_of_monomials():
    pts = np.array([0.3 + 0.1j, -0.2j])
    d = wirtinger_dzbar(lambda w: w * np.conj(w), 1e-4)(pts)
    assert np.max(np.abs(d - pts)) < 1e-10
    d = wirtinger_dzbar(lambda w: w ** 2, 1e-4)(pts)
    assert np.max(np.abs(d)) < 1e-10


def test_interior_points_stay_inside():
    pts = interior_points(UNIT, 0.1)
    assert pts.size > 0
    for d in (0.1, -0.1, 0.1j, -0.1j):
        assert np.all(UNIT.contains(pts + d, tol=0))


def test_black_box_scalar_only():
    # callables that only accept scalars are evaluated point by point
    import cmath
    s = SampleSet.from_function(lambda w: cmath.exp(w), np.array([0, 1j]))
    assert s.values[0] == 1 and s.values[1] == pytest.approx(cmath.exp(1j))


# convergence_check

def sequence(n_max):
    return [QuotientElement(2, (1 + z * (1 / n)) + zb * z ** 2) for n in range(1, n_max + 1)]


def test_convergence_example():
    rep = convergence_check(sequence(8), UNIT, FAST)
    assert len(rep.sup_dists) == 7
    for i, d in enumerate(rep.sup_dists, start=1):
        assert d == pytest.approx(1 / i - 1 / (i + 1), rel=1e-12)
    assert all(c[1] == 0 for c in rep.component_dists)
    assert all(np.diff(rep.sup_dists) < 0)
    assert rep.max_ratio == pytest.approx(1.0)


def test_convergence_constant_sequence():
    f = QuotientElement(2, 1 + zb)
    rep = convergence_check([f] * 4, UNIT, FAST)
    assert rep.sup_dists == [0.0] * 3 and rep.max_ratio == 0.0


def test_convergence_ideal_collapse():
    seq = [QuotientElement(3, zb ** n) for n in range(3, 7)]
    rep = convergence_check(seq, UNIT, FAST)
    assert rep.sup_dists == [0.0] * 3
    assert all(all(c == 0 for c in row) for row in rep.component_dists)


def test_convergence_mismatch():
    with pytest.raises(OrderMismatchError):
        convergence_check([QuotientElement(2, z), QuotientElement(3, z)], UNIT, FAST)
    with pytest.raises(InputError):
        convergence_check([QuotientElement(2, z), QuotientElement(2, z.as_taylor(0, 4))], UNIT, FAST)


def test_convergence_empty():
    assert convergence_check([], UNIT).sup_dists == []


# sample sets

def test_sample_set_validation():
    with pytest.raises(InputError):
        SampleSet([], [])
    with pytest.raises(InputError):
        SampleSet([0, 1], [1])
    with pytest.raises(InputError):
        SampleSet([0, 0], [1, 2])
    with pytest.raises(InputError):
        SampleSet([0], [np.nan])


def test_csv_round_trip(tmp_path):
    s = SampleSet([0.1 + 0.2j, -1e-17 + 3j], [1 / 3, 2 - 1j / 7])
    for header in (True, False):
        path = tmp_path / f"s{header}.csv"
        s.to_csv(path, header=header)
        back = SampleSet.from_csv(path)
        assert np.array_equal(back.z, s.z) and np.array_equal(back.values, s.values)


def test_csv_errors(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,0,1\n")
    with pytest.raises(InputError):
        SampleSet.from_csv(bad)
    bad.write_text("re,im,a,b\n1,2,x,4\n")
    with pytest.raises(InputError):
        SampleSet.from_csv(bad)
    bad.write_text("re,im,a,b\n")
    with pytest.raises(InputError):
        SampleSet.from_csv(bad)
