import numpy as np
import pytest
from numpy.polynomial import polynomial as npoly

from graphreg.errors import CircleRoot, InnerRoot, NotCoprime
from graphreg.toeplitz import (
    Verdict,
    affiliation_verdict,
    check_coprime,
    circle_samples,
    fejer_riesz,
    toeplitz_aab,
    toeplitz_truncation,
    trig_data,
)

RNG = np.random.default_rng(31337)


def random_instance(rng, max_deg=6):
    """Random coprime (p, q) with q outer (all roots outside the circle)."""
    dp = int(rng.integers(0, max_deg + 1))
    dq = int(rng.integers(0, max_deg + 1))
    p = rng.standard_normal(dp + 1) + 1j * rng.standard_normal(dp + 1)
    q = np.array([1.0 + 0j])
    for _ in range(dq):
        root = (1.1 + rng.random()) * np.exp(2j * np.pi * rng.random())
        q = npoly.polymul(q, np.array([1.0, -1.0 / root]))
    return p, q


# -- factorization ------------------------------------------------------------


def test_trivial_factorization():
    r = fejer_riesz([0.0], [1.0])
    assert np.allclose(r, [1.0])


def test_golden_ratio_instance():
    # oracle: |r|^2 = 3 - 2cosθ means r = c(1 - βz) with β + 1/β = 3,
    # i.e. β the root of β² - 3β + 1 = 0 inside (0,1), c = β^{-1/2}
    beta = (3 - np.sqrt(5)) / 2
    c = beta ** -0.5
    r = fejer_riesz([1.0], [1.0, -1.0])
    assert np.abs(r - np.array([c, -c * beta])).max() < 1e-9


def test_random_battery_invariants():
    for k in range(30):
        p, q = random_instance(RNG)
        data = trig_data(p, q)
        assert data.factor_residual < 1e-8, k
        assert data.unit_residual < 1e-8, k
        assert data.r_root_min_modulus > 1 + 1e-9
        assert data.f0.real > 0 and abs(data.f0.imag) < 1e-10


def test_coprime_guard():
    base = np.array([1.0, -0.5])
    with pytest.raises(NotCoprime):
        check_coprime(npoly.polymul(base, [1.0, 2.0]),
                      npoly.polymul(base, [3.0, 1.0]))


def test_degenerate_pair_rejected():
    # p = q = same polynomial: |p|^2+|q|^2 has circle-touching structure
    with pytest.raises((NotCoprime, CircleRoot)):
        fejer_riesz([1.0, -1.0], [1.0, -1.0])


# -- truncation -----------------------------------------------------------------


def test_truncation_constant_is_identity():
    t = toeplitz_truncation(np.ones(256, dtype=complex), 16)
    assert np.abs(t - np.eye(16)).max() < 1e-12


def test_truncation_z_is_shift():
    vals = circle_samples([0.0, 1.0], 256)
    t = toeplitz_truncation(vals, 16)
    assert np.abs(t - np.diag(np.ones(15), -1)).max() < 1e-12


def test_truncation_one_minus_z_bidiagonal():
    # hand Fourier coefficients: φ̂(0) = 1, φ̂(1) = -1, rest zero
    vals = circle_samples([1.0, -1.0], 256)
    t = toeplitz_truncation(vals, 4)
    expect = np.eye(4) - np.diag(np.ones(3), -1)
    assert np.abs(t - expect).max() < 1e-12


# -- transform triples -------------------------------------------------------------


def test_trivial_symbol_triple():
    tri = toeplitz_aab([0.0], [1.0], 16)
    assert np.abs(tri.a - np.eye(16)).max() < 1e-12
    assert np.abs(tri.b).max() < 1e-12


def test_interior_residual_small_for_shift_symbol():
    tri = toeplitz_aab([1.0], [1.0, -1.0], 256)
    res = tri.interior_residuals()
    assert res["bstar_b"] < 1e-6  # far below: outer factor decays fast


def test_interior_residuals_decay_with_n():
    # near-degenerate instance keeps the truncation error visible
    prev = None
    for n in (64, 128, 256):
        res = toeplitz_aab([0.05], [1.0, -1.0], n).interior_residuals()
        if prev is not None:
            for key in res:
                assert res[key] < prev[key], (n, key)
        prev = res


def test_resolvent_column_consistency():
    # B applied to interior basis vectors matches (I-S)^{-1} A there
    n = 128
    tri = toeplitz_aab([1.0], [1.0, -1.0], n)
    shift = np.diag(np.ones(n - 1), -1)
    inv = np.linalg.inv(np.eye(n) - shift)
    for k in (3, n // 4, n // 2 - 1):
        assert np.linalg.norm(tri.b[:, k] - inv @ tri.a[:, k]) < 1e-10


# -- verdicts --------------------------------------------------------------------


def test_circle_root_gives_associated_only():
    rep = affiliation_verdict([1.0], [1.0, -1.0])
    assert rep.verdict is Verdict.ASSOCIATED_ONLY
    assert len(rep.witnesses) == 1
    assert rep.witnesses[0] < 1e-12


def test_outer_root_gives_affiliated():
    rep = affiliation_verdict([1.0], [1.0, -0.5])
    assert rep.verdict is Verdict.AFFILIATED


def test_polynomial_symbol_affiliated():
    rep = affiliation_verdict([2.0, 0.0, 1.0], [1.0])
    assert rep.verdict is Verdict.AFFILIATED


def test_inner_root_rejected():
    with pytest.raises(InnerRoot):
        affiliation_verdict([1.0], [1.0, -1.0 / 0.999])


def test_verdict_stability_under_radial_perturbation():
    base = affiliation_verdict([1.0], [1.0, -1.0])
    assert base.verdict is Verdict.ASSOCIATED_ONLY
    outward = affiliation_verdict([1.0], [1.0, -1.0 / 1.001])
    assert outward.verdict is Verdict.AFFILIATED
    with pytest.raises(InnerRoot):
        affiliation_verdict([1.0], [1.0, -1.0 / 0.999])


def test_truncation_size_bound():
    with pytest.raises(ValueError):
        toeplitz_truncation(np.ones(64, dtype=complex), 1)
