import math

import numpy as np
import pytest

from graphreg import catalog
from graphreg import expressions as ex
from graphreg.errors import DeclarationMismatch
from graphreg.symbols import (
    Declaration,
    PiecewiseSymbol,
    PointClass,
    classify_point,
    conjugate_symbol,
    detect_point,
    domain_membership,
    hat_extension,
    interval,
    multiply_symbols,
    range_membership_one_plus_tt,
    real_line,
    regularity_report,
    sample_grid,
    symbol_equivalent,
    symbol_from_dict,
    symbol_to_dict,
)

INF = float("inf")


# -- detector -------------------------------------------------------------------


def test_one_over_x_diverges_at_zero():
    det = detect_point(catalog.one_over_x(), 0.0)
    assert det.kind is PointClass.REG_INF
    assert det.sides == 2


def test_oscillation_detected_at_zero():
    det = detect_point(catalog.exp_i_over_x(), 0.0)
    assert det.kind is PointClass.SING_SUPP


def test_squeeze_to_zero_detected():
    det = detect_point(catalog.x_exp_minus_i_over_x(), 0.0)
    assert det.kind is PointClass.REG_B
    assert abs(det.limit) < 1e-9


def test_jump_counts_as_singular_support():
    # sign(x)/sqrt(1+x^2): bounded, both one-sided limits exist but differ
    pos = ex.parse_expression("1/sqrt(1+x^2)")
    neg = ex.parse_expression("-1/sqrt(1+x^2)")
    sym = PiecewiseSymbol(real_line(punctures=(0.0,)),
                          ((-INF, 0.0, neg), (0.0, INF, pos)),
                          (Declaration(0.0, PointClass.SING_SUPP),))
    assert detect_point(sym, 0.0).kind is PointClass.SING_SUPP


def test_declaration_mismatch_raises():
    sym = PiecewiseSymbol(
        interval(0, 1, punctures=(0.0,)),
        ((0.0, 1.0, ex.parse_expression("1/x")),),
        (Declaration(0.0, PointClass.REG_B, 0.0),))
    with pytest.raises(DeclarationMismatch):
        classify_point(sym, 0.0)


def test_declared_limit_checked():
    sym = PiecewiseSymbol(
        interval(0, 1, punctures=(0.0,)),
        ((0.0, 1.0, ex.VAR),),
        (Declaration(0.0, PointClass.REG_B, 7.0),))
    with pytest.raises(DeclarationMismatch):
        classify_point(sym, 0.0)


# -- catalog verdicts ---------------------------------------------------------------


CATALOG_EXPECT = {
    "x": (True, True),
    "one_over_x": (True, False),
    "exp_i_over_x": (False, False),
    "exp_i_over_x_over_x": (True, False),
    "x_exp_minus_i_over_x": (True, True),
}


@pytest.mark.parametrize("name", sorted(CATALOG_EXPECT))
def test_catalog_classification(name):
    rep = regularity_report(catalog.get(name))
    graph_regular, regular = CATALOG_EXPECT[name]
    assert rep.graph_regular == graph_regular
    assert rep.regular == regular
    assert rep.essentially_defined and rep.orthogonally_closed and rep.reg_dense
    assert (rep.a_symbol is not None) == graph_regular


def test_transform_symbols_for_one_over_x():
    rep = regularity_report(catalog.one_over_x())
    xs = np.array([-3.0, -0.7, 0.4, 2.0])
    assert np.abs(rep.a_symbol(xs) - xs ** 2 / (1 + xs ** 2)).max() < 1e-12
    assert np.abs(rep.b_symbol(xs) - xs / (1 + xs ** 2)).max() < 1e-12
    assert rep.a_symbol(0.0) == 0.0  # extension value at the divergence point
    assert rep.b_symbol(0.0) == 0.0


def test_ab_identity_pointwise_on_dense_grid():
    # normal case: |b|^2 = a - a^2 on a 10^4-point grid
    for name in ("one_over_x", "exp_i_over_x_over_x", "x"):
        rep = regularity_report(catalog.get(name))
        grid = sample_grid(rep.symbol, bulk=10_000)
        a = rep.a_symbol(grid)
        b = rep.b_symbol(grid)
        good = ~(np.isnan(a) | np.isnan(b))
        resid = np.abs(np.abs(b[good]) ** 2 - (a[good] - a[good] ** 2))
        assert resid.max() < 1e-9


def test_adjoint_pairing_on_bump_symbols():
    # <t_m f, g> = <f, t_mbar g> pointwise for interior bumps
    m = catalog.exp_i_over_x_over_x()
    bump = PiecewiseSymbol(interval(0, 1),
                           ((0.0, 1.0, ex.parse_expression("x^2*(1-x)")),))
    bump2 = PiecewiseSymbol(interval(0, 1),
                            ((0.0, 1.0, ex.parse_expression("x^3*(1-x)^2")),))
    grid = np.linspace(0.01, 0.99, 500)
    tmf = m(grid) * bump(grid)
    lhs = np.conj(tmf) * bump2(grid)
    rhs = np.conj(bump(grid)) * (np.conj(m(grid)) * bump2(grid))
    assert np.abs(lhs - rhs).max() < 1e-9


def test_product_law_on_common_domain():
    # values of t_m t_n and t_{mn} agree where both are defined
    m, n = catalog.one_over_x(), catalog.identity_symbol()
    prod = multiply_symbols(m, n)
    grid = np.array([-5.0, -1.2, 0.3, 2.5])
    assert np.abs(prod(grid) - m(grid) * n(grid)).max() < 1e-12
    assert np.abs(prod(grid) - 1.0).max() < 1e-12


def test_sum_law_on_common_domain():
    from graphreg.symbols import add_symbols

    m, n = catalog.one_over_x(), catalog.identity_symbol()
    total = add_symbols(m, n)
    grid = np.array([-5.0, -1.2, 0.3, 2.5])
    assert np.abs(total(grid) - (m(grid) + n(grid))).max() < 1e-12
    assert np.abs(total(grid) - (1.0 / grid + grid)).max() < 1e-12


# -- hat extension ------------------------------------------------------------------


def test_hat_absorbs_finite_limit_points():
    m = catalog.x_exp_minus_i_over_x()
    h = hat_extension(m)
    assert h.domain.punctures == ()
    assert h(0.0) == 0.0
    assert hat_extension(h).fills == h.fills  # idempotent


def test_hat_keeps_divergence_points():
    m = catalog.one_over_x()
    h = hat_extension(m)
    assert h.domain.punctures == (0.0,)
    assert detect_point(h, 0.0).kind is PointClass.REG_INF


def test_hat_idempotent_on_catalog():
    for name in catalog.names():
        h = hat_extension(catalog.get(name))
        h2 = hat_extension(h)
        assert h2.domain.punctures == h.domain.punctures
        assert h2.fills == h.fills
        for p in h.domain.punctures:
            assert detect_point(h2, p).kind == detect_point(h, p).kind


# -- equivalence ----------------------------------------------------------------------


def test_equivalent_to_hat():
    m = catalog.x_exp_minus_i_over_x()
    assert symbol_equivalent(m, hat_extension(m))


def test_value_at_divergence_point_irrelevant():
    m = catalog.one_over_x()
    filled = PiecewiseSymbol(m.domain, m.pieces, m.declarations,
                             ((0.0, 5.0 + 0j),))
    assert symbol_equivalent(m, filled)


def test_different_functions_not_equivalent():
    mx = catalog.identity_symbol()
    mx1 = PiecewiseSymbol(mx.domain,
                          ((-INF, INF, ex.add(ex.VAR, ex.ONE)),))
    assert not symbol_equivalent(mx, mx1)


# -- membership questions ----------------------------------------------------------------


class TestDomainMembership:
    def test_paper_witness_pair(self):
        m = catalog.exp_i_over_x_over_x()
        f = catalog.x_exp_minus_i_over_x()
        assert domain_membership(m, f) is True
        assert domain_membership(conjugate_symbol(m), f) is False

    def test_absolute_value_witnesses(self):
        absm = PiecewiseSymbol(
            interval(0, 1, punctures=(0.0,)),
            ((0.0, 1.0, ex.parse_expression("1/x")),),
            (Declaration(0.0, PointClass.REG_INF),))
        f = catalog.x_exp_minus_i_over_x()
        g = catalog.x_on_unit_interval()
        assert domain_membership(absm, f) is False
        assert domain_membership(absm, g) is True
        assert domain_membership(catalog.exp_i_over_x_over_x(), g) is False

    def test_bounded_symbol_full_domain(self):
        m = catalog.x_on_unit_interval()
        f = catalog.x_on_unit_interval()
        assert domain_membership(m, f) is True

    def test_rejects_non_c0_witness(self):
        m = catalog.one_over_x()
        not_c0 = PiecewiseSymbol(real_line(), ((-INF, INF, ex.ONE),))
        with pytest.raises(ValueError):
            domain_membership(m, not_c0)


class TestRangeMembership:
    def test_nonvanishing_excluded(self):
        m = catalog.exp_i_over_x()
        g1 = PiecewiseSymbol(interval(0, 1), ((0.0, 1.0, ex.ONE),))
        assert range_membership_one_plus_tt(m, g1) is False

    def test_vanishing_included(self):
        m = catalog.exp_i_over_x()
        assert range_membership_one_plus_tt(m, catalog.x_on_unit_interval())

    def test_empty_singular_support_accepts_everything(self):
        m = catalog.one_over_x()
        g = PiecewiseSymbol(real_line(), ((-INF, INF, ex.ONE),))
        assert range_membership_one_plus_tt(m, g) is True


# -- serialization ---------------------------------------------------------------------


def test_symbol_file_round_trip():
    for name in catalog.names():
        sym = catalog.BUILDERS[name]()
        data = symbol_to_dict(sym)
        again = symbol_from_dict(data)
        assert symbol_to_dict(again) == data
        grid = sample_grid(sym, bulk=64)
        v1, v2 = sym(grid), again(grid)
        good = ~np.isnan(v1)
        assert np.allclose(v1[good], v2[good])


def test_scalar_evaluation_and_fills():
    m = hat_extension(catalog.x_exp_minus_i_over_x())
    assert m(0.0) == 0.0
    assert math.isnan(catalog.x_exp_minus_i_over_x()(0.0).real)
