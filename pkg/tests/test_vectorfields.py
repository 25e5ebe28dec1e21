"""Coordinate realization: operator calculus, hatted blocks, closure."""

from fractions import Fraction

import pytest

from colorsga.colored import Lam, Pc, Xc, color_degree, colored_basis
from colorsga.errors import SecondOrderResidue
from colorsga.galilei import D, H, K, P, Q, S, X
from colorsga.grading import DEG
from colorsga.grassmann import GPoly, VarTable
from colorsga.vectorfields import (
    CLOSING_READINGS,
    DiffOperator,
    Readings,
    build_vf_generators,
    realize,
    verify_vf_realization,
    vf_bracket,
)

T2 = VarTable(2)


def var(v):
    return GPoly.var(v)


# -- DiffOperator calculus -----------------------------------------------------


def test_mult_and_derivative_compose_to_leibniz():
    t = T2
    f = DiffOperator.mult(var(t.x1))
    d = DiffOperator.d(t.x1, 1)
    # d.compose(f) = multiplication by d(x1)/dx1 plus x1 * d
    c = d.compose(f)
    assert c.coeff() == GPoly.scalar(1)
    assert c.coeff(t.x1) == var(t.x1)


def test_compose_anticommutes_odd_derivatives():
    t = T2
    d1 = DiffOperator.d(t.theta(1), 1)
    d2 = DiffOperator.d(t.theta(2), 1)
    c12 = d1.compose(d2)
    c21 = d2.compose(d1)
    assert c12 == c21.scaled(-1)
    # and a nilpotent derivative squares to zero
    assert d1.compose(d1).is_zero()


def test_compose_rejects_second_order_input():
    t = T2
    d1 = DiffOperator.d(t.theta(1), 1)
    second = d1.compose(DiffOperator.d(t.x1, var(t.theta(1))))
    assert second.order() == 2
    with pytest.raises(ValueError):
        second.compose(d1)


def test_apply_matches_compose_on_polynomials():
    t = T2
    op = DiffOperator.d(t.x1, var(t.x2)) + DiffOperator.d(t.psi(0), var(t.theta(1)))
    f = var(t.x1) * var(t.psi(0)) + var(t.x1) * var(t.x1)
    g = var(t.z(0)) * var(t.psi(1))
    # operator linearity and the Leibniz composition agree pointwise
    lhs = op.apply(f * g)
    rhs = op.apply(f) * g + f * op.apply(g)
    # op is odd-degree-mixed, so Leibniz holds only termwise on the even f;
    # check on the even part
    f_even = var(t.x1) * var(t.x1)
    assert op.apply(f_even * g) == op.apply(f_even) * g + f_even * op.apply(g)
    assert lhs == op.apply(f * g)  # smoke: no exception, canonical form


def test_degree_flags_inhomogeneous_operator():
    t = T2
    op = DiffOperator.d(t.x1, 1) + DiffOperator.d(t.theta(1), 1)
    with pytest.raises(ValueError):
        op.degree()


def test_lmul_left_multiplies_coefficients():
    t = T2
    op = DiffOperator.d(t.psi(0), var(t.theta(1)))
    twisted = op.lmul(var(t.theta(2)))
    assert twisted.coeff(t.psi(0)) == var(t.theta(2)) * var(t.theta(1))


def test_second_order_parts_cancel_in_brackets():
    t = T2
    a = DiffOperator.d(t.x1, var(t.x2))
    b = DiffOperator.d(t.x2, var(t.x1))
    comp = a.compose(b)
    assert comp.order() == 2  # compositions genuinely reach order two
    assert vf_bracket(a, b).order() <= 1  # the graded bracket never keeps it
    mixed = DiffOperator.d(t.theta(1), var(t.psi(0)))
    assert vf_bracket(mixed, b).order() <= 1


def test_second_order_residue_carries_payload():
    err = SecondOrderResidue("kept order two", residue={"key": "term"})
    assert err.residue == {"key": "term"}


# -- hatted grid blocks ----------------------------------------------------------


def test_phat_expansion_size_one():
    from colorsga.vectorfields import _Builder

    b = _Builder(1, CLOSING_READINGS)
    t = b.t
    # top corner is a bare derivative; lower indices pick up x2 tails
    assert b.phat(1, 1).coeff(t.y(1, 1)) == GPoly.monomial([], c=1, weight=Fraction(1))
    p00 = b.phat(0, 0)
    assert p00.coeff(t.y(0, 0)) == GPoly.monomial([], c=1, weight=Fraction(-1))
    # the (0,1) and (1,0) lattice contributions land on the same symmetric slot
    assert p00.coeff(t.y(0, 1)) == GPoly.monomial([(t.x2, 1)], c=-2, weight=Fraction(0))
    assert p00.coeff(t.y(1, 1)) == GPoly.monomial([(t.x2, 2)], c=1, weight=Fraction(1))
    # symmetric pair collapses to the same block
    assert b.phat(0, 1) == b.phat(1, 0)
    # out-of-range indices give the zero operator, not an error
    assert b.phat(2, 0).is_zero()


def test_xhat_antisymmetry_and_eigenweight():
    from colorsga.vectorfields import _Builder

    b = _Builder(2, CLOSING_READINGS)
    assert b.xhat(0, 1) == b.xhat(1, 0).scaled(-1)
    assert b.xhat(0, 0).is_zero()
    ops = build_vf_generators(2)
    # ad-D eigenvalue of each hatted block matches its weight label
    for hat, lam in [
        (b.phat(1, 1), Fraction(0)),
        (b.xhat(0, 1), Fraction(0)),
        (b.lhat(1, 0), Fraction(1, 2)),
    ]:
        got = vf_bracket(ops[D], hat)
        assert got == hat.scaled(lam)


def test_lhat_matches_composite_at_origin():
    # at the chart origin the hatted operators are plain grid derivatives;
    # the realized composites reduce to them up to the translation dressing
    from colorsga.vectorfields import _Builder

    b = _Builder(1, CLOSING_READINGS)
    ops = build_vf_generators(1)
    got = ops[Lam(0, 0)]
    t = b.t
    assert not got.coeff(t.sigma(0, 0)).is_zero()


# -- realized generators -----------------------------------------------------------


def test_realization_smallest_chart():
    # two_ell=0: no z coordinates, one psi, grids are 1x1/empty
    ops = build_vf_generators(0)
    t = VarTable(0)
    assert ops[H] == DiffOperator.d(t.x1, -1)
    q = ops[Q]
    assert q.coeff(t.theta(1)) == GPoly.scalar(-1)
    assert q.coeff(t.x1) == var(t.theta(1))
    s = ops[S]
    assert s.coeff(t.x3) == var(t.theta(1)).scaled(-2)
    d_op = ops[D]
    assert d_op.coeff(t.x3) == GPoly.scalar(-1)
    assert d_op.coeff(t.theta(1)) == var(t.theta(1)).scaled(Fraction(-1, 2))


def test_every_operator_is_first_order_and_homogeneous():
    for L in (0, 1, 2):
        ops = build_vf_generators(L)
        for g, op in ops.items():
            assert op.order() <= 1
            assert op.degree() == color_degree(g)


def test_conformal_core_closes_small_sizes():
    # closure checks need the structure-constant table, which starts at size 1
    for L in (1, 2):
        rep = verify_vf_realization(L, pairs="core")
        assert rep.ok, rep.summary()


def test_full_table_closes_size_one():
    rep = verify_vf_realization(1, pairs="all")
    assert rep.checked == 91
    assert rep.ok, "\n".join(rep.lines())


def test_conformal_rows_close_size_two():
    rep = verify_vf_realization(2, pairs="corerows")
    assert rep.ok, "\n".join(rep.lines())


def test_brackets_never_leave_residue():
    # vf_bracket raises on any uncancelled order-two term; a clean pass over
    # the mixed-parity pairs is the strongest no-residue statement we can make
    ops = build_vf_generators(1)
    gens = list(ops)
    for i, a in enumerate(gens):
        for b in gens[i:]:
            vf_bracket(ops[a], ops[b])


def test_realize_is_linear():
    ops = build_vf_generators(1)
    from colorsga.colored import build_colored_explicit

    alg = build_colored_explicit(1, central=False)
    lc = alg.bracket(Q, P(1))
    assert realize(ops, lc) == vf_bracket(ops[Q], ops[P(1)])


# -- readings arbitration ---------------------------------------------------------


def test_closing_readings_are_pinned():
    assert CLOSING_READINGS == Readings(
        dilation_weight_term=True,
        superconformal_theta2_twist=-1,
        momentum_z_lowered=True,
    )


@pytest.mark.parametrize(
    "wrong",
    [
        Readings(dilation_weight_term=False, superconformal_theta2_twist=-1, momentum_z_lowered=True),
        Readings(dilation_weight_term=True, superconformal_theta2_twist=1, momentum_z_lowered=True),
        Readings(dilation_weight_term=True, superconformal_theta2_twist=-1, momentum_z_lowered=False),
    ],
)
def test_each_alternative_reading_breaks_closure(wrong):
    rep = verify_vf_realization(1, pairs="all", readings=wrong)
    assert not rep.ok


def test_builder_rejects_bad_tower_size():
    with pytest.raises(ValueError):
        build_vf_generators(-1)


def test_verify_rejects_unknown_pair_selection():
    with pytest.raises(ValueError):
        verify_vf_realization(1, pairs="everything")
