"""Engine-level tests on small hand-built algebras, including seeded defects."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from colorsga.algebra import (
    ColorAlgebra,
    GeneratorId,
    LinComb,
    ad_eigen_decompose,
    parse_generator,
)
from colorsga.errors import NotDiagonal, UnknownGenerator
from colorsga.grading import DEG

E00, E01, E10, E11 = DEG["00"], DEG["01"], DEG["10"], DEG["11"]

GH = GeneratorId("H")
GD = GeneratorId("D")
GK = GeneratorId("K")


def lc(*pairs):
    return LinComb({g: Fraction(c) for c, g in pairs})


# -- generator ids -----------------------------------------------------------

def test_generator_str_and_parse_roundtrip():
    for g in (GH, GeneratorId("P", (0,)), GeneratorId("Pc", (2, 5)), GeneratorId("Lam", (0, 3))):
        assert parse_generator(str(g)) == g
    assert str(GeneratorId("X", (7,))) == "X[7]"
    assert str(GeneratorId("Xc", (1, 2))) == "Xc[1,2]"


def test_generator_validation():
    with pytest.raises(ValueError):
        GeneratorId("Z")
    with pytest.raises(ValueError):
        GeneratorId("H", (1,))
    with pytest.raises(ValueError):
        GeneratorId("P")
    with pytest.raises(ValueError):
        GeneratorId("P", (-1,))
    with pytest.raises(ValueError):
        parse_generator("P[1,]")


def test_generator_ordering_follows_family_rank():
    gens = [
        GeneratorId("I"),
        GeneratorId("X", (0,)),
        GeneratorId("P", (2,)),
        GeneratorId("P", (0,)),
        GeneratorId("Q"),
        GH,
    ]
    assert sorted(gens) == [
        GH,
        GeneratorId("P", (0,)),
        GeneratorId("P", (2,)),
        GeneratorId("Q"),
        GeneratorId("X", (0,)),
        GeneratorId("I"),
    ]


# -- linear combinations -----------------------------------------------------

def test_lincomb_arithmetic_and_str():
    a = lc((2, GH), (Fraction(-1, 2), GK))
    b = lc((1, GK))
    assert (a + b) == lc((2, GH), (Fraction(1, 2), GK))
    assert (a - a).is_zero()
    assert str(LinComb.zero()) == "0"
    assert str(lc((1, GH))) == "H"
    assert str(lc((-1, GH), (Fraction(-1, 2), GK))) == "-H - 1/2*K"
    assert str(lc((2, GD), (1, GH))) == "H + 2*D"
    assert (3 * b).coeff(GK) == 3


def test_lincomb_mapped_is_linear():
    a = lc((2, GH), (3, GK))
    swapped = a.mapped(lambda g: lc((1, GK)) if g == GH else lc((1, GH)))
    assert swapped == lc((3, GH), (2, GK))


@given(
    st.lists(
        st.tuples(
            st.sampled_from([GH, GD, GK]),
            st.fractions(min_value=-9, max_value=9, max_denominator=6),
        ),
        max_size=6,
    ),
    st.fractions(min_value=-9, max_value=9, max_denominator=6),
)
def test_lincomb_scalar_distributes(raw, s):
    a = LinComb({})
    b = LinComb({})
    for i, (g, c) in enumerate(raw):
        if i % 2:
            a = a + LinComb.gen(g, c)
        else:
            b = b + LinComb.gen(g, c)
    assert s * (a + b) == s * a + s * b
    assert (a + b) - b == a


# -- toy algebras ------------------------------------------------------------

def sl2():
    e, f, h = GeneratorId("P", (0,)), GeneratorId("P", (1,)), GH
    return ColorAlgebra(
        name="sl2",
        two_ell=1,
        basis=[h, e, f],
        degrees={h: E00, e: E00, f: E00},
        entries=[
            (h, e, lc((2, e))),
            (h, f, lc((-2, f))),
            (e, f, lc((1, h))),
        ],
    ), e, f, h


def test_sl2_all_checks_pass():
    alg, e, f, h = sl2()
    assert alg.check_antisymmetry().ok
    assert alg.check_grading().ok
    rep = alg.check_jacobi()
    assert rep.ok and rep.checked == 10
    assert alg.bracket(f, e) == lc((-1, h))
    assert alg.bracket(e, e).is_zero()


def test_reversed_lookup_applies_sign():
    # two odd generators of different colors: dot((0,1),(1,0)) = 0,
    # so the bracket is a commutator and the reversal sign is -1
    a = GeneratorId("Q")
    b = GeneratorId("S")
    c = GeneratorId("X", (0,))
    alg = ColorAlgebra(
        name="toy",
        two_ell=1,
        basis=[a, b, c],
        degrees={a: E01, b: E10, c: E11},
        entries=[(a, b, lc((1, c)))],
    )
    assert alg.bracket(b, a) == lc((-1, c))
    # anticommuting colors: dot((0,1),(1,1)) = 1, reversal sign is +1
    alg2 = ColorAlgebra(
        name="toy2",
        two_ell=1,
        basis=[a, c, b],
        degrees={a: E01, c: E11, b: E10},
        entries=[(a, c, lc((1, b)))],
    )
    assert alg2.bracket(c, a) == lc((1, b))


def test_antisymmetry_detects_bad_reversed_entry():
    alg = ColorAlgebra(
        name="bad",
        two_ell=1,
        basis=[GD, GH],
        degrees={GD: E00, GH: E00},
        entries=[
            (GD, GH, lc((1, GH))),
            (GH, GD, lc((1, GH))),  # should be -H
        ],
    )
    rep = alg.check_antisymmetry()
    assert not rep.ok and len(rep.violations) == 1
    assert rep.violations[0].items == ("H", "D")


def test_antisymmetry_rejects_nonzero_even_square():
    a, b = GD, GH
    alg = ColorAlgebra(
        name="bad-diag",
        two_ell=1,
        basis=[a, b],
        degrees={a: E00, b: E00},
        entries=[(a, a, lc((1, b)))],
    )
    assert not alg.check_antisymmetry().ok


def test_odd_square_is_allowed():
    q, h = GeneratorId("Q"), GH
    alg = ColorAlgebra(
        name="osp",
        two_ell=1,
        basis=[h, q],
        degrees={h: E00, q: E01},
        entries=[(q, q, lc((2, h)))],
    )
    assert alg.check_antisymmetry().ok
    assert alg.check_jacobi().ok
    assert alg.bracket(q, q) == lc((2, h))


def test_grading_violation_detected():
    q, h = GeneratorId("Q"), GH
    alg = ColorAlgebra(
        name="bad-grade",
        two_ell=1,
        basis=[h, q],
        degrees={h: E00, q: E01},
        entries=[(h, q, lc((1, h)))],
    )
    rep = alg.check_grading()
    assert not rep.ok
    assert "degree" in rep.violations[0].detail


def test_jacobi_detects_seeded_defect():
    e, f, h = GeneratorId("P", (0,)), GeneratorId("P", (1,)), GH
    alg = ColorAlgebra(
        name="sl2-corrupt",
        two_ell=1,
        basis=[h, e, f],
        degrees={h: E00, e: E00, f: E00},
        entries=[
            (h, e, lc((2, e))),
            (h, f, lc((-2, f))),
            (e, f, lc((1, h), (1, e))),  # stray +e term breaks Jacobi
        ],
    )
    rep = alg.check_jacobi()
    assert not rep.ok
    assert any(set(v.items) == {"H", "P[0]", "P[1]"} for v in rep.violations)


def test_unknown_generator_raises():
    alg, e, f, h = sl2()
    with pytest.raises(UnknownGenerator):
        alg.bracket(h, GeneratorId("Q"))
    with pytest.raises(UnknownGenerator):
        alg.degree(GeneratorId("X", (5,)))


def test_builder_validation():
    with pytest.raises(ValueError, match="duplicate generator"):
        ColorAlgebra(name="d", two_ell=1, basis=[GH, GH], degrees={GH: E00}, entries=[])
    with pytest.raises(ValueError, match="missing degree"):
        ColorAlgebra(name="d", two_ell=1, basis=[GH, GD], degrees={GH: E00}, entries=[])
    with pytest.raises(ValueError, match="duplicate table entry"):
        ColorAlgebra(
            name="d",
            two_ell=1,
            basis=[GH, GD],
            degrees={GH: E00, GD: E00},
            entries=[(GD, GH, lc((1, GH))), (GD, GH, lc((2, GH)))],
        )


def test_degree_of_homogeneous_elements():
    alg, e, f, h = sl2()
    assert alg.degree_of(LinComb.zero()) is None
    assert alg.degree_of(lc((2, e), (1, h))) == E00
    q = GeneratorId("Q")
    alg2 = ColorAlgebra(
        name="mix", two_ell=1, basis=[h, q], degrees={h: E00, q: E01}, entries=[]
    )
    with pytest.raises(ValueError, match="homogeneous"):
        alg2.degree_of(lc((1, h), (1, q)))


# -- triangular decomposition ------------------------------------------------

def test_ad_eigen_decompose_sl2():
    alg, e, f, h = sl2()
    dec = ad_eigen_decompose(alg, h)
    assert dec.plus == [(e, Fraction(2))]
    assert dec.minus == [(f, Fraction(-2))]
    assert dec.zero == [(h, Fraction(0))]
    assert dec.sector_of(e) == "plus"


def test_ad_eigen_decompose_not_diagonal():
    alg, e, f, h = sl2()
    with pytest.raises(NotDiagonal):
        ad_eigen_decompose(alg, e)


def test_report_rendering():
    alg, *_ = sl2()
    rep = alg.check_jacobi()
    assert rep.summary() == "jacobi[sl2]: checked 10, violations 0"
    assert rep.lines() == [rep.summary()]
