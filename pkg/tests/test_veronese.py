from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rank3loci.plucker import SectionVector, section_basis
from rank3loci.poly import MultiPoly, parse_polynomial
from rank3loci.veronese import (QuadForm, build_tables, check_recurrences,
                                evaluated_tables, linearize, rank3_quadric,
                                reconstruct_from_generators, rnc_generators,
                                vanishes_on_veronese, vanishing_propagation,
                                veronese_space, witness_quadric)

XY = ("x", "y")


def P(text, vars=XY):
    return parse_polynomial(text, vars)


coeffs = st.integers(min_value=-5, max_value=5)


@st.composite
def forms(draw, degree):
    cs = draw(st.lists(coeffs, min_size=degree + 1, max_size=degree + 1))
    return MultiPoly(XY, {(degree - i, i): Fraction(c)
                          for i, c in enumerate(cs)})


# -- linearization -----------------------------------------------------------


def test_linearize_examples():
    space = veronese_space(1, 4)
    assert linearize(P("x^4"), space) == {0: 1}
    assert linearize(P("3*x^2*y^2 - x*y^3"), space) == {2: 3, 3: -1}


def test_linearize_of_a_product():
    space = veronese_space(1, 6)
    product = P("x^2*y") * P("x*y^2")
    assert linearize(product, space) == {3: 1}


def test_linearize_rejects_wrong_degree():
    with pytest.raises(ValueError):
        linearize(P("x^3"), veronese_space(1, 4))


# -- generators ---------------------------------------------------------------


def test_generators_d4():
    gens = rnc_generators(4)
    assert {k: q.to_poly_string() for k, q in gens.items()} == {
        (0, 1): "z0*z2 - z1^2", (0, 2): "z0*z3 - z1*z2",
        (0, 3): "z0*z4 - z1*z3", (1, 2): "z1*z3 - z2^2",
        (1, 3): "z1*z4 - z2*z3", (2, 3): "z2*z4 - z3^2",
    }


def test_generators_d5_count_and_d2():
    assert len(rnc_generators(5)) == 10
    gens = rnc_generators(2)
    assert list(gens) == [(0, 1)]
    assert gens[(0, 1)].to_poly_string() == "z0*z2 - z1^2"
    with pytest.raises(ValueError):
        rnc_generators(1)


# -- vanishing check ------------------------------------------------------------


def test_vanishing_examples():
    gens = rnc_generators(4)
    assert vanishes_on_veronese(gens[(0, 1)])
    space = veronese_space(1, 4)
    assert not vanishes_on_veronese(QuadForm(space, {(0, 1): 1}))
    space6 = veronese_space(1, 6)
    q = rank3_quadric(space6, 2, P("x^2"), P("x*y"), P("y^2"))
    assert vanishes_on_veronese(q)
    assert q.to_poly_string() == "z2*z4 - z3^2"


# -- the quadric map --------------------------------------------------------------


def test_quadric_of_linear_pencil():
    space = veronese_space(1, 4)
    q = rank3_quadric(space, 1, P("x"), P("y"), P("x^2"))
    assert q.to_poly_string() == "z0*z2 - z1^2"


def test_quadric_vanishes_for_proportional_forms():
    space = veronese_space(1, 4)
    f = P("x^2 + y^2")
    assert rank3_quadric(space, 2, f, f, P("1")).is_zero()
    assert rank3_quadric(space, 1, P("x"), P("y"),
                         MultiPoly.zero(XY)).is_zero()


def test_quadric_on_the_plane():
    roster = ("x0", "x1", "x2")
    space = veronese_space(2, 4)
    f = parse_polynomial("x0^2", roster)
    g = parse_polynomial("x1^2", roster)
    h = parse_polynomial("1", roster)
    q = rank3_quadric(space, 2, f, g, h)
    from rank3loci.certificates import quad_rank
    assert quad_rank(q) == 3
    assert vanishes_on_veronese(q)


def test_quadric_degree_mismatch():
    space = veronese_space(1, 4)
    with pytest.raises(ValueError):
        rank3_quadric(space, 1, P("x^2"), P("y"), P("x^2"))


@settings(max_examples=40)
@given(forms(2), forms(2), forms(2))
def test_swap_symmetry_and_scalar_equivariance(f, g, h):
    space = veronese_space(1, 6)
    q1 = rank3_quadric(space, 2, f, g, h)
    q2 = rank3_quadric(space, 2, g, f, h)
    assert q1 == q2
    scaled = rank3_quadric(space, 2, 2 * f, 3 * g, 5 * h)
    assert scaled == q1.scale(Fraction(2 * 2 * 3 * 3 * 5 * 5))


@settings(max_examples=40)
@given(forms(2), forms(2), forms(1))
def test_quadric_vanishes_iff_degenerate(f, g, h):
    space = veronese_space(1, 5)
    q = rank3_quadric(space, 2, f, g, h)
    rows = [
        {i: c for i, c in enumerate(
            f.coefficient((2 - k, k)) for k in range(3)) if c},
        {i: c for i, c in enumerate(
            g.coefficient((2 - k, k)) for k in range(3)) if c},
    ]
    from rank3loci.linalg import matrix_rank
    degenerate = h.is_zero() or matrix_rank([r for r in rows if r]) < 2
    assert q.is_zero() == degenerate


# -- symbolic tables ----------------------------------------------------------------


def _vec(basis, entries):
    return SectionVector(basis, {
        basis.position(p1, p2, cv): Fraction(c)
        for p1, p2, cv, c in entries})


# the ten symbolic coefficients for (d, ell) = (5, 2).  Entry (2, 4) carries
# coefficient 2 on q02*q12*C1^2: the exact reconstruction identity forces it
# (a variant with coefficient 1 fails the identity).
D5_EXPECTED = {
    (0, 1): [((0, 1), (0, 1), (0, 0), 1)],
    (0, 2): [((0, 1), (0, 2), (0, 0), 2), ((0, 1), (0, 1), (0, 1), 1)],
    (0, 3): [((0, 2), (0, 2), (0, 0), 1), ((0, 1), (0, 2), (0, 1), 2)],
    (0, 4): [((0, 2), (0, 2), (0, 1), 1)],
    (1, 2): [((0, 2), (0, 2), (0, 0), 1), ((0, 1), (1, 2), (0, 0), 2),
             ((0, 1), (0, 2), (0, 1), 2), ((0, 1), (0, 1), (1, 1), 1)],
    (1, 3): [((0, 2), (1, 2), (0, 0), 2), ((0, 2), (0, 2), (0, 1), 2),
             ((0, 1), (1, 2), (0, 1), 2), ((0, 1), (0, 2), (1, 1), 2)],
    (1, 4): [((0, 2), (1, 2), (0, 1), 2), ((0, 2), (0, 2), (1, 1), 1)],
    (2, 3): [((1, 2), (1, 2), (0, 0), 1), ((0, 2), (1, 2), (0, 1), 2),
             ((0, 2), (0, 2), (1, 1), 1), ((0, 1), (1, 2), (1, 1), 2)],
    (2, 4): [((1, 2), (1, 2), (0, 1), 1), ((0, 2), (1, 2), (1, 1), 2)],
    (3, 4): [((1, 2), (1, 2), (1, 1), 1)],
}


def test_symbolic_table_d5_ell2():
    tables = build_tables(5, 2)
    basis = section_basis(2, 5)
    for key, entries in D5_EXPECTED.items():
        assert tables.gen[key] == _vec(basis, entries), key


def test_symbolic_table_d4_ell1():
    tables = build_tables(4, 1)
    basis = section_basis(1, 4)
    q = (0, 1)
    expected = {
        (0, 1): [(q, q, (0, 0), 1)],
        (0, 2): [(q, q, (0, 1), 1)],
        (0, 3): [(q, q, (0, 2), 1)],
        (1, 2): [(q, q, (1, 1), 1), (q, q, (0, 2), -1)],
        (1, 3): [(q, q, (1, 2), 1)],
        (2, 3): [(q, q, (2, 2), 1)],
    }
    for key, entries in expected.items():
        assert tables.gen[key] == _vec(basis, entries), key


def test_symbolic_table_d4_ell2():
    tables = build_tables(4, 2)
    basis = section_basis(2, 4)
    cv = (0, 0)
    expected = {
        (0, 1): [((0, 1), (0, 1), cv, 1)],
        (0, 2): [((0, 1), (0, 2), cv, 2)],
        (0, 3): [((0, 2), (0, 2), cv, 1)],
        (1, 2): [((0, 2), (0, 2), cv, 1), ((0, 1), (1, 2), cv, 2)],
        (1, 3): [((0, 2), (1, 2), cv, 2)],
        (2, 3): [((1, 2), (1, 2), cv, 1)],
    }
    for key, entries in expected.items():
        assert tables.gen[key] == _vec(basis, entries), key


def test_recurrence_spot_identities():
    tables = build_tables(5, 2)
    assert tables.gen[(0, 1)] == tables.mono[(0, 2)]
    assert tables.gen[(1, 2)] == tables.mono[(0, 4)] + tables.mono[(1, 3)]
    report = check_recurrences(tables)
    assert report.ok


def test_recurrences_small_range():
    for d in range(2, 8):
        for ell in range(1, d // 2 + 1):
            assert check_recurrences(build_tables(d, ell)).ok, (d, ell)


def test_symbolic_reconstruction_matches_direct_expansion():
    # full-circle audit: expanding the generator coefficients against the
    # generators reproduces every monomial coefficient polynomial
    tables = build_tables(6, 2)
    for s in range(7):
        for t in range(s, 7):
            via_gen = tables.gen_zero(s, t - 1) - tables.gen_zero(s - 1, t)
            assert via_gen.to_poly() == tables.raw[(s, t)]


# -- evaluated tables ----------------------------------------------------------------


def test_evaluated_tables_reconstruct():
    f, g, h = P("x^2 + x*y"), P("x*y - y^2"), P("x + 3*y")
    gen, mono, q = evaluated_tables(5, 2, f, g, h)
    assert reconstruct_from_generators(5, gen) == q
    space = veronese_space(1, 5)
    assert q == rank3_quadric(space, 2, f, g, h)


@settings(max_examples=30)
@given(forms(3), forms(3), forms(2))
def test_evaluated_tables_reconstruct_random(f, g, h):
    gen, mono, q = evaluated_tables(8, 3, f, g, h)
    assert reconstruct_from_generators(8, gen) == q


def test_evaluated_matches_symbolic_specialization():
    # substituting concrete coefficients into the symbolic table must agree
    # with the evaluated table
    from rank3loci.poly import substitute
    f, g, h = P("x^2 - 2*x*y"), P("3*x*y + y^2"), P("x - y")
    gen, _, _ = evaluated_tables(5, 2, f, g, h)
    tables = build_tables(5, 2)
    bindings = {"A0": 1, "A1": -2, "A2": 0, "B0": 0, "B1": 3, "B2": 1,
                "C0": 1, "C1": -1}
    for key in gen:
        symbolic = tables.gen[key].to_poly()
        assert substitute(symbolic, bindings) == gen[key], key


# -- witness quadric ------------------------------------------------------------------


def test_witness_quadric_patterns():
    q, gen = witness_quadric(4, 2)
    assert q.to_poly_string() == "z0*z4 - z2^2"
    assert gen[(0, 3)] == 1 and gen[(1, 2)] == 1
    assert sum(1 for c in gen.values() if c) == 2

    q, gen = witness_quadric(6, 3)
    assert {k for k, c in gen.items() if c} == {(0, 5), (1, 4), (2, 3)}

    q, gen = witness_quadric(4, 1)
    assert q.to_poly_string() == "z0*z2 - z1^2"
    assert {k for k, c in gen.items() if c} == {(0, 1)}


def test_witness_agrees_with_evaluated_pipeline():
    for d, ell in ((4, 2), (6, 3), (7, 2), (10, 5)):
        q, gen = witness_quadric(d, ell)
        f = MultiPoly(XY, {(ell, 0): 1})
        g = MultiPoly(XY, {(0, ell): 1})
        h = MultiPoly(XY, {(d - 2 * ell, 0): 1})
        gen_eval, _, q_eval = evaluated_tables(d, ell, f, g, h)
        assert q_eval == q
        assert gen_eval == gen


# -- vanishing propagation -------------------------------------------------------------


def test_vanishing_chain_d5_ell2():
    chain = vanishing_propagation(5, 2)
    assert chain.ok
    assert [s["forces"] for s in chain.steps] == ["q01 = 0", "q02 = 0"]
    assert chain.steps[0]["survivors"] == ["q01^2*C0^2"]


def test_vanishing_chain_d4_ell1():
    chain = vanishing_propagation(4, 1)
    assert chain.ok
    assert [s["forces"] for s in chain.steps] == ["q01 = 0"]


def test_vanishing_chain_c0_branch():
    # substituting the first coefficient away kills the whole leading row
    chain = vanishing_propagation(5, 2)
    assert chain.c0_branch_ok
    tables = build_tables(5, 2)
    roster_index = 2 * (2 + 1)  # position of C0 in the A,B,C roster
    for k in range(1, 5):
        raw = tables.raw[(0, k + 1)]
        assert all(e[roster_index] >= 1 for e in raw.terms)
