import json

import pytest

from rank3loci.groebner import (GroebnerTimeout, buchberger, eliminate,
                                hilbert_polynomial, ideal_from_json_dict,
                                ideal_membership, make_ideal, normal_form,
                                radical_membership,
                                radical_membership_report, spoly)
from rank3loci.poly import DEGREVLEX, LEX, parse_polynomial

XY = ("x", "y")


def ideal(vars, *texts):
    return make_ideal(vars, [parse_polynomial(t, vars) for t in texts])


def P(text, vars=XY):
    return parse_polynomial(text, vars)


# -- Buchberger ----------------------------------------------------------------


def test_textbook_lex_basis():
    # S-pair trace by hand: x*(x^2-y) - x^3 = -x*y; y*(x^2-y) - x*(x*y)
    # = -y^2; all further S-polynomials reduce to zero
    gb = buchberger(ideal(XY, "x^2 - y", "x^3"), LEX)
    assert [str(g) for g in gb.elements] == ["y^2", "x*y", "x^2 - y"]


def test_single_generator_is_its_own_basis():
    zs = ("z0", "z1", "z2")
    gb = buchberger(ideal(zs, "z0*z2 - z1^2"))
    assert len(gb.elements) == 1
    g = gb.elements[0]
    conic = P("z0*z2 - z1^2", zs)
    assert g == conic or g == -conic


def _buchberger_criterion_holds(gb):
    for i, f in enumerate(gb.elements):
        for g in gb.elements[i + 1:]:
            s = spoly(f, g, gb.order)
            if not normal_form(s, gb.elements, gb.order).is_zero():
                return False
    return True


def _is_reduced(gb):
    order = gb.order
    for i, g in enumerate(gb.elements):
        others = gb.elements[:i] + gb.elements[i + 1:]
        lts = [max(h.terms, key=order.key) for h in others]
        for e in g.terms:
            if any(all(a <= b for a, b in zip(lt, e)) for lt in lts):
                return False
    return True


@pytest.mark.parametrize("gens,vars", [
    (("x^2 - y", "x^3"), XY),
    (("x^2 + y^2 - 1", "x*y - 1"), XY),
    (("x*y - z^2", "x^2 - y*z", "y^2 - x*z"), ("x", "y", "z")),
    (("x^3 - 2*x*y", "x^2*y - 2*y^2 + x"), XY),
])
def test_buchberger_criterion_post_hoc(gens, vars):
    i = ideal(vars, *gens)
    for order in (LEX, DEGREVLEX):
        gb = buchberger(i, order)
        # every original generator reduces to zero
        for g in i.gens:
            assert normal_form(g, gb.elements, order).is_zero()
        # every S-polynomial reduces to zero
        assert _buchberger_criterion_holds(gb)
        assert _is_reduced(gb)


def test_buchberger_is_deterministic():
    i = ideal(("x", "y", "z"), "x*y - z^2", "x^2 - y*z", "y^2 - x*z")
    one = buchberger(i, DEGREVLEX)
    two = buchberger(i, DEGREVLEX)
    assert [str(g) for g in one.elements] == [str(g) for g in two.elements]


def test_timeout_is_surfaced():
    roster = tuple("abcdefg")
    gens = ["a^2*b - c*d", "b^3 - e*f*g + a", "c^2*e - a*f^2",
            "d^2*f - b*g^2", "e^2*g - a*b*c"]
    with pytest.raises(GroebnerTimeout):
        buchberger(ideal(roster, *gens), LEX, timeout=1e-4)


# -- membership ---------------------------------------------------------------------


def test_membership_examples():
    zs = ("z0", "z1", "z2")
    gb = buchberger(ideal(zs, "z0*z2 - z1^2"))
    assert ideal_membership(P("z0*z2 - z1^2", zs), gb)[0]
    member, nf = ideal_membership(P("z0", zs), gb)
    assert not member and nf == P("z0", zs)


def test_membership_in_parameterized_surface():
    # graph of [a^2 : ab : ac : b^2-ac : bc : c^2], then eliminate a, b, c
    zs = tuple(f"z{i}" for i in range(6))
    roster = ("a", "b", "c") + zs
    params = ["a^2", "a*b", "a*c", "b^2 - a*c", "b*c", "c^2"]
    gens = [parse_polynomial(f"z{i} - ({p})", roster)
            for i, p in enumerate(params)]
    image = eliminate(make_ideal(roster, gens), ("a", "b", "c"))
    # substitution of the parameterization kills every generator
    from rank3loci.poly import substitute
    abc = ("a", "b", "c")
    bindings = {f"z{i}": parse_polynomial(p, abc)
                for i, p in enumerate(params)}
    for g in image.gens:
        assert substitute(g, bindings).is_zero()
    gb = buchberger(image)
    assert ideal_membership(P("z1*z2 - z0*z4", zs), gb)[0]
    assert not ideal_membership(P("z0", zs), gb)[0]


# -- elimination ---------------------------------------------------------------------


def test_twisted_conic_elimination():
    roster = ("s", "t", "z0", "z1", "z2")
    gens = [parse_polynomial(text, roster)
            for text in ("z0 - s^2", "z1 - s*t", "z2 - t^2")]
    image = eliminate(make_ideal(roster, gens), ("s", "t"))
    zs = ("z0", "z1", "z2")
    conic = ideal(zs, "z0*z2 - z1^2")
    gb_image = buchberger(image)
    gb_conic = buchberger(conic)
    assert all(ideal_membership(g, gb_conic)[0] for g in image.gens)
    assert all(ideal_membership(g, gb_image)[0] for g in conic.gens)


def test_eliminate_unknown_variable():
    with pytest.raises(ValueError):
        eliminate(ideal(XY, "x*y"), ("z",))


# -- radical membership -----------------------------------------------------------------


def test_radical_membership_basics():
    i = ideal(XY, "x^2")
    assert radical_membership(P("x"), i)
    assert not radical_membership(P("y"), i)
    report = radical_membership_report(P("x"), i)
    assert report["member"] and report["power_witness"] == 2


def test_radical_membership_with_power_witness_at_one():
    i = ideal(XY, "x")
    report = radical_membership_report(P("x"), i)
    assert report["power_witness"] == 1


# -- Hilbert polynomials ---------------------------------------------------------------


def test_hilbert_polynomial_examples():
    zs = ("z0", "z1", "z2")
    conic = ideal(zs, "z0*z2 - z1^2")
    assert hilbert_polynomial(conic) == P("2*t + 1", ("t",))

    z5 = tuple(f"z{i}" for i in range(5))
    quartic = ideal(z5, "z0*z2 - z1^2", "z0*z3 - z1*z2", "z0*z4 - z1*z3",
                    "z1*z3 - z2^2", "z1*z4 - z2*z3", "z2*z4 - z3^2")
    assert hilbert_polynomial(quartic) == P("4*t + 1", ("t",))


def test_hilbert_polynomial_of_the_full_ring():
    zs = ("z0", "z1", "z2")
    empty = make_ideal(zs, [])
    # projective plane: C(t+2, 2)
    expected = P("(t^2 + 3*t + 2) / 2", ("t",))
    assert hilbert_polynomial(empty) == expected


def test_hilbert_polynomial_of_a_point_and_of_nothing():
    zs = ("z0", "z1")
    point = ideal(zs, "z0")
    assert hilbert_polynomial(point) == P("1", ("t",))
    irrelevant = ideal(zs, "z0", "z1")
    assert hilbert_polynomial(irrelevant).is_zero()


def test_hilbert_polynomial_is_order_invariant():
    zs = ("z0", "z1", "z2", "z3")
    i = ideal(zs, "z0*z3 - z1*z2", "z1^2 - z0*z2")
    assert hilbert_polynomial(i, LEX) == hilbert_polynomial(i, DEGREVLEX)


def test_hilbert_polynomial_requires_homogeneous():
    with pytest.raises(ValueError):
        hilbert_polynomial(ideal(XY, "x^2 - y"))


# -- serialization ------------------------------------------------------------------------


def test_ideal_json_roundtrip():
    i = ideal(XY, "x^2 - y^2", "x*y")
    blob = json.dumps(i.to_json_dict(), sort_keys=True)
    again = ideal_from_json_dict(json.loads(blob))
    assert json.dumps(again.to_json_dict(), sort_keys=True) == blob


def test_gbasis_json_roundtrip():
    gb = buchberger(ideal(XY, "x^2 - y", "x^3"), LEX)
    data = gb.to_json_dict()
    assert data["order"] == {"kind": "lex"}
    assert len(data["elements"]) == 3
