"""Command-line front end.

Subcommands reproduce the worked examples, emit certificates as JSON, and
run the verification procedures.  Exit status is 0 for success/verified,
1 when a verification finds a falsified claim, and 2 for usage or resource
errors.  All output is deterministic for a fixed command line.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import certificates as certs
from . import groebner as gb_mod
from . import veronese
from .groebner import GroebnerTimeout
from .plucker import section_basis
from .poly import (DEGREVLEX, LEX, MultiPoly, format_poly,
                   parse_polynomial, poly_to_json_dict)

XY = ("x", "y")


# -- output helpers -----------------------------------------------------------


def _emit(payload, args, table_lines=None):
    """Write JSON (sorted keys) or an aligned table, to --out or stdout."""
    if args.format == "json" or table_lines is None:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(table_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(rows):
    if not rows:
        return ["(empty)"]
    width = max(len(label) for label, _ in rows)
    return [f"{label.ljust(width)}  {value}" for label, value in rows]


def _fraction_json(c):
    return {"num": str(c.numerator), "den": str(c.denominator)}


def _alpha_table_json(d, ell, mode, entries):
    return {"d": d, "ell": ell, "mode": mode, "entries": entries}


# -- polynomial I/O -----------------------------------------------------------


def _parse_xy(text, name):
    try:
        return parse_polynomial(text, XY)
    except ValueError as exc:
        raise UsageError(f"cannot parse --{name} {text!r}: {exc}")


def _load_ideal(args):
    if args.input:
        with open(args.input) as fh:
            return gb_mod.ideal_from_json_dict(json.load(fh))
    if args.vars and args.gens:
        roster = tuple(v.strip() for v in args.vars.split(","))
        gens = [parse_polynomial(g, roster)
                for g in args.gens.split(";") if g.strip()]
        return gb_mod.make_ideal(roster, gens)
    raise UsageError("provide --input FILE or both --vars and --gens")


def _order_from_args(args, ideal):
    if args.order == "lex":
        return LEX
    if args.order == "degrevlex":
        return DEGREVLEX
    raise UsageError(f"unknown order {args.order!r}")


class UsageError(Exception):
    pass


# -- subcommand handlers --------------------------------------------------------


def cmd_generators(args):
    gens = veronese.rnc_generators(args.d)
    entries = [{"i": i, "j": j, "quadric": q.to_json_dict()}
               for (i, j), q in sorted(gens.items())]
    rows = [(f"Q[{i},{j}]", gens[(i, j)].to_poly_string())
            for (i, j) in sorted(gens)]
    _emit({"d": args.d, "generators": entries}, args, _table(rows))
    return 0


def cmd_alpha_table(args):
    d, ell = args.d, args.ell
    if args.f or args.g or args.h:
        if not (args.f and args.g and args.h):
            raise UsageError("evaluated mode needs all of --f, --g, --h")
        f = _parse_xy(args.f, "f")
        g = _parse_xy(args.g, "g")
        h = _parse_xy(args.h, "h")
        gen, mono, q = veronese.evaluated_tables(d, ell, f, g, h)
        entries = [{"i": i, "j": j, "value": _fraction_json(c)}
                   for (i, j), c in sorted(gen.items())]
        rows = [(f"alpha[{i},{j}]", str(c)) for (i, j), c in sorted(gen.items())]
        rows.append(("quadric", q.to_poly_string()))
        _emit(_alpha_table_json(d, ell, "evaluated", entries), args,
              _table(rows))
        return 0
    tables = veronese.build_tables(d, ell)
    entries = [{"i": i, "j": j, "value": tables.gen[(i, j)].to_json_dict()}
               for (i, j) in sorted(tables.gen)]
    rows = [(f"alpha[{i},{j}]", tables.gen[(i, j)].label())
            for (i, j) in sorted(tables.gen)]
    _emit(_alpha_table_json(d, ell, "symbolic", entries), args, _table(rows))
    return 0


def cmd_recurrences(args):
    report = veronese.check_recurrences(veronese.build_tables(args.d, args.ell))
    rows = [("two-term identity", "ok" if not report.two_term_failures
             else f"FAILED at {report.two_term_failures}"),
            ("partial-sum overlap", "ok" if not report.overlap_failures
             else f"FAILED at {report.overlap_failures}"),
            ("expansion extraction", "ok" if not report.extraction_failures
             else f"FAILED at {report.extraction_failures}"),
            ("verified", str(report.ok))]
    _emit(report.to_json_dict(), args, _table(rows))
    return 0 if report.ok else 1


def cmd_witness(args):
    q, gen = veronese.witness_quadric(args.d, args.ell)
    entries = [{"i": i, "j": j, "value": _fraction_json(c)}
               for (i, j), c in sorted(gen.items())]
    payload = {"d": args.d, "ell": args.ell,
               "quadric": q.to_json_dict(),
               "coefficients": entries}
    rows = [("quadric", q.to_poly_string())]
    rows += [(f"alpha[{i},{j}]", str(c))
             for (i, j), c in sorted(gen.items()) if c]
    _emit(payload, args, _table(rows))
    return 0


def cmd_minimality(args):
    cert = certs.minimality_certificate(args.d)
    rows = [(f"pair (l1={p['ell1']}, l2={p['ell2']})", p["conclusion"])
            for p in cert.pairs]
    rows.append(("verified", str(cert.ok)))
    _emit(cert.to_json_dict(), args, _table(rows))
    return 0 if cert.ok else 1


def cmd_nondegeneracy(args):
    cert = certs.nondegeneracy_certificate(args.d, args.ell)
    rows = [("rank", str(cert.rank)),
            ("expected rank", str(cert.expected_rank)),
            ("section-space dim", str(cert.basis_dim)),
            ("verified", str(cert.ok))]
    _emit(cert.to_json_dict(), args, _table(rows))
    return 0 if cert.ok else 1


def cmd_fiber(args):
    f = _parse_xy(args.f, "f")
    g = _parse_xy(args.g, "g")
    h = _parse_xy(args.h, "h")
    outcome = certs.fiber_analysis(args.d, args.ell, f, g, h)
    rows = [("verdict", "injective-at-point" if outcome.injective
             else "two-point-fiber"),
            ("gcd(f, g)", format_poly(outcome.gcd)),
            ("square part of h", format_poly(outcome.square)),
            ("reason", outcome.reason)]
    if outcome.cert:
        rows += [("C", format_poly(outcome.cert.C)),
                 ("D", format_poly(outcome.cert.D)),
                 ("slice degree", str(outcome.cert.s)),
                 ("scalar", str(outcome.cert.scalar))]
    _emit(outcome.to_json_dict(), args, _table(rows))
    return 0


def cmd_theta(args):
    report = certs.singular_bound(args.n, args.d, args.ell)
    rows = [("applicable", str(report.applicable))]
    rows += [(f"m = {m}", str(v)) for m, v in report.values]
    if report.applicable:
        rows.append(("maximum", f"{report.maximum} at m in {report.argmax}"))
    _emit(report.to_json_dict(), args, _table(rows))
    return 0


def cmd_sing_family(args):
    outcomes = certs.singular_family_sample(args.n, args.d, args.ell, args.m,
                                            args.count, seed=args.seed)
    payload = {"n": args.n, "d": args.d, "ell": args.ell, "m": args.m,
               "seed": args.seed,
               "certificates": [o.to_json_dict() for o in outcomes]}
    rows = [(f"fiber {k}", o.reason) for k, o in enumerate(outcomes)]
    rows.append(("verified two-point fibers", str(len(outcomes))))
    _emit(payload, args, _table(rows))
    return 0


def cmd_w1_check(args):
    report = certs.veronese_identification(args.d)
    rows = [(f"alpha[{q['i']},{q['j']}]", q["value"])
            for q in report.quadrics]
    rows += [("count", str(report.count)), ("rank", str(report.rank)),
             ("verified", str(report.ok))]
    _emit(report.to_json_dict(), args, _table(rows))
    return 0 if report.ok else 1


def cmd_gb(args):
    ideal = _load_ideal(args)
    basis = gb_mod.buchberger(ideal, _order_from_args(args, ideal),
                              timeout=args.timeout)
    payload = basis.to_json_dict()
    rows = [(f"g{k}", format_poly(g)) for k, g in enumerate(basis.elements)]
    _emit(payload, args, _table(rows))
    return 0


def cmd_eliminate(args):
    ideal = _load_ideal(args)
    drop = tuple(v.strip() for v in args.drop.split(","))
    out = gb_mod.eliminate(ideal, drop, timeout=args.timeout)
    payload = out.to_json_dict()
    rows = [(f"g{k}", format_poly(g)) for k, g in enumerate(out.gens)]
    _emit(payload, args, _table(rows))
    return 0


def cmd_member(args):
    ideal = _load_ideal(args)
    f = parse_polynomial(args.poly, ideal.vars)
    basis = gb_mod.buchberger(ideal, _order_from_args(args, ideal),
                              timeout=args.timeout)
    member, nf = gb_mod.ideal_membership(f, basis)
    payload = {"member": member, "normal_form": poly_to_json_dict(nf)}
    rows = [("member", str(member)), ("normal form", format_poly(nf))]
    _emit(payload, args, _table(rows))
    return 0


def cmd_radical_member(args):
    ideal = _load_ideal(args)
    f = parse_polynomial(args.poly, ideal.vars)
    report = gb_mod.radical_membership_report(f, ideal, timeout=args.timeout)
    rows = [("member", str(report["member"])),
            ("power witness", str(report["power_witness"]))]
    _emit(report, args, _table(rows))
    return 0


def cmd_hilbert(args):
    ideal = _load_ideal(args)
    hp = gb_mod.hilbert_polynomial(ideal, _order_from_args(args, ideal),
                                   timeout=args.timeout)
    payload = {"hilbert_polynomial": poly_to_json_dict(hp)}
    _emit(payload, args, _table([("Hilbert polynomial", format_poly(hp))]))
    return 0


# -- worked-example replays -------------------------------------------------------

# d = 4: the two parameterizations over [a : b : c], with the minors
# a = A0*B1 - A1*B0, b = A0*B2 - A2*B0, c = A1*B2 - A2*B1.
_D4_W1 = ["a^2", "a*b", "a*c", "b^2 - a*c", "b*c", "c^2"]
_D4_W2 = ["a^2", "2*a*b", "b^2", "b^2 + 2*a*c", "2*b*c", "c^2"]

# d = 5, ell = 2 symbolic table.  Entry (2,4) carries the factor 2 on
# q02*q12*C1^2: it is forced by the exact reconstruction identity and by
# the reversal symmetry of the table, and the correction is recorded in
# the replay notes.
_D5_TABLE = {
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

_D5_NOTES = [
    "entry (2,4): the coefficient of q02*q12*C1^2 is 2; tabulations showing "
    "1 fail the exact reconstruction identity against the generators",
    "the third minor is c = A1*B2 - A2*B1, forced by consistency with the "
    "2x3 minor conventions",
]


def expected_d5_vector(key):
    basis = section_basis(2, 5)
    coords = {}
    for p1, p2, cv, c in _D5_TABLE[key]:
        coords[basis.position(p1, p2, cv)] = Fraction(c)
    from .plucker import SectionVector
    return SectionVector(basis, coords)


def _d4_parameterization_ideals(timeout=None):
    """Elimination ideals of the two d = 4 component parameterizations."""
    zs = tuple(f"z{i}" for i in range(6))
    roster = ("a", "b", "c") + zs
    out = []
    for params in (_D4_W1, _D4_W2):
        gens = []
        for i, expr in enumerate(params):
            p = parse_polynomial(expr, roster)
            gens.append(MultiPoly.variable(zs[i], roster) - p)
        graph = gb_mod.make_ideal(roster, gens)
        out.append(gb_mod.eliminate(graph, ("a", "b", "c"), timeout=timeout))
    return out


def cmd_example(args):
    if args.which == "d4":
        return _example_d4(args)
    if args.which == "d5":
        return _example_d5(args)
    raise UsageError("example must be d4 or d5")


def _example_d4(args):
    lines = []
    ok = True

    def check(label, good):
        nonlocal ok
        lines.append(f"[{'PASS' if good else 'FAIL'}] {label}")
        ok = ok and good

    gens = veronese.rnc_generators(4)
    expected = {
        (0, 1): "z0*z2 - z1^2", (0, 2): "z0*z3 - z1*z2",
        (0, 3): "z0*z4 - z1*z3", (1, 2): "z1*z3 - z2^2",
        (1, 3): "z1*z4 - z2*z3", (2, 3): "z2*z4 - z3^2",
    }
    check("six quadric generators",
          {k: q.to_poly_string() for k, q in gens.items()} == expected)

    # component parameterizations as evaluated coefficient vectors
    abc = ("a", "b", "c")
    t1 = veronese.build_tables(4, 1)
    w1 = {key: _c_poly(t1.gen[key]) for key in sorted(t1.gen)}
    w1_expected = {k: parse_polynomial(e, abc) for k, e in
                   zip(sorted(t1.gen), _D4_W1)}
    check("first component parameterization [a^2 : ab : ac : b^2-ac : bc : c^2]",
          w1 == w1_expected)

    t2 = veronese.build_tables(4, 2)
    w2 = {key: _q_poly(t2.gen[key]) for key in sorted(t2.gen)}
    w2_expected = {k: parse_polynomial(e, abc) for k, e in
                   zip(sorted(t2.gen), _D4_W2)}
    check("second component parameterization [a^2 : 2ab : b^2 : b^2+2ac "
          ": 2bc : c^2]", w2 == w2_expected)

    check("recurrence identities (d=4, both ell)",
          veronese.check_recurrences(t1).ok
          and veronese.check_recurrences(t2).ok)

    cert = certs.minimality_certificate(4)
    check("minimality certificate", cert.ok)

    try:
        i1, i2 = _d4_parameterization_ideals(timeout=args.timeout)
        zs = tuple(f"z{i}" for i in range(6))
        basis1 = gb_mod.buchberger(i1, timeout=args.timeout)
        member, _ = gb_mod.ideal_membership(
            parse_polynomial("z1*z2 - z0*z4", zs), basis1)
        check("z1*z2 - z0*z4 lies in the first component ideal", member)

        sum_ideal = gb_mod.make_ideal(zs, i1.gens + i2.gens)
        lin = parse_polynomial("3*z2 - z3", zs)
        check("3*z2 - z3 lies in the radical of the intersection",
              gb_mod.radical_membership(lin, sum_ideal,
                                        timeout=args.timeout))
        check("z0 does not lie in the radical",
              not gb_mod.radical_membership(parse_polynomial("z0", zs),
                                            sum_ideal, timeout=args.timeout))
        cut = gb_mod.make_ideal(zs, sum_ideal.gens + [lin])
        hp = gb_mod.hilbert_polynomial(cut, timeout=args.timeout)
        quartic = parse_polynomial("4*t + 1", ("t",))
        check("intersection curve has Hilbert polynomial 4t + 1",
              hp == quartic)
    except GroebnerTimeout as exc:
        lines.append(f"[FAIL] elimination stage timed out: {exc}")
        ok = False

    payload = {"example": "d4", "verified": ok, "log": lines}
    _emit(payload, args, lines + [f"verified: {ok}"])
    return 0 if ok else 1


def _c_poly(vec):
    """An ell = 1 coefficient as a polynomial in (a, b, c) = (C0, C1, C2)."""
    abc = ("a", "b", "c")
    terms = {}
    for term, c in vec.items():
        lam, mu = term.cvars
        e = [0, 0, 0]
        e[lam] += 1
        e[mu] += 1
        terms[tuple(e)] = c
    return MultiPoly(abc, terms)


def _q_poly(vec):
    """An (ell, d) = (2, 4) coefficient as a polynomial in
    (a, b, c) = (q01, q02, q12)."""
    abc = ("a", "b", "c")
    pair_slot = {(0, 1): 0, (0, 2): 1, (1, 2): 2}
    terms = {}
    for term, c in vec.items():
        e = [0, 0, 0]
        e[pair_slot[term.first]] += 1
        e[pair_slot[term.second]] += 1
        terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + c
    return MultiPoly(abc, terms)


def _example_d5(args):
    lines = []
    ok = True

    def check(label, good):
        nonlocal ok
        lines.append(f"[{'PASS' if good else 'FAIL'}] {label}")
        ok = ok and good

    gens = veronese.rnc_generators(5)
    check("ten quadric generators", len(gens) == 10)

    tables = veronese.build_tables(5, 2)
    for key in sorted(tables.gen):
        check(f"table entry {key} = {tables.gen[key].label()}",
              tables.gen[key] == expected_d5_vector(key))
    check("beta identities: entry (0,1) equals monomial coefficient (0,2)",
          tables.gen[(0, 1)] == tables.mono[(0, 2)])
    check("beta identities: entry (1,2) equals the sum of monomial "
          "coefficients (0,4) and (1,3)",
          tables.gen[(1, 2)] == tables.mono[(0, 4)] + tables.mono[(1, 3)])
    check("recurrence identities", veronese.check_recurrences(tables).ok)

    # closed-form Hilbert polynomial of the double embedding of P^2 x P^1:
    # C(2t+2, 2) * (2t + 1) = (t+1)(2t+1)^2
    t = MultiPoly.variable("t", ("t",))
    closed = (t + 1) * (2 * t + 1) ** 2
    expanded = parse_polynomial("4*t^3 + 8*t^2 + 5*t + 1", ("t",))
    check("closed-form Hilbert polynomial (t+1)(2t+1)^2 = 4t^3+8t^2+5t+1",
          closed == expanded)

    if args.long:
        code = _example_d5_long(args, lines, check)
        ok = ok and (code == 0)

    payload = {"example": "d5", "verified": ok, "notes": _D5_NOTES,
               "log": lines}
    _emit(payload, args, lines + [f"verified: {ok}"])
    return 0 if ok else 1


def _segre_veronese_binomials():
    """Quadric binomials of the double embedding of P^2 x P^1 in the 18
    bidegree-(2,2) coordinates: one binomial per pair of coordinate pairs
    with equal multidegree."""
    from itertools import combinations_with_replacement
    qmons = list(combinations_with_replacement(range(3), 2))
    cmons = list(combinations_with_replacement(range(2), 2))
    coords = [(q, c) for q in qmons for c in cmons]
    zs = tuple(f"z{i}" for i in range(len(coords)))

    def multidegree(i, j):
        (q1, c1), (q2, c2) = coords[i], coords[j]
        qd = [0, 0, 0]
        cd = [0, 0]
        for a in q1 + q2:
            qd[a] += 1
        for a in c1 + c2:
            cd[a] += 1
        return tuple(qd), tuple(cd)

    fibers = {}
    for i in range(len(coords)):
        for j in range(i, len(coords)):
            fibers.setdefault(multidegree(i, j), []).append((i, j))
    gens = []
    for pairs in fibers.values():
        (i0, j0) = pairs[0]
        for (i, j) in pairs[1:]:
            terms = {}
            e = [0] * len(coords)
            e[i0] += 1
            e[j0] += 1
            terms[tuple(e)] = Fraction(1)
            e = [0] * len(coords)
            e[i] += 1
            e[j] += 1
            terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) - 1
            gens.append(MultiPoly(zs, terms))
    return gb_mod.make_ideal(zs, gens), coords


def _example_d5_long(args, lines, check):
    """Engine-side Hilbert polynomials for the double-embedding example."""
    expanded = parse_polynomial("4*t^3 + 8*t^2 + 5*t + 1", ("t",))
    try:
        ideal, coords = _segre_veronese_binomials()
        # soundness: every binomial vanishes under z -> monomial substitution
        roster = ("q0", "q1", "q2", "C0", "C1")
        bindings = {}
        for k, (qm, cm) in enumerate(coords):
            e = [0] * 5
            for a in qm:
                e[a] += 1
            for a in cm:
                e[3 + a] += 1
            bindings[f"z{k}"] = MultiPoly(roster, {tuple(e): Fraction(1)})
        from .poly import substitute
        sound = all(substitute(g, bindings).is_zero() for g in ideal.gens)
        check("double-embedding binomials vanish on the parameterization",
              sound)
        hp = gb_mod.hilbert_polynomial(ideal, timeout=args.timeout)
        check("engine Hilbert polynomial of the double embedding "
              "= 4t^3+8t^2+5t+1", hp == expanded)
    except GroebnerTimeout as exc:
        lines.append(f"[WARN] double-embedding computation timed out: {exc}")
        return 1

    # image-side elimination: 15 variables; may exceed any realistic budget,
    # in which case the limitation is recorded and the replay still counts
    # the closed-form checks above.
    try:
        image_hp = _d5_image_hilbert(args.timeout)
        expected_y = parse_polynomial("4*t^3 + 8*t^2 + 5*t - 5", ("t",))
        check("engine Hilbert polynomial of the image = 4t^3+8t^2+5t-5",
              image_hp == expected_y)
        delta = parse_polynomial("4*t^3 + 8*t^2 + 5*t + 1", ("t",)) - image_hp
        check("Hilbert polynomial difference equals 6",
              delta == parse_polynomial("6", ("t",)))
    except GroebnerTimeout as exc:
        lines.append(
            "[WARN] image-side elimination did not finish within the "
            f"budget ({exc}); recorded limitation: the image-side value "
            "comes from an external computation in the source material")
    return 0


def _d5_image_hilbert(timeout):
    """Hilbert polynomial of the image of the ten-coefficient map,
    eliminating the five parameters from the graph ideal."""
    tables = veronese.build_tables(5, 2)
    zs = tuple(f"z{i}" for i in range(10))
    params = ("q01", "q02", "q12", "C0", "C1")
    roster = params + zs
    pair_slot = {(0, 1): 0, (0, 2): 1, (1, 2): 2}
    gens = []
    for k, key in enumerate(sorted(tables.gen)):
        terms = {}
        for term, c in tables.gen[key].items():
            e = [0] * len(roster)
            e[pair_slot[term.first]] += 1
            e[pair_slot[term.second]] += 1
            lam, mu = term.cvars
            e[3 + lam] += 1
            e[3 + mu] += 1
            terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + c
        graph_term = [0] * len(roster)
        graph_term[len(params) + k] = 1
        terms[tuple(graph_term)] = Fraction(-1)
        gens.append(MultiPoly(roster, {e: -c for e, c in terms.items()}))
    graph = gb_mod.make_ideal(roster, gens)
    image = gb_mod.eliminate(graph, params, timeout=timeout)
    return gb_mod.hilbert_polynomial(image, timeout=timeout)


# -- argument parsing -------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rank3loci",
        description="Exact constructions and certificates for the rank-3 "
                    "quadric loci of Veronese embeddings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, d=False, ell=False, n=False):
        if n:
            p.add_argument("--n", type=int, default=1)
        if d:
            p.add_argument("--d", type=int, required=True)
        if ell:
            p.add_argument("--ell", type=int, required=True)
        p.add_argument("--format", choices=("json", "table"),
                       default="table")
        p.add_argument("--out", default=None)
        p.add_argument("--timeout", type=float, default=None,
                       help="deadline in seconds for basis computations")

    p = sub.add_parser("generators", help="quadric generators of the "
                                          "rational normal curve ideal")
    common(p, d=True)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("alpha-table",
                       help="coefficients of the pencil quadric map over "
                            "the standard generators")
    common(p, d=True, ell=True)
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--h")
    p.set_defaults(func=cmd_alpha_table)

    p = sub.add_parser("recurrences", help="verify the coefficient "
                                           "recurrence identities")
    common(p, d=True, ell=True)
    p.set_defaults(func=cmd_recurrences)

    p = sub.add_parser("witness", help="separating quadric of a component")
    common(p, d=True, ell=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("minimality", help="pairwise component exclusion "
                                          "certificates")
    common(p, d=True)
    p.set_defaults(func=cmd_minimality)

    p = sub.add_parser("nondegeneracy", help="full-rank certificate for the "
                                             "coefficient span")
    common(p, d=True, ell=True)
    p.set_defaults(func=cmd_nondegeneracy)

    p = sub.add_parser("fiber", help="two-point-fiber analysis at a point")
    common(p, d=True, ell=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("theta", help="lower bound for the singular locus "
                                     "dimension")
    common(p, d=True, ell=True, n=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("sing-family", help="sample verified two-point fibers")
    common(p, d=True, ell=True, n=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sing_family)

    p = sub.add_parser("w1-check", help="identify the first component as a "
                                        "2-uple embedding")
    common(p, d=True)
    p.set_defaults(func=cmd_w1_check)

    for name, handler, extra in (
            ("gb", cmd_gb, ()),
            ("eliminate", cmd_eliminate, ("drop",)),
            ("member", cmd_member, ("poly",)),
            ("radical-member", cmd_radical_member, ("poly",)),
            ("hilbert", cmd_hilbert, ())):
        p = sub.add_parser(name)
        p.add_argument("--input", default=None,
                       help="ideal JSON file {vars, gens}")
        p.add_argument("--vars", default=None, help="comma-separated roster")
        p.add_argument("--gens", default=None,
                       help="semicolon-separated generators")
        p.add_argument("--order", choices=("degrevlex", "lex"),
                       default="degrevlex")
        for field in extra:
            p.add_argument(f"--{field}", required=True)
        common(p)
        p.set_defaults(func=handler)

    p = sub.add_parser("example", help="replay a worked example end to end")
    p.add_argument("which", choices=("d4", "d5"))
    p.add_argument("--long", action="store_true",
                   help="include the long-running image-side computations")
    common(p)
    p.set_defaults(func=cmd_example)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GroebnerTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
