"""A small exact Gröbner engine: Buchberger with the product and chain
criteria, block-order elimination, ideal and radical membership, and
Hilbert polynomials of homogeneous ideals.

Scale target is desk-size computations (around a dozen variables, low
degree); long computations take an explicit deadline and surface a
GroebnerTimeout instead of hanging.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import DEGREVLEX, MonomialOrder, MultiPoly, block_order, monic

# -- ideals -------------------------------------------------------------------


@dataclass
class Ideal:
    vars: tuple
    gens: list
    homogeneous: bool

    def to_json_dict(self):
        from .poly import poly_to_json_dict
        return {"vars": list(self.vars),
                "gens": [poly_to_json_dict(g) for g in self.gens]}


def make_ideal(vars, gens):
    vars = tuple(vars)
    clean = []
    for g in gens:
        if g.vars != vars:
            raise ValueError("generator roster does not match the ideal")
        if not g.is_zero():
            clean.append(g)
    homogeneous = all(g.is_homogeneous() for g in clean)
    return Ideal(vars=vars, gens=clean, homogeneous=homogeneous)


def ideal_from_json_dict(data):
    from .poly import poly_from_json_dict
    gens = [poly_from_json_dict(g) for g in data["gens"]]
    return make_ideal(tuple(data["vars"]), gens)


class GroebnerTimeout(RuntimeError):
    """The computation exceeded its deadline."""


@dataclass
class GroebnerBasis:
    order: MonomialOrder
    elements: list

    def to_json_dict(self):
        from .poly import poly_to_json_dict
        return {"order": self.order.to_json_dict(),
                "elements": [poly_to_json_dict(g) for g in self.elements]}


# -- division -------------------------------------------------------------------


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def normal_form(p, basis, order):
    """Remainder of p on division by the list basis: no term of the result
    is divisible by any leading term of the basis."""
    if not basis:
        return p
    lead = [(max(g.terms, key=order.key), g) for g in basis]
    lead = [(lt, g.terms[lt], g) for lt, g in lead]
    work = dict(p.terms)
    remainder = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        for lt, lc, g in lead:
            if _divides(lt, m):
                shift = _mono_sub(m, lt)
                factor = c / lc
                for e, v in g.terms.items():
                    if e == lt:
                        continue
                    key = _mono_add(e, shift)
                    nv = work.get(key, Fraction(0)) - factor * v
                    if nv:
                        work[key] = nv
                    else:
                        work.pop(key, None)
                break
        else:
            remainder[m] = c
    return MultiPoly(p.vars, remainder)


def spoly(f, g, order):
    lf = max(f.terms, key=order.key)
    lg = max(g.terms, key=order.key)
    lcm = _mono_lcm(lf, lg)
    mf = MultiPoly.monomial(f.vars, _mono_sub(lcm, lf), 1 / f.terms[lf])
    mg = MultiPoly.monomial(g.vars, _mono_sub(lcm, lg), 1 / g.terms[lg])
    return mf * f - mg * g


# -- Buchberger -------------------------------------------------------------------


def _update_pairs(G, lead, P, f, order):
    """Gebauer-Möller pair update: add f, prune by the product and chain
    criteria."""
    lf = max(f.terms, key=order.key)
    t = len(G)
    # chain criterion on existing pairs
    kept = set()
    for (i, j) in P:
        lcm_ij = _mono_lcm(lead[i], lead[j])
        if (not _divides(lf, lcm_ij)
                or lcm_ij == _mono_lcm(lead[i], lf)
                or lcm_ij == _mono_lcm(lead[j], lf)):
            kept.add((i, j))
    # new pairs, minimalized by lcm divisibility
    lcms = {}
    for i in range(t):
        lcms.setdefault(_mono_lcm(lead[i], lf), []).append(i)
    minimal = []
    for L in sorted(lcms, key=order.key):
        if not any(_divides(M, L) for M in minimal):
            minimal.append(L)
    new_pairs = set()
    for L in minimal:
        # product criterion: skip when some representative pair is coprime
        if not any(_mono_lcm(lead[i], lf) == _mono_add(lead[i], lf)
                   for i in lcms[L]):
            new_pairs.add((min(lcms[L]), t))
    G.append(f)
    lead.append(lf)
    return kept | new_pairs


def buchberger(ideal, order=DEGREVLEX, timeout=None):
    """Reduced Gröbner basis; deterministic for a fixed input and order."""
    deadline = None if timeout is None else time.monotonic() + timeout
    gens = sorted((monic(g, order) for g in ideal.gens),
                  key=lambda g: order.key(max(g.terms, key=order.key)))
    G, lead, P = [], [], set()
    for g in gens:
        P = _update_pairs(G, lead, P, g, order)
    while P:
        if deadline is not None and time.monotonic() > deadline:
            raise GroebnerTimeout(f"basis computation exceeded {timeout}s")
        i, j = min(P, key=lambda p: (order.key(_mono_lcm(lead[p[0]],
                                                         lead[p[1]])), p))
        P.remove((i, j))
        s = spoly(G[i], G[j], order)
        r = normal_form(s, G, order)
        if not r.is_zero():
            P = _update_pairs(G, lead, P, monic(r, order), order)
    # minimalize
    order_key = lambda g: order.key(max(g.terms, key=order.key))
    minimal = []
    for g in sorted(G, key=order_key):
        lg = max(g.terms, key=order.key)
        if not any(_divides(max(h.terms, key=order.key), lg)
                   for h in minimal):
            minimal.append(g)
    # interreduce
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others, order)
        if not r.is_zero():
            reduced.append(monic(r, order))
    reduced.sort(key=order_key)
    return GroebnerBasis(order=order, elements=reduced)


def ideal_membership(f, gb):
    """(member?, normal form) of f against a reduced basis."""
    if gb.elements and f.vars != gb.elements[0].vars:
        raise ValueError("roster mismatch with the basis")
    nf = normal_form(f, gb.elements, gb.order)
    return nf.is_zero(), nf


# -- elimination -------------------------------------------------------------------


def eliminate(ideal, drop, timeout=None):
    """Generators of the elimination ideal obtained by dropping the given
    variables, via a block order with the dropped variables leading."""
    drop = tuple(drop)
    for v in drop:
        if v not in ideal.vars:
            raise ValueError(f"unknown variable {v!r}")
    keep = tuple(v for v in ideal.vars if v not in drop)
    new_roster = drop + keep
    perm = [ideal.vars.index(v) for v in new_roster]
    reordered = [
        MultiPoly(new_roster,
                  {tuple(e[i] for i in perm): c for e, c in g.terms.items()})
        for g in ideal.gens
    ]
    gb = buchberger(make_ideal(new_roster, reordered),
                    block_order(len(drop)), timeout=timeout)
    nd = len(drop)
    out = []
    for g in gb.elements:
        if all(not any(e[:nd]) for e in g.terms):
            out.append(MultiPoly(keep,
                                 {e[nd:]: c for e, c in g.terms.items()}))
    return make_ideal(keep, out)


# -- radical membership ----------------------------------------------------------


def radical_membership(f, ideal, timeout=None):
    """Rabinowitsch trick: f is in the radical iff 1 lies in the ideal
    extended by 1 - w*f over a fresh variable w."""
    return radical_membership_report(f, ideal, timeout=timeout)["member"]


def radical_membership_report(f, ideal, power_limit=4, timeout=None):
    """Radical membership plus, when membership holds, the least witness
    power f^k in the ideal with k <= power_limit (if one exists there)."""
    if f.vars != ideal.vars:
        raise ValueError("roster mismatch with the ideal")
    w = "_w"
    while w in ideal.vars:
        w += "_"
    roster = (w,) + ideal.vars
    lifted = [
        MultiPoly(roster, {(0,) + e: c for e, c in g.terms.items()})
        for g in ideal.gens
    ]
    f_lift = MultiPoly(roster, {(0,) + e: c for e, c in f.terms.items()})
    wvar = MultiPoly.variable(w, roster)
    one = MultiPoly.constant(roster, 1)
    gb = buchberger(make_ideal(roster, lifted + [one - wvar * f_lift]),
                    DEGREVLEX, timeout=timeout)
    member = [monic(e) for e in gb.elements] == [one]
    report = {"member": member, "power_witness": None}
    if member:
        gb0 = buchberger(ideal, DEGREVLEX, timeout=timeout)
        power = f
        for k in range(1, power_limit + 1):
            if ideal_membership(power, gb0)[0]:
                report["power_witness"] = k
                break
            power = power * f
    return report


# -- Hilbert polynomials ------------------------------------------------------------


def _minimalize_monomials(gens):
    out = []
    for m in sorted(set(gens), key=lambda m: (sum(m), m)):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return tuple(sorted(out))


def _series_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _hilbert_numerator(gens, nvars):
    """Numerator of the Hilbert series of the quotient by a monomial ideal,
    over the denominator (1-t)^nvars.  Pivot recursion on a shared variable."""

    @lru_cache(maxsize=None)
    def rec(g):
        if not g:
            return ((0, 1),)
        if all(sum(1 for e in m if e) == 1 for m in g):
            out = {0: 1}
            for m in g:
                out = _series_mul(out, {0: 1, sum(m): -1})
            return tuple(sorted(out.items()))
        counts = [0] * nvars
        for m in g:
            if sum(1 for e in m if e) > 1:
                for i, e in enumerate(m):
                    if e:
                        counts[i] += 1
        piv = counts.index(max(counts))
        pivot = tuple(1 if i == piv else 0 for i in range(nvars))
        plus = _minimalize_monomials(list(g) + [pivot])
        colon = _minimalize_monomials(
            tuple(e - 1 if i == piv and e > 0 else e for i, e in enumerate(m))
            for m in g)
        left = dict(rec(plus))
        for i, v in rec(colon):
            left[i + 1] = left.get(i + 1, 0) + v
        return tuple(sorted((k, v) for k, v in left.items() if v))

    return dict(rec(_minimalize_monomials(gens)))


def _binomial_poly(shift, k):
    """C(t + shift, k) as a polynomial in the single variable t."""
    roster = ("t",)
    out = MultiPoly.constant(roster, 1)
    t = MultiPoly.variable("t", roster)
    for i in range(k):
        out = out * (t + (shift - i))
    denom = 1
    for i in range(1, k + 1):
        denom *= i
    return out / denom


def hilbert_polynomial(ideal, order=DEGREVLEX, timeout=None, gb=None):
    """Hilbert polynomial of the quotient by a homogeneous ideal, as a
    polynomial in t, computed combinatorially from the leading-term ideal
    of a reduced basis."""
    if not ideal.homogeneous:
        raise ValueError("Hilbert polynomial requires a homogeneous ideal")
    if gb is None:
        gb = buchberger(ideal, order, timeout=timeout)
    lead = [max(g.terms, key=gb.order.key) for g in gb.elements]
    nvars = len(ideal.vars)
    numerator = _hilbert_numerator(tuple(lead), nvars)
    # strip factors of (1 - t): numerator(1) == 0 means a factor remains
    strips = 0
    coeffs = dict(numerator)
    while coeffs and sum(coeffs.values()) == 0:
        # divide by (1 - t): synthetic division
        top = max(coeffs)
        out = {}
        acc = 0
        for i in range(top + 1):
            acc += coeffs.get(i, 0)
            if acc:
                out[i] = acc
        out.pop(top, None)
        coeffs = out
        strips += 1
    dim = nvars - strips
    roster = ("t",)
    if dim <= 0:
        return MultiPoly.zero(roster)
    hp = MultiPoly.zero(roster)
    for i, q in coeffs.items():
        hp = hp + _binomial_poly(dim - 1 - i, dim - 1) * q
    return hp
