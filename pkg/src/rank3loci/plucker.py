"""Plücker coordinates, the quadratic basis of the Grassmannian coordinate
ring, and the basis of bidegree-(2,2) sections used by the coefficient
tables.

A 2-minor q_ab (a < b) is A_a*B_b - A_b*B_a in the 2x(l+1) coefficient
matrix of a pencil of binary forms.  Degree-2 products of minors span the
quadratic part of the Grassmannian coordinate ring; the subset with
a <= g <= b, d (pairs (a,b), (g,d)) is a basis.  Tensoring with quadratic
monomials in the C-coefficients gives the section basis: terms

    C_lam * C_mu * q_ab * q_gd

with a <= g <= b, d and lam <= mu, one representative per value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from .linalg import LinearSolver
from .poly import MultiPoly

# -- rosters ----------------------------------------------------------------


def ab_roster(ell):
    return tuple(f"A{i}" for i in range(ell + 1)) + \
        tuple(f"B{i}" for i in range(ell + 1))


def abc_roster(ell, d):
    return ab_roster(ell) + tuple(f"C{k}" for k in range(d - 2 * ell + 1))


def plucker_roster(n):
    return tuple(f"p{a}_{b}" for a, b in combinations(range(n + 1), 2))


# -- Plücker relations -------------------------------------------------------


def plucker_relations(n):
    """The C(n+1, 4) quadratic relations among the coordinates p_ab,
    one per 0 <= a < b < g < d <= n, in canonical index order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    roster = plucker_roster(n)
    pairs = list(combinations(range(n + 1), 2))
    index = {p: i for i, p in enumerate(pairs)}

    def mono(p1, p2, sign):
        exps = [0] * len(pairs)
        exps[index[p1]] += 1
        exps[index[p2]] += 1
        return tuple(exps), Fraction(sign)

    out = []
    for a, b, g, d in combinations(range(n + 1), 4):
        terms = {}
        for p1, p2, sign in (((a, b), (g, d), 1), ((a, g), (b, d), -1),
                             ((a, d), (b, g), 1)):
            e, c = mono(p1, p2, sign)
            terms[e] = terms.get(e, Fraction(0)) + c
        out.append(MultiPoly(roster, terms))
    return out


def minor_poly(pair, ell):
    """Expansion A_a*B_b - A_b*B_a of the 2-minor over the A,B roster."""
    a, b = pair
    roster = ab_roster(ell)
    n = len(roster)

    def unit(i):
        return tuple(1 if j == i else 0 for j in range(n))

    def joint(i, j):
        return tuple((1 if k == i else 0) + (1 if k == j else 0)
                     for k in range(n))

    return MultiPoly(roster, {
        joint(a, ell + 1 + b): Fraction(1),
        joint(b, ell + 1 + a): Fraction(-1),
    })


# -- the quadratic basis -----------------------------------------------------


def _pair_product_canonical(p1, p2):
    """Canonical (sign, pair1, pair2) with sorted pairs and pair1 <= pair2."""
    sign = 1
    a, b = p1
    if a > b:
        a, b = b, a
        sign = -sign
    g, d = p2
    if g > d:
        g, d = d, g
        sign = -sign
    if (a, b) > (g, d):
        (a, b), (g, d) = (g, d), (a, b)
    return sign, (a, b), (g, d)


def _in_quadratic_basis(p1, p2):
    """Membership test for canonical pair products: a <= g <= b, d and not
    the fully interleaved pattern a < b < g < d."""
    (a, b), (g, d) = p1, p2
    return a <= g <= b and g <= d


@lru_cache(maxsize=None)
def quadratic_basis(ell):
    """Ordered basis of the degree-2 part of the minor ring: canonical pair
    products (a,b) <= (g,d) with a <= g <= b, d.  Size is
    (1/3) C(ell+2,2) C(ell+1,2)."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    pairs = list(combinations(range(ell + 1), 2))
    out = []
    for i, p1 in enumerate(pairs):
        for p2 in pairs[i:]:
            if _in_quadratic_basis(p1, p2):
                out.append((p1, p2))
    return tuple(sorted(out))


def pair_expansion(p1, p2, ell):
    return minor_poly(p1, ell) * minor_poly(p2, ell)


@lru_cache(maxsize=None)
def _t2_solver(ell):
    """Solver expressing bidegree-(2,2) polynomials in A,B over the
    quadratic basis expansions."""
    basis = quadratic_basis(ell)
    roster = ab_roster(ell)
    monomials = {}

    def row_of(exps):
        if exps not in monomials:
            monomials[exps] = len(monomials)
        return monomials[exps]

    columns = []
    for p1, p2 in basis:
        expansion = pair_expansion(p1, p2, ell)
        columns.append({row_of(e): c for e, c in expansion.terms.items()})
    # allocate row indices for every bidegree-(2,2) monomial up front, so
    # unseen right-hand-side monomials are recognized
    amons = list(combinations_with_replacement(range(ell + 1), 2))
    for i, j in amons:
        for k, l in amons:
            e = [0] * len(roster)
            e[i] += 1
            e[j] += 1
            e[ell + 1 + k] += 1
            e[ell + 1 + l] += 1
            row_of(tuple(e))
    return LinearSolver(columns, len(monomials)), monomials


def t2_coordinates(p, ell):
    """Coordinates of a bidegree-(2,2) polynomial in A,B over
    quadratic_basis(ell).  Raises InconsistentSystem if p is not in the
    span (i.e. not a quadratic expression in the minors)."""
    solver, monomials = _t2_solver(ell)
    rhs = {}
    for e, c in p.terms.items():
        if e not in monomials:
            raise ValueError("polynomial is not bidegree (2,2) in A,B")
        rhs[monomials[e]] = c
    return solver.solve(rhs)


def quadratic_normal_form(expr, ell):
    """Unique coordinates of a homogeneous quadratic in the Plüccker-minor
    variables over quadratic_basis(ell), applying the straightening

        q_ab q_gd = q_ag q_bd - q_ad q_bg        (a < b < g < d)

    to every fully interleaved product.  Input roster must be the q-variable
    roster q{a}_{b} in canonical pair order."""
    pairs = list(combinations(range(ell + 1), 2))
    roster = tuple(f"q{a}_{b}" for a, b in pairs)
    if expr.vars != roster:
        raise ValueError("expected the q-variable roster for this ell")
    basis = quadratic_basis(ell)
    index = {bp: i for i, bp in enumerate(basis)}
    coords = {}

    def add(bp, coeff):
        if bp not in index:
            raise AssertionError(f"pair product {bp} missing from basis")
        i = index[bp]
        coords[i] = coords.get(i, Fraction(0)) + coeff
        if not coords[i]:
            del coords[i]

    for exps, coeff in expr.terms.items():
        if sum(exps) != 2:
            raise ValueError("expression is not homogeneous quadratic")
        support = [i for i, e in enumerate(exps) if e]
        if len(support) == 1:
            p1 = p2 = pairs[support[0]]
        else:
            p1, p2 = pairs[support[0]], pairs[support[1]]
        sign, p1, p2 = _pair_product_canonical(p1, p2)
        coeff = coeff * sign
        if _in_quadratic_basis(p1, p2):
            add((p1, p2), coeff)
        else:
            (a, b), (g, d) = p1, p2
            add(((a, g), (b, d)), coeff)
            add(((a, d), (b, g)), -coeff)
    return coords


# -- section terms and the section basis -------------------------------------


@dataclass(frozen=True)
class SectionTerm:
    """A term C_lam C_mu q_ab q_gd, with an explicit sign."""

    first: tuple
    second: tuple
    cvars: tuple
    sign: int = 1

    def weight(self):
        """Index sums (lam+a+g, mu+b+d) governing which z_s z_t coefficient
        the term can contribute to."""
        (a, b), (g, d) = self.first, self.second
        lam, mu = self.cvars
        return (lam + a + g, mu + b + d)

    def index_sum(self):
        (a, b), (g, d) = self.first, self.second
        return a + b + g + d + sum(self.cvars)

    def sort_key(self):
        (a, b), (g, d) = self.first, self.second
        lam, mu = self.cvars
        return (lam, mu, a, g, b, d)

    def to_json_dict(self):
        return {
            "sign": self.sign,
            "pair1": list(self.first),
            "pair2": list(self.second),
            "cvars": list(self.cvars),
        }

    @staticmethod
    def from_json_dict(data):
        return SectionTerm(tuple(data["pair1"]), tuple(data["pair2"]),
                           tuple(data["cvars"]), data.get("sign", 1))

    def label(self):
        (a, b), (g, d) = self.first, self.second
        lam, mu = self.cvars
        qpart = (f"q{a}{b}^2" if (a, b) == (g, d) else f"q{a}{b}*q{g}{d}")
        cpart = (f"C{lam}^2" if lam == mu else f"C{lam}*C{mu}")
        head = "-" if self.sign < 0 else ""
        return f"{head}{qpart}*{cpart}"


class SectionBasis:
    """Deterministically ordered basis of the bidegree-(2,2) section space
    for parameters (ell, d), ordered lexicographically on
    (lam, mu, a, g, b, d)."""

    def __init__(self, ell, d):
        if not (1 <= ell <= d / 2):
            raise ValueError("need 1 <= ell <= d/2")
        self.ell = ell
        self.d = d
        cpairs = list(combinations_with_replacement(range(d - 2 * ell + 1), 2))
        terms = []
        for p1, p2 in quadratic_basis(ell):
            for lam, mu in cpairs:
                terms.append(SectionTerm(p1, p2, (lam, mu)))
        terms.sort(key=SectionTerm.sort_key)
        self.terms = tuple(terms)
        self.index = {(t.first, t.second, t.cvars): i
                      for i, t in enumerate(terms)}

    def __len__(self):
        return len(self.terms)

    def position(self, first, second, cvars):
        return self.index[(first, second, cvars)]

    def to_json_dict(self):
        return {"ell": self.ell, "d": self.d,
                "terms": [t.to_json_dict() for t in self.terms]}


@lru_cache(maxsize=None)
def section_basis(ell, d):
    return SectionBasis(ell, d)


def expected_basis_size(ell, d):
    """dim of the section space: (1/3) C(ell+2,2) C(ell+1,2) C(d-2*ell+2,2)."""
    from math import comb
    return comb(ell + 2, 2) * comb(ell + 1, 2) // 3 * comb(d - 2 * ell + 2, 2)


class SectionVector:
    """Element of the section space: sparse coordinates over a SectionBasis."""

    __slots__ = ("basis", "coords")

    def __init__(self, basis, coords=None):
        self.basis = basis
        self.coords = {}
        if coords:
            for i, c in coords.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    self.coords[i] = c

    def is_zero(self):
        return not self.coords

    def __add__(self, other):
        if other.basis is not self.basis:
            raise ValueError("section vectors over different bases")
        out = dict(self.coords)
        for i, c in other.coords.items():
            v = out.get(i, Fraction(0)) + c
            if v:
                out[i] = v
            else:
                out.pop(i, None)
        return SectionVector(self.basis, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return SectionVector(self.basis,
                             {i: c * v for i, v in self.coords.items()})

    def __eq__(self, other):
        return (isinstance(other, SectionVector)
                and self.basis is other.basis and self.coords == other.coords)

    def support(self):
        return [self.basis.terms[i] for i in sorted(self.coords)]

    def items(self):
        return [(self.basis.terms[i], self.coords[i])
                for i in sorted(self.coords)]

    def to_poly(self):
        """Expansion into the A,B,C coefficient ring."""
        basis = self.basis
        out = MultiPoly.zero(abc_roster(basis.ell, basis.d))
        for i, c in self.coords.items():
            out = out + term_expansion(basis.terms[i], basis.ell,
                                       basis.d) * c
        return out

    def label(self):
        if not self.coords:
            return "0"
        parts = []
        for term, c in self.items():
            body = term.label()
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def to_json_dict(self):
        return {"coords": [
            {"term": self.basis.terms[i].to_json_dict(),
             "num": str(self.coords[i].numerator),
             "den": str(self.coords[i].denominator)}
            for i in sorted(self.coords)
        ]}


def zero_vector(basis):
    return SectionVector(basis, {})


@lru_cache(maxsize=None)
def term_expansion(term, ell, d):
    """Expansion of a section term into the A,B,C polynomial ring."""
    roster = abc_roster(ell, d)
    ab = pair_expansion(term.first, term.second, ell)
    nc = d - 2 * ell + 1
    lam, mu = term.cvars
    cexp = [0] * nc
    cexp[lam] += 1
    cexp[mu] += 1
    terms = {}
    for e, c in ab.terms.items():
        terms[tuple(e) + tuple(cexp)] = c * term.sign
    return MultiPoly(roster, terms)


def normalize_term(first, second, cvars, basis):
    """Coordinates over the section basis of a raw term
    C_lam C_mu q_(first) q_(second) with arbitrary index patterns.

    Applies the four swap identities, then at most one straightening
    rewrite.  Zero minors (a == b) give the zero vector.
    """
    ell, d = basis.ell, basis.d
    a, b = first
    g, dd = second
    lam, mu = cvars
    for idx in (a, b, g, dd):
        if not 0 <= idx <= ell:
            raise ValueError("minor index out of range")
    for idx in (lam, mu):
        if not 0 <= idx <= d - 2 * ell:
            raise ValueError("coefficient index out of range")
    if a == b or g == dd:
        return zero_vector(basis)
    sign, p1, p2 = _pair_product_canonical((a, b), (g, dd))
    if lam > mu:
        lam, mu = mu, lam
    cv = (lam, mu)
    if _in_quadratic_basis(p1, p2):
        return SectionVector(
            basis, {basis.position(p1, p2, cv): Fraction(sign)})
    (a, b), (g, dd) = p1, p2
    return SectionVector(basis, {
        basis.position((a, g), (b, dd), cv): Fraction(sign),
        basis.position((a, dd), (b, g), cv): Fraction(-sign),
    })


def section_coordinates(p, basis):
    """Coordinates of a bidegree-(2,2,2) polynomial in A,B,C over the
    section basis, via exact linear solves in the A,B block."""
    ell, d = basis.ell, basis.d
    nab = 2 * (ell + 1)
    groups = {}
    for e, c in p.terms.items():
        ab_part, c_part = e[:nab], e[nab:]
        groups.setdefault(c_part, {})[ab_part] = c
    coords = {}
    roster = ab_roster(ell)
    for c_part, ab_terms in groups.items():
        support = [k for k, e in enumerate(c_part) if e]
        if sum(c_part) != 2:
            raise ValueError("polynomial is not quadratic in C")
        if len(support) == 1:
            lam = mu = support[0]
        else:
            lam, mu = support
        ab_poly = MultiPoly(roster, ab_terms)
        for col, value in t2_coordinates(ab_poly, ell).items():
            p1, p2 = quadratic_basis(ell)[col]
            coords[basis.position(p1, p2, (lam, mu))] = value
    return SectionVector(basis, coords)


# -- weight slices and witnesses ---------------------------------------------


@dataclass(frozen=True)
class WeightSlice:
    """Section-basis terms whose index weights are exactly (s, t)."""

    s: int
    t: int
    members: tuple

    def __len__(self):
        return len(self.members)


def weight_slice(s, t, basis):
    members = tuple(t_ for t_ in basis.terms if t_.weight() == (s, t))
    return WeightSlice(s, t, members)


def star_weight_indices(s, t, basis):
    """All raw index tuples (a, b, g, dd, lam, mu) with a+g+lam = s and
    b+dd+mu = t, without the basis-membership restriction."""
    ell, d = basis.ell, basis.d
    out = []
    for a in range(ell + 1):
        for g in range(ell + 1):
            lam = s - a - g
            if not 0 <= lam <= d - 2 * ell:
                continue
            for b in range(ell + 1):
                for dd in range(ell + 1):
                    mu = t - b - dd
                    if not 0 <= mu <= d - 2 * ell:
                        continue
                    out.append((a, b, g, dd, lam, mu))
    return out


def weight_witness(i, j, ell, d):
    """A section-basis term of weight (i, j+1), built by the constructive
    case split on whether j+1 fits inside the minor indices."""
    if not (0 <= i < j <= d - 1):
        raise ValueError("need 0 <= i < j <= d-1")
    if not (1 <= ell <= d / 2):
        raise ValueError("need 1 <= ell <= d/2")
    if j + 1 <= 2 * ell:
        m, n = i // 2, (j + 1) // 2
        if i % 2 == 0 and (j + 1) % 2 == 0:
            a, b, g, dd = m, n, m, n
        elif i % 2 == 0:
            a, b, g, dd = m, n, m, n + 1
        elif (j + 1) % 2 == 0:
            a, b, g, dd = m, n, m + 1, n
        else:
            a, b, g, dd = m, n, m + 1, n + 1
        term = SectionTerm((a, b), (g, dd), (0, 0))
    else:
        mu = j + 1 - 2 * ell
        g = min(ell - 1, i)
        rem = i - g
        a = min(g, rem)
        lam = rem - a
        term = SectionTerm((a, ell), (g, ell), (lam, mu))
    basis = section_basis(ell, d)
    if (term.first, term.second, term.cvars) not in basis.index:
        raise AssertionError(f"constructed witness {term} is not a basis term")
    if term.weight() != (i, j + 1):
        raise AssertionError(f"constructed witness has weight {term.weight()}")
    return term
