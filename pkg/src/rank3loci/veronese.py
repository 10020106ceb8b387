"""Veronese embeddings, their quadric generators, and the pencil quadric map.

The map (f, g, h) -> phi(f^2 h) phi(g^2 h) - phi(fgh)^2 produces quadrics of
rank at most 3 vanishing on the Veronese variety; phi relabels degree-d
monomials as z-coordinates.  For binary forms (n = 1) the quadric's
coefficients over the standard generators Q[i,j] = z_i z_{j+1} - z_{i+1} z_j
are computed both symbolically (over the section basis) and on concrete
inputs, together with the recurrences tying them to the z_s z_t coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .plucker import (abc_roster, section_basis, section_coordinates,
                      zero_vector)
from .poly import MultiPoly


# -- the ambient space -------------------------------------------------------


class VeroneseSpace:
    """Target coordinates of the d-th Veronese embedding of P^n: one
    z-coordinate per degree-d exponent tuple, in descending lex order."""

    def __init__(self, n, d):
        if n < 1 or d < 1:
            raise ValueError("need n >= 1 and d >= 1")
        self.n = n
        self.d = d
        self.indices = tuple(sorted(_degree_tuples(n + 1, d), reverse=True))
        self.position = {e: i for i, e in enumerate(self.indices)}
        self.r = len(self.indices) - 1

    def __len__(self):
        return len(self.indices)

    def x_roster(self):
        if self.n == 1:
            return ("x", "y")
        return tuple(f"x{i}" for i in range(self.n + 1))


def _degree_tuples(nvars, total):
    if nvars == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _degree_tuples(nvars - 1, total - head):
            yield (head,) + rest


@lru_cache(maxsize=None)
def veronese_space(n, d):
    return VeroneseSpace(n, d)


def linearize(form, space):
    """Relabel a homogeneous degree-d polynomial as a linear form in the
    z-coordinates: a sparse vector position -> coefficient."""
    if form.is_zero():
        return {}
    if not form.is_homogeneous() or form.total_degree() != space.d:
        raise ValueError(f"form must be homogeneous of degree {space.d}")
    if len(form.vars) != space.n + 1:
        raise ValueError("form has the wrong number of variables")
    return {space.position[e]: c for e, c in form.terms.items()}


# -- quadratic forms ---------------------------------------------------------


class QuadForm:
    """A quadric in the z-coordinates, stored as the coefficients of
    z_s z_t for s <= t.  The symmetric matrix has the diagonal coefficients
    on the diagonal and half the mixed coefficients off it."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space, coeffs):
        self.space = space
        self.coeffs = {}
        for (s, t), c in coeffs.items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                if s > t:
                    s, t = t, s
                self.coeffs[(s, t)] = c

    def is_zero(self):
        return not self.coeffs

    def matrix(self):
        m = len(self.space)
        rows = [[Fraction(0)] * m for _ in range(m)]
        for (s, t), c in self.coeffs.items():
            if s == t:
                rows[s][s] = c
            else:
                rows[s][t] = c / 2
                rows[t][s] = c / 2
        return rows

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return QuadForm(self.space, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return QuadForm(self.space, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, QuadForm) and self.space is other.space
                and self.coeffs == other.coeffs)

    def canonical_key(self):
        """Projective normal form: scale so the first nonzero coefficient in
        canonical index order is 1."""
        if not self.coeffs:
            return ()
        first = min(self.coeffs)
        lead = self.coeffs[first]
        return tuple((k, self.coeffs[k] / lead) for k in sorted(self.coeffs))

    def proportional_to(self, other):
        return self.canonical_key() == other.canonical_key()

    def pullback(self):
        """Substitute z_I -> x^I: the polynomial cut out on the Veronese."""
        roster = self.space.x_roster()
        terms = {}
        idx = self.space.indices
        for (s, t), c in self.coeffs.items():
            e = tuple(a + b for a, b in zip(idx[s], idx[t]))
            terms[e] = terms.get(e, Fraction(0)) + c
        return MultiPoly(roster, terms)

    def to_poly_string(self):
        parts = []
        for (s, t), c in sorted(self.coeffs.items()):
            mono = f"z{s}^2" if s == t else f"z{s}*z{t}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def to_json_dict(self):
        return {
            "n": self.space.n, "d": self.space.d,
            "coeffs": [{"s": s, "t": t, "num": str(c.numerator),
                        "den": str(c.denominator)}
                       for (s, t), c in sorted(self.coeffs.items())],
        }


def quadform_from_json_dict(data):
    space = veronese_space(data["n"], data["d"])
    coeffs = {(e["s"], e["t"]): Fraction(int(e["num"]), int(e["den"]))
              for e in data["coeffs"]}
    return QuadForm(space, coeffs)


def vanishes_on_veronese(q):
    """True iff the quadric pulls back to zero under z_I -> x^I."""
    return q.pullback().is_zero()


def rnc_generators(d):
    """The C(d,2) binomial generators Q[i,j] = z_i z_{j+1} - z_{i+1} z_j of
    the ideal of the degree-d rational normal curve."""
    if d < 2:
        raise ValueError("need d >= 2")
    space = veronese_space(1, d)
    out = {}
    for i in range(d):
        for j in range(i + 1, d):
            out[(i, j)] = QuadForm(space, {(i, j + 1): Fraction(1),
                                           (i + 1, j): Fraction(-1)})
    return out


def rank3_quadric(space, ell, f, g, h):
    """The quadric phi(f^2 h) phi(g^2 h) - phi(fgh)^2.

    Degrees must satisfy deg f = deg g = ell and deg h = d - 2*ell; the zero
    form is a legitimate value (f, g proportional or h = 0).
    """
    d = space.d
    for p, deg, name in ((f, ell, "f"), (g, ell, "g"), (h, d - 2 * ell, "h")):
        if p.is_zero():
            continue
        if not p.is_homogeneous() or p.total_degree() != deg:
            raise ValueError(f"{name} must be homogeneous of degree {deg}")
    u = linearize(f * f * h, space) if not (f.is_zero() or h.is_zero()) else {}
    v = linearize(g * g * h, space) if not (g.is_zero() or h.is_zero()) else {}
    w = linearize(f * g * h, space) \
        if not (f.is_zero() or g.is_zero() or h.is_zero()) else {}
    coeffs = {}

    def bump(s, t, c):
        if s > t:
            s, t = t, s
        coeffs[(s, t)] = coeffs.get((s, t), Fraction(0)) + c

    for s, us in u.items():
        for t, vt in v.items():
            bump(s, t, us * vt)
    for s, ws in w.items():
        for t, wt in w.items():
            bump(s, t, -ws * wt)
    return QuadForm(space, coeffs)


# -- coefficient tables for the rational normal curve ------------------------


@dataclass
class CoefficientTables:
    """Symbolic coefficients of the pencil quadric map for (d, ell).

    mono[(s, t)] is the coefficient of z_s z_t and gen[(i, j)] the
    coefficient of the generator Q[i,j], both as section vectors; raw[(s,t)]
    keeps the direct expansion in the A,B,C coefficient ring for audits.
    """

    d: int
    ell: int
    basis: object
    mono: dict
    gen: dict
    raw: dict = field(repr=False)

    def gen_zero(self, i, j):
        """Generator coefficient with the out-of-range convention: zero for
        i < 0, j >= d, or i >= j."""
        if i < 0 or j >= self.d or i >= j:
            return zero_vector(self.basis)
        return self.gen[(i, j)]


def _convolution_polys(d, ell):
    """Coefficient vectors of f^2 h, g^2 h, fgh for generic binary forms,
    as polynomials in the A,B,C coefficient ring; index s matches z_s."""
    roster = abc_roster(ell, d)
    nv = len(roster)
    na = ell + 1
    nc = d - 2 * ell + 1

    def unit(*positions):
        e = [0] * nv
        for p in positions:
            e[p] += 1
        return tuple(e)

    u = [dict() for _ in range(d + 1)]
    v = [dict() for _ in range(d + 1)]
    w = [dict() for _ in range(d + 1)]
    for i in range(na):
        for j in range(na):
            for k in range(nc):
                s = i + j + k
                e = unit(i, j, 2 * na + k)
                u[s][e] = u[s].get(e, Fraction(0)) + 1
                e = unit(na + i, na + j, 2 * na + k)
                v[s][e] = v[s].get(e, Fraction(0)) + 1
                e = unit(i, na + j, 2 * na + k)
                w[s][e] = w[s].get(e, Fraction(0)) + 1
    to_poly = lambda t: MultiPoly(roster, t)
    return ([to_poly(t) for t in u], [to_poly(t) for t in v],
            [to_poly(t) for t in w])


@lru_cache(maxsize=None)
def build_tables(d, ell):
    """Symbolic coefficient tables for the rational normal curve of degree d
    and pencil degree ell (n = 1 only)."""
    if not (1 <= ell <= d / 2):
        raise ValueError("need 1 <= ell <= d/2")
    basis = section_basis(ell, d)
    u, v, w = _convolution_polys(d, ell)
    raw = {}
    mono = {}
    for s in range(d + 1):
        for t in range(s, d + 1):
            if s == t:
                p = u[s] * v[s] - w[s] * w[s]
            else:
                p = u[s] * v[t] + u[t] * v[s] - w[s] * w[t] * 2
            raw[(s, t)] = p
            mono[(s, t)] = (section_coordinates(p, basis) if not p.is_zero()
                            else zero_vector(basis))
    gen = {}
    for i in range(d):
        for j in range(i + 1, d):
            if i + j <= d - 1:
                acc = zero_vector(basis)
                for k in range(i + 1):
                    acc = acc + mono[(k, i + j + 1 - k)]
            else:
                acc = zero_vector(basis)
                for k in range(j + 1, d + 1):
                    acc = acc + mono[(i + j + 1 - k, k)]
            gen[(i, j)] = acc
    return CoefficientTables(d=d, ell=ell, basis=basis, mono=mono, gen=gen,
                             raw=raw)


@dataclass
class RecurrenceReport:
    """Residuals of the identities tying generator and monomial coefficients.

    All three families must vanish: the two-term identity
    mono[s,t] = -gen[s-1,t] + gen[s,t-1] on the full grid, equality of the
    two partial-sum formulas on the overlap row i + j = d - 1, and agreement
    of each section-vector expansion with the raw polynomial expansion.
    """

    d: int
    ell: int
    two_term_failures: list
    overlap_failures: list
    extraction_failures: list

    @property
    def ok(self):
        return not (self.two_term_failures or self.overlap_failures
                    or self.extraction_failures)

    def to_json_dict(self):
        return {
            "d": self.d, "ell": self.ell, "verified": self.ok,
            "two_term_failures": self.two_term_failures,
            "overlap_failures": self.overlap_failures,
            "extraction_failures": self.extraction_failures,
        }


def check_recurrences(tables):
    """Verify the recurrences symbolically; nonzero residuals are reported,
    not raised."""
    d = tables.d
    two_term = []
    for s in range(d + 1):
        for t in range(s, d + 1):
            residual = tables.mono[(s, t)] - \
                (tables.gen_zero(s, t - 1) - tables.gen_zero(s - 1, t))
            if not residual.is_zero():
                two_term.append([s, t])
    overlap = []
    for i in range(d):
        for j in range(i + 1, d):
            if i + j != d - 1:
                continue
            left = zero_vector(tables.basis)
            for k in range(i + 1):
                left = left + tables.mono[(k, i + j + 1 - k)]
            right = zero_vector(tables.basis)
            for k in range(j + 1, d + 1):
                right = right + tables.mono[(i + j + 1 - k, k)]
            if not (left - right).is_zero():
                overlap.append([i, j])
    extraction = []
    for key, vec in tables.mono.items():
        if vec.to_poly() != tables.raw[key]:
            extraction.append(list(key))
    return RecurrenceReport(d=tables.d, ell=tables.ell,
                            two_term_failures=two_term,
                            overlap_failures=overlap,
                            extraction_failures=extraction)


# -- evaluated tables --------------------------------------------------------


def evaluated_tables(d, ell, f, g, h):
    """Numeric generator and monomial coefficients for concrete binary forms.

    Returns (gen, mono, quadric); the reconstruction sum of gen[(i,j)] times
    the generators equals the quadric exactly.
    """
    space = veronese_space(1, d)
    q = rank3_quadric(space, ell, f, g, h)
    mono = {}
    for s in range(d + 1):
        for t in range(s, d + 1):
            mono[(s, t)] = q.coeffs.get((s, t), Fraction(0))
    gen = {}
    for i in range(d):
        for j in range(i + 1, d):
            if i + j <= d - 1:
                gen[(i, j)] = sum(mono[(k, i + j + 1 - k)]
                                  for k in range(i + 1))
            else:
                gen[(i, j)] = sum(mono[(i + j + 1 - k, k)]
                                  for k in range(j + 1, d + 1))
    return gen, mono, q


def reconstruct_from_generators(d, gen):
    """Sum of gen[(i,j)] * Q[i,j] as a QuadForm."""
    space = veronese_space(1, d)
    coeffs = {}
    for (i, j), c in gen.items():
        if not c:
            continue
        for key, sign in (((i, j + 1), 1), ((i + 1, j), -1)):
            coeffs[key] = coeffs.get(key, Fraction(0)) + sign * c
    return QuadForm(space, coeffs)


def witness_quadric(d, ell):
    """The quadric z_0 z_{2l} - z_l^2 hitting only the top generator in its
    leading row: generator coefficients are 1 exactly on the anti-diagonal
    k + (2l-1-k), zero elsewhere."""
    if not (1 <= ell <= d / 2):
        raise ValueError("need 1 <= ell <= d/2")
    space = veronese_space(1, d)
    q = QuadForm(space, {(0, 2 * ell): Fraction(1),
                         (ell, ell): Fraction(-1)})
    gen = {}
    for i in range(d):
        for j in range(i + 1, d):
            gen[(i, j)] = Fraction(1) if (i + j == 2 * ell - 1) else Fraction(0)
    return q, gen


# -- vanishing propagation certificate ----------------------------------------


@dataclass
class VanishingChain:
    """Certificate that killing the generator coefficients of the leading row
    up to index 2*ell - 1 kills the whole row.

    Branch C0 = 0: every leading-row coefficient has C0 in each term.
    Branch C0 != 0: the hypotheses force q_{0,1} = 0, then q_{0,2} = 0, ...
    up to q_{0,ell} = 0; each step exhibits the single surviving term
    coef * C0^2 * q_{0,j+1}^2 with a nonzero coefficient.
    """

    d: int
    ell: int
    shape_ok: bool
    c0_branch_ok: bool
    steps: list
    conclusion_ok: bool
    failures: list

    @property
    def ok(self):
        return (self.shape_ok and self.c0_branch_ok and self.conclusion_ok
                and not self.failures)

    def to_json_dict(self):
        return {
            "d": self.d, "ell": self.ell, "verified": self.ok,
            "shape_ok": self.shape_ok, "c0_branch_ok": self.c0_branch_ok,
            "steps": self.steps, "conclusion_ok": self.conclusion_ok,
            "failures": self.failures,
        }


def vanishing_propagation(d, ell):
    """Build the vanishing-propagation certificate for the leading row of
    the (d, ell) tables."""
    tables = build_tables(d, ell)
    roster = abc_roster(ell, d)
    c0_index = 2 * (ell + 1)
    failures = []

    # shape: every term of every leading-row coefficient is
    # C0 C_mu q_{0,b} q_{0,dd}
    shape_ok = True
    for k in range(1, d):
        for term, _ in tables.gen[(0, k)].items():
            if (term.first[0] != 0 or term.second[0] != 0
                    or term.cvars[0] != 0):
                shape_ok = False
                failures.append(f"row coefficient (0,{k}) has term "
                                f"{term.label()} outside the expected shape")

    # branch C0 = 0: substituting C0 = 0 into the raw expansions kills
    # the whole leading row
    c0_ok = True
    for k in range(1, d):
        raw = tables.raw[(0, k + 1)]
        killed = MultiPoly(roster, {
            e: c for e, c in raw.terms.items() if e[c0_index] == 0})
        if not killed.is_zero():
            c0_ok = False
            failures.append(f"C0 = 0 leaves a residue in row entry (0,{k})")

    # branch C0 != 0: induction on the minor index
    steps = []
    for j in range(ell):
        vec = tables.gen[(0, 2 * j + 1)]
        survivors = [(term, c) for term, c in vec.items()
                     if term.first[1] > j and term.second[1] > j]
        expected = ((0, j + 1), (0, j + 1), (0, 0))
        step = {"j": j, "row_entry": [0, 2 * j + 1],
                "survivors": [t.label() for t, _ in survivors]}
        if (len(survivors) == 1
                and (survivors[0][0].first, survivors[0][0].second,
                     survivors[0][0].cvars) == expected
                and survivors[0][1] != 0):
            c = survivors[0][1]
            step["coefficient"] = str(c)
            step["forces"] = f"q0{j + 1} = 0"
        else:
            failures.append(
                f"induction step j={j}: surviving terms are not the single "
                f"expected square")
        steps.append(step)

    # conclusion: every term of every leading-row entry carries some q_{0,b},
    # all of which the chain kills
    conclusion_ok = shape_ok
    return VanishingChain(d=d, ell=ell, shape_ok=shape_ok, c0_branch_ok=c0_ok,
                          steps=steps, conclusion_ok=conclusion_ok,
                          failures=failures)
