"""Certificate generators for the structural facts about the rank-3 loci.

Every function here emits a self-contained, re-checkable object: exact rank
data, witness terms with their coefficients, gcd/square-part traces for
fiber certificates, and the per-parameter values of the singular-dimension
bound.  A falsified claim is reported inside the certificate (ok = False),
never silently repaired.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .linalg import matrix_rank
from .plucker import weight_witness
from .poly import (MultiPoly, divide_exact, monic, square_part,
                   univariate_gcd)
from .veronese import (build_tables, evaluated_tables, rank3_quadric,
                       reconstruct_from_generators, vanishes_on_veronese,
                       vanishing_propagation, veronese_space,
                       witness_quadric)

# -- ranks -------------------------------------------------------------------


def quad_rank(q):
    """Exact rank of the symmetric coefficient matrix of a quadric."""
    rows = []
    for row in q.matrix():
        sparse = {j: v for j, v in enumerate(row) if v}
        if sparse:
            rows.append(sparse)
    return matrix_rank(rows)


def rank3_membership(q):
    """True iff q is a rank-3 quadric vanishing on the Veronese variety."""
    if q.is_zero():
        raise ValueError("the zero form has no rank-3 membership status")
    return vanishes_on_veronese(q) and quad_rank(q) == 3


# -- pencil points ------------------------------------------------------------


@dataclass(frozen=True)
class PencilPoint:
    """A point of the Grassmannian of pencils of degree-ell binary forms,
    normalized as the reduced row echelon form of the 2 x (ell+1)
    coefficient matrix (so leading coefficients are 1 and the first row has
    the larger multidegree)."""

    ell: int
    rows: tuple

    @staticmethod
    def from_forms(f, g):
        ell = f.total_degree()
        if g.is_zero() or f.is_zero() or g.total_degree() != ell:
            raise ValueError("pencil forms must be nonzero of equal degree")
        m = [_coeff_vector(f), _coeff_vector(g)]
        m = _rref2(m)
        if m is None:
            raise ValueError("pencil forms are linearly dependent")
        return PencilPoint(ell, m)

    def forms(self, vars=("x", "y")):
        return tuple(_form_from_vector(row, vars) for row in self.rows)


def _coeff_vector(f):
    """Coefficients in descending monomial order x^k, x^(k-1) y, ..., y^k."""
    k = f.total_degree()
    return tuple(f.coefficient((k - i, i)) for i in range(k + 1))


def _form_from_vector(vec, vars):
    k = len(vec) - 1
    return MultiPoly(vars, {(k - i, i): c for i, c in enumerate(vec) if c})


def _rref2(m):
    """Reduced row echelon form of a 2 x n rational matrix; None if rank < 2."""
    r0, r1 = [list(r) for r in m]
    p0 = next((i for i, v in enumerate(r0) if v), None)
    p1 = next((i for i, v in enumerate(r1) if v), None)
    if p0 is None or p1 is None:
        return None
    if p1 < p0:
        r0, r1, p0, p1 = r1, r0, p1, p0
    r0 = [v / r0[p0] for v in r0]
    if r1[p0]:
        c = r1[p0]
        r1 = [v - c * w for v, w in zip(r1, r0)]
    p1 = next((i for i, v in enumerate(r1) if v), None)
    if p1 is None:
        return None
    r1 = [v / r1[p1] for v in r1]
    if r0[p1]:
        c = r0[p1]
        r0 = [v - c * w for v, w in zip(r0, r1)]
    return (tuple(r0), tuple(r1))


def _monic_class(h):
    """Projective normal form of a nonzero binary form: monic coefficient
    vector in descending monomial order."""
    vec = _coeff_vector(h)
    lead = next(v for v in vec if v)
    return tuple(v / lead for v in vec)


# -- fiber analysis ------------------------------------------------------------


@dataclass
class FiberCert:
    """Witness that the quadric of (f, g, h) has a second preimage point.

    f = C f', g = C g', h = D^2 h' with C, D independent forms of the same
    degree s; the swapped point (<D f', D g'>, <C^2 h'>) maps to the same
    quadric up to a nonzero scalar.
    """

    d: int
    ell: int
    s: int
    C: MultiPoly
    D: MultiPoly
    f_prime: MultiPoly
    g_prime: MultiPoly
    h_prime: MultiPoly
    point: tuple
    second_point: tuple
    scalar: Fraction

    def to_json_dict(self):
        from .poly import poly_to_json_dict
        return {
            "d": self.d, "ell": self.ell, "s": self.s,
            "C": poly_to_json_dict(self.C), "D": poly_to_json_dict(self.D),
            "f_prime": poly_to_json_dict(self.f_prime),
            "g_prime": poly_to_json_dict(self.g_prime),
            "h_prime": poly_to_json_dict(self.h_prime),
            "point": _point_json(self.point),
            "second_point": _point_json(self.second_point),
            "scalar": str(self.scalar),
        }


def _point_json(point):
    pencil, hclass = point
    return {"pencil": [[str(v) for v in row] for row in pencil.rows],
            "h": [str(v) for v in hclass]}


@dataclass
class FiberOutcome:
    """Verdict of the fiber analysis at one point: either a two-point-fiber
    certificate or injectivity at the point, with the gcd/square-part trace
    justifying it."""

    d: int
    ell: int
    injective: bool
    gcd: MultiPoly
    square: MultiPoly
    reason: str
    cert: FiberCert | None = None

    def to_json_dict(self):
        from .poly import poly_to_json_dict
        out = {
            "d": self.d, "ell": self.ell,
            "verdict": ("injective-at-point" if self.injective
                        else "two-point-fiber"),
            "gcd": poly_to_json_dict(self.gcd),
            "square_part": poly_to_json_dict(self.square),
            "reason": self.reason,
        }
        if self.cert is not None:
            out["certificate"] = self.cert.to_json_dict()
        return out


def _coprime_refine(polys):
    """Pairwise-coprime monic forms over which every input factors."""
    basis = []
    stack = [monic(p) for p in polys if p.total_degree() >= 1]
    while stack:
        q = stack.pop()
        if q.total_degree() == 0:
            continue
        split = False
        for i, b in enumerate(basis):
            g = univariate_gcd(q, b)
            if g.total_degree() >= 1:
                basis.pop(i)
                stack.append(divide_exact(b, g))
                stack.append(divide_exact(q, g))
                stack.append(g)
                split = True
                break
        if not split:
            basis.append(q)
    return sorted(basis, key=_form_key)


def _form_key(p):
    return (p.total_degree(), tuple(sorted(p.terms.items())))


def _factor_over(p, basis):
    exps = []
    for b in basis:
        e = 0
        while True:
            try:
                p = divide_exact(p, b)
            except ValueError:
                break
            e += 1
        exps.append(e)
    if p.total_degree() != 0:
        raise AssertionError("input does not factor over the refined basis")
    return exps


def _divisors(exps, basis, max_degree):
    """All monic divisors constructible from the basis factorization,
    grouped by degree."""
    out = {s: [] for s in range(1, max_degree + 1)}
    vars = basis[0].vars

    def rec(i, current, degree):
        if degree > max_degree:
            return
        if i == len(basis):
            if degree >= 1:
                out[degree].append(current)
            return
        q = current
        for e in range(exps[i] + 1):
            rec(i + 1, q, degree + e * basis[i].total_degree())
            if e < exps[i]:
                q = q * basis[i]
    rec(0, MultiPoly.constant(vars, 1), 0)
    for s in out:
        out[s].sort(key=_form_key)
    return out


def fiber_analysis(d, ell, f, g, h):
    """Decide two-point-fiber versus injective-at-point for the quadric of
    (f, g, h), n = 1.

    The maximal common factor C of the pencil and the maximal square part D
    of h are computed once; a certificate exists iff some pair of equal
    degree-s divisors (one of each, s >= 1) is linearly independent.  The
    smallest admissible s is certified.
    """
    for p, deg, name in ((f, ell, "f"), (g, ell, "g"), (h, d - 2 * ell, "h")):
        if p.is_zero():
            raise ValueError(f"{name} must be nonzero")
        if not p.is_homogeneous() or p.total_degree() != deg:
            raise ValueError(f"{name} must be homogeneous of degree {deg}")
    point = (PencilPoint.from_forms(f, g), _monic_class(h))
    c0 = univariate_gcd(f, g)
    d0, _ = square_part(h)
    base = dict(d=d, ell=ell, gcd=c0, square=d0)
    if c0.total_degree() == 0:
        return FiberOutcome(injective=True, cert=None,
                            reason="pencil has no common factor", **base)
    if d0.total_degree() == 0:
        return FiberOutcome(injective=True, cert=None,
                            reason="h has no square factor", **base)
    pieces = [fac for fac, _ in _squarefree_pieces(c0)]
    pieces += [fac for fac, _ in _squarefree_pieces(d0)]
    pieces += _content_pieces(c0) + _content_pieces(d0)
    basis = _coprime_refine(pieces)
    c_exps = _factor_over(c0, basis)
    d_exps = _factor_over(d0, basis)
    smax = min(c0.total_degree(), d0.total_degree(),
               ell, (d - 2 * ell) // 2)
    c_divs = _divisors(c_exps, basis, smax)
    d_divs = _divisors(d_exps, basis, smax)
    for s in range(1, smax + 1):
        for cc in c_divs[s]:
            for dd in d_divs[s]:
                if cc != dd:
                    return _emit_cert(d, ell, f, g, h, cc, dd, point, base)
    return FiberOutcome(injective=True, cert=None,
                        reason="no independent equal-degree slice pair in "
                               "the gcd/square-part factorizations", **base)


def _squarefree_pieces(p):
    from .poly import squarefree_part_factors
    _, factors = squarefree_part_factors(p)
    return factors


def _content_pieces(p):
    a = min(e[0] for e in p.terms)
    b = min(e[1] for e in p.terms)
    out = []
    if a:
        out.append(MultiPoly(p.vars, {(1, 0): Fraction(1)}))
    if b:
        out.append(MultiPoly(p.vars, {(0, 1): Fraction(1)}))
    return out


def _emit_cert(d, ell, f, g, h, cc, dd, point, base):
    s = cc.total_degree()
    f1 = divide_exact(f, cc)
    g1 = divide_exact(g, cc)
    h1 = divide_exact(h, dd * dd)
    u, v, w = dd * f1, dd * g1, cc * cc * h1
    space = veronese_space(1, d)
    q1 = rank3_quadric(space, ell, f, g, h)
    q2 = rank3_quadric(space, ell, u, v, w)
    if q1.is_zero() or not q1.proportional_to(q2):
        raise RuntimeError("fiber certificate failed its own equality check")
    lead = min(q1.coeffs)
    scalar = q1.coeffs[lead] / q2.coeffs[lead]
    second = (PencilPoint.from_forms(u, v), _monic_class(w))
    if second == point:
        raise RuntimeError("fiber certificate produced a coincident point")
    cert = FiberCert(d=d, ell=ell, s=s, C=cc, D=dd, f_prime=f1, g_prime=g1,
                     h_prime=h1, point=point, second_point=second,
                     scalar=scalar)
    return FiberOutcome(injective=False, cert=cert,
                        reason=f"common factor and square part admit a "
                               f"degree-{s} independent slice pair", **base)


# -- the singular-dimension bound ---------------------------------------------


@dataclass
class SingularBoundReport:
    """Per-m values of the singular-locus dimension bound and its maximum.

    Applicable only for 2 <= ell <= e - 1 where d = 2e or 2e + 1; outside
    that range the verdict is not-applicable rather than an error.
    """

    n: int
    d: int
    ell: int
    applicable: bool
    values: list
    maximum: int | None
    argmax: list

    def to_json_dict(self):
        return {
            "n": self.n, "d": self.d, "ell": self.ell,
            "applicable": self.applicable,
            "values": [{"m": m, "value": v} for m, v in self.values],
            "maximum": self.maximum, "argmax": self.argmax,
        }


def singular_bound(n, d, ell):
    """Lower bound for the dimension of the singular locus of the image of
    the degree-ell quadric map: the maximum over admissible m of

        2 C(n+m, n) + 2 C(n+ell-m, n) + C(n+d-2*ell-2*m, n) - 7.
    """
    e = d // 2
    if not (2 <= ell <= e - 1):
        return SingularBoundReport(n=n, d=d, ell=ell, applicable=False,
                                   values=[], maximum=None, argmax=[])
    top = min(ell, (d - 2 * ell) // 2)
    values = []
    for m in range(1, top + 1):
        v = (2 * comb(n + m, n) + 2 * comb(n + ell - m, n)
             + comb(n + d - 2 * ell - 2 * m, n) - 7)
        values.append((m, v))
    maximum = max(v for _, v in values)
    argmax = [m for m, v in values if v == maximum]
    return SingularBoundReport(n=n, d=d, ell=ell, applicable=True,
                               values=values, maximum=maximum, argmax=argmax)


def singular_family_sample(n, d, ell, m, count, seed=0):
    """Sample `count` members of the two-point family at slice degree m and
    run each through the fiber analysis; every sampled point must yield a
    verified certificate."""
    if n != 1:
        raise ValueError("certificate verification requires n = 1")
    report = singular_bound(n, d, ell)
    if not report.applicable or m < 1 or m > min(ell, (d - 2 * ell) // 2):
        raise ValueError(f"m = {m} is not admissible for (n,d,ell) = "
                         f"({n},{d},{ell})")
    if ell - m < 1:
        raise ValueError("slice degree m leaves no room for a pencil")
    rng = random.Random(seed)
    vars = ("x", "y")
    out = []
    while len(out) < count:
        cc = _random_form(rng, vars, m)
        dd = _random_form(rng, vars, m)
        if cc.is_zero() or dd.is_zero() or _dependent(cc, dd):
            continue
        f0 = _random_form(rng, vars, ell - m)
        g0 = _random_form(rng, vars, ell - m)
        if f0.is_zero() or g0.is_zero() or _dependent(f0, g0):
            continue
        h0 = _random_form(rng, vars, d - 2 * ell - 2 * m)
        if h0.is_zero():
            continue
        outcome = fiber_analysis(d, ell, cc * f0, cc * g0, dd * dd * h0)
        if outcome.cert is None:
            continue
        out.append(outcome)
    return out


def _random_form(rng, vars, degree):
    return MultiPoly(vars, {(degree - i, i): rng.randint(-4, 4)
                            for i in range(degree + 1)})


def _dependent(p, q):
    if p.total_degree() != q.total_degree():
        return False
    rows = [_coeff_vector(p), _coeff_vector(q)]
    return _rref2(rows) is None


# -- nondegeneracy --------------------------------------------------------------


@dataclass
class NondegeneracyCert:
    """Exact-rank certificate that the generator coefficients of the (d, ell)
    map are linearly independent, with one witness term per coefficient
    realizing the index-sum filtration."""

    d: int
    ell: int
    rank: int
    expected_rank: int
    basis_dim: int
    matrix: list
    blocks: list
    failures: list

    @property
    def ok(self):
        return self.rank == self.expected_rank and not self.failures

    def recheck_rank(self):
        rows = [{int(j): Fraction(v) for j, v in row.items()}
                for row in self.matrix]
        return matrix_rank(rows)

    def to_json_dict(self):
        return {
            "d": self.d, "ell": self.ell, "rank": self.rank,
            "expected_rank": self.expected_rank,
            "basis_dim": self.basis_dim, "verified": self.ok,
            "matrix": [{str(j): str(v) for j, v in row.items()}
                       for row in self.matrix],
            "blocks": self.blocks, "failures": self.failures,
        }


def nondegeneracy_certificate(d, ell):
    """Certify that the C(d,2) generator coefficients span a space of full
    rank inside the section space, recording per-coefficient witness terms
    with their (necessarily nonzero) coordinates."""
    tables = build_tables(d, ell)
    basis = tables.basis
    matrix = []
    keys = sorted(tables.gen)
    for key in keys:
        matrix.append({i: c for i, c in tables.gen[key].coords.items()})
    rank = matrix_rank(matrix)
    expected = comb(d, 2)
    failures = []
    blocks = {}
    for (i, j) in keys:
        witness = weight_witness(i, j, ell, d)
        pos = basis.position(witness.first, witness.second, witness.cvars)
        coeff = tables.gen[(i, j)].coords.get(pos, Fraction(0))
        if not coeff:
            failures.append(f"witness term for coefficient ({i},{j}) has "
                            f"zero coordinate")
        blocks.setdefault(i + j, []).append({
            "i": i, "j": j, "witness": witness.to_json_dict(),
            "coefficient": str(coeff),
        })
    if rank != expected:
        failures.append(f"rank {rank} != expected {expected}")
    block_list = [{"k": k, "entries": blocks[k]} for k in sorted(blocks)]
    return NondegeneracyCert(d=d, ell=ell, rank=rank, expected_rank=expected,
                             basis_dim=len(basis), matrix=matrix,
                             blocks=block_list, failures=failures)


# -- minimality -----------------------------------------------------------------


@dataclass
class MinimalityCert:
    """Per-pair exclusion certificates: for each ell1 < ell2 the witness
    quadric of the ell2 component has the zero...zero, nonzero leading-row
    pattern, and the vanishing-propagation chain shows no ell1 point can
    match it."""

    d: int
    pairs: list
    failures: list

    @property
    def ok(self):
        return not self.failures

    def to_json_dict(self):
        return {"d": self.d, "verified": self.ok, "pairs": self.pairs,
                "failures": self.failures}


def minimality_certificate(d):
    """Certify pairwise non-containment of the components for degree d."""
    if d < 4:
        raise ValueError("need d >= 4 for at least two components")
    vars = ("x", "y")
    failures = []
    pairs = []
    chains = {}
    for ell2 in range(2, d // 2 + 1):
        q, gen_pattern = witness_quadric(d, ell2)
        f = MultiPoly(vars, {(ell2, 0): 1})
        g = MultiPoly(vars, {(0, ell2): 1})
        h = MultiPoly(vars, {(d - 2 * ell2, 0): 1})
        gen_eval, _, q_eval = evaluated_tables(d, ell2, f, g, h)
        if gen_eval != gen_pattern or q_eval != q:
            failures.append(f"witness quadric for ell2 = {ell2} does not "
                            f"match its evaluated expansion")
        leading_ok = (all(gen_pattern[(0, k)] == 0
                          for k in range(1, 2 * ell2 - 1))
                      and gen_pattern[(0, 2 * ell2 - 1)] != 0)
        if not leading_ok:
            failures.append(f"witness quadric for ell2 = {ell2} lacks the "
                            f"zero...zero,nonzero pattern")
        recon = reconstruct_from_generators(d, gen_eval)
        if recon != q:
            failures.append(f"witness expansion for ell2 = {ell2} does not "
                            f"reconstruct the quadric")
        for ell1 in range(1, ell2):
            if ell1 not in chains:
                chains[ell1] = vanishing_propagation(d, ell1)
            chain = chains[ell1]
            if not chain.ok:
                failures.append(f"vanishing chain for ell1 = {ell1} failed")
            coverage_ok = 2 * ell1 - 1 <= 2 * ell2 - 2
            if not coverage_ok:
                failures.append(f"hypothesis range does not cover the chain "
                                f"for pair ({ell1},{ell2})")
            pairs.append({
                "ell1": ell1, "ell2": ell2,
                "witness": {"quadric": q.to_poly_string(),
                            "nonzero_entry": [0, 2 * ell2 - 1]},
                "chain": chain.to_json_dict(),
                "conclusion": f"component {ell2} is not contained in "
                              f"component {ell1}",
            })
    return MinimalityCert(d=d, pairs=pairs, failures=failures)


# -- the ell = 1 component is a 2-uple embedding --------------------------------


@dataclass
class VeroneseIdentificationReport:
    """The ell = 1 coefficients, read as quadrics in the C-coefficients, are
    C(d,2) linearly independent elements of a space of that same dimension,
    so they define a 2-uple embedding."""

    d: int
    count: int
    expected_count: int
    rank: int
    space_dim: int
    quadrics: list
    failures: list

    @property
    def ok(self):
        return not self.failures

    def to_json_dict(self):
        return {
            "d": self.d, "count": self.count,
            "expected_count": self.expected_count, "rank": self.rank,
            "space_dim": self.space_dim, "verified": self.ok,
            "quadrics": self.quadrics, "failures": self.failures,
        }


def veronese_identification(d):
    """Check that the ell = 1 map is the 2-uple embedding of the space of
    degree-(d-2) binary forms."""
    if d < 2:
        raise ValueError("need d >= 2")
    tables = build_tables(d, 1)
    basis = tables.basis
    failures = []
    for term in basis.terms:
        if term.first != (0, 1) or term.second != (0, 1):
            failures.append("unexpected section term outside the single "
                            "minor square")
    keys = sorted(tables.gen)
    matrix = [dict(tables.gen[k].coords) for k in keys]
    rank = matrix_rank(matrix)
    expected = comb(d, 2)
    space_dim = len(basis)
    if len(keys) != expected:
        failures.append(f"coefficient count {len(keys)} != {expected}")
    if rank != expected:
        failures.append(f"rank {rank} != {expected}")
    if space_dim != expected:
        failures.append(f"section space dimension {space_dim} != {expected}")
    quadrics = [{"i": i, "j": j, "value": _c_quadric_string(tables, (i, j))}
                for (i, j) in keys]
    return VeroneseIdentificationReport(
        d=d, count=len(keys), expected_count=expected, rank=rank,
        space_dim=space_dim, quadrics=quadrics, failures=failures)


def _c_quadric_string(tables, key):
    """Display an ell = 1 coefficient as a quadric in the C-coefficients
    (the single minor square is set to 1)."""
    parts = []
    for term, c in tables.gen[key].items():
        lam, mu = term.cvars
        mono = f"C{lam}^2" if lam == mu else f"C{lam}*C{mu}"
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
