"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero Fraction coefficients,
over a fixed ordered tuple of variable names.  Values are immutable after
construction; every operation returns a fresh polynomial.  The canonical term
order for storage and serialization is descending lex on exponent tuples,
with the first variable most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class MonomialOrder:
    """A total monomial order compatible with multiplication.

    kind is one of "lex", "degrevlex" or "block".  A block order splits the
    variables at index `split`; the leading block is compared first, each
    block by degrevlex.  Larger key means larger monomial.
    """

    kind: str = "degrevlex"
    split: int = 0

    def key(self, exps):
        if self.kind == "lex":
            return exps
        if self.kind == "degrevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        if self.kind == "block":
            head, tail = exps[: self.split], exps[self.split:]
            return (
                sum(head),
                tuple(-e for e in reversed(head)),
                sum(tail),
                tuple(-e for e in reversed(tail)),
            )
        raise ValueError(f"unknown monomial order kind {self.kind!r}")

    def to_json_dict(self):
        if self.kind == "block":
            return {"kind": "block", "split": self.split}
        return {"kind": self.kind}

    @staticmethod
    def from_json_dict(data):
        if data["kind"] == "block":
            return MonomialOrder("block", data["split"])
        return MonomialOrder(data["kind"])


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def block_order(split):
    """Elimination order whose first `split` variables dominate."""
    return MonomialOrder("block", split)


class MultiPoly:
    """Sparse exact polynomial over a fixed variable roster."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms):
        vars = tuple(vars)
        clean = {}
        n = len(vars)
        for exps, coeff in terms.items():
            if len(exps) != n:
                raise ValueError("exponent tuple length does not match roster")
            c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if c:
                clean[tuple(exps)] = c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(vars):
        return MultiPoly(vars, {})

    @staticmethod
    def constant(vars, value):
        vars = tuple(vars)
        return MultiPoly(vars, {(0,) * len(vars): Fraction(value)})

    @staticmethod
    def variable(name, vars):
        vars = tuple(vars)
        i = vars.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(vars)))
        return MultiPoly(vars, {exps: Fraction(1)})

    @staticmethod
    def monomial(vars, exps, coeff=1):
        return MultiPoly(vars, {tuple(exps): Fraction(coeff)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def sorted_terms(self):
        """Terms in canonical (descending lex) order."""
        return [(e, self.terms[e]) for e in sorted(self.terms, reverse=True)]

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def _check_roster(self, other):
        if self.vars != other.vars:
            raise ValueError(
                f"variable rosters differ: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other)
        self._check_roster(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            return MultiPoly(self.vars,
                             {e: c * v for e, v in self.terms.items()})
        self._check_roster(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = Fraction(scalar)
        if not c:
            raise ZeroDivisionError("division of polynomial by zero")
        return self * (1 / c)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power must be a nonnegative integer")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


# -- the spec'd module operations on polynomials ---------------------------


def multideg(p, order=LEX):
    """Order-maximal exponent tuple of a nonzero polynomial."""
    if p.is_zero():
        raise ValueError("multideg of the zero polynomial is undefined")
    return max(p.terms, key=order.key)


def leading_coefficient(p, order=LEX):
    return p.terms[multideg(p, order)]


def leading_term(p, order=LEX):
    e = multideg(p, order)
    return e, p.terms[e]


def monic(p, order=LEX):
    if p.is_zero():
        return p
    return p / leading_coefficient(p, order)


def derivative(p, var):
    i = p.vars.index(var)
    out = {}
    for e, c in p.terms.items():
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = out.get(tuple(ne), Fraction(0)) + c * e[i]
    return MultiPoly(p.vars, out)


def substitute(p, bindings):
    """Evaluate/compose: every variable of p must be bound.

    Binding values are Fractions/ints or polynomials over one shared roster.
    Returns a Fraction when all bindings are scalars, else a MultiPoly.
    """
    missing = [v for v in p.vars if v not in bindings]
    if missing:
        raise ValueError(f"unbound variables {missing}")
    poly_targets = [b for b in bindings.values() if isinstance(b, MultiPoly)]
    if not poly_targets:
        total = Fraction(0)
        for e, c in p.terms.items():
            v = c
            for name, exp in zip(p.vars, e):
                if exp:
                    v *= Fraction(bindings[name]) ** exp
            total += v
        return total
    roster = poly_targets[0].vars
    for q in poly_targets[1:]:
        if q.vars != roster:
            raise ValueError("binding targets must share one roster")
    values = {
        name: (b if isinstance(b, MultiPoly)
               else MultiPoly.constant(roster, b))
        for name, b in bindings.items()
    }
    total = MultiPoly.zero(roster)
    for e, c in p.terms.items():
        v = MultiPoly.constant(roster, c)
        for name, exp in zip(p.vars, e):
            if exp:
                v = v * values[name] ** exp
        total = total + v
    return total


# -- univariate/binary-form machinery ---------------------------------------
#
# Binary forms are handled by splitting off explicit x- and y-power content
# and dehomogenizing the remainder at y = 1, so Euclidean gcd and Yun's
# squarefree decomposition apply to plain coefficient lists.


def _uni_trim(u):
    while u and not u[-1]:
        u.pop()
    return u


def _uni_deg(u):
    return len(u) - 1


def _uni_monic(u):
    lc = u[-1]
    return [c / lc for c in u]


def _uni_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _uni_trim(out)


def _uni_divmod(a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while a and len(a) >= len(b):
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] -= c * y
        _uni_trim(a)
    return _uni_trim(q), a


def _uni_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _uni_divmod(a, b)[1]
    return _uni_monic(a) if a else a


def _uni_deriv(u):
    return _uni_trim([u[i] * i for i in range(1, len(u))])


def _uni_sub(a, b):
    n = max(len(a), len(b))
    return _uni_trim([(a[i] if i < len(a) else Fraction(0)) -
                      (b[i] if i < len(b) else Fraction(0))
                      for i in range(n)])


def squarefree_decomposition_list(u):
    """Yun's algorithm: return [(squarefree factor, multiplicity)], monic."""
    u = _uni_monic(list(u))
    if _uni_deg(u) == 0:
        return []
    g = _uni_gcd(u, _uni_deriv(u))
    if _uni_deg(g) == 0:
        return [(u, 1)]
    c, _ = _uni_divmod(u, g)
    d_, _ = _uni_divmod(_uni_deriv(u), g)
    d = _uni_sub(d_, _uni_deriv(c))
    out = []
    i = 1
    while _uni_deg(c) > 0:
        p = _uni_gcd(c, d) if d else _uni_monic(list(c))
        if _uni_deg(p) > 0:
            out.append((p, i))
        c, _ = _uni_divmod(c, p)
        pd, _ = _uni_divmod(d, p) if d else ([], [])
        d = _uni_sub(pd, _uni_deriv(c))
        i += 1
    return out


def _binary_split(p):
    """Write a nonzero binary form p as x^a * y^b * reduced, reduced having
    neither x- nor y-content.  Returns (a, b, coeff list by y-exponent)."""
    if len(p.vars) != 2:
        raise ValueError("expected a binary form in two variables")
    if p.is_zero():
        raise ValueError("zero form")
    if not p.is_homogeneous():
        raise ValueError("expected a homogeneous binary form")
    a = min(e[0] for e in p.terms)
    b = min(e[1] for e in p.terms)
    deg = p.total_degree() - a - b
    u = [Fraction(0)] * (deg + 1)
    for (ex, ey), c in p.terms.items():
        u[ey - b] = c
    return a, b, _uni_trim(u)


def _binary_join(vars, a, b, u):
    """Inverse of _binary_split: x^a y^b * homogenization of u."""
    m = _uni_deg(u)
    terms = {}
    for k, c in enumerate(u):
        if c:
            terms[(a + m - k, b + k)] = c
    if not terms:
        terms[(a, b)] = Fraction(0)
    return MultiPoly(vars, terms)


def _is_univariate(p):
    return len(p.vars) == 1


def _uni_from_poly(p):
    deg = max(e[0] for e in p.terms)
    u = [Fraction(0)] * (deg + 1)
    for (e,), c in p.terms.items():
        u[e] = c
    return u


def _uni_to_poly(vars, u):
    return MultiPoly(vars, {(i,): c for i, c in enumerate(u) if c})


def univariate_gcd(p, q):
    """Monic gcd of univariate polynomials or binary forms.

    Binary forms are dehomogenized at y = 1 with explicit bookkeeping of the
    x- and y-power content, so the Euclidean algorithm applies; the result is
    rehomogenized.  gcd(p, 0) is monic(p).
    """
    if p.vars != q.vars:
        raise ValueError("variable rosters differ")
    if len(p.vars) > 2:
        raise ValueError("gcd supports at most two variables")
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return monic(q)
    if q.is_zero():
        return monic(p)
    if _is_univariate(p):
        g = _uni_gcd(_uni_from_poly(p), _uni_from_poly(q))
        return monic(_uni_to_poly(p.vars, g))
    a1, b1, u1 = _binary_split(p)
    a2, b2, u2 = _binary_split(q)
    g = _uni_gcd(u1, u2)
    return monic(_binary_join(p.vars, min(a1, a2), min(b1, b2), g))


def squarefree_part_factors(p):
    """Squarefree decomposition of a binary form or univariate polynomial.

    Returns (content_exponents, [(binary-form factor, multiplicity)]) where
    content_exponents is (a, b) for a binary form (x^a y^b content) or (a,)
    for a univariate input.  Factors are monic and pairwise coprime.
    """
    if _is_univariate(p):
        u = _uni_from_poly(p)
        a = next(i for i, c in enumerate(u) if c)
        u = u[a:]
        return (a,), [(monic(_uni_to_poly(p.vars, f)), m)
                      for f, m in squarefree_decomposition_list(u)]
    a, b, u = _binary_split(p)
    return (a, b), [(monic(_binary_join(p.vars, 0, 0, f)), m)
                    for f, m in squarefree_decomposition_list(u)]


def square_part(h):
    """Maximal monic D with D^2 dividing the nonzero binary form h.

    Returns (D, h_prime) with h = D^2 * h_prime exactly.
    """
    a, b, u = _binary_split(h)
    dec = squarefree_decomposition_list(u)
    d_uni = [Fraction(1)]
    for f, m in dec:
        for _ in range(m // 2):
            d_uni = _uni_mul(d_uni, f)
    d = monic(_binary_join(h.vars, a // 2, b // 2, d_uni))
    h_prime = divide_exact(h, d * d)
    return d, h_prime


def divide_exact(p, q):
    """Exact division of binary forms or univariate polynomials; raises if
    the remainder is nonzero."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return MultiPoly.zero(p.vars)
    if _is_univariate(p):
        quo, rem = _uni_divmod(_uni_from_poly(p), _uni_from_poly(q))
        if rem:
            raise ValueError("division is not exact")
        return _uni_to_poly(p.vars, quo)
    a1, b1, u1 = _binary_split(p)
    a2, b2, u2 = _binary_split(q)
    if a2 > a1 or b2 > b1:
        raise ValueError("division is not exact")
    quo, rem = _uni_divmod(u1, u2)
    if rem:
        raise ValueError("division is not exact")
    return _binary_join(p.vars, a1 - a2, b1 - b2, quo)


# -- parsing and serialization ----------------------------------------------


def format_poly(p, mul="*", pow_sym="^"):
    if p.is_zero():
        return "0"
    parts = []
    for exps, coeff in p.sorted_terms():
        factors = []
        for name, e in zip(p.vars, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}{pow_sym}{e}")
        body = mul.join(factors)
        if not body:
            text = str(coeff)
        elif coeff == 1:
            text = body
        elif coeff == -1:
            text = f"-{body}"
        else:
            text = f"{coeff}{mul}{body}"
        parts.append(text)
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


_TOKEN_CHARS = set("+-*/^() \t")


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t":
            i += 1
        elif ch == "*" and text[i:i + 2] == "**":
            tokens.append("^")
            i += 2
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ValueError(f"unexpected character {ch!r} in polynomial")
    return tokens


def parse_polynomial(text, vars):
    """Parse the minimal infix grammar over named variables.

    Supported: + - * / ^ (and ** as a synonym), integer literals,
    parentheses, unary minus.  Division only by a nonzero constant.
    """
    vars = tuple(vars)
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of polynomial expression")
        t = tokens[pos]
        pos += 1
        return t

    def parse_expr():
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term():
        node = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_factor()
            if op == "*":
                node = node * rhs
            else:
                node = node / rhs.constant_value()
        return node

    def parse_factor():
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        node = parse_atom()
        if peek() == "^":
            take()
            exp_sign = 1
            while peek() in ("+", "-"):
                if take() == "-":
                    exp_sign = -exp_sign
            e = take()
            if not isinstance(e, int):
                raise ValueError("exponent must be an integer literal")
            node = node ** (exp_sign * e)
        return node if sign == 1 else -node

    def parse_atom():
        t = take() if peek() is not None else None
        if t is None:
            raise ValueError("unexpected end of polynomial expression")
        if t == "(":
            node = parse_expr()
            if peek() != ")":
                raise ValueError("missing closing parenthesis")
            take()
            return node
        if isinstance(t, int):
            return MultiPoly.constant(vars, t)
        if isinstance(t, str) and t not in "+-*/^()":
            if t not in vars:
                raise ValueError(f"unknown variable {t!r}")
            return MultiPoly.variable(t, vars)
        raise ValueError(f"unexpected token {t!r}")

    result = parse_expr()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens at {tokens[pos:]}")
    return result


def poly_to_json_dict(p):
    return {
        "vars": list(p.vars),
        "terms": [
            {"num": str(c.numerator), "den": str(c.denominator),
             "exps": list(e)}
            for e, c in p.sorted_terms()
        ],
    }


def poly_from_json_dict(data):
    vars = tuple(data["vars"])
    terms = {}
    for t in data["terms"]:
        c = Fraction(int(t["num"]), int(t["den"]))
        terms[tuple(t["exps"])] = c
    return MultiPoly(vars, terms)
