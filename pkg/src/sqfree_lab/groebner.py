"""Exact multivariate polynomials, monomial orders and Buchberger's algorithm.

Exponent vectors are tuples of non-negative ints of length n; polynomials
store a dict from exponent vector to nonzero coefficient.  Two monomial
orders are supported, lex and degrevlex, both with variable precedence
x1 > x2 > ... > xn.  Reduced Groebner bases are canonical: monic,
inter-reduced and sorted descending, so repeated runs are bit-identical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, FieldSpec, GF


class ParseError(ValueError):
    """Raised when an ideal file or polynomial string is malformed."""


class ReductionError(ValueError):
    """Raised when an ideal has no honest coefficientwise image mod p."""


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    kind: str

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: tuple):
        """Sort key: larger key means larger monomial."""
        if self.kind == "lex":
            return e
        return (sum(e), tuple(-x for x in reversed(e)))

    def __str__(self):
        return self.kind


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def order_from_name(name: str) -> MonomialOrder:
    return MonomialOrder(name)


def compare(a: tuple, b: tuple, order: MonomialOrder) -> int:
    """-1, 0 or 1 as a <, =, > b in the given order."""
    if len(a) != len(b):
        raise ValueError(f"exponent length mismatch: {len(a)} vs {len(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def exp_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exp_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable-by-convention exact polynomial in n variables."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, n: int, field: FieldSpec, terms: dict):
        self.n = n
        self.field = field
        clean = {}
        for e, c in terms.items():
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for n={n}")
            if c != 0:
                clean[e] = c
        self.terms = clean

    @classmethod
    def zero(cls, n, field):
        return cls(n, field, {})

    @classmethod
    def monomial(cls, n, field, e, c=None):
        return cls(n, field, {tuple(e): field.one if c is None else c})

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.n == other.n
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.field, frozenset(self.terms.items())))

    def _check_ambient(self, other):
        if self.n != other.n or self.field != other.field:
            raise ValueError("ambient mismatch between polynomials")

    def __add__(self, other):
        self._check_ambient(other)
        f = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(terms.get(e, f.zero), c)
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Polynomial(self.n, f, terms)

    def __neg__(self):
        f = self.field
        return Polynomial(self.n, f, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        f = self.field
        if c == 0:
            return Polynomial.zero(self.n, f)
        return Polynomial(self.n, f, {e: f.mul(c, v) for e, v in self.terms.items()})

    def mul_term(self, c, e: tuple):
        """Multiply by the single term c * x^e."""
        f = self.field
        if c == 0:
            return Polynomial.zero(self.n, f)
        return Polynomial(
            self.n, f, {exp_mul(e, e2): f.mul(c, c2) for e2, c2 in self.terms.items()}
        )

    def __mul__(self, other):
        self._check_ambient(other)
        f = self.field
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_mul(e1, e2)
                s = f.add(terms.get(e, f.zero), f.mul(c1, c2))
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return Polynomial(self.n, f, terms)

    def leading(self, order: MonomialOrder):
        """(exponent, coefficient) of the leading term."""
        if self.is_zero:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monic(self, order: MonomialOrder):
        if self.is_zero:
            return self
        _, c = self.leading(order)
        return self.scale(self.field.inv(c))

    def total_degree(self):
        if self.is_zero:
            return -1
        return max(sum(e) for e in self.terms)

    def __str__(self):
        return polynomial_str(self, DEGREVLEX)

    __repr__ = __str__


@dataclass(frozen=True)
class Ideal:
    """A list of nonzero generators sharing one ambient ring."""

    n: int
    field: FieldSpec
    generators: tuple

    def __init__(self, n, field, generators):
        gens = tuple(g for g in generators)
        for g in gens:
            if g.is_zero:
                raise ValueError("zero polynomial among ideal generators")
            if g.n != n or g.field != field:
                raise ValueError("ideal generators with mismatched ambient")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "generators", gens)


class MonomialIdeal:
    """Monomial ideal held by its unique minimal monomial generators."""

    __slots__ = ("n", "gens")

    def __init__(self, n: int, generators):
        self.n = n
        gens = set()
        for e in generators:
            e = tuple(e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for n={n}")
            gens.add(e)
        minimal = set()
        for e in gens:
            if not any(f != e and exp_divides(f, e) for f in gens):
                minimal.add(e)
        self.gens = frozenset(minimal)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.n == other.n
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.n, self.gens))

    @property
    def is_zero(self):
        return not self.gens

    def is_radical(self) -> bool:
        """True iff every minimal generator is squarefree."""
        return all(all(x <= 1 for x in e) for e in self.gens)

    def contains_monomial(self, e: tuple) -> bool:
        return any(exp_divides(g, e) for g in self.gens)

    def sorted_gens(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self.gens, key=order.key, reverse=True)

    def __str__(self):
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(monomial_str(e) for e in self.sorted_gens()) + ")"

    __repr__ = __str__


def is_radical_monomial(J: MonomialIdeal) -> bool:
    return J.is_radical()


# ---------------------------------------------------------------------------
# division and Buchberger completion


def normal_form(f: Polynomial, G, order: MonomialOrder) -> Polynomial:
    """Remainder of f on division by the list G.

    Deterministic: divisors are tried in list order and the leading term is
    always rewritten first.  No term of the result is divisible by any
    leading monomial of G, and f - result lies in (G).
    """
    G = [g for g in G]
    if not G:
        raise ValueError("division by an empty list of polynomials")
    for g in G:
        f._check_ambient(g)
        if g.is_zero:
            raise ValueError("zero polynomial among divisors")
    lead = [g.leading(order) for g in G]
    fld = f.field
    h = f
    remainder = {}
    while not h.is_zero:
        e, c = h.leading(order)
        for g, (ge, gc) in zip(G, lead):
            if exp_divides(ge, e):
                h = h - g.mul_term(fld.div(c, gc), exp_sub(e, ge))
                break
        else:
            remainder[e] = c
            terms = dict(h.terms)
            del terms[e]
            h = Polynomial(h.n, fld, terms)
    return Polynomial(f.n, fld, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    fe, fc = f.leading(order)
    ge, gc = g.leading(order)
    lcm = exp_lcm(fe, ge)
    fld = f.field
    return f.mul_term(fld.inv(fc), exp_sub(lcm, fe)) - g.mul_term(
        fld.inv(gc), exp_sub(lcm, ge)
    )


def buchberger(I: Ideal, order: MonomialOrder):
    """Reduced Groebner basis of I, sorted descending by leading monomial.

    Pair selection is the normal strategy (smallest lcm first) with the
    product and chain criteria.
    """
    G = [g.monic(order) for g in I.generators]
    if not G:
        return []
    lead = [g.leading(order)[0] for g in G]

    def pair_key(pair):
        i, j = pair
        return (order.key(exp_lcm(lead[i], lead[j])), i, j)

    pending = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    while pending:
        i, j = min(pending, key=pair_key)
        pending.discard((i, j))
        lcm = exp_lcm(lead[i], lead[j])
        if lcm == exp_mul(lead[i], lead[j]):
            continue  # product criterion: coprime leading monomials
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not exp_divides(lead[k], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (
                min(j, k),
                max(j, k),
            ) not in pending:
                chain = True
                break
        if chain:
            continue
        r = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if not r.is_zero:
            G.append(r.monic(order))
            lead.append(r.leading(order)[0])
            new = len(G) - 1
            pending.update((t, new) for t in range(new))
    return _reduce_basis(G, order)


def _reduce_basis(G, order: MonomialOrder):
    """Inter-reduce a Groebner basis to the unique reduced one."""
    by_lead = sorted(G, key=lambda g: order.key(g.leading(order)[0]))
    minimal = []
    for g in by_lead:
        e = g.leading(order)[0]
        if any(exp_divides(h.leading(order)[0], e) for h in minimal):
            continue
        minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, others, order) if others else g
        reduced.append(r.monic(order))
    reduced.sort(key=lambda g: order.key(g.leading(order)[0]), reverse=True)
    return reduced


def initial_ideal(I: Ideal, order: MonomialOrder) -> MonomialIdeal:
    """Minimal monomial generators of the ideal of leading monomials."""
    G = buchberger(I, order)
    return MonomialIdeal(I.n, (g.leading(order)[0] for g in G))


# ---------------------------------------------------------------------------
# reduction mod p and initial-ideal stability


def reduce_mod_p(I: Ideal, p: int) -> Ideal:
    """Coefficientwise image of a rational ideal in GF(p)[x1..xn]."""
    if I.field.characteristic != 0:
        raise ValueError("reduce_mod_p expects an ideal over QQ")
    target = GF(p)
    gens = []
    for g in I.generators:
        terms = {}
        for e, c in g.terms.items():
            if c.denominator % p == 0:
                raise ReductionError(
                    f"prime {p} divides a coefficient denominator in {g}"
                )
            terms[e] = target.of_fraction(c)
        h = Polynomial(I.n, target, terms)
        if h.is_zero:
            raise ReductionError(f"generator {g} vanishes mod {p}")
        gens.append(h)
    return Ideal(I.n, target, gens)


@dataclass(frozen=True)
class PrimeVerdict:
    p: int
    status: str  # "agree" | "disagree" | "error"
    detail: str = ""
    generators: tuple = ()


@dataclass(frozen=True)
class StabilityReport:
    order: MonomialOrder
    base: MonomialIdeal
    verdicts: tuple

    @property
    def all_agree(self) -> bool:
        return all(v.status == "agree" for v in self.verdicts)

    @property
    def agreeing(self):
        return [v.p for v in self.verdicts if v.status == "agree"]

    @property
    def disagreeing(self):
        return [v.p for v in self.verdicts if v.status != "agree"]


def initial_ideal_stability(
    I: Ideal, order: MonomialOrder, primes
) -> StabilityReport:
    """Compare in(I) over QQ with in(I mod p) for each prime.

    Per-prime failures (bad reduction) are recorded in the report instead
    of aborting the remaining primes.
    """
    base = initial_ideal(I, order)
    verdicts = []
    for p in primes:
        try:
            Jp = initial_ideal(reduce_mod_p(I, p), order)
        except (ReductionError, ValueError) as exc:
            verdicts.append(PrimeVerdict(p, "error", str(exc)))
            continue
        gens = tuple(monomial_str(e) for e in Jp.sorted_gens(order))
        if Jp.gens == base.gens:
            verdicts.append(PrimeVerdict(p, "agree", generators=gens))
        else:
            verdicts.append(
                PrimeVerdict(p, "disagree", detail=f"in_p = {Jp}", generators=gens)
            )
    return StabilityReport(order, base, tuple(verdicts))


# ---------------------------------------------------------------------------
# text format: `vars: n`, optional `char: p`, one polynomial per line


_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\^)|(\*)|(\+)|(-))")


def parse_polynomial(text: str, n: int, fld: FieldSpec) -> Polynomial:
    """Parse integer-coefficient polynomial text like 'x1*x5 - 2*x2*x4'."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("var", int(m.group(2))))
        elif m.group(3):
            tokens.append(("pow", None))
        elif m.group(4):
            tokens.append(("mul", None))
        elif m.group(5):
            tokens.append(("plus", None))
        else:
            tokens.append(("minus", None))

    terms = {}
    i = 0

    def flush(sign, coeff, expo):
        e = tuple(expo)
        c = fld.of_int(sign * coeff)
        prev = terms.get(e, fld.zero)
        s = fld.add(prev, c)
        if s == 0:
            terms.pop(e, None)
        else:
            terms[e] = s

    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] in ("plus", "minus"):
            if tokens[i][0] == "minus":
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise ParseError("dangling sign at end of polynomial")
        coeff = 1
        expo = [0] * n
        saw_factor = False
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "int":
                coeff *= val
                i += 1
            elif kind == "var":
                if not 1 <= val <= n:
                    raise ParseError(f"variable x{val} outside x1..x{n}")
                power = 1
                i += 1
                if i < len(tokens) and tokens[i][0] == "pow":
                    i += 1
                    if i >= len(tokens) or tokens[i][0] != "int":
                        raise ParseError("'^' must be followed by an integer")
                    power = tokens[i][1]
                    i += 1
                expo[val - 1] += power
            elif kind == "mul":
                i += 1
                if i >= len(tokens) or tokens[i][0] not in ("int", "var"):
                    raise ParseError("'*' must be followed by a factor")
                continue
            else:
                break
            saw_factor = True
        if not saw_factor:
            raise ParseError("empty term in polynomial")
        flush(sign, coeff, expo)
    return Polynomial(n, fld, terms)


def parse_ideal_text(text: str) -> Ideal:
    """Parse the ideal file format (see README: `vars:`, `char:`, one poly per line)."""
    n = None
    fld = QQ
    polys = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("vars:"):
                n = int(line[len("vars:") :].strip())
                if n <= 0:
                    raise ParseError("vars must be positive")
                continue
            if line.startswith("char:"):
                p = int(line[len("char:") :].strip())
                fld = FieldSpec(p)
                continue
            if n is None:
                raise ParseError("polynomials before a 'vars: n' header")
            g = parse_polynomial(line, n, fld)
            if g.is_zero:
                raise ParseError("zero polynomial generator")
            polys.append(g)
        except (ParseError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ParseError("missing 'vars: n' header")
    return Ideal(n, fld, polys)


def parse_ideal_file(path) -> Ideal:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal_text(fh.read())


def monomial_str(e: tuple) -> str:
    parts = []
    for i, x in enumerate(e, start=1):
        if x == 1:
            parts.append(f"x{i}")
        elif x > 1:
            parts.append(f"x{i}^{x}")
    return "*".join(parts) if parts else "1"


def _coeff_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def polynomial_str(f: Polynomial, order: MonomialOrder) -> str:
    if f.is_zero:
        return "0"
    items = sorted(f.terms.items(), key=lambda t: order.key(t[0]), reverse=True)
    out = []
    for idx, (e, c) in enumerate(items):
        mono = monomial_str(e)
        if f.field.characteristic == 0 and c < 0:
            sign = "-"
            c = -c
        else:
            sign = "+"
        body = mono if (c == 1 and mono != "1") else (
            _coeff_str(c) if mono == "1" else f"{_coeff_str(c)}*{mono}"
        )
        if idx == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
