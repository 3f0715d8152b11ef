"""Noncommutative formal power series and their substitutional inverses.

Coefficients live in the free associative algebra over the rationals on named
constants; constants never commute with one another but do commute with the
series variables.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import AlgebraElement, Generator
from .antipodes import antipode_inverse_recursive, antipode_right
from .words import Word, check_word, enumerate_interval_partitions, format_word, parse_word

ConstWord = tuple[str, ...]


class FreeCoefficient:
    """Rational combination of words in noncommuting named constants."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ConstWord, Fraction | int] | Iterable = ()):
        acc: dict[ConstWord, Fraction] = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            acc[tuple(w)] += Fraction(c)
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def one(cls) -> FreeCoefficient:
        return cls({(): 1})

    @classmethod
    def zero(cls) -> FreeCoefficient:
        return cls()

    @classmethod
    def symbol(cls, name: str) -> FreeCoefficient:
        return cls({(name,): 1})

    @classmethod
    def scalar(cls, value: Fraction | int) -> FreeCoefficient:
        return cls({(): value})

    @property
    def terms(self) -> dict[ConstWord, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[ConstWord, Fraction]]:
        for w in sorted(self._terms, key=lambda w: (len(w), w)):
            yield w, self._terms[w]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FreeCoefficient.scalar(other)
        if not isinstance(other, FreeCoefficient):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: FreeCoefficient | Fraction | int) -> FreeCoefficient:
        if isinstance(other, (int, Fraction)):
            other = FreeCoefficient.scalar(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return FreeCoefficient(out)

    def __neg__(self) -> FreeCoefficient:
        return FreeCoefficient({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: FreeCoefficient | Fraction | int) -> FreeCoefficient:
        return self + (-other)

    __radd__ = __add__

    def __mul__(self, other) -> FreeCoefficient:
        if isinstance(other, (int, Fraction)):
            return FreeCoefficient({w: c * other for w, c in self._terms.items()})
        if not isinstance(other, FreeCoefficient):
            return NotImplemented
        out: dict[ConstWord, Fraction] = defaultdict(Fraction)
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                out[w1 + w2] += c1 * c2
        return FreeCoefficient(out)

    def __rmul__(self, other) -> FreeCoefficient:
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def abelianize(self) -> FreeCoefficient:
        """Image in the commutative quotient (constant words sorted)."""
        return FreeCoefficient((tuple(sorted(w)), c) for w, c in self._terms.items())

    def evaluate(self, values: Mapping[str, Fraction | int]) -> Fraction:
        total = Fraction(0)
        for w, c in self._terms.items():
            prod = Fraction(c)
            for name in w:
                prod *= values[name]
            total += prod
        return total

    def to_json_obj(self) -> list[dict]:
        return [{"c": str(c), "word": list(w)} for w, c in self.items()]

    @classmethod
    def from_json_obj(cls, obj: Sequence[Mapping]) -> FreeCoefficient:
        return cls((tuple(str(s) for s in t.get("word", [])), Fraction(str(t["c"]))) for t in obj)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (w, c) in enumerate(self.items()):
            body = "".join(w) if all(len(s) == 1 for s in w) else "*".join(w)
            mag = abs(c)
            if not w:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}{body}" if "*" not in body else f"{mag}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append(("-" if c < 0 else "") + text if k == 0 else f" {sign} {text}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"FreeCoefficient({str(self)!r})"


@dataclass
class NCSeries:
    """Tangent-to-identity series: ``F^i(z) = z_i + sum f^i_w z_w`` truncated at ``order``."""

    n: int
    order: int
    coeffs: dict[tuple[int, Word], FreeCoefficient] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1 or self.order < 1:
            raise ValueError("need n >= 1 and order >= 1")
        clean = {}
        for (i, w), c in self.coeffs.items():
            w = check_word(w, self.n)
            check_word((i,), self.n)
            if len(w) < 2 or len(w) > self.order:
                raise ValueError(f"stored coefficients need 2 <= |w| <= {self.order}, got {w}")
            if c:
                clean[(i, w)] = c
        self.coeffs = clean

    @classmethod
    def identity(cls, n: int, order: int) -> NCSeries:
        return cls(n, order, {})

    def coefficient(self, i: int, w: Sequence[int]) -> FreeCoefficient:
        w = tuple(w)
        if len(w) == 0:
            return FreeCoefficient.zero()
        if len(w) == 1:
            return FreeCoefficient.one() if w[0] == i else FreeCoefficient.zero()
        if len(w) > self.order:
            raise ValueError(f"word {w} beyond truncation order {self.order}")
        return self.coeffs.get((i, w), FreeCoefficient.zero())

    def words(self) -> Iterator[Word]:
        for length in range(2, self.order + 1):
            yield from itertools.product(range(1, self.n + 1), repeat=length)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCSeries):
            return NotImplemented
        return (self.n, self.order, self.coeffs) == (other.n, other.order, other.coeffs)

    def truncate(self, order: int) -> NCSeries:
        return NCSeries(self.n, order, {k: c for k, c in self.coeffs.items() if len(k[1]) <= order})

    def to_json_obj(self) -> dict:
        entries = []
        for (i, w) in sorted(self.coeffs, key=lambda k: (len(k[1]), k[0], k[1])):
            entries.append({"i": i, "w": format_word(w, self.n),
                            "value": self.coeffs[(i, w)].to_json_obj()})
        return {"n": self.n, "order": self.order, "coeffs": entries}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> NCSeries:
        n = int(obj["n"])
        order = int(obj["order"])
        coeffs: dict[tuple[int, Word], FreeCoefficient] = {}
        for entry in obj.get("coeffs", []):
            i = int(entry["i"])
            w = parse_word(str(entry["w"]), n)
            value = FreeCoefficient.from_json_obj(entry["value"])
            if len(w) <= 1:
                expected = FreeCoefficient.one() if w == (i,) else FreeCoefficient.zero()
                if value != expected:
                    raise ValueError(f"series is not tangent to the identity at ({i}, {w})")
                continue
            if len(w) > order:
                continue
            coeffs[(i, w)] = coeffs.get((i, w), FreeCoefficient.zero()) + value
        return cls(n, order, coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1)

    @classmethod
    def from_json(cls, text: str) -> NCSeries:
        return cls.from_json_obj(json.loads(text))

    def __str__(self) -> str:
        lines = []
        for i in range(1, self.n + 1):
            terms = [f"z{i}"]
            for (j, w) in sorted(self.coeffs, key=lambda k: (len(k[1]), k[1])):
                if j == i:
                    terms.append(f"({self.coeffs[(j, w)]}) z_{format_word(w, self.n)}")
            lines.append(f"F^{i} = " + " + ".join(terms))
        return "\n".join(lines)


def _check_compatible(f: NCSeries, g: NCSeries) -> None:
    if f.n != g.n or f.order != g.order:
        raise ValueError("series must share the number of variables and the truncation order")


def substitute(f: NCSeries, g: NCSeries) -> NCSeries:
    """``F o G``: the coefficient of ``z_u`` sums over colored interval partitions of ``u``."""
    _check_compatible(f, g)
    out = {}
    for i in range(1, f.n + 1):
        for u in f.words():
            total = FreeCoefficient.zero()
            for q in range(1, len(u) + 1):
                for part in enumerate_interval_partitions(u, q, f.n):
                    w = part.block_colors
                    coeff = f.coefficient(i, w)
                    if not coeff:
                        continue
                    for block, color in zip(part.blocks(), w):
                        coeff = coeff * g.coefficient(color, block)
                        if not coeff:
                            break
                    total = total + coeff
            if total:
                out[(i, u)] = total
    return NCSeries(f.n, f.order, out)


def pairing(a: AlgebraElement, f: NCSeries) -> FreeCoefficient:
    """Evaluate ``Y^i_u`` at ``f^i_u``, multiplicatively in factor order."""
    total = FreeCoefficient.zero()
    for m, c in a.terms.items():
        for gen in m:
            if len(gen.lower) > f.order:
                raise ValueError(f"generator {gen} exceeds the truncation order {f.order}")
        prod = FreeCoefficient.one()
        for gen in m:
            prod = prod * f.coefficient(gen.upper, gen.lower)
            if not prod:
                break
        total = total + prod * c
    return total


def _support_filter(a: AlgebraElement, f: NCSeries) -> AlgebraElement:
    """Drop monomials containing a generator whose coefficient in ``f`` vanishes."""
    return AlgebraElement((m, c) for m, c in a.terms.items()
                          if all((g.upper, g.lower) in f.coeffs for g in m))


def _inverse(f: NCSeries, antipode_fn) -> NCSeries:
    out = {}
    for j in range(1, f.n + 1):
        for v in f.words():
            value = pairing(_support_filter(antipode_fn(Generator(j, v), f.n), f), f)
            if value:
                out[(j, v)] = value
    return NCSeries(f.n, f.order, out)


def left_inverse(f: NCSeries) -> NCSeries:
    """The series ``G`` with ``G o F`` the identity, read off the inverse antipode."""
    return _inverse(f, antipode_inverse_recursive)


def right_inverse(f: NCSeries) -> NCSeries:
    """The series ``H`` with ``F o H`` the identity, read off the right Lagrange antipode."""
    return _inverse(f, antipode_right)


def verify_inverse(inverse: NCSeries, f: NCSeries, side: str) -> bool:
    """``left`` checks ``inverse o f == id``; ``right`` checks ``f o inverse == id``."""
    if side == "left":
        comp = substitute(inverse, f)
    elif side == "right":
        comp = substitute(f, inverse)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return comp == NCSeries.identity(f.n, f.order)


def first_disagreement(f: NCSeries, g: NCSeries) -> int | None:
    """Smallest total degree at which two series differ, or None."""
    _check_compatible(f, g)
    for length in range(2, f.order + 1):
        for i in range(1, f.n + 1):
            for w in itertools.product(range(1, f.n + 1), repeat=length):
                if f.coefficient(i, w) != g.coefficient(i, w):
                    return length
    return None


def random_series(n: int, order: int, rng: random.Random,
                  symbols: Sequence[str] = ("a", "b", "c"), density: float = 0.5) -> NCSeries:
    """Sparse tangent-to-identity series with small integer multiples of symbols."""
    coeffs = {}
    for i in range(1, n + 1):
        for length in range(2, order + 1):
            for w in itertools.product(range(1, n + 1), repeat=length):
                if rng.random() >= density:
                    continue
                k = rng.randint(1, 2)
                coeffs[(i, w)] = FreeCoefficient(
                    ((rng.choice(symbols),), rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(k))
    return NCSeries(n, order, coeffs)


# -- general polynomial substitution -------------------------------------------

VarWord = tuple[int, ...]


class Polynomial:
    """Noncommutative polynomial in variables ``z_1..z_N`` over free constants.

    Terms are keyed by ``(variable word, constant word)``; a constant term is
    allowed.  Constants commute with variables, so the two words multiply
    independently.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[VarWord, ConstWord], Fraction | int] | Iterable = ()):
        acc: dict = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (v, w), c in items:
            acc[(tuple(v), tuple(w))] += Fraction(c)
        self._terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def variable(cls, j: int, coeff: FreeCoefficient | None = None) -> Polynomial:
        coeff = coeff or FreeCoefficient.one()
        return cls({((j,), w): c for w, c in coeff.terms.items()})

    @classmethod
    def constant(cls, coeff: FreeCoefficient) -> Polynomial:
        return cls({((), w): c for w, c in coeff.terms.items()})

    @classmethod
    def from_series(cls, f: NCSeries, i: int) -> Polynomial:
        terms = {((i,), ()): 1}
        for (j, w), c in f.coeffs.items():
            if j == i:
                for cw, val in c.terms.items():
                    terms[(w, cw)] = val
        return cls(terms)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: Polynomial) -> Polynomial:
        return Polynomial(list(self._terms.items()) + list(other._terms.items()))

    def __mul__(self, other: Polynomial) -> Polynomial:
        out: dict = defaultdict(Fraction)
        for (v1, w1), c1 in self._terms.items():
            for (v2, w2), c2 in other._terms.items():
                out[(v1 + v2, w1 + w2)] += c1 * c2
        return Polynomial(out)

    def truncate(self, order: int) -> Polynomial:
        return Polynomial({k: c for k, c in self._terms.items() if len(k[0]) <= order})

    def coefficient(self, v: Sequence[int]) -> FreeCoefficient:
        v = tuple(v)
        return FreeCoefficient({w: c for (vv, w), c in self._terms.items() if vv == v})

    def abelianize(self) -> Polynomial:
        return Polynomial(((v, tuple(sorted(w))), c) for (v, w), c in self._terms.items())

    def has_constant_term(self) -> bool:
        return any(not v for v, _ in self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        by_var = defaultdict(dict)
        for (v, w), c in self._terms.items():
            by_var[v][w] = c
        parts = []
        for v in sorted(by_var, key=lambda v: (len(v), v)):
            var = "".join(f"z{j}" for j in v) or "1"
            parts.append(f"({FreeCoefficient(by_var[v])})·{var}")
        return " + ".join(parts)


def substitute_general(f: Polynomial, gs: Sequence[Polynomial], order: int | None = None) -> Polynomial:
    """Replace each ``z_j`` in ``f`` by ``gs[j-1]``, truncating at ``order`` when given."""
    for g in gs:
        if g.has_constant_term():
            raise ValueError("substituted series must have no constant term")
    total = Polynomial()
    for (v, w), c in f.terms.items():
        term = Polynomial({((), w): c})
        for j in v:
            term = term * gs[j - 1]
            if order is not None:
                term = term.truncate(order)
        total = total + term
    return total


def series_to_polynomials(f: NCSeries) -> list[Polynomial]:
    return [Polynomial.from_series(f, i) for i in range(1, f.n + 1)]


def polynomials_to_series(polys: Sequence[Polynomial], order: int) -> NCSeries:
    n = len(polys)
    coeffs = {}
    for i, p in enumerate(polys, start=1):
        for j in range(1, n + 1):
            expected = FreeCoefficient.one() if i == j else FreeCoefficient.zero()
            if p.coefficient((j,)) != expected:
                raise ValueError("polynomial is not tangent to the identity")
        if p.has_constant_term():
            raise ValueError("polynomial has a constant term")
        for length in range(2, order + 1):
            for v in itertools.product(range(1, n + 1), repeat=length):
                c = p.coefficient(v)
                if c:
                    coeffs[(i, v)] = c
    return NCSeries(n, order, coeffs)
