"""The free algebra on generators ``Y^i_u`` and its interval-partition coproduct."""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .words import Word, check_word, enumerate_interval_partitions, format_word, parse_word, reflect_word


@dataclass(frozen=True, order=True)
class Generator:
    upper: int
    lower: Word

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.lower) < 2:
            raise ValueError("stored generators need a lower word of length >= 2; use Y()")
        check_word(self.lower)
        check_word((self.upper,))

    @property
    def grade(self) -> int:
        return len(self.lower) - 1

    def max_color(self) -> int:
        return max(self.upper, *self.lower)

    def __str__(self) -> str:
        return format_generator(self)


Monomial = tuple[Generator, ...]
UNIT: Monomial = ()


def monomial_grade(m: Monomial) -> int:
    return sum(g.grade for g in m)


def monomial_key(m: Monomial):
    return (monomial_grade(m), len(m), tuple((g.upper, g.lower) for g in m))


class AlgebraElement:
    """Integer combination of monomials; immutable by convention."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        acc: dict[Monomial, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            acc[tuple(m)] += c
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def unit(cls) -> AlgebraElement:
        return cls({UNIT: 1})

    @classmethod
    def zero(cls) -> AlgebraElement:
        return cls()

    @classmethod
    def monomial(cls, m: Iterable[Generator], coeff: int = 1) -> AlgebraElement:
        return cls({tuple(m): coeff})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        for m in sorted(self._terms, key=monomial_key):
            yield m, self._terms[m]

    def coefficient(self, m: Sequence[Generator]) -> int:
        return self._terms.get(tuple(m), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = AlgebraElement.unit() * other
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return AlgebraElement(out)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __mul__(self, other) -> AlgebraElement:
        if isinstance(other, int):
            return AlgebraElement({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        out: dict[Monomial, int] = defaultdict(int)
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                out[m1 + m2] += c1 * c2
        return AlgebraElement(out)

    def __rmul__(self, other) -> AlgebraElement:
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def max_color(self) -> int:
        return max((g.max_color() for m in self._terms for g in m), default=1)

    def map_monomials(self, f: Callable[[Monomial], AlgebraElement]) -> AlgebraElement:
        """Extend a map on monomials linearly."""
        out: dict[Monomial, int] = defaultdict(int)
        for m, c in self._terms.items():
            for m2, c2 in f(m)._terms.items():
                out[m2] += c * c2
        return AlgebraElement(out)

    def __repr__(self) -> str:
        return f"AlgebraElement({format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def Y(upper: int, lower: Sequence[int]) -> AlgebraElement:
    """Generator literal; a one-letter lower word collapses to 1 or 0."""
    lower = check_word(lower)
    if len(lower) == 0:
        raise ValueError("empty lower word")
    if len(lower) == 1:
        return AlgebraElement.unit() if lower[0] == upper else AlgebraElement.zero()
    return AlgebraElement.monomial((Generator(upper, lower),))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def counit(a: AlgebraElement) -> int:
    return a.coefficient(UNIT)


class TensorElement:
    """Integer combination of k-fold tensors of monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[Monomial, ...], int] | Iterable = ()):
        acc: dict[tuple[Monomial, ...], int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            acc[tuple(tuple(m) for m in key)] += c
        self._terms = {k: c for k, c in acc.items() if c}

    @property
    def terms(self) -> dict[tuple[Monomial, ...], int]:
        return dict(self._terms)

    def items(self):
        def key(k):
            return tuple(monomial_key(m) for m in k)
        for k in sorted(self._terms, key=key):
            yield k, self._terms[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: TensorElement) -> TensorElement:
        return TensorElement(list(self._terms.items()) + list(other._terms.items()))

    def __mul__(self, other: TensorElement) -> TensorElement:
        out: dict = defaultdict(int)
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[tuple(a + b for a, b in zip(k1, k2))] += c1 * c2
        return TensorElement(out)

    def flip(self) -> TensorElement:
        return TensorElement({k[::-1]: c for k, c in self._terms.items()})

    def __str__(self) -> str:
        return format_tensor(self)

    def __repr__(self) -> str:
        return f"TensorElement({format_tensor(self)!r})"


# -- coproduct -----------------------------------------------------------------

@lru_cache(maxsize=None)
def generator_coproduct(g: Generator, n: int) -> tuple[tuple[Monomial, Monomial, int], ...]:
    """Terms ``(left, right, coeff)`` of the coproduct of one generator.

    The right factor is always a single generator or the unit.
    """
    if g.max_color() > n:
        raise ValueError(f"generator {g} uses colors beyond {n}")
    acc: dict[tuple[Monomial, Monomial], int] = defaultdict(int)
    u = g.lower
    for q in range(1, len(u) + 1):
        for part in enumerate_interval_partitions(u, q, n):
            left = tuple(Generator(c, b) for b, c in zip(part.blocks(), part.block_colors)
                         if len(b) > 1)
            v = part.block_colors
            if len(v) == 1:
                if v[0] != g.upper:
                    continue
                right: Monomial = UNIT
            else:
                right = (Generator(g.upper, v),)
            acc[(left, right)] += 1
    return tuple((l, r, c) for (l, r), c in acc.items())


def middle_terms(g: Generator, n: int) -> Iterator[tuple[Monomial, Generator, int]]:
    """Coproduct terms with neither side trivial: ``(left monomial, right generator, coeff)``."""
    for left, right, c in generator_coproduct(g, n):
        if left and right:
            yield left, right[0], c


def monomial_coproduct(m: Monomial, n: int) -> TensorElement:
    acc = TensorElement({(UNIT, UNIT): 1})
    for g in m:
        acc = acc * TensorElement({(l, r): c for l, r, c in generator_coproduct(g, n)})
    return acc


def coproduct(a: AlgebraElement, n: int) -> TensorElement:
    out: dict = defaultdict(int)
    for m, c in a.terms.items():
        for k, c2 in monomial_coproduct(m, n).terms.items():
            out[k] += c * c2
    return TensorElement(out)


def coproduct_op(a: AlgebraElement, n: int) -> TensorElement:
    return coproduct(a, n).flip()


def apply_coproduct_at(t: TensorElement, slot: int, n: int) -> TensorElement:
    """Apply the coproduct in one tensor slot, raising the arity by one."""
    out: dict = defaultdict(int)
    for key, c in t.terms.items():
        for (l, r), c2 in monomial_coproduct(key[slot], n).terms.items():
            out[key[:slot] + (l, r) + key[slot + 1:]] += c * c2
    return TensorElement(out)


def tensor_counit_at(t: TensorElement, slot: int) -> TensorElement:
    """Apply the counit in one tensor slot, lowering the arity by one."""
    return TensorElement({k[:slot] + k[slot + 1:]: c
                          for k, c in t.terms.items() if k[slot] == UNIT})


def mu(t: TensorElement, f: Callable[[AlgebraElement], AlgebraElement] | None = None,
       g: Callable[[AlgebraElement], AlgebraElement] | None = None) -> AlgebraElement:
    """Multiply out a 2-tensor after applying ``f`` and ``g`` to its factors."""
    out = AlgebraElement.zero()
    for (l, r), c in t.terms.items():
        left = AlgebraElement.monomial(l)
        right = AlgebraElement.monomial(r)
        if f is not None:
            left = f(left)
        if g is not None:
            right = g(right)
        out = out + (left * right) * c
    return out


def unit_counit(a: AlgebraElement) -> AlgebraElement:
    """The convolution unit: ``a`` goes to its counit times 1."""
    return AlgebraElement.unit() * counit(a)


def convolution(f: Callable[[AlgebraElement], AlgebraElement],
                g: Callable[[AlgebraElement], AlgebraElement],
                a: AlgebraElement, n: int) -> AlgebraElement:
    return mu(coproduct(a, n), f, g)


# -- involutions ---------------------------------------------------------------

def map_s(a: AlgebraElement) -> AlgebraElement:
    """Reverse the factor order and reflect every lower word."""
    return AlgebraElement({tuple(Generator(g.upper, reflect_word(g.lower)) for g in reversed(m)): c
                           for m, c in a.terms.items()})


def map_t(a: AlgebraElement) -> AlgebraElement:
    """Reverse the factor order."""
    return AlgebraElement({m[::-1]: c for m, c in a.terms.items()})


def map_alpha(a: AlgebraElement) -> AlgebraElement:
    """Reflect every lower word, keeping the factor order."""
    return AlgebraElement({tuple(Generator(g.upper, reflect_word(g.lower)) for g in m): c
                           for m, c in a.terms.items()})


# -- serialization -------------------------------------------------------------

def _wide(g: Generator) -> bool:
    return g.max_color() > 9


def format_generator(g: Generator) -> str:
    if _wide(g):
        return f"Y^{{{g.upper}}}_{{{format_word(g.lower, 10)}}}"
    return f"Y^{g.upper}_{format_word(g.lower)}"


def format_monomial(m: Monomial) -> str:
    return " ".join(format_generator(g) for g in m) if m else "1"


def _join_terms(pieces: list[tuple[int, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for k, (c, body) in enumerate(pieces):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}·{body}"
        if k == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


def format_element(a: AlgebraElement) -> str:
    return _join_terms([(c, format_monomial(m)) for m, c in a.items()])


def format_tensor(t: TensorElement) -> str:
    return _join_terms([(c, " | ".join(format_monomial(m) for m in key))
                        for key, c in t.items()])


def latex_generator(g: Generator) -> str:
    sep = "," if _wide(g) else ""
    return f"Y_{{{sep.join(str(c) for c in g.lower)}}}^{{{g.upper}}}"


def format_latex(a: AlgebraElement) -> str:
    pieces = []
    for m, c in a.items():
        body = "".join(latex_generator(g) for g in m) if m else "1"
        pieces.append((c, body))
    return _join_terms(pieces).replace("·", " ")


_GEN = re.compile(r"Y\^(?:\{(\d+)\}|(\d))_(?:\{([\d,]+)\}|([\d,]+))")
_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*([·*])?\s*")


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text in ("", "1"):
        return UNIT
    gens = []
    pos = 0
    while pos < len(text):
        if text[pos] in " *·":
            pos += 1
            continue
        m = _GEN.match(text, pos)
        if m is None:
            raise ValueError(f"bad generator at {text[pos:]!r}")
        upper = int(m.group(1) or m.group(2))
        lower = parse_word(m.group(3) or m.group(4))
        if len(lower) < 2:
            raise ValueError(f"generator {m.group(0)} needs at least two lower letters")
        gens.append(Generator(upper, lower))
        pos = m.end()
    return tuple(gens)


def _split_terms(text: str) -> list[str]:
    """Split at top-level ``+``/``-`` signs, keeping each sign with its term."""
    parts = []
    buf = ""
    depth = 0
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch in "+-" and depth == 0 and buf.strip():
            parts.append(buf)
            buf = ch
        else:
            buf += ch
    if buf.strip():
        parts.append(buf)
    return parts


def parse_element(text: str) -> AlgebraElement:
    """Parse the text form, e.g. ``-Y^1_1234 + 2·Y^1_11 Y^1_11``."""
    text = text.strip()
    if text == "0":
        return AlgebraElement.zero()
    acc: dict[Monomial, int] = defaultdict(int)
    for chunk in _split_terms(text):
        chunk = chunk.strip()
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:].strip()
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        m = re.match(r"(\d+)\s*(?:[·*]\s*|\s+|$)", chunk)
        coeff = 1
        if m and not chunk.startswith("Y"):
            coeff = int(m.group(1))
            chunk = chunk[m.end():]
        acc[parse_monomial(chunk)] += sign * coeff
    if not acc:
        raise ValueError(f"empty element literal {text!r}")
    return AlgebraElement(acc)


def parse_generator(text: str) -> Generator:
    mono = parse_monomial(text)
    if len(mono) != 1:
        raise ValueError(f"expected a single generator, got {text!r}")
    return mono[0]


def element_to_json_obj(a: AlgebraElement) -> list[dict]:
    return [{"coeff": c,
             "factors": [{"upper": g.upper, "lower": list(g.lower)} for g in m]}
            for m, c in a.items()]


def element_from_json_obj(obj: list[dict]) -> AlgebraElement:
    terms = []
    for term in obj:
        m = tuple(Generator(int(f["upper"]), tuple(int(x) for x in f["lower"]))
                  for f in term["factors"])
        terms.append((m, int(term["coeff"])))
    return AlgebraElement(terms)


def element_to_json(a: AlgebraElement) -> str:
    return json.dumps(element_to_json_obj(a))


def element_from_json(text: str) -> AlgebraElement:
    return element_from_json_obj(json.loads(text))
