"""Antipodes of the interval algebra and of its two Lagrange variants.

Every route computes the same map on generators; the cross-checks in the
test suite rely on them being implemented independently:

* ``antipode_geometric``: the series sum of convolution powers of ``eta.eps - id``
* ``antipode_recursive``: the defining recursion, memoized
* ``antipode_breadth``: signed sum over layered trees read breadth first
* ``antipode_ost``: the same sum restricted to order-reduced simple trees
* ``antipode_reduced``: signed sum over reduced trees read depth first
"""

from __future__ import annotations

import threading
from typing import Callable

from . import trees as tr
from .algebra import (
    AlgebraElement,
    Generator,
    Monomial,
    coproduct,
    counit,
    map_s,
    map_t,
    middle_terms,
    monomial_coproduct,
    mu,
)

ALGORITHMS = ("geometric", "recursive", "breadth", "ost", "reduced-h", "reduced-l", "reduced-r")
AGREEING = ("geometric", "recursive", "breadth", "ost", "reduced-h")


def _as_element(g: Generator | AlgebraElement) -> AlgebraElement:
    return g if isinstance(g, AlgebraElement) else AlgebraElement.monomial((g,))


def extend_antimultiplicative(on_generator: Callable[[Generator], AlgebraElement],
                              a: AlgebraElement) -> AlgebraElement:
    """Extend a generator map to ``a`` with ``S(gh) = S(h) S(g)``."""
    def on_monomial(m: Monomial) -> AlgebraElement:
        out = AlgebraElement.unit()
        for g in m:
            out = on_generator(g) * out
        return out
    return a.map_monomials(on_monomial)


# -- geometric series ----------------------------------------------------------

def _minus_identity_power(m: Monomial, k: int, n: int) -> AlgebraElement:
    """The k-th convolution power of ``eta.eps - id`` evaluated on a monomial."""
    if not m:
        return AlgebraElement.zero()
    if k == 1:
        return -AlgebraElement.monomial(m)
    out = AlgebraElement.zero()
    for (left, right), c in monomial_coproduct(m, n).terms.items():
        if not left or not right:
            continue
        tail = _minus_identity_power(right, k - 1, n)
        if tail:
            out = out + (AlgebraElement.monomial(left) * tail) * (-c)
    return out


def antipode_geometric_monomial(m: Monomial, n: int) -> AlgebraElement:
    """Geometric-series antipode on an arbitrary monomial, without memoization."""
    out = AlgebraElement.unit() if not m else AlgebraElement.zero()
    grade = sum(g.grade for g in m)
    for k in range(1, grade + 1):
        out = out + _minus_identity_power(m, k, n)
    return out


def antipode_geometric(g: Generator | AlgebraElement, n: int) -> AlgebraElement:
    return _as_element(g).map_monomials(lambda m: antipode_geometric_monomial(m, n))


# -- recursions ----------------------------------------------------------------

class _Memo:
    """Idempotent cache; concurrent fills may duplicate work but never tear."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)


_RECURSIVE = _Memo()
_INVERSE = _Memo()


def _recursive_generator(g: Generator, n: int) -> AlgebraElement:
    key = (g, n)
    hit = _RECURSIVE.get(key)
    if hit is not None:
        return hit
    out = -AlgebraElement.monomial((g,))
    for left, right, c in middle_terms(g, n):
        s_left = extend_antimultiplicative(lambda h: _recursive_generator(h, n),
                                           AlgebraElement.monomial(left))
        out = out - (s_left * AlgebraElement.monomial((right,))) * c
    return _RECURSIVE.put(key, out)


def antipode_recursive(g: Generator | AlgebraElement, n: int) -> AlgebraElement:
    return extend_antimultiplicative(lambda h: _recursive_generator(h, n), _as_element(g))


def _inverse_generator(g: Generator, n: int) -> AlgebraElement:
    key = (g, n)
    hit = _INVERSE.get(key)
    if hit is not None:
        return hit
    out = -AlgebraElement.monomial((g,))
    for left, right, c in middle_terms(g, n):
        s_left = extend_antimultiplicative(lambda h: _inverse_generator(h, n),
                                           AlgebraElement.monomial(left))
        out = out - (AlgebraElement.monomial((right,)) * s_left) * c
    return _INVERSE.put(key, out)


def antipode_inverse_recursive(g: Generator | AlgebraElement, n: int) -> AlgebraElement:
    """The inverse antipode, i.e. the antipode of the left Lagrange algebra."""
    return extend_antimultiplicative(lambda h: _inverse_generator(h, n), _as_element(g))


def antipode_right(g: Generator | AlgebraElement, n: int) -> AlgebraElement:
    """Antipode of the right Lagrange algebra, obtained by conjugating with t."""
    return map_t(antipode_recursive(map_t(_as_element(g)), n))


# -- tree sums -----------------------------------------------------------------

def vertex_generator(t: tr.PlanarTree, path: tr.Path) -> Generator:
    node = tr.subtree(t, path)
    return Generator(node.color, node.child_colors())


def omega(t: tr.PlanarTree) -> Monomial:
    """Non-degenerate vertices read in ascending breadth-first order."""
    if not tr.is_layered_proper(t):
        raise ValueError("omega needs a proper layered tree")
    return tuple(vertex_generator(t, p) for p in tr.breadth_first(t))


LAMBDA_VARIANTS = ("left_down", "right_up", "right_down")


def lambda_monomial(t: tr.PlanarTree, variant: str) -> Monomial:
    """Non-leaf vertices of a reduced tree read in a depth-first order."""
    if variant not in LAMBDA_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not tr.is_reduced(t):
        raise ValueError("lambda needs a reduced tree")
    return tuple(vertex_generator(t, p) for p in tr.depth_first_order(t, variant))


def _require_generator(g: Generator | AlgebraElement) -> Generator:
    if isinstance(g, Generator):
        return g
    terms = g.terms
    if len(terms) == 1:
        (m, c), = terms.items()
        if c == 1 and len(m) == 1:
            return m[0]
    raise ValueError("tree formulas take a single generator")


def antipode_breadth(g: Generator | AlgebraElement, n: int) -> AlgebraElement:
    g = _require_generator(g)
    return AlgebraElement((omega(t), (-1) ** tr.height(t))
                          for t in tr.enumerate_trees(g.lower, g.upper, "layered", n))


def antipode_ost(g: Generator | AlgebraElement, n: int) -> AlgebraElement:
    g = _require_generator(g)
    return AlgebraElement((omega(t), (-1) ** tr.height(t))
                          for t in tr.enumerate_trees(g.lower, g.upper, "ost", n))


_REDUCED_VARIANT = {"H": "right_up", "L": "left_down", "R": "right_down"}


def antipode_reduced(g: Generator | AlgebraElement, which: str, n: int) -> AlgebraElement:
    """Signed sum over reduced trees; ``which`` picks the H, L or R algebra."""
    g = _require_generator(g)
    if which not in _REDUCED_VARIANT:
        raise ValueError(f"which must be one of H, L, R, got {which!r}")
    variant = _REDUCED_VARIANT[which]
    return AlgebraElement((lambda_monomial(t, variant), (-1) ** tr.nonleaf_count(t))
                          for t in tr.enumerate_trees(g.lower, g.upper, "reduced", n))


def antipode(g: Generator | AlgebraElement, algorithm: str, n: int) -> AlgebraElement:
    """Dispatch by algorithm name (see ``ALGORITHMS``)."""
    if algorithm == "geometric":
        return antipode_geometric(g, n)
    if algorithm == "recursive":
        return antipode_recursive(g, n)
    if algorithm == "breadth":
        return antipode_breadth(g, n)
    if algorithm == "ost":
        return antipode_ost(g, n)
    if algorithm in ("reduced-h", "reduced-l", "reduced-r"):
        return antipode_reduced(g, algorithm[-1].upper(), n)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def antipode_conjugate_s(g: Generator | AlgebraElement, n: int) -> AlgebraElement:
    """``s S s``, which coincides with the inverse antipode."""
    return map_s(antipode_recursive(map_s(_as_element(g)), n))


def verify_antipode_axiom(g: Generator | AlgebraElement, antipode_fn: Callable[[AlgebraElement], AlgebraElement],
                          n: int, opposite: bool = False) -> bool:
    """Check both antipode identities exactly.

    With ``opposite`` the identities are taken for the flipped coproduct, which
    is the pairing satisfied by the inverse antipode.
    """
    a = _as_element(g)
    delta = coproduct(a, n)
    if opposite:
        delta = delta.flip()
    target = AlgebraElement.unit() * counit(a)
    left = mu(delta, antipode_fn, None)
    right = mu(delta, None, antipode_fn)
    return left == target and right == target


def clear_caches() -> None:
    global _RECURSIVE, _INVERSE
    _RECURSIVE = _Memo()
    _INVERSE = _Memo()
