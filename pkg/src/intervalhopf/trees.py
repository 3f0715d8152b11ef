"""Colored planar trees: classification, vertex orders, contractions, enumeration.

Vertices are addressed by paths of child indices from the root (``()`` is the
root).  Trees are immutable; every operator returns a fresh tree.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .words import Word, check_word, enumerate_interval_partitions

Path = tuple[int, ...]


@dataclass(frozen=True, order=True)
class PlanarTree:
    color: int
    children: tuple[PlanarTree, ...] = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if self.color < 1:
            raise ValueError("colors are positive integers")
        if len(self.children) == 1 and self.children[0].color != self.color:
            raise ValueError("a unary vertex and its child must share a color")
        # trees are hashed constantly by the caches; children hashes are already cached
        object.__setattr__(self, "_hash", hash((self.color, self.children)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, PlanarTree):
            return NotImplemented
        return (self._hash == other._hash and self.color == other.color
                and self.children == other.children)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def is_unary(self) -> bool:
        return len(self.children) == 1

    @property
    def is_nondegenerate(self) -> bool:
        return len(self.children) > 1

    def child_colors(self) -> Word:
        return tuple(c.color for c in self.children)

    def __str__(self) -> str:
        return to_text(self)


Forest = tuple[PlanarTree, ...]


def leaf(color: int) -> PlanarTree:
    return PlanarTree(color)


def corolla(root: int, u: Sequence[int]) -> PlanarTree:
    return PlanarTree(root, tuple(PlanarTree(c) for c in u))


# -- addressing ----------------------------------------------------------------

def subtree(t: PlanarTree, path: Path) -> PlanarTree:
    for k in path:
        t = t.children[k]
    return t


def replace_at(t: PlanarTree, path: Path, new: PlanarTree) -> PlanarTree:
    if not path:
        return new
    k = path[0]
    kids = list(t.children)
    kids[k] = replace_at(kids[k], path[1:], new)
    return PlanarTree(t.color, tuple(kids))


@dataclass(frozen=True)
class _Shape:
    levels: tuple[tuple[tuple[Path, PlanarTree], ...], ...]
    layered: bool

    @property
    def height(self) -> int:
        return len(self.levels) - 1


@lru_cache(maxsize=1 << 15)
def _shape(t: PlanarTree) -> _Shape:
    """Level-by-level table of ``(path, node)`` pairs, computed once per tree."""
    levels = [(((), t),)]
    while True:
        nxt = tuple((p + (k,), c) for p, node in levels[-1] for k, c in enumerate(node.children))
        if not nxt:
            break
        levels.append(nxt)
    layered = all(not node.is_leaf for row in levels[:-1] for _, node in row)
    return _Shape(tuple(levels), layered)


def vertices(t: PlanarTree) -> Iterator[Path]:
    """All vertex paths, pre-order."""
    stack: list[Path] = [()]
    while stack:
        p = stack.pop()
        yield p
        node = subtree(t, p)
        for k in reversed(range(len(node.children))):
            stack.append(p + (k,))


def is_descendant(x: Path, y: Path) -> bool:
    """True when ``x`` lies strictly below ``y``."""
    return len(x) > len(y) and x[:len(y)] == y


def height(t: PlanarTree) -> int:
    return _shape(t).height


def level_paths(t: PlanarTree, depth: int) -> list[Path]:
    """Vertices on a given level, left to right."""
    levels = _shape(t).levels
    if depth >= len(levels):
        return []
    return [p for p, _ in levels[depth]]


def _nondegenerate_on(t: PlanarTree, depth: int) -> list[Path]:
    return [p for p, node in _shape(t).levels[depth] if node.is_nondegenerate]


def leaf_word(t: PlanarTree) -> Word:
    if t.is_leaf:
        return (t.color,)
    return tuple(itertools.chain.from_iterable(leaf_word(c) for c in t.children))


def leaf_count(t: PlanarTree) -> int:
    return len(leaf_word(t))


# -- predicates ----------------------------------------------------------------

def is_layered(t: PlanarTree) -> bool:
    """All leaves sit on the lowest level."""
    return _shape(t).layered


def is_layered_proper(t: PlanarTree) -> bool:
    return is_layered(t) and all(_nondegenerate_on(t, d) for d in range(height(t)))


def _require_proper(t: PlanarTree) -> None:
    if not is_layered_proper(t):
        raise ValueError(f"tree {to_text(t)} is not a proper layered tree")


def _require_layered(t: PlanarTree) -> None:
    if not is_layered(t):
        raise ValueError(f"tree {to_text(t)} is not layered")


def is_simple(t: PlanarTree) -> bool:
    """Every level carries exactly one non-degenerate vertex."""
    _require_proper(t)
    return all(len(_nondegenerate_on(t, d)) == 1 for d in range(height(t)))


def is_reduced(t: PlanarTree) -> bool:
    return not t.is_unary and all(is_reduced(c) for c in t.children)


def is_ost(t: PlanarTree) -> bool:
    """Order-reduced simple layered tree."""
    return is_layered_proper(t) and is_simple(t) and not order_contractible_vertices(t)


def layer_count(t: PlanarTree) -> int:
    """Number of layers of a layered tree (its height)."""
    _require_layered(t)
    return height(t)


def nonleaf_count(t: PlanarTree) -> int:
    return sum(1 for row in _shape(t).levels for _, node in row if not node.is_leaf)


# -- orders --------------------------------------------------------------------

def breadth_first(t: PlanarTree, nondegenerate_only: bool = True) -> list[Path]:
    """Ascending breadth-first order: deeper levels first, then left to right."""
    _require_layered(t)
    return [p for row in reversed(_shape(t).levels) for p, node in row
            if node.is_nondegenerate or not nondegenerate_only]


DEPTH_FIRST_VARIANTS = ("left_up", "right_up", "left_down", "right_down")


def _postorder(t: PlanarTree, path: Path, left_first: bool) -> Iterator[Path]:
    idx = range(len(t.children))
    if not left_first:
        idx = reversed(idx)
    for k in idx:
        yield from _postorder(t.children[k], path + (k,), left_first)
    yield path


def depth_first_order(t: PlanarTree, variant: str,
                      nondegenerate_only: bool = True) -> list[Path]:
    """Depth-first orders; the ``*_up`` variants end at the root."""
    if variant not in DEPTH_FIRST_VARIANTS:
        raise ValueError(f"unknown depth-first variant {variant!r}")
    # left_down reverses left_up, right_down reverses right_up
    order = list(_postorder(t, (), left_first=variant.startswith("left")))
    if variant.endswith("down"):
        order.reverse()
    if nondegenerate_only:
        order = [p for p in order if subtree(t, p).is_nondegenerate]
    return order


def labels(t: PlanarTree, paths: Iterable[Path]) -> list[tuple[int, Word]]:
    """``(color, children colors)`` for each addressed vertex."""
    out = []
    for p in paths:
        node = subtree(t, p)
        out.append((node.color, node.child_colors()))
    return out


# -- reflection, joins, contraction -------------------------------------------

def reflect(t: PlanarTree) -> PlanarTree:
    return PlanarTree(t.color, tuple(reflect(c) for c in reversed(t.children)))


def reflect_path(t: PlanarTree, path: Path) -> Path:
    """Address in ``reflect(t)`` of the vertex at ``path`` in ``t``."""
    out = []
    node = t
    for k in path:
        out.append(len(node.children) - 1 - k)
        node = node.children[k]
    return tuple(out)


def root_word(forest: Forest) -> Word:
    return tuple(t.color for t in forest)


def forest_leaf_word(forest: Forest) -> Word:
    return tuple(itertools.chain.from_iterable(leaf_word(t) for t in forest))


def right_join(lower: Forest, upper: Forest) -> Forest:
    """Graft the trees of ``lower`` onto the leaves of ``upper``."""
    lower, upper = tuple(lower), tuple(upper)
    if not lower or not upper:
        raise ValueError("join operands must be nonempty forests")
    if forest_leaf_word(upper) != root_word(lower):
        raise ValueError("leaf colors of the upper forest must match roots of the lower one")
    supply = iter(lower)

    def graft(t: PlanarTree) -> PlanarTree:
        if t.is_leaf:
            return next(supply)
        return PlanarTree(t.color, tuple(graft(c) for c in t.children))

    return tuple(graft(t) for t in upper)


def layers(t: PlanarTree) -> list[Forest]:
    """Layers of a layered tree, bottom layer first."""
    _require_layered(t)
    h = height(t)
    out = []
    for d in range(h - 1, -1, -1):
        out.append(tuple(corolla(subtree(t, p).color, subtree(t, p).child_colors())
                         for p in level_paths(t, d)))
    return out


def join_layers(parts: Sequence[Forest]) -> Forest:
    acc = tuple(parts[0])
    for layer in parts[1:]:
        acc = right_join(acc, layer)
    return acc


def contract_singular(t: PlanarTree) -> PlanarTree:
    """Contract every edge hanging from a unary vertex."""
    while t.is_unary:
        t = t.children[0]
    return PlanarTree(t.color, tuple(contract_singular(c) for c in t.children))


def _splice_unary_level(t: PlanarTree, depth: int) -> PlanarTree:
    """Remove a level made of unary vertices by linking through it."""
    if depth == 0:
        assert t.is_unary
        return t.children[0]
    return PlanarTree(t.color, tuple(_splice_unary_level(c, depth - 1) for c in t.children))


def order_contractible_vertices(t: PlanarTree) -> list[Path]:
    """Non-degenerate vertices at which an order-preserving contraction exists.

    ``x`` qualifies when its parent is unary, no non-degenerate vertex lies to
    its right on its own level and none lies left of the parent on the parent's
    level.  Returned in breadth-first order.
    """
    _require_layered(t)
    out = []
    for x in breadth_first(t):
        if not x:
            continue
        parent = x[:-1]
        if not subtree(t, parent).is_unary:
            continue
        if any(p > x for p in _nondegenerate_on(t, len(x))):
            continue
        if any(p < parent for p in _nondegenerate_on(t, len(parent))):
            continue
        out.append(x)
    return out


def order_contract(t: PlanarTree, x: Path) -> PlanarTree:
    """Move ``x`` into its unary parent's slot, keeping the tree layered."""
    x = tuple(x)
    if x not in order_contractible_vertices(t):
        raise ValueError(f"vertex {x} is not order contractible")
    node = subtree(t, x)
    lifted = PlanarTree(node.color, tuple(PlanarTree(y.color, (y,)) for y in node.children))
    out = replace_at(t, x[:-1], lifted)
    depth = len(x)
    if not _nondegenerate_on(out, depth):
        out = _splice_unary_level(out, depth)
    return out


def expansion_vertex(t: PlanarTree) -> Path | None:
    """The breadth-first-first non-simple non-degenerate vertex, if any."""
    _require_proper(t)
    for d in range(height(t) - 1, -1, -1):
        nondeg = _nondegenerate_on(t, d)
        if len(nondeg) > 1:
            return nondeg[0]
    return None


def canonical_expansion(t: PlanarTree) -> PlanarTree:
    """Insert one level so the first non-simple vertex gets a level of its own."""
    xr = expansion_vertex(t)
    if xr is None:
        return t
    depth = len(xr)

    def rebuild(node: PlanarTree, path: Path) -> PlanarTree:
        if len(path) == depth:
            if path == xr:
                return PlanarTree(node.color, (node,))
            return PlanarTree(node.color,
                              tuple(PlanarTree(y.color, (y,)) for y in node.children))
        return PlanarTree(node.color, tuple(rebuild(c, path + (k,))
                                            for k, c in enumerate(node.children)))

    return rebuild(t, ())


def simple_closure(t: PlanarTree) -> PlanarTree:
    """Iterate the canonical expansion until the tree is simple."""
    while (nxt := canonical_expansion(t)) != t:
        t = nxt
    return t


def irreducible_strings(t: PlanarTree) -> list[list[Path]]:
    """Split the breadth-first non-degenerate sequence into descendant runs."""
    seq = breadth_first(t)
    _require_proper(t)
    runs: list[list[Path]] = []
    for x in seq:
        if runs and is_descendant(runs[-1][-1], x):
            runs[-1].append(x)
        else:
            runs.append([x])
    return runs


def right_ends(t: PlanarTree) -> list[Path]:
    return [run[-1] for run in irreducible_strings(t)]


def expand_to_ost(t: PlanarTree) -> PlanarTree:
    """Insert unary chains into a reduced tree so that it becomes order-reduced simple.

    With non-leaf vertices numbered 1..n in right-up order, vertex ``i`` ends up
    on level ``n - i``; unary chains fill the gaps down to each child.
    """
    if not is_reduced(t):
        raise ValueError("expansion to an order-reduced tree needs a reduced tree")
    order = depth_first_order(t, "right_up", nondegenerate_only=True)
    index = {p: i + 1 for i, p in enumerate(order)}

    def chain(node: PlanarTree, length: int) -> PlanarTree:
        for _ in range(length):
            node = PlanarTree(node.color, (node,))
        return node

    def build(path: Path) -> PlanarTree:
        node = subtree(t, path)
        j = index[path]
        kids = []
        for k, child in enumerate(node.children):
            cp = path + (k,)
            if child.is_leaf:
                kids.append(chain(child, j - 1))
            else:
                kids.append(chain(build(cp), j - index[cp] - 1))
        return PlanarTree(node.color, tuple(kids))

    if t.is_leaf:
        return t
    return build(())


# -- enumeration ---------------------------------------------------------------

TREE_CLASSES = ("layered", "reduced", "simple", "ost")


def _layer_steps(forest: Forest, n: int) -> Iterator[Forest]:
    """Forests one layer taller: group the roots into colored blocks."""
    word = root_word(forest)
    for q in range(1, len(word)):
        for part in enumerate_interval_partitions(word, q, n):
            out = []
            start = 0
            for size, color in zip(part.block_sizes, part.block_colors):
                out.append(PlanarTree(color, forest[start:start + size]))
                start += size
            yield tuple(out)


def _layered(forest: Forest, root: int, n: int) -> Iterator[PlanarTree]:
    for nxt in _layer_steps(forest, n):
        if len(nxt) == 1:
            if nxt[0].color == root:
                yield nxt[0]
        else:
            yield from _layered(nxt, root, n)


@lru_cache(maxsize=None)
def _reduced(u: Word, root: int, n: int) -> tuple[PlanarTree, ...]:
    if len(u) == 1:
        return (PlanarTree(root),) if u[0] == root else ()
    out = []
    for q in range(2, len(u) + 1):
        for part in enumerate_interval_partitions(u, q, n):
            options = [_reduced(block, color, n)
                       for block, color in zip(part.blocks(), part.block_colors)]
            for kids in itertools.product(*options):
                out.append(PlanarTree(root, kids))
    return tuple(out)


def enumerate_trees(u: Sequence[int], root: int, cls: str, n: int) -> list[PlanarTree]:
    """Trees of a class with the given root color and leaf word, sorted."""
    u = check_word(u, n)
    check_word((root,), n)
    if not u:
        raise ValueError("leaf word must be nonempty")
    if cls not in TREE_CLASSES:
        raise ValueError(f"unknown tree class {cls!r}")
    if cls == "reduced":
        return sorted(_reduced(u, root, n))
    if cls == "ost":
        return sorted(expand_to_ost(t) for t in _reduced(u, root, n))
    if len(u) == 1:
        found = [PlanarTree(root)] if u[0] == root else []
    else:
        found = list(_layered(tuple(PlanarTree(c) for c in u), root, n))
    if cls == "simple":
        found = [t for t in found if is_simple(t)]
    return sorted(found)


def tree_class_of(e: PlanarTree) -> list[PlanarTree]:
    """All layered trees whose iterated canonical expansion is ``e``.

    Each subset of the contractible vertices of ``e`` is contracted in
    descending breadth-first position.  Contraction keeps the breadth-first
    sequence of non-degenerate vertices, so positions in that sequence stay
    valid addresses throughout.
    """
    if not is_simple(e):
        raise ValueError("tree class is defined for simple trees")
    base = breadth_first(e)
    choices = [base.index(x) for x in order_contractible_vertices(e)]
    out = []
    for r in range(len(choices) + 1):
        for subset in itertools.combinations(choices, r):
            t = e
            for pos in sorted(subset, reverse=True):
                t = order_contract(t, breadth_first(t)[pos])
            out.append(t)
    return sorted(out)


# -- serialization -------------------------------------------------------------

def to_text(t: PlanarTree) -> str:
    if t.is_leaf:
        return str(t.color)
    return f"{t.color}[{','.join(to_text(c) for c in t.children)}]"


def parse_tree(text: str) -> PlanarTree:
    """Parse ``1[1,2[2,1]]``-style term syntax."""
    s = text.replace(" ", "")
    pos = 0

    def node() -> PlanarTree:
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"expected a color at offset {pos} in {text!r}")
        color = int(s[start:pos])
        kids = []
        if pos < len(s) and s[pos] == "[":
            pos += 1
            kids.append(node())
            while pos < len(s) and s[pos] == ",":
                pos += 1
                kids.append(node())
            if pos >= len(s) or s[pos] != "]":
                raise ValueError(f"unbalanced brackets in {text!r}")
            pos += 1
        return PlanarTree(color, tuple(kids))

    tree = node()
    if pos != len(s):
        raise ValueError(f"trailing input in {text!r}")
    return tree


def to_json_obj(t: PlanarTree) -> dict:
    return {"color": t.color, "children": [to_json_obj(c) for c in t.children]}


def from_json_obj(obj: dict) -> PlanarTree:
    return PlanarTree(int(obj["color"]), tuple(from_json_obj(c) for c in obj.get("children", [])))


def to_json(t: PlanarTree) -> str:
    return json.dumps(to_json_obj(t), separators=(",", ":"))


def from_json(text: str) -> PlanarTree:
    return from_json_obj(json.loads(text))
