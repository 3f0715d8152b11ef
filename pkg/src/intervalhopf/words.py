"""Colored words and colored interval partitions.

A colored word is a plain tuple of positive ints (colors drawn from 1..N).
A colored interval partition cuts a word into consecutive nonempty blocks and
assigns each block a color; singleton blocks keep the color of their letter.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

Word = tuple[int, ...]


def check_word(u: Sequence[int], n: int | None = None) -> Word:
    """Coerce ``u`` to a word, validating colors against ``n`` when given."""
    u = tuple(int(c) for c in u)
    for c in u:
        if c < 1 or (n is not None and c > n):
            raise ValueError(f"color {c} outside 1..{n}")
    return u


def reflect_word(u: Sequence[int]) -> Word:
    return tuple(reversed(u))


def grading(u: Sequence[int]) -> int:
    """Grade of the generator indexed by ``u``: its maximal chain length."""
    if len(u) == 0:
        raise ValueError("grading of the empty word is undefined")
    return len(u) - 1


def compositions(p: int, q: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``p`` into ``q`` positive parts, lexicographic order."""
    if q < 1 or q > p:
        return
    if q == 1:
        yield (p,)
        return
    for first in range(1, p - q + 2):
        for rest in compositions(p - first, q - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class ColoredIntervalPartition:
    block_sizes: tuple[int, ...]
    block_colors: Word
    base_word: Word

    def __post_init__(self):
        if any(s < 1 for s in self.block_sizes):
            raise ValueError("block sizes must be positive")
        if sum(self.block_sizes) != len(self.base_word):
            raise ValueError("block sizes must sum to the base word length")
        if len(self.block_colors) != len(self.block_sizes):
            raise ValueError("one color per block required")
        for block, color in zip(self.blocks(), self.block_colors):
            if len(block) == 1 and block[0] != color:
                raise ValueError("a singleton block keeps the color of its letter")

    def blocks(self) -> list[Word]:
        out = []
        start = 0
        for size in self.block_sizes:
            out.append(self.base_word[start:start + size])
            start += size
        return out

    def __len__(self) -> int:
        return len(self.block_sizes)


def restrict(u: Sequence[int], partition: ColoredIntervalPartition, k: int) -> Word:
    """Letters of ``u`` covered by block ``k`` (1-based)."""
    u = tuple(u)
    if sum(partition.block_sizes) != len(u):
        raise ValueError("partition does not cover the word")
    q = len(partition.block_sizes)
    if not 1 <= k <= q:
        raise IndexError(f"block index {k} outside 1..{q}")
    start = sum(partition.block_sizes[:k - 1])
    return u[start:start + partition.block_sizes[k - 1]]


def enumerate_interval_partitions(u: Sequence[int], q: int, n: int,
                                  prune_delta: bool = True) -> list[ColoredIntervalPartition]:
    """All cuts of ``u`` into ``q`` blocks crossed with all block colorings.

    With ``prune_delta`` a singleton block only receives its own letter's color;
    without it every coloring in ``[n]^q`` is listed (raw tuples, some of which
    violate the singleton rule, are then returned as ``(sizes, colors)`` pairs).
    """
    u = check_word(u, n)
    p = len(u)
    if not 1 <= q <= p:
        raise ValueError(f"q={q} outside 1..{p}")
    out = []
    for sizes in compositions(p, q):
        choices = []
        start = 0
        for size in sizes:
            if prune_delta and size == 1:
                choices.append((u[start],))
            else:
                choices.append(range(1, n + 1))
            start += size
        for colors in itertools.product(*choices):
            if prune_delta:
                out.append(ColoredIntervalPartition(sizes, tuple(colors), u))
            else:
                out.append((sizes, tuple(colors)))
    return out


def interval_partitions(u: Sequence[int], n: int) -> Iterator[ColoredIntervalPartition]:
    """Every colored interval partition of ``u``, all block counts."""
    for q in range(1, len(u) + 1):
        yield from enumerate_interval_partitions(u, q, n)


# -- literals ---------------------------------------------------------------

def parse_word(text: str, n: int | None = None) -> Word:
    """Parse ``"1223"`` (N <= 9) or ``"1,12,3"`` into a word."""
    text = text.strip()
    if text in ("", "e", "()"):
        return ()
    if "," in text or (n is not None and n > 9):
        letters = [int(t) for t in text.split(",") if t.strip()]
    else:
        if not text.isdigit():
            raise ValueError(f"bad word literal {text!r}")
        letters = [int(c) for c in text]
    return check_word(letters, n)


def format_word(u: Sequence[int], n: int | None = None) -> str:
    if n is not None and n > 9 or any(c > 9 for c in u):
        return ",".join(str(c) for c in u)
    return "".join(str(c) for c in u)


_BLOCK = re.compile(r"\(([0-9,]*)\)_?(?:\{(\d+)\}|(\d))")


def parse_partition(text: str, n: int | None = None) -> ColoredIntervalPartition:
    """Parse ``"(31)2(233)1(2)2(1223)3"`` into a colored interval partition."""
    text = text.replace(" ", "")
    pos = 0
    sizes, colors, base = [], [], []
    while pos < len(text):
        m = _BLOCK.match(text, pos)
        if m is None:
            raise ValueError(f"bad partition literal at {text[pos:]!r}")
        block = parse_word(m.group(1), n)
        if not block:
            raise ValueError("empty block")
        sizes.append(len(block))
        colors.append(int(m.group(2) or m.group(3)))
        base.extend(block)
        pos = m.end()
    return ColoredIntervalPartition(tuple(sizes), check_word(colors, n), check_word(base, n))


def format_partition(partition: ColoredIntervalPartition) -> str:
    parts = []
    for block, color in zip(partition.blocks(), partition.block_colors):
        c = str(color) if color <= 9 else "{%d}" % color
        parts.append(f"({format_word(block)}){c}")
    return "".join(parts)
