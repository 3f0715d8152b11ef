"""Exhaustive identity checks over all small generators and trees."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import trees as tr
from .algebra import (
    AlgebraElement,
    Generator,
    apply_coproduct_at,
    coproduct,
    map_alpha,
    map_s,
    map_t,
    tensor_counit_at,
)
from .antipodes import (
    antipode,
    antipode_geometric_monomial,
    antipode_inverse_recursive,
    antipode_recursive,
    antipode_right,
    lambda_monomial,
    omega,
    verify_antipode_axiom,
    AGREEING,
)

SUITES = ("hopf-axioms", "cancellation", "bijection", "duality")


@dataclass
class CheckLine:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, passed: bool, witness: object) -> None:
        self.checked += 1
        if not passed:
            self.failures.append(str(witness))


@dataclass
class Report:
    suite: str
    lines: list[CheckLine] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(line.ok for line in self.lines)

    def line(self, name: str) -> CheckLine:
        out = CheckLine(name)
        self.lines.append(out)
        return out

    def render(self) -> str:
        rows = [f"suite {self.suite}"]
        for line in self.lines:
            status = "ok" if line.ok else "FAIL"
            rows.append(f"  {status:4} {line.name}: {line.checked} checked, {len(line.failures)} failed")
            for w in line.failures[:5]:
                rows.append(f"       witness {w}")
        rows.append("PASS" if self.ok else "FAIL")
        return "\n".join(rows)


def generators(max_leaves: int, n: int) -> Iterator[Generator]:
    for length in range(2, max_leaves + 1):
        for u in itertools.product(range(1, n + 1), repeat=length):
            for i in range(1, n + 1):
                yield Generator(i, u)


def words_and_roots(max_leaves: int, n: int) -> Iterator[tuple[tuple[int, ...], int]]:
    for length in range(1, max_leaves + 1):
        for u in itertools.product(range(1, n + 1), repeat=length):
            for i in range(1, n + 1):
                yield u, i


def random_monomial(rng: random.Random, max_grade: int, n: int) -> tuple[Generator, ...]:
    """A random monomial of total grade at most ``max_grade``."""
    out = []
    budget = rng.randint(1, max_grade)
    while budget > 0:
        length = rng.randint(2, budget + 1)
        u = tuple(rng.randint(1, n) for _ in range(length))
        out.append(Generator(rng.randint(1, n), u))
        budget -= length - 1
    return tuple(out)


def check_antihomomorphism(max_grade: int, n: int, seed: int, samples: int = 20) -> CheckLine:
    """``S(gh) = S(h) S(g)`` with the unmemoized geometric antipode on both sides."""
    line = CheckLine("S(gh) = S(h) S(g) on random monomials")
    rng = random.Random(seed)
    for _ in range(samples):
        g = random_monomial(rng, max(1, max_grade - 1), n)
        h = random_monomial(rng, max(1, max_grade - sum(x.grade for x in g)), n)
        lhs = antipode_geometric_monomial(g + h, n)
        rhs = antipode_geometric_monomial(h, n) * antipode_geometric_monomial(g, n)
        line.record(lhs == rhs, (g, h))
    return line


def check_hopf_axioms(max_leaves: int, n: int, seed: int = 0) -> Report:
    rep = Report("hopf-axioms")
    axiom_h = rep.line("antipode identities for S_H")
    axiom_l = rep.line("antipode identities for S_L with the flipped coproduct")
    coassoc = rep.line("coassociativity")
    counit_line = rep.line("counit laws")
    inverse = rep.line("S_H(S_L(Y)) = Y and S_L(S_H(Y)) = Y")
    for g in generators(max_leaves, n):
        a = AlgebraElement.monomial((g,))
        axiom_h.record(verify_antipode_axiom(g, lambda x: antipode_recursive(x, n), n), g)
        axiom_l.record(verify_antipode_axiom(g, lambda x: antipode_inverse_recursive(x, n), n,
                                             opposite=True), g)
        delta = coproduct(a, n)
        coassoc.record(apply_coproduct_at(delta, 0, n) == apply_coproduct_at(delta, 1, n), g)
        single = {((g,),): 1}
        counit_line.record(tensor_counit_at(delta, 0).terms == single
                           and tensor_counit_at(delta, 1).terms == single, g)
        inverse.record(antipode_recursive(antipode_inverse_recursive(a, n), n) == a
                       and antipode_inverse_recursive(antipode_recursive(a, n), n) == a, g)
    rep.lines.append(check_antihomomorphism(max_leaves, n, seed))
    return rep


def check_cancellation(max_leaves: int, n: int) -> Report:
    rep = Report("cancellation")
    per_class = rep.line("signed layer count vanishes on each contractible simple tree class")
    partition = rep.line("layered trees split into the classes of simple trees")
    agree = rep.line("breadth-first sum equals order-reduced sum")
    for u, i in words_and_roots(max_leaves, n):
        simple = tr.enumerate_trees(u, i, "simple", n)
        covered = []
        for e in simple:
            cls = tr.tree_class_of(e)
            covered.extend(cls)
            if tr.order_contractible_vertices(e):
                per_class.record(sum((-1) ** tr.height(t) for t in cls) == 0, tr.to_text(e))
        partition.record(sorted(covered) == tr.enumerate_trees(u, i, "layered", n), (i, u))
        if len(u) >= 2:
            g = Generator(i, u)
            agree.record(antipode(g, "breadth", n) == antipode(g, "ost", n), g)
    return rep


def check_bijection(max_leaves: int, n: int) -> Report:
    rep = Report("bijection")
    forward = rep.line("contracting the expansion of a reduced tree returns it")
    backward = rep.line("expanding the contraction of an order-reduced tree returns it")
    monomials = rep.line("breadth-first monomial of the expansion equals the right-up monomial")
    layer_counts = rep.line("layers of the expansion equal non-leaf vertices")
    coincide = rep.line("order-reduced iff breadth-first and right-up orders coincide")
    for u, i in words_and_roots(max_leaves, n):
        for t in tr.enumerate_trees(u, i, "reduced", n):
            e = tr.expand_to_ost(t)
            forward.record(tr.contract_singular(e) == t, tr.to_text(t))
            monomials.record(omega(e) == lambda_monomial(t, "right_up"), tr.to_text(t))
            layer_counts.record(tr.height(e) == tr.nonleaf_count(t), tr.to_text(t))
        for e in tr.enumerate_trees(u, i, "ost", n):
            backward.record(tr.expand_to_ost(tr.contract_singular(e)) == e, tr.to_text(e))
        for t in tr.enumerate_trees(u, i, "layered", n):
            same = tr.breadth_first(t) == tr.depth_first_order(t, "right_up")
            coincide.record(same == tr.is_ost(t), tr.to_text(t))
    return rep


def check_duality(max_leaves: int, n: int) -> Report:
    rep = Report("duality")
    left = rep.line("s S_H s = S_L")
    right = rep.line("t S_H t = S_R")
    maps = rep.line("t = alpha s = s alpha")
    reduced = rep.line("reduced-tree formulas for L and R match the recursions")
    orders = rep.line("reflection exchanges the left-up and right-up orders")
    for g in generators(max_leaves, n):
        a = AlgebraElement.monomial((g,))
        left.record(map_s(antipode_recursive(map_s(a), n)) == antipode_inverse_recursive(a, n), g)
        right.record(map_t(antipode_recursive(map_t(a), n)) == antipode_right(a, n), g)
        s_a = antipode_recursive(a, n)
        maps.record(map_t(s_a) == map_alpha(map_s(s_a)) == map_s(map_alpha(s_a)), g)
        reduced.record(antipode(g, "reduced-l", n) == antipode_inverse_recursive(a, n)
                       and antipode(g, "reduced-r", n) == antipode_right(a, n), g)
    for u, i in words_and_roots(min(max_leaves, 4), n):
        for t in tr.enumerate_trees(u, i, "reduced", n):
            image = [tr.reflect_path(t, p)
                     for p in tr.depth_first_order(t, "left_up", nondegenerate_only=False)]
            orders.record(image == tr.depth_first_order(tr.reflect(t), "right_up",
                                                          nondegenerate_only=False), tr.to_text(t))
    return rep


def check_agreement(max_leaves: int, n: int) -> Report:
    rep = Report("agreement")
    line = rep.line("geometric, recursive, breadth, ost and reduced-h agree")
    for g in generators(max_leaves, n):
        results = [antipode(g, name, n) for name in AGREEING]
        line.record(all(r == results[0] for r in results[1:]), g)
    return rep


RUNNERS: dict[str, Callable[[int, int], Report]] = {
    "hopf-axioms": check_hopf_axioms,
    "cancellation": check_cancellation,
    "bijection": check_bijection,
    "duality": check_duality,
}


def run_suite(name: str, max_leaves: int, n: int, seed: int = 0) -> Report:
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    if name == "hopf-axioms":
        return check_hopf_axioms(max_leaves, n, seed)
    return RUNNERS[name](max_leaves, n)
