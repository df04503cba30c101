"""Samplers and exhaustive enumeration.

sample_uniform draws a tree uniformly at random among all plane trees with
the given child multiset: shuffle the entries (Fisher-Yates), rotate the
result into its unique tree sequence, decode.  Every tree sequence is hit by
exactly n of the n! entry orderings, so the output is uniform no matter which
codec decodes it.

The subdivision route resamples through the one-reduced sequence: draw a
uniform tree on the 1-free multiset, then distribute the removed one-child
nodes over its edges (plus a chain above the root) by a uniform composition.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .codec import OrderKind, PlaneTree, decode, dfs_indices
from .errors import (
    CapExceededError,
    PlanLengthMismatchError,
    PurePathError,
    UnaryNodeInReducedError,
)
from .lattice import tree_rotation
from .rng import RandomStream, mix64
from .seqcore import ChildSequence, count_trees, one_reduce, validate

__all__ = [
    "sample_uniform",
    "enumerate_trees",
    "tree_sequences",
    "all_child_multisets",
    "all_child_sequences",
    "random_composition",
    "SubdivisionPlan",
    "apply_subdivision",
    "reduce_tree",
    "sample_subdivision",
    "RandomStream",
    "mix64",
]

DEFAULT_CAP = 10**6


def sample_uniform(
    c: ChildSequence, rng: RandomStream, kind: OrderKind = OrderKind.BFS
) -> PlaneTree:
    """One uniform plane tree with child multiset c."""
    shuffled = validate(rng.shuffle(c.entries))
    return decode(kind, tree_rotation(shuffled).rotated)


def tree_sequences(c: ChildSequence) -> Iterator[ChildSequence]:
    """All distinct tree-sequence orderings of the multiset, lexicographically.

    Generated by placing one remaining value at a time and pruning branches
    whose running surplus would go negative too early.
    """
    n = c.n
    remaining = Counter(c.entries)
    values = sorted(remaining)
    seq: list[int] = []

    def rec(pos: int, surplus: int) -> Iterator[ChildSequence]:
        if pos == n:
            yield ChildSequence(tuple(seq))
            return
        for v in values:
            if remaining[v] == 0:
                continue
            nxt = surplus + v - 1
            if nxt < 0 and pos + 1 < n:
                continue
            remaining[v] -= 1
            seq.append(v)
            yield from rec(pos + 1, nxt)
            seq.pop()
            remaining[v] += 1

    return rec(0, 0)


def enumerate_trees(
    c: ChildSequence,
    cap: int = DEFAULT_CAP,
    kind: OrderKind = OrderKind.LEX_DFS,
) -> list[PlaneTree]:
    """All plane trees with child multiset c, as decoded tree sequences."""
    total = count_trees(c)
    if total > cap:
        raise CapExceededError(f"{total} trees exceed the cap of {cap}")
    return [decode(kind, s) for s in tree_sequences(c)]


def all_child_multisets(n: int) -> Iterator[tuple[int, ...]]:
    """Every child-count multiset on n nodes (descending entries, zero-padded).

    One multiset per partition of n - 1; parts never exceed n - 1, so no
    extra filtering is needed.
    """

    def parts(remaining: int, largest: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in parts(remaining - first, first):
                yield (first,) + rest

    for p in parts(n - 1, max(n - 1, 1)):
        yield p + (0,) * (n - len(p))


def all_child_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Every child sequence on n nodes (all orderings, not just multisets)."""

    def rec(pos: int, left: int) -> Iterator[tuple[int, ...]]:
        if pos == n - 1:
            yield (left,)
            return
        for v in range(left + 1):
            for rest in rec(pos + 1, left - v):
                yield (v,) + rest

    return rec(0, n - 1)


def random_composition(
    total: int, parts: int, rng: RandomStream
) -> tuple[int, ...]:
    """Uniform composition of total into `parts` non-negative parts.

    Stars and bars: draw a uniform (parts-1)-subset of the total+parts-1
    symbol positions (Floyd's algorithm) and read off the gaps.
    """
    if parts < 1 or total < 0:
        raise ValueError("need parts >= 1 and total >= 0")
    if parts == 1:
        return (total,)
    symbols = total + parts - 1
    bars = parts - 1
    chosen: set[int] = set()
    for j in range(symbols - bars, symbols):
        t = rng.randbelow(j + 1)
        chosen.add(j if t in chosen else t)
    out = []
    prev = -1
    for b in sorted(chosen):
        out.append(b - prev - 1)
        prev = b
    out.append(symbols - 1 - prev)
    return tuple(out)


@dataclass(frozen=True)
class SubdivisionPlan:
    """How many one-child nodes to insert at each slot of a reduced tree.

    With n* nodes in the reduced tree there are n* slots: slots 0..n*-2
    belong to its edges, listed by depth-first rank of the child endpoint,
    and the final slot is a chain grown above the root (the tree is rerooted
    at the top of that chain).
    """

    slots: tuple[int, ...]

    def __post_init__(self):
        if any(s < 0 for s in self.slots):
            raise ValueError("slot counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.slots)


def apply_subdivision(reduced: PlaneTree, plan: SubdivisionPlan) -> PlaneTree:
    """Insert chains of one-child nodes according to the plan.

    Depths are preserved in the sense that a reduced node's new depth equals
    its old depth plus the slot counts along its root path (including the
    root slot).
    """
    n_star = reduced.n
    if len(plan.slots) != n_star:
        raise PlanLengthMismatchError(
            f"plan has {len(plan.slots)} slots, reduced tree needs {n_star}"
        )
    if any(len(row) == 1 for row in reduced.children):
        raise UnaryNodeInReducedError("reduced tree already has unary nodes")
    lex, _ = dfs_indices(reduced)
    children: list[list[int]] = [list(row) for row in reduced.children]
    nxt = n_star

    def chain_into(parent_row: list[int], slot_pos: int, count: int, end: int):
        nonlocal nxt
        head = end
        for _ in range(count):
            children.append([head])
            head = nxt
            nxt += 1
        parent_row[slot_pos] = head

    for u in range(n_star):
        if u == reduced.root:
            continue
        count = plan.slots[lex[u] - 2]  # slot i serves lex rank i + 2
        if count:
            p = reduced.parents[u]
            chain_into(children[p], children[p].index(u), count, u)
    root = reduced.root
    root_count = plan.slots[-1]
    head = root
    for _ in range(root_count):
        children.append([head])
        head = nxt
        nxt += 1
    root = head
    return PlaneTree(root, children)


def reduce_tree(t: PlaneTree) -> tuple[PlaneTree, SubdivisionPlan]:
    """Contract all one-child nodes; inverse of apply_subdivision.

    Returns the reduced tree (ids assigned in depth-first order) and the plan
    of contracted chain lengths.
    """
    root = t.root
    root_count = 0
    while len(t.children[root]) == 1:
        root_count += 1
        root = t.children[root][0]
    if not t.children[root]:
        raise PurePathError("tree is a single path; nothing would remain")

    children: list[list[int]] = [[]]
    edge_slots: list[int] = []
    # stack holds (reduced parent id, chain length so far, original node);
    # ids are assigned on pop, so slot order matches depth-first rank
    stack: list[tuple[int, int, int]] = []

    def walk(parent_id: int, orig: int):
        count = 0
        node = orig
        while len(t.children[node]) == 1:
            count += 1
            node = t.children[node][0]
        stack.append((parent_id, count, node))

    for child in reversed(t.children[root]):
        walk(0, child)
    nxt = 1
    while stack:
        parent_id, count, node = stack.pop()
        uid = nxt
        nxt += 1
        children[parent_id].append(uid)
        children.append([])
        edge_slots.append(count)
        for child in reversed(t.children[node]):
            walk(uid, child)

    reduced = PlaneTree(0, children)
    plan = SubdivisionPlan(tuple(edge_slots) + (root_count,))
    return reduced, plan


def sample_subdivision(c: ChildSequence, rng: RandomStream) -> PlaneTree:
    """Uniform tree with child multiset c via its one-reduction.

    Draws the reduced tree first, then the composition; the two-step law
    matches sample_uniform exactly.
    """
    reduced_seq = one_reduce(c)
    skeleton = sample_uniform(reduced_seq, rng, OrderKind.LEX_DFS)
    plan = SubdivisionPlan(
        random_composition(c.n - reduced_seq.n, reduced_seq.n, rng)
    )
    return apply_subdivision(skeleton, plan)
