"""Plane trees and the three order codecs.

A plane tree paired with a node order gives a sequence of child counts; for
breadth-first order, depth-first order, and depth-first with children visited
right-to-left, that map is a bijection onto tree sequences.  Decoding is
iterative throughout: near-path inputs produce trees of depth ~ n and must
not hit the interpreter recursion limit.

The queue process Q tracks pending nodes while reading counts in order:
Q_0 = 1, Q_i = Q_{i-1} - 1 + c_i, so Q_i = 1 + S_i stays positive until it
hits zero exactly at the end.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import NotTreeSequenceError, SequenceFormatError
from .lattice import is_tree_sequence
from .seqcore import ChildSequence, parse_sequence_text

__all__ = [
    "OrderKind",
    "PlaneTree",
    "QueueProcess",
    "encode",
    "decode",
    "dfs_indices",
    "tree_to_counts_text",
    "tree_to_parent_text",
    "tree_from_text",
]


class OrderKind(str, Enum):
    BFS = "bfs"
    LEX_DFS = "lex_dfs"
    REV_DFS = "rev_dfs"


class PlaneTree:
    """Rooted tree with ordered children, nodes labelled 0..n-1.

    Equality and hashing ignore the labelling: two trees compare equal when
    their shapes (including child order) agree.
    """

    def __init__(self, root: int, children: Sequence[Sequence[int]]):
        n = len(children)
        if n == 0:
            raise ValueError("tree must have at least one node")
        if not 0 <= root < n:
            raise ValueError("root id out of range")
        kids = tuple(tuple(row) for row in children)
        parents = [-1] * n
        seen = 0
        for u, row in enumerate(kids):
            for v in row:
                if not 0 <= v < n or parents[v] != -1 or v == root:
                    raise ValueError("children lists do not form a tree")
                parents[v] = u
                seen += 1
        if seen != n - 1:
            raise ValueError("children lists do not form a tree")
        depths = [0] * n
        order = deque([root])
        reached = 0
        while order:
            u = order.popleft()
            reached += 1
            for v in kids[u]:
                depths[v] = depths[u] + 1
                order.append(v)
        if reached != n:
            raise ValueError("children lists are not connected to the root")
        self.n = n
        self.root = root
        self.children = kids
        self.parents = tuple(parents)
        self.depths = tuple(depths)
        self._code: tuple[int, ...] | None = None

    @classmethod
    def _unchecked(cls, root, children, parents, depths) -> "PlaneTree":
        # fast path for decoders, which build consistent arrays directly
        t = cls.__new__(cls)
        t.n = len(children)
        t.root = root
        t.children = tuple(tuple(row) for row in children)
        t.parents = tuple(parents)
        t.depths = tuple(depths)
        t._code = None
        return t

    def canonical_code(self) -> tuple[int, ...]:
        """Child counts in depth-first order; a total invariant of the shape."""
        if self._code is None:
            self._code = tuple(
                len(self.children[u]) for u in _lex_order(self)
            )
        return self._code

    def child_sequence(self) -> ChildSequence:
        return ChildSequence(self.canonical_code())

    def __eq__(self, other):
        if not isinstance(other, PlaneTree):
            return NotImplemented
        return self.canonical_code() == other.canonical_code()

    def __hash__(self):
        return hash(self.canonical_code())

    def __repr__(self):
        return f"PlaneTree(n={self.n}, code={self.canonical_code()})"


def _bfs_order(t: PlaneTree) -> list[int]:
    out = []
    q = deque([t.root])
    while q:
        u = q.popleft()
        out.append(u)
        q.extend(t.children[u])
    return out


def _lex_order(t: PlaneTree) -> list[int]:
    out = []
    stack = [t.root]
    while stack:
        u = stack.pop()
        out.append(u)
        stack.extend(reversed(t.children[u]))
    return out


def _rev_order(t: PlaneTree) -> list[int]:
    # depth-first but children visited right-to-left; pushing in given order
    # makes the stack pop the last child first
    out = []
    stack = [t.root]
    while stack:
        u = stack.pop()
        out.append(u)
        stack.extend(t.children[u])
    return out


_ORDERS = {
    OrderKind.BFS: _bfs_order,
    OrderKind.LEX_DFS: _lex_order,
    OrderKind.REV_DFS: _rev_order,
}


@dataclass(frozen=True)
class QueueProcess:
    """A node order, its child counts, and the pending-node counts Q."""

    order: tuple[int, ...]
    counts: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        n = len(self.order)
        assert len(self.counts) == n and len(self.q) == n + 1
        assert self.q[0] == 1
        for i in range(n):
            assert self.q[i + 1] == self.q[i] - 1 + self.counts[i]
            assert self.q[i + 1] > 0 or i == n - 1
        assert self.q[n] == 0


def encode(kind: OrderKind, t: PlaneTree) -> QueueProcess:
    """Read off child counts in the given node order."""
    order = _ORDERS[OrderKind(kind)](t)
    counts = [len(t.children[u]) for u in order]
    q = [1]
    for c in counts:
        q.append(q[-1] - 1 + c)
    return QueueProcess(order=tuple(order), counts=tuple(counts), q=tuple(q))


def decode(kind: OrderKind, c: ChildSequence) -> PlaneTree:
    """Inverse of encode: rebuild the tree whose kind-order counts are c."""
    if not is_tree_sequence(c):
        raise NotTreeSequenceError(
            "counts run the pending-node queue below zero before the end"
        )
    kind = OrderKind(kind)
    if kind is OrderKind.BFS:
        return _decode_bfs(c)
    return _decode_dfs(c, reverse_children=(kind is OrderKind.REV_DFS))


def _decode_bfs(c: ChildSequence) -> PlaneTree:
    # breadth-first ids are contiguous per family: node i's children are the
    # next counts[i] unassigned labels
    counts = c.entries
    n = c.n
    children: list[list[int]] = [[] for _ in range(n)]
    parents = [-1] * n
    depths = [0] * n
    nxt = 1
    for i in range(n):
        k = counts[i]
        if k:
            d = depths[i] + 1
            row = children[i]
            for v in range(nxt, nxt + k):
                parents[v] = i
                depths[v] = d
                row.append(v)
            nxt += k
    assert nxt == n
    return PlaneTree._unchecked(0, children, parents, depths)


def _decode_dfs(c: ChildSequence, reverse_children: bool) -> PlaneTree:
    counts = c.entries
    n = c.n
    children: list[list[int]] = [[] for _ in range(n)]
    parents = [-1] * n
    depths = [0] * n
    stack: list[list[int]] = []  # [node, remaining children]
    for i in range(n):
        if i:
            top = stack[-1]
            p = top[0]
            parents[i] = p
            depths[i] = depths[p] + 1
            children[p].append(i)
            top[1] -= 1
        if counts[i]:
            stack.append([i, counts[i]])
        else:
            while stack and stack[-1][1] == 0:
                stack.pop()
    assert not stack
    if reverse_children:
        # later-visited children sit earlier in the child order
        for row in children:
            row.reverse()
    return PlaneTree._unchecked(0, children, parents, depths)


def dfs_indices(t: PlaneTree) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """1-based ranks of every node in the two depth-first orders.

    Returns (lex_rank, rev_rank) indexed by node id; the root has rank 1 in
    both.
    """
    lex = [0] * t.n
    for r, u in enumerate(_lex_order(t), start=1):
        lex[u] = r
    rev = [0] * t.n
    for r, u in enumerate(_rev_order(t), start=1):
        rev[u] = r
    return tuple(lex), tuple(rev)


def tree_to_counts_text(t: PlaneTree) -> str:
    """Canonical one-line form: depth-first child counts, comma separated."""
    return ",".join(map(str, t.canonical_code()))


def tree_to_parent_text(t: PlaneTree) -> str:
    """Verbose form: one ``node_id:parent_id`` line per node, ids relabelled
    by depth-first rank so siblings appear in child order; the root maps
    to -1."""
    order = _lex_order(t)
    rank = {u: i for i, u in enumerate(order)}
    lines = []
    for i, u in enumerate(order):
        p = t.parents[u]
        lines.append(f"{i}:{-1 if p == -1 else rank[p]}")
    return "\n".join(lines)


def tree_from_text(text: str) -> PlaneTree:
    """Parse either serialization form (auto-detected by the ``:``)."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    if ":" in body:
        return _tree_from_parent_text(body)
    return decode(OrderKind.LEX_DFS, parse_sequence_text(body))


def _tree_from_parent_text(body: str) -> PlaneTree:
    pairs: list[tuple[int, int]] = []
    for tok in body.split():
        left, sep, right = tok.partition(":")
        if not sep:
            raise SequenceFormatError(f"bad parent entry {tok!r}")
        try:
            pairs.append((int(left), int(right)))
        except ValueError as exc:
            raise SequenceFormatError(f"bad parent entry {tok!r}") from exc
    if not pairs:
        raise SequenceFormatError("empty parent listing")
    n = len(pairs)
    parents = [-2] * n
    for u, p in pairs:
        if not 0 <= u < n or parents[u] != -2:
            raise SequenceFormatError("node ids must cover 0..n-1 once each")
        parents[u] = p
    children: list[list[int]] = [[] for _ in range(n)]
    root = -1
    for u in range(n):  # ascending id = child order under the relabelling
        p = parents[u]
        if p == -1:
            if root != -1:
                raise SequenceFormatError("multiple roots")
            root = u
        elif 0 <= p < n:
            children[p].append(u)
        else:
            raise SequenceFormatError(f"parent id {p} out of range")
    if root == -1:
        raise SequenceFormatError("no root (parent -1) found")
    try:
        return PlaneTree(root, children)
    except ValueError as exc:
        raise SequenceFormatError(str(exc)) from exc
