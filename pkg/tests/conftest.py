"""Shared corpora: all tree shapes and child multisets at desk scale.

The nested-tuple generator below is deliberately independent of the
package's own enumeration code, so round-trip tests are checked against a
second construction of the same objects.
"""

from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import settings

from planetree import PlaneTree, validate
from planetree.sampler import all_child_multisets

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@lru_cache(maxsize=None)
def nested_forests(total: int) -> tuple:
    """All ordered forests on `total` nodes; a tree is the tuple of its
    child subtrees."""
    if total == 0:
        return ((),)
    out = []
    for first in range(1, total + 1):
        for tree in nested_trees(first):
            for rest in nested_forests(total - first):
                out.append((tree,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def nested_trees(total: int) -> tuple:
    return nested_forests(total - 1)


def as_plane_tree(nested) -> PlaneTree:
    """Build a PlaneTree from a nested tuple, numbering nodes on the way."""
    children = [[]]

    def add(forest, parent):
        for sub in forest:
            me = len(children)
            children.append([])
            children[parent].append(me)
            add(sub, me)

    add(nested, 0)
    return PlaneTree(0, children)


def mirror(nested):
    """Reverse the child order of every node."""
    return tuple(mirror(sub) for sub in reversed(nested))


@pytest.fixture(scope="session")
def trees_upto_8():
    return {n: [as_plane_tree(s) for s in nested_trees(n)] for n in range(1, 9)}


@pytest.fixture(scope="session")
def multisets_upto_9():
    return {
        n: [validate(m) for m in all_child_multisets(n)] for n in range(1, 10)
    }


def pytest_terminal_summary(terminalreporter):
    # one verdict line per acceptance criterion, even with capture on
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
