"""Depth profile, width, and height of a plane tree."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codec import PlaneTree

__all__ = ["Profile", "profile", "width", "height"]


@dataclass(frozen=True)
class Profile:
    """Node counts per depth, from the root level down to the deepest."""

    z: tuple[int, ...]

    def __post_init__(self):
        assert self.z and self.z[0] == 1 and all(v > 0 for v in self.z)

    @property
    def height(self) -> int:
        return len(self.z) - 1

    @property
    def width(self) -> int:
        return max(self.z)


def profile(t: PlaneTree) -> Profile:
    z = np.bincount(np.asarray(t.depths, dtype=np.int64))
    return Profile(z=tuple(int(v) for v in z))


def width(t: PlaneTree) -> int:
    """Largest number of nodes on one level."""
    return profile(t).width


def height(t: PlaneTree) -> int:
    """Depth of the deepest node."""
    return max(t.depths)
