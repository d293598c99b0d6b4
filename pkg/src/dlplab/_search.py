"""Small exhaustive-search helpers."""

from __future__ import annotations

import itertools
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


def maximal_subsets(items: Sequence[T], ok: Callable[[tuple[T, ...]], bool]) -> list[tuple[T, ...]]:
    """All ⊆-maximal subsets of ``items`` (kept in input order) satisfying ``ok``.

    Subsets are visited from largest to smallest; a subset of an already
    accepted subset is skipped without calling ``ok``.
    """
    accepted: list[frozenset[int]] = []
    out: list[tuple[T, ...]] = []
    n = len(items)
    for size in range(n, -1, -1):
        for combo in itertools.combinations(range(n), size):
            s = frozenset(combo)
            if any(s < a for a in accepted):
                continue
            subset = tuple(items[k] for k in combo)
            if ok(subset):
                accepted.append(s)
                out.append(subset)
    return out


def minimal_subsets(items: Sequence[T], ok: Callable[[tuple[T, ...]], bool],
                    nonempty: bool = True) -> list[tuple[T, ...]]:
    """All ⊆-minimal subsets of ``items`` satisfying ``ok``."""
    accepted: list[frozenset[int]] = []
    out: list[tuple[T, ...]] = []
    n = len(items)
    for size in range(1 if nonempty else 0, n + 1):
        for combo in itertools.combinations(range(n), size):
            s = frozenset(combo)
            if any(a < s for a in accepted):
                continue
            subset = tuple(items[k] for k in combo)
            if ok(subset):
                accepted.append(s)
                out.append(subset)
    return out
