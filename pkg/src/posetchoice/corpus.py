"""Small posets for exhaustive checks: chains, antichains, all posets up to isomorphism."""

from __future__ import annotations

import itertools
import random
from typing import Optional

from .poset import Poset, build_poset


def _names(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"e{i}" for i in range(n)]


def chain(n: int, names: Optional[list[str]] = None) -> Poset:
    names = names or _names(n)
    return build_poset(names, list(zip(names, names[1:])))


def antichain(n: int, names: Optional[list[str]] = None) -> Poset:
    return build_poset(names or _names(n), [])


def _canonical(n: int, down: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(n)):
        relabeled = [0] * n
        for j in range(n):
            m = 0
            for i in range(n):
                if down[j] >> i & 1:
                    m |= 1 << perm[i]
            relabeled[perm[j]] = m
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return best  # type: ignore[return-value]


def all_posets(n: int) -> list[Poset]:
    """One representative per isomorphism class of n-element posets (n <= 5 is practical).

    Brute force: every relation on the off-diagonal pairs that is transitive
    and antisymmetric, deduplicated by a canonical relabeling.
    """
    names = _names(n)
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen: dict[tuple[int, ...], Poset] = {}
    for choice in itertools.product((False, True), repeat=len(offdiag)):
        down = [1 << j for j in range(n)]
        for (i, j), on in zip(offdiag, choice):
            if on:
                down[j] |= 1 << i
        ok = True
        for i, j in offdiag:
            if down[j] >> i & 1:
                if down[i] >> j & 1 or down[i] & ~down[j]:
                    ok = False
                    break
        if not ok:
            continue
        key = _canonical(n, tuple(down))
        if key not in seen:
            seen[key] = Poset(names, key)
    return [seen[k] for k in sorted(seen)]


def posets_up_to(n: int) -> list[Poset]:
    return [p for k in range(n + 1) for p in all_posets(k)]


def random_poset(n: int, rng: random.Random, density: Optional[float] = None) -> Poset:
    """Random order: pairs i<j of a shuffled labeling, each kept with probability ``density``."""
    names = _names(n)
    order = names[:]
    rng.shuffle(order)
    q = rng.random() if density is None else density
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < q]
    return build_poset(names, pairs)
