"""Finite posets, element sets, ideals and filters.

Elements are addressed by name externally and by index internally. Every
subset is carried as an integer bitmask (bit ``i`` set iff element ``i`` is a
member), which keeps the exhaustive checks elsewhere in the package cheap.

Example::

    >>> p = build_poset(["a", "b", "c"], [("a", "c"), ("b", "c")])
    >>> principal_ideal(p, "c")
    {a,b,c}
    >>> filter_generated(p, ["a"])
    {a,c}
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator
from pathlib import Path
from typing import Union

from .errors import CapExceeded, CycleError, DuplicateName, FormatError, NotIdeal, UnknownElement

DEFAULT_IDEAL_CAP = 4096


def bit_indices(bits: int) -> Iterator[int]:
    """Yield the set bit positions of ``bits`` in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class Poset:
    """Immutable finite partial order.

    ``down[i]`` is the bitmask of the principal ideal of element ``i`` and
    ``up[i]`` that of its principal filter. Construct through
    :func:`build_poset` unless the relation is already closed.
    """

    __slots__ = ("elements", "down", "up", "_index", "_ideals", "_ideal_pos")

    def __init__(self, elements: Iterable[str], down: Iterable[int]):
        self.elements: tuple[str, ...] = tuple(elements)
        self.down: tuple[int, ...] = tuple(down)
        n = len(self.elements)
        if len(self.down) != n:
            raise ValueError("down must have one mask per element")
        self._index = {name: i for i, name in enumerate(self.elements)}
        if len(self._index) != n:
            seen: set[str] = set()
            dup = next(e for e in self.elements if e in seen or seen.add(e))
            raise DuplicateName(f"duplicate element name {dup!r}")
        up = [0] * n
        for j, mask in enumerate(self.down):
            for i in bit_indices(mask):
                up[i] |= 1 << j
        self.up: tuple[int, ...] = tuple(up)
        self._ideals: tuple[int, ...] | None = None
        self._ideal_pos: dict[int, int] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.down == other.down

    def __hash__(self) -> int:
        return hash((self.elements, self.down))

    def __repr__(self) -> str:
        covers = [f"{self.elements[i]}<{self.elements[j]}" for i, j in self.cover_pairs()]
        return f"Poset({list(self.elements)}, {covers})"

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except (KeyError, TypeError):
            raise UnknownElement(f"unknown element {name!r}") from None

    def le(self, x: str, y: str) -> bool:
        return bool(self.down[self.index(y)] >> self.index(x) & 1)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.le(x, y)

    def comparable(self, x: str, y: str) -> bool:
        return self.le(x, y) or self.le(y, x)

    # -- bitmask helpers --------------------------------------------------

    def mask(self, names: Iterable[str]) -> int:
        bits = 0
        for name in names:
            bits |= 1 << self.index(name)
        return bits

    def names(self, bits: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in bit_indices(bits))

    def names_in_order(self, indices: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in indices)

    def down_of(self, bits: int) -> int:
        out = 0
        for i in bit_indices(bits):
            out |= self.down[i]
        return out

    def up_of(self, bits: int) -> int:
        out = 0
        for i in bit_indices(bits):
            out |= self.up[i]
        return out

    def is_down_closed(self, bits: int) -> bool:
        return self.down_of(bits) == bits

    def is_up_closed(self, bits: int) -> bool:
        return self.up_of(bits) == bits

    def minimal_of(self, bits: int) -> int:
        """Mask of the minimal elements of the subset ``bits``."""
        out = 0
        for i in bit_indices(bits):
            if self.down[i] & bits == 1 << i:
                out |= 1 << i
        return out

    def cover_pairs(self) -> list[tuple[int, int]]:
        pairs = []
        for j, below in enumerate(self.down):
            strict = below & ~(1 << j)
            for i in bit_indices(strict):
                between = strict & self.up[i] & ~(1 << i)
                if not between:
                    pairs.append((i, j))
        return pairs

    def subset(self, bits: int) -> ElementSet:
        return ElementSet(self, bits)

    def ideal_masks(self, cap: int = DEFAULT_IDEAL_CAP) -> tuple[int, ...]:
        """Every ideal as a mask, in canonical order; cached after first success."""
        if self._ideals is None:
            self._ideals = tuple(_enumerate_ideal_masks(self, cap))
        elif len(self._ideals) > cap:
            raise CapExceeded(f"poset has more than {cap} ideals")
        return self._ideals

    def ideal_position(self) -> dict[int, int]:
        """Map ideal mask -> position in :meth:`ideal_masks`; ideals must be enumerated."""
        if self._ideal_pos is None:
            self._ideal_pos = {m: k for k, m in enumerate(self.ideal_masks())}
        return self._ideal_pos

    def to_json(self) -> dict:
        pairs = [[self.elements[i], self.elements[j]] for i, j in self.cover_pairs()]
        return {"elements": list(self.elements), "le": pairs}


class ElementSet:
    """A subset of a poset's elements, iterated in element-index order."""

    __slots__ = ("poset", "bits")

    def __init__(self, poset: Poset, bits: int):
        if bits & ~poset.full:
            raise UnknownElement(f"mask {bits:#b} has bits outside the poset")
        self.poset = poset
        self.bits = bits

    @property
    def names(self) -> tuple[str, ...]:
        return self.poset.names(self.bits)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, name: object) -> bool:
        if name not in self.poset:
            return False
        return bool(self.bits >> self.poset.index(name) & 1)  # type: ignore[arg-type]

    def _other_bits(self, other: object) -> int:
        if isinstance(other, ElementSet):
            if other.poset is not self.poset and other.poset != self.poset:
                raise ValueError("element sets belong to different posets")
            return other.bits
        return self.poset.mask(other)  # type: ignore[arg-type]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.bits == other.bits and self.poset == other.poset

    def __hash__(self) -> int:
        return hash((self.bits, self.poset.elements))

    def __or__(self, other) -> ElementSet:
        return ElementSet(self.poset, self.bits | self._other_bits(other))

    def __and__(self, other) -> ElementSet:
        return ElementSet(self.poset, self.bits & self._other_bits(other))

    def __sub__(self, other) -> ElementSet:
        return ElementSet(self.poset, self.bits & ~self._other_bits(other))

    def __le__(self, other) -> bool:
        return self.bits & ~self._other_bits(other) == 0

    def __lt__(self, other) -> bool:
        return self <= other and self.bits != self._other_bits(other)

    def __repr__(self) -> str:
        return "{" + ",".join(self.names) + "}"


class Ideal(ElementSet):
    __slots__ = ()

    def __init__(self, poset: Poset, bits: int):
        super().__init__(poset, bits)
        if not poset.is_down_closed(bits):
            raise NotIdeal(f"{poset.names(bits)} is not downward closed")


class Filter(ElementSet):
    __slots__ = ()

    def __init__(self, poset: Poset, bits: int):
        super().__init__(poset, bits)
        if not poset.is_up_closed(bits):
            raise ValueError(f"{poset.names(bits)} is not upward closed")


SetLike = Union[ElementSet, Iterable[str]]


def as_mask(p: Poset, s: SetLike) -> int:
    """Bitmask of ``s``, which may be an ElementSet of ``p`` or element names."""
    if isinstance(s, ElementSet):
        if s.poset is not p and s.poset != p:
            raise ValueError("element set belongs to a different poset")
        return s.bits
    if isinstance(s, str):
        raise TypeError("pass an iterable of names, not a single string")
    return p.mask(s)


def build_poset(elements: Iterable[str], pairs: Iterable[tuple[str, str]]) -> Poset:
    """Close ``pairs`` (each meaning first <= second) reflexively and transitively.

    Raises CycleError if the closure relates two distinct elements both ways.
    """
    elements = list(elements)
    index: dict[str, int] = {}
    for i, name in enumerate(elements):
        if name in index:
            raise DuplicateName(f"duplicate element name {name!r}")
        index[name] = i
    down = [1 << i for i in range(len(elements))]
    for x, y in pairs:
        for e in (x, y):
            if e not in index:
                raise UnknownElement(f"unknown element {e!r}")
        down[index[y]] |= 1 << index[x]
    # Warshall closure on bit rows
    for k in range(len(elements)):
        for i in range(len(elements)):
            if down[i] >> k & 1:
                down[i] |= down[k]
    for i in range(len(elements)):
        for j in bit_indices(down[i] & ~(1 << i)):
            if down[j] >> i & 1:
                raise CycleError(f"{elements[i]!r} and {elements[j]!r} are mutually <=")
    return Poset(elements, down)


def poset_from_json(data: dict) -> Poset:
    if not isinstance(data, dict) or "elements" not in data:
        raise FormatError("poset object needs an 'elements' list")
    elements = data["elements"]
    pairs = data.get("le", [])
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise FormatError("'elements' must be a list of strings")
    if not isinstance(pairs, list) or not all(
        isinstance(q, list) and len(q) == 2 and all(isinstance(e, str) for e in q) for q in pairs
    ):
        raise FormatError("'le' must be a list of [lower, upper] name pairs")
    return build_poset(elements, [tuple(q) for q in pairs])


def load_poset(path: str | Path) -> Poset:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
    return poset_from_json(data)


def principal_ideal(p: Poset, x: str) -> Ideal:
    return Ideal(p, p.down[p.index(x)])


def strict_principal_ideal(p: Poset, x: str) -> ElementSet:
    i = p.index(x)
    return ElementSet(p, p.down[i] & ~(1 << i))


def ideal_generated(p: Poset, a: SetLike) -> Ideal:
    return Ideal(p, p.down_of(as_mask(p, a)))


def filter_generated(p: Poset, a: SetLike) -> Filter:
    return Filter(p, p.up_of(as_mask(p, a)))


def is_ideal(p: Poset, s: SetLike) -> bool:
    return p.is_down_closed(as_mask(p, s))


def is_filter(p: Poset, s: SetLike) -> bool:
    return p.is_up_closed(as_mask(p, s))


def is_antichain(p: Poset, s: SetLike) -> bool:
    bits = as_mask(p, s)
    return all(p.down[i] & bits == 1 << i for i in bit_indices(bits))


def _canonical_key(bits: int) -> tuple[int, tuple[int, ...]]:
    return (bin(bits).count("1"), tuple(bit_indices(bits)))


def _enumerate_ideal_masks(p: Poset, cap: int) -> list[int]:
    if cap <= 0:
        raise ValueError("cap must be positive")
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ideal in frontier:
            # x can be added iff everything strictly below x is already in
            for i in bit_indices(p.full & ~ideal):
                if p.down[i] & ~ideal == 1 << i:
                    grown = ideal | 1 << i
                    if grown not in found:
                        found.add(grown)
                        if len(found) > cap:
                            raise CapExceeded(f"poset has more than {cap} ideals")
                        nxt.append(grown)
        frontier = nxt
    return sorted(found, key=_canonical_key)


def enumerate_ideals(p: Poset, cap: int = DEFAULT_IDEAL_CAP) -> list[Ideal]:
    """All ideals of ``p`` ordered by size, then lexicographically by index."""
    return [Ideal(p, m) for m in p.ideal_masks(cap)]


def is_linear(p: Poset) -> bool:
    return all(d | u == p.full for d, u in zip(p.down, p.up))


def is_discrete(p: Poset) -> bool:
    return all(d == 1 << i for i, d in enumerate(p.down))
