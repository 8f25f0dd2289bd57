"""Sequences of goals and the elementary choice functions they induce.

Given a sequence ``A = (a_1, ..., a_k)`` and an ideal ``X``, the elementary
choice takes the first ``a_i`` lying in ``X`` and returns everything in ``X``
below one of ``a_1, ..., a_i``. When no ``a_i`` lies in ``X`` the whole
sequence is used.
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import Optional, Union

from .cf import ChoiceFunction
from .errors import NotAntichain, NotIdeal, PosetMismatch, RepeatedElement
from .poset import Ideal, Poset, SetLike, as_mask, is_antichain


class Sequence:
    """Ordered tuple of distinct elements of ``poset``."""

    __slots__ = ("poset", "items", "indices")

    def __init__(self, poset: Poset, items: Iterable[str] | str):
        if isinstance(items, str):
            items = [s.strip() for s in items.split(",") if s.strip()]
        items = tuple(items)
        self.poset = poset
        self.indices: tuple[int, ...] = tuple(poset.index(a) for a in items)
        if len(set(self.indices)) != len(items):
            raise RepeatedElement(f"sequence {items} repeats an element")
        self.items: tuple[str, ...] = items

    @classmethod
    def parse(cls, poset: Poset, literal: str):
        """Build from a comma-separated literal such as ``"a,b"``."""
        return cls(poset, literal)

    @property
    def is_ac(self) -> bool:
        return is_antichain(self.poset, self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sequence):
            return NotImplemented
        return self.items == other.items and self.poset == other.poset

    def __hash__(self) -> int:
        return hash(self.items)

    def sort_key(self) -> tuple[int, ...]:
        return self.indices

    def __repr__(self) -> str:
        return f"{type(self).__name__}({','.join(self.items)})"

    def literal(self) -> str:
        return ",".join(self.items)


class ACSequence(Sequence):
    """Sequence whose elements are pairwise incomparable."""

    __slots__ = ()

    def __init__(self, poset: Poset, items: Iterable[str] | str):
        super().__init__(poset, items)
        if not is_antichain(poset, self.items):
            raise NotAntichain(f"{self.items} contains comparable elements")


SeqLike = Union[Sequence, Iterable[str]]


def as_sequence(p: Poset, a: SeqLike) -> Sequence:
    if isinstance(a, Sequence):
        if a.poset is not p and a.poset != p:
            raise PosetMismatch("sequence belongs to a different poset")
        return a
    return Sequence(p, a)


def _first_hit(indices: tuple[int, ...], x: int) -> Optional[int]:
    for i, a in enumerate(indices):
        if x >> a & 1:
            return i + 1
    return None


def _eval(p: Poset, indices: tuple[int, ...], x: int) -> int:
    hit = _first_hit(indices, x)
    prefix = indices if hit is None else indices[:hit]
    gen = 0
    for a in prefix:
        gen |= p.down[a]
    return x & gen


def first_hit(p: Poset, a: SeqLike, x: SetLike) -> Optional[int]:
    """1-based index of the first member of ``a`` inside ideal ``x``; None on no hit."""
    seq = as_sequence(p, a)
    return _first_hit(seq.indices, _ideal_mask(p, x))


def eval_elementary(p: Poset, a: SeqLike, x: SetLike) -> Ideal:
    seq = as_sequence(p, a)
    return Ideal(p, _eval(p, seq.indices, _ideal_mask(p, x)))


def elementary_cf(p: Poset, a: SeqLike) -> ChoiceFunction:
    seq = as_sequence(p, a)
    return ChoiceFunction(p, [_eval(p, seq.indices, x) for x in p.ideal_masks()])


def is_compatible(a: SeqLike, f: ChoiceFunction) -> bool:
    """Each a_i is chosen by f from the complement of the filter of a_1..a_{i-1}."""
    p = f.poset
    seq = as_sequence(p, a)
    seen_up = 0
    for i in seq.indices:
        if not f.value(p.full & ~seen_up) >> i & 1:
            return False
        seen_up |= p.up[i]
    return True


def _ideal_mask(p: Poset, x: SetLike) -> int:
    bits = as_mask(p, x)
    if not p.is_down_closed(bits):
        raise NotIdeal(f"{p.names(bits)} is not an ideal")
    return bits

