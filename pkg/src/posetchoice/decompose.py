"""Decomposing conservative choice functions into elementary ones.

The main entry point is :func:`decompose`: for every ideal ``X`` and every
chosen ``x`` in ``f(X)`` it builds an antichain sequence compatible with ``f``
whose elementary choice function picks ``x`` from ``X``. The union of those
elementary functions reproduces ``f`` exactly.

Galleries are sequences grown by repeatedly asking a selector for an element
of ``f(P - F(U))``, where ``F(U)`` is the filter generated so far; on a finite
poset that loop always stops, at the unique through gallery of the selector.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Optional

from .cf import (
    DEFAULT_TABLE_CAP,
    ChoiceFunction,
    CheckReport,
    check_conservative,
    empty_cf,
    enumerate_conservative,
    union_cf,
)
from .elementary import ACSequence, Sequence, _eval, as_sequence, elementary_cf, is_compatible
from .errors import ElementNotChosen, FormatError, NotConservative, SelectorViolation
from .poset import Filter, Ideal, Poset, SetLike, as_mask, bit_indices, is_antichain

Selector = Callable[[Filter], str]


@dataclass(frozen=True)
class Decomposition:
    poset: Poset
    sequences: tuple[Sequence, ...]

    def __len__(self) -> int:
        return len(self.sequences)

    def union(self) -> ChoiceFunction:
        if not self.sequences:
            return empty_cf(self.poset)
        return union_cf(elementary_cf(self.poset, s) for s in self.sequences)

    def to_json(self) -> dict:
        return {"sequences": [list(s.items) for s in self.sequences]}

    @classmethod
    def from_json(cls, p: Poset, data: dict) -> Decomposition:
        seqs = data.get("sequences") if isinstance(data, dict) else None
        if not isinstance(seqs, list) or not all(isinstance(s, list) for s in seqs):
            raise FormatError("decomposition object needs a 'sequences' list of name lists")
        return cls(p, tuple(Sequence(p, s) for s in seqs))


def _require_conservative(f: ChoiceFunction) -> None:
    rep = check_conservative(f)
    if not rep:
        raise NotConservative(f"choice function fails {rep.law}", rep)


def _lowest(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


def witness_sequence(f: ChoiceFunction, x_ideal: SetLike, x: str, check: bool = True) -> ACSequence:
    """AC-sequence A compatible with ``f`` such that ``x`` is in f_A(X).

    Each step either ends with ``x`` (when f picks it from the current
    remainder ``B``) or appends the lowest-index minimal element of
    ``f(B) - X`` and removes its filter from ``B``.
    """
    p = f.poset
    xb = as_mask(p, x_ideal)
    xi = p.index(x)
    if xb not in p.ideal_position():
        raise ElementNotChosen(f"{p.names(xb)} is not an ideal")
    if not f.value(xb) >> xi & 1:
        raise ElementNotChosen(f"{x!r} is not in f({{{','.join(p.names(xb))}}})")
    if check:
        _require_conservative(f)
    return ACSequence(p, p.names_in_order(_witness(f, xb, xi)))


def _witness(f: ChoiceFunction, xb: int, xi: int) -> list[int]:
    p = f.poset
    seq: list[int] = []
    below = 0  # I(a_1..a_k)
    above = 0  # F(a_1..a_k)
    while True:
        remainder = p.full & ~above
        assert xb & above == 0, "menu must avoid the filter of the prefix"
        assert not below >> xi & 1, "x must stay outside the ideal of the prefix"
        chosen = f.value(remainder)
        if chosen >> xi & 1:
            seq.append(xi)
            return seq
        outside = chosen & ~xb
        if not outside:
            # f(B) <= X <= B with x in f(X) - f(B) breaks outcast
            raise NotConservative("outcast fails between the remainder and the menu")
        a = _lowest(p.minimal_of(outside))
        assert all(not (p.down[a] | p.up[a]) >> b & 1 for b in seq), "prefix must stay an antichain"
        seq.append(a)
        below |= p.down[a]
        above |= p.up[a]


def decompose(f: ChoiceFunction) -> Decomposition:
    """Union-of-elementary representation of a conservative ``f``, one witness per chosen pair."""
    _require_conservative(f)
    p = f.poset
    found: set[tuple[int, ...]] = set()
    for xb, chosen in zip(p.ideal_masks(), f.values):
        for xi in bit_indices(chosen):
            found.add(tuple(_witness(f, xb, xi)))
    d = Decomposition(p, tuple(ACSequence(p, p.names_in_order(k)) for k in sorted(found)))
    rep = verify_decomposition(f, d)
    if not rep:
        raise AssertionError(f"decomposition does not reproduce f: {rep.witness}")
    return d


def verify_decomposition(f: ChoiceFunction, d: Decomposition) -> CheckReport:
    """Pass iff every sequence is AC and compatible and the union equals ``f``."""
    p = f.poset
    for s in d.sequences:
        s = as_sequence(p, s)
        if not is_antichain(p, s.items):
            return CheckReport("decomposition", False, {"sequence": list(s.items), "reason": "not an antichain"})
        if not is_compatible(s, f):
            return CheckReport("decomposition", False, {"sequence": list(s.items), "reason": "not compatible"})
    values = [0] * len(f.values)
    for s in d.sequences:
        for k, xb in enumerate(p.ideal_masks()):
            values[k] |= _eval(p, s.indices, xb)
    for xb, want, got in zip(p.ideal_masks(), f.values, values):
        if want != got:
            return CheckReport("decomposition", False, {
                "X": Ideal(p, xb), "expected": Ideal(p, want), "got": Ideal(p, got)})
    return CheckReport("decomposition", True)


def minimize(f: ChoiceFunction, d: Decomposition) -> Decomposition:
    """Greedily drop sequences already covered by the union of the others.

    Candidates are visited in lexicographic index order. The result is
    irredundant but not necessarily of minimum size.
    """
    p = f.poset
    order = sorted(d.sequences, key=lambda s: s.indices)
    tables = {s.indices: elementary_cf(p, s).values for s in order}
    kept = list(order)
    for s in order:
        rest = [t for t in kept if t is not s]
        cover = [0] * len(f.values)
        for t in rest:
            for k, v in enumerate(tables[t.indices]):
                cover[k] |= v
        if all(v & ~c == 0 for v, c in zip(tables[s.indices], cover)):
            kept = rest
    return Decomposition(p, tuple(kept))


# -- selectors and galleries ------------------------------------------------

class Gallery(Sequence):
    __slots__ = ()


def min_index_selector(f: ChoiceFunction) -> Selector:
    """Pick the lowest-index element of f(P - F)."""
    p = f.poset

    def select(flt: Filter) -> str:
        chosen = f.value(p.full & ~flt.bits)
        if not chosen:
            raise SelectorViolation("selector called outside its domain")
        return p.elements[_lowest(chosen)]

    return select


def hitting_selector(f: ChoiceFunction, x_ideal: SetLike, x: str) -> Selector:
    """Selector whose through gallery U has ``x`` in f_U(X).

    For filters disjoint from X it prefers an element of f(P - F) outside X
    and falls back to ``x`` itself; elsewhere it picks the lowest index.
    """
    p = f.poset
    xb = as_mask(p, x_ideal)
    xi = p.index(x)
    if xb not in p.ideal_position() or not f.value(xb) >> xi & 1:
        raise ElementNotChosen(f"{x!r} is not in f({{{','.join(p.names(xb))}}})")

    def select(flt: Filter) -> str:
        chosen = f.value(p.full & ~flt.bits)
        if not chosen:
            raise SelectorViolation("selector called outside its domain")
        if flt.bits & xb == 0:
            outside = chosen & ~xb
            return p.elements[_lowest(outside)] if outside else x
        return p.elements[_lowest(chosen)]

    return select


def _select_checked(f: ChoiceFunction, select: Selector, above: int) -> int:
    p = f.poset
    name = select(Filter(p, above))
    i = p.index(name)
    if not f.value(p.full & ~above) >> i & 1:
        raise SelectorViolation(f"selector returned {name!r}, not in f(P - F)")
    return i


def build_gallery(f: ChoiceFunction, select: Selector) -> Gallery:
    """The through gallery of ``select``: extend while f(P - F(U)) is nonempty."""
    p = f.poset
    items: list[int] = []
    above = 0
    while f.value(p.full & ~above):
        i = _select_checked(f, select, above)
        items.append(i)
        above |= p.up[i]
    return Gallery(p, p.names_in_order(items))


def is_gallery(f: ChoiceFunction, select: Selector, items: Iterable[str]) -> bool:
    """Every proper prefix V is in the selector's domain and is followed by select(F(V))."""
    p = f.poset
    idx = [p.index(a) for a in items]
    if len(set(idx)) != len(idx):
        return False
    above = 0
    for i in idx:
        if not f.value(p.full & ~above):
            return False
        if p.index(select(Filter(p, above))) != i:
            return False
        above |= p.up[i]
    return True


def is_through(f: ChoiceFunction, items: Iterable[str]) -> bool:
    p = f.poset
    return f.value(p.full & ~p.up_of(p.mask(items))) == 0


def galleries_are_chain(f: ChoiceFunction, select: Selector) -> CheckReport:
    """Find every gallery by generate-and-test and check they are nested prefixes.

    Also checks that exactly one gallery is through and that it matches
    :func:`build_gallery`.
    """
    p = f.poset
    galleries: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    while frontier:
        nxt = []
        for u in frontier:
            for e in p.elements:
                if e not in u and is_gallery(f, select, u + (e,)):
                    nxt.append(u + (e,))
        galleries.extend(nxt)
        frontier = nxt
    for i, u in enumerate(galleries):
        for v in galleries[i + 1:]:
            short, long_ = (u, v) if len(u) <= len(v) else (v, u)
            if long_[:len(short)] != short:
                return CheckReport("gallery-chain", False, {"U": list(u), "V": list(v)})
    through = [u for u in galleries if is_through(f, u)]
    built = build_gallery(f, select).items
    if len(through) != 1 or through[0] != built:
        return CheckReport("gallery-chain", False, {"through": [list(u) for u in through], "built": list(built)})
    return CheckReport("gallery-chain", True)


# -- join irreducibility ----------------------------------------------------

def strict_conservative_below(f: ChoiceFunction, cap: int = DEFAULT_TABLE_CAP) -> list[ChoiceFunction]:
    return [g for g in enumerate_conservative(f.poset, cap, within=f) if g != f]


def find_split(f: ChoiceFunction, cap: int = DEFAULT_TABLE_CAP) -> Optional[tuple[ChoiceFunction, ChoiceFunction]]:
    """Two conservative CFs strictly below ``f`` whose union is ``f``, or None.

    Takes the first maximal strict sub-CF g, then the first maximal one not
    contained in g; maximality of g forces their union up to f.
    """
    _require_conservative(f)
    subs = strict_conservative_below(f, cap)
    maximal = [g for g in subs if not any(g < h for h in subs)]
    if not maximal:
        return None
    g = maximal[0]
    for h in maximal[1:]:
        if not h <= g:
            assert union_cf([g, h]) == f
            return g, h
    return None


def is_join_irreducible(f: ChoiceFunction, cap: int = DEFAULT_TABLE_CAP) -> bool:
    """True iff f is nonempty and not the union of the conservative CFs strictly below it."""
    _require_conservative(f)
    if f.is_empty():
        return False
    subs = strict_conservative_below(f, cap)
    below = union_cf(subs) if subs else empty_cf(f.poset)
    return below != f
