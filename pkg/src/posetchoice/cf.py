"""Choice functions on the ideal lattice of a finite poset.

A choice function is stored extensionally: one chosen sub-ideal per ideal,
aligned with :meth:`Poset.ideal_masks`. All law checkers scan ideals in that
canonical order and report the first counterexample they meet.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import CapExceeded, DuplicateKey, NotIdeal, NotSelection, NotTotal, PosetMismatch
from .poset import DEFAULT_IDEAL_CAP, ElementSet, Ideal, Poset, SetLike, as_mask, bit_indices

DEFAULT_TABLE_CAP = 10**6

LAWS = ("heredity", "outcast", "conservative", "path-independence", "idempotent", "single")


class ChoiceFunction:
    """Total table X -> f(X) over every ideal X of ``poset``.

    Build one with :func:`validate_cf` or a constructor such as
    :func:`constant_cf`; the initializer trusts its input.
    """

    __slots__ = ("poset", "values", "_hash")

    def __init__(self, poset: Poset, values: Iterable[int]):
        self.poset = poset
        self.values: tuple[int, ...] = tuple(values)
        self._hash: Optional[int] = None

    def value(self, ideal_bits: int) -> int:
        return self.values[self.poset.ideal_position()[ideal_bits]]

    def __call__(self, x: SetLike) -> Ideal:
        bits = as_mask(self.poset, x)
        pos = self.poset.ideal_position().get(bits)
        if pos is None:
            raise NotIdeal(f"{self.poset.names(bits)} is not an ideal")
        return Ideal(self.poset, self.values[pos])

    def items(self) -> Iterator[tuple[Ideal, Ideal]]:
        for m, v in zip(self.poset.ideal_masks(), self.values):
            yield Ideal(self.poset, m), Ideal(self.poset, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChoiceFunction):
            return NotImplemented
        return self.values == other.values and self.poset == other.poset

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.poset, self.values))
        return self._hash

    def __le__(self, other: ChoiceFunction) -> bool:
        """Pointwise inclusion f(X) <= g(X) for every X."""
        _same_poset(self, other)
        return all(a & ~b == 0 for a, b in zip(self.values, other.values))

    def __lt__(self, other: ChoiceFunction) -> bool:
        return self <= other and self.values != other.values

    def __or__(self, other: ChoiceFunction) -> ChoiceFunction:
        return union_cf([self, other])

    def is_empty(self) -> bool:
        return not any(self.values)

    def __repr__(self) -> str:
        rows = ", ".join(f"{_fmt(self.poset, m)}->{_fmt(self.poset, v)}"
                         for m, v in zip(self.poset.ideal_masks(), self.values))
        return f"ChoiceFunction({rows})"

    def to_json(self, poset_ref: Any = None) -> dict:
        p = self.poset
        rows = [{"from": list(p.names(m)), "to": list(p.names(v))}
                for m, v in zip(p.ideal_masks(), self.values)]
        return {"poset": p.to_json() if poset_ref is None else poset_ref, "map": rows}


def _fmt(p: Poset, bits: int) -> str:
    return "{" + ",".join(p.names(bits)) + "}"


def _same_poset(*fs: ChoiceFunction) -> Poset:
    p = fs[0].poset
    for f in fs[1:]:
        if f.poset is not p and f.poset != p:
            raise PosetMismatch("choice functions live on different posets")
    return p


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a law check. On failure ``witness`` names the violation.

    Witness keys by law: heredity/single ``A``, ``B``, ``element``;
    outcast ``A``, ``B``; path-independence ``X``, ``Y``; idempotent ``X``.
    Set-valued entries are ElementSets, so the witness can be re-checked.
    """

    law: str
    passed: bool
    witness: Optional[dict[str, Any]] = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            w = {k: list(v) if isinstance(v, ElementSet) else _jsonable(v)
                 for k, v in self.witness.items()}
        return {"law": self.law, "verdict": "pass" if self.passed else "fail", "witness": w}


def _jsonable(v: Any) -> Any:
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, ElementSet):
        return list(v)
    return v


def _pass(law: str) -> CheckReport:
    return CheckReport(law, True)


def _fail(law: str, p: Poset, **witness: Any) -> CheckReport:
    w = {k: Ideal(p, v) if isinstance(v, int) and not isinstance(v, bool) else v
         for k, v in witness.items()}
    return CheckReport(law, False, w)


def validate_cf(p: Poset, raw_table: Iterable[tuple[SetLike, SetLike]],
                cap: int = DEFAULT_IDEAL_CAP) -> ChoiceFunction:
    """Turn (X, f(X)) rows into a ChoiceFunction.

    The row for the empty ideal may be omitted. Raises DuplicateKey, NotIdeal
    (for a key or a value that is not downward closed), NotSelection or
    NotTotal.
    """
    ideals = p.ideal_masks(cap)
    pos = p.ideal_position()
    values: list[Optional[int]] = [None] * len(ideals)
    for x, fx in raw_table:
        xb, vb = as_mask(p, x), as_mask(p, fx)
        k = pos.get(xb)
        if k is None:
            raise NotIdeal(f"key {_fmt(p, xb)} is not an ideal")
        if values[k] is not None:
            raise DuplicateKey(f"ideal {_fmt(p, xb)} listed twice")
        if vb & ~xb:
            raise NotSelection(f"f({_fmt(p, xb)}) = {_fmt(p, vb)} is not a subset")
        if not p.is_down_closed(vb):
            raise NotIdeal(f"f({_fmt(p, xb)}) = {_fmt(p, vb)} is not downward closed")
        values[k] = vb
    if values[0] is None:
        values[0] = 0
    missing = [ideals[k] for k, v in enumerate(values) if v is None]
    if missing:
        raise NotTotal(f"no value for ideal {_fmt(p, missing[0])}")
    return ChoiceFunction(p, values)  # type: ignore[arg-type]


def cf_from_json(p: Poset, data: dict) -> ChoiceFunction:
    from .errors import FormatError

    rows = data.get("map") if isinstance(data, dict) else None
    if not isinstance(rows, list):
        raise FormatError("choice function object needs a 'map' list")
    table = []
    for row in rows:
        if not isinstance(row, dict) or not isinstance(row.get("from"), list) \
                or not isinstance(row.get("to"), list):
            raise FormatError("each map entry needs 'from' and 'to' name lists")
        table.append((row["from"], row["to"]))
    return validate_cf(p, table)


# -- law checkers ---------------------------------------------------------

def check_heredity(f: ChoiceFunction) -> CheckReport:
    """A <= B implies f(B) & A <= f(A), for all ideals."""
    p = f.poset
    pairs = list(zip(p.ideal_masks(), f.values))
    for a, fa in pairs:
        for b, fb in pairs:
            if a & ~b:
                continue
            bad = fb & a & ~fa
            if bad:
                low = bad & -bad
                return _fail("heredity", p, A=a, B=b, element=p.names(low)[0])
    return _pass("heredity")


def check_outcast(f: ChoiceFunction) -> CheckReport:
    """f(B) <= A <= B implies f(A) == f(B)."""
    p = f.poset
    pairs = list(zip(p.ideal_masks(), f.values))
    for b, fb in pairs:
        for a, fa in pairs:
            if a & ~b or fb & ~a:
                continue
            if fa != fb:
                return _fail("outcast", p, A=a, B=b)
    return _pass("outcast")


def check_single_condition(f: ChoiceFunction) -> CheckReport:
    """f(A) <= B implies f(B) & A <= f(A), over all ordered pairs of ideals."""
    p = f.poset
    pairs = list(zip(p.ideal_masks(), f.values))
    for a, fa in pairs:
        for b, fb in pairs:
            if fa & ~b:
                continue
            bad = fb & a & ~fa
            if bad:
                low = bad & -bad
                return _fail("single", p, A=a, B=b, element=p.names(low)[0])
    return _pass("single")


def check_path_independence(f: ChoiceFunction) -> CheckReport:
    """f(X | Y) == f(f(X) | f(Y)) for all ideals X, Y.

    Pairs involving the empty ideal are skipped: they reduce to idempotence,
    which the diagonal pairs X == Y already cover.
    """
    p = f.poset
    ideals = p.ideal_masks()
    pos = p.ideal_position()
    vals = f.values
    n = len(ideals)
    for i in range(1, n):
        for j in range(i, n):
            lhs = vals[pos[ideals[i] | ideals[j]]]
            rhs = vals[pos[vals[i] | vals[j]]]
            if lhs != rhs:
                return _fail("path-independence", p, X=ideals[i], Y=ideals[j])
    return _pass("path-independence")


def check_idempotent(f: ChoiceFunction) -> CheckReport:
    p = f.poset
    for x, fx in zip(p.ideal_masks(), f.values):
        if f.value(fx) != fx:
            return _fail("idempotent", p, X=x)
    return _pass("idempotent")


def check_conservative(f: ChoiceFunction) -> CheckReport:
    """Heredity, then outcast; the first failing report is returned."""
    rep = check_heredity(f)
    if not rep:
        return rep
    rep = check_outcast(f)
    if not rep:
        return rep
    return _pass("conservative")


def is_conservative(f: ChoiceFunction) -> bool:
    return check_heredity(f).passed and check_outcast(f).passed


CHECKERS = {
    "heredity": check_heredity,
    "outcast": check_outcast,
    "conservative": check_conservative,
    "path-independence": check_path_independence,
    "idempotent": check_idempotent,
    "single": check_single_condition,
}


def check_law(f: ChoiceFunction, law: str) -> CheckReport:
    try:
        checker = CHECKERS[law]
    except KeyError:
        raise ValueError(f"unknown law {law!r}; expected one of {', '.join(LAWS)}") from None
    return checker(f)


def recheck(f: ChoiceFunction, report: CheckReport) -> bool:
    """Confirm directly from the table that a failing report's witness violates its law."""
    if report.passed or report.witness is None:
        return False
    w = report.witness

    def val(s: ElementSet) -> ElementSet:
        return f(s)

    law = report.law
    if law == "heredity":
        a, b, e = w["A"], w["B"], w["element"]
        return a <= b and e in a and e in val(b) and e not in val(a)
    if law == "single":
        a, b, e = w["A"], w["B"], w["element"]
        return val(a) <= b and e in a and e in val(b) and e not in val(a)
    if law == "outcast":
        a, b = w["A"], w["B"]
        return val(b) <= a and a <= b and val(a) != val(b)
    if law == "path-independence":
        x, y = w["X"], w["Y"]
        return val(x | y) != val(val(x) | val(y))
    if law == "idempotent":
        x = w["X"]
        return val(val(x)) != val(x)
    return False


# -- constructors ---------------------------------------------------------

def constant_cf(p: Poset, ideal: SetLike) -> ChoiceFunction:
    """f(X) = I & X."""
    bits = as_mask(p, ideal)
    if not p.is_down_closed(bits):
        raise NotIdeal(f"{_fmt(p, bits)} is not downward closed")
    return ChoiceFunction(p, [m & bits for m in p.ideal_masks()])


def identity_cf(p: Poset) -> ChoiceFunction:
    return ChoiceFunction(p, p.ideal_masks())


def empty_cf(p: Poset) -> ChoiceFunction:
    return ChoiceFunction(p, [0] * len(p.ideal_masks()))


def union_cf(fs: Iterable[ChoiceFunction]) -> ChoiceFunction:
    fs = list(fs)
    if not fs:
        raise ValueError("union_cf needs at least one choice function")
    p = _same_poset(*fs)
    values = list(fs[0].values)
    for g in fs[1:]:
        for k, v in enumerate(g.values):
            values[k] |= v
    return ChoiceFunction(p, values)


# -- exhaustive enumeration -------------------------------------------------

def _sub_ideal_positions(ideals: tuple[int, ...]) -> list[list[int]]:
    return [[j for j, s in enumerate(ideals) if s & ~x == 0] for x in ideals]


def _search(p: Poset, cap: int, law: str, within: Optional[ChoiceFunction]) -> list[ChoiceFunction]:
    """Backtracking over tables, assigning ideals in canonical (size-ascending) order.

    Every constraint of the chosen law is checked as soon as all the ideals it
    mentions have values, so each surviving leaf is a complete, valid table.
    ``cap`` bounds the number of partial tables visited.
    """
    ideals = p.ideal_masks(min(cap, DEFAULT_IDEAL_CAP))
    pos = p.ideal_position()
    n = len(ideals)
    subs = _sub_ideal_positions(ideals)
    candidates = []
    for k, x in enumerate(ideals):
        bound = x if within is None else within.values[k]
        candidates.append([ideals[j] for j in subs[k] if ideals[j] & ~bound == 0])
    proper_subs = [[j for j in subs[k] if j != k] for k in range(n)]
    union_pairs = [[(i, j) for i in range(k + 1) for j in range(i, k + 1)
                    if ideals[i] | ideals[j] == ideals[k]] for k in range(n)]

    values = [0] * n
    out: list[ChoiceFunction] = []
    visited = 0

    def consistent(k: int, s: int) -> bool:
        if law == "conservative":
            for j in proper_subs[k]:
                a, fa = ideals[j], values[j]
                if s & a & ~fa:
                    return False
                if s & ~a == 0 and fa != s:
                    return False
            return True
        values[k] = s
        for i, j in union_pairs[k]:
            w = values[i] | values[j]
            if w != ideals[k] and values[pos[w]] != s:
                return False
        return True

    def extend(k: int) -> None:
        nonlocal visited
        if k == n:
            out.append(ChoiceFunction(p, values))
            return
        for s in candidates[k]:
            if consistent(k, s):
                visited += 1
                if visited > cap:
                    raise CapExceeded(f"search visited more than {cap} partial tables")
                values[k] = s
                extend(k + 1)

    extend(0)
    return out


def enumerate_conservative(p: Poset, cap: int = DEFAULT_TABLE_CAP,
                           within: Optional[ChoiceFunction] = None) -> list[ChoiceFunction]:
    """Every conservative CF on ``p`` (pointwise below ``within`` if given)."""
    if within is not None and within.poset != p:
        raise PosetMismatch("bounding choice function lives on a different poset")
    return _search(p, cap, "conservative", within)


def enumerate_path_independent(p: Poset, cap: int = DEFAULT_TABLE_CAP) -> list[ChoiceFunction]:
    """Every CF on ``p`` satisfying the Plott equality."""
    return _search(p, cap, "path-independence", None)
