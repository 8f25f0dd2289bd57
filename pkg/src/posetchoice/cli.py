"""Command-line front end.

Exit codes are uniform: 0 pass/success, 1 semantic failure (a witness is
printed), 2 input or feasibility error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

from .cf import (
    DEFAULT_TABLE_CAP,
    LAWS,
    ChoiceFunction,
    CheckReport,
    cf_from_json,
    check_law,
    enumerate_conservative,
    enumerate_path_independent,
    recheck,
)
from .decompose import (
    decompose,
    find_split,
    is_join_irreducible,
    build_gallery,
    min_index_selector,
    minimize,
    hitting_selector,
    verify_decomposition,
)
from .elementary import Sequence, eval_elementary
from .errors import FormatError, NotConservative, PosetChoiceError
from .poset import Ideal, Poset, load_poset, poset_from_json

CAP_ENV = "POSET_CHOICE_CAP"


@dataclass
class RunReport:
    command: str
    verdict: str
    payload: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    def to_json(self) -> str:
        data = asdict(self)
        if self.elapsed_ms is None:
            del data["elapsed_ms"]
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls(**json.loads(text))


class InputError(Exception):
    pass


def _names(s) -> str:
    return ",".join(s) if len(s) else "∅"


def _table_rows(f: ChoiceFunction) -> list[dict]:
    return [{"from": list(x), "to": list(fx)} for x, fx in f.items()]


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None


def _load_cf(p: Poset, cf_path: str) -> ChoiceFunction:
    data = _load_json(cf_path)
    ref = data.get("poset") if isinstance(data, dict) else None
    if isinstance(ref, dict):
        other = poset_from_json(ref)
    elif isinstance(ref, str):
        other = load_poset(Path(cf_path).parent / ref)
    else:
        other = None
    if other is not None and other != p:
        raise FormatError(f"{cf_path}: embedded poset differs from the poset argument")
    return cf_from_json(p, data)


def _parse_ideal(p: Poset, literal: str, strict: bool) -> Ideal:
    names = [s.strip() for s in literal.split(",") if s.strip()]
    bits = p.mask(names)
    closed = p.down_of(bits)
    if closed != bits:
        if strict:
            raise InputError(f"{literal!r} is not downward closed")
        print(f"warning: completed {literal!r} downward to {_names(p.names(closed))}", file=sys.stderr)
    return Ideal(p, closed)


def _cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get(CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{CAP_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_TABLE_CAP


def _witness_lines(report: CheckReport) -> list[str]:
    if report.witness is None:
        return []
    out = []
    for k, v in report.to_json()["witness"].items():
        out.append(f"  {k} = {_names(v) if isinstance(v, list) else v}")
    return out


# -- commands -----------------------------------------------------------------

def cmd_check(args) -> tuple[int, RunReport, list[str]]:
    p = load_poset(args.poset)
    f = _load_cf(p, args.cf)
    rep = check_law(f, args.law)
    payload = rep.to_json()
    lines = [f"{args.law}: {'pass' if rep else 'fail'}"]
    if not rep:
        lines[0] += f" ({rep.law})" if rep.law != args.law else ""
        payload["rechecked"] = recheck(f, rep)
        if not payload["rechecked"]:
            raise RuntimeError("witness did not survive the independent re-check")
        lines += _witness_lines(rep)
    return (0 if rep else 1), RunReport("check", "pass" if rep else "fail", payload), lines


def cmd_eval(args) -> tuple[int, RunReport, list[str]]:
    p = load_poset(args.poset)
    seq = Sequence.parse(p, args.sequence)
    x = _parse_ideal(p, args.ideal, args.strict)
    value = eval_elementary(p, seq, x)
    payload = {"sequence": list(seq.items), "ideal": list(x), "value": list(value)}
    return 0, RunReport("eval", "ok", payload), [_names(value)]


def _not_conservative(command: str, exc: NotConservative) -> tuple[int, RunReport, list[str]]:
    rep = exc.report
    payload = {"error": "NotConservative"}
    lines = [f"NotConservative: {exc}"]
    if rep is not None:
        payload.update(rep.to_json())
        lines += _witness_lines(rep)
    return 1, RunReport(command, "fail", payload), lines


def cmd_decompose(args) -> tuple[int, RunReport, list[str]]:
    p = load_poset(args.poset)
    f = _load_cf(p, args.cf)
    try:
        d = decompose(f)
    except NotConservative as exc:
        return _not_conservative("decompose", exc)
    if args.minimize:
        d = minimize(f, d)
    rep = verify_decomposition(f, d)
    payload = d.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if not rep:
        payload["verification"] = rep.to_json()
        return 1, RunReport("decompose", "fail", payload), ["decomposition does not reproduce f"]
    lines = [s.literal() for s in d.sequences] or ["(no sequences: empty choice function)"]
    return 0, RunReport("decompose", "pass", payload), lines


def cmd_enumerate(args) -> tuple[int, RunReport, list[str]]:
    p = load_poset(args.poset)
    cap = _cap(args)
    fs = enumerate_conservative(p, cap) if args.kind == "conservative" else enumerate_path_independent(p, cap)
    payload: dict[str, Any] = {"kind": args.kind, "count": len(fs)}
    lines = [str(len(fs))]
    if args.show:
        payload["tables"] = [_table_rows(f) for f in fs]
        lines += [repr(f) for f in fs]
    return 0, RunReport("enumerate", "ok", payload), lines


def cmd_gallery(args) -> tuple[int, RunReport, list[str]]:
    p = load_poset(args.poset)
    f = _load_cf(p, args.cf)
    if (args.target is None) != (args.element is None):
        raise InputError("--target and --element go together")
    if args.target is None:
        u = build_gallery(f, min_index_selector(f))
        return 0, RunReport("gallery", "ok", {"gallery": list(u.items)}), [u.literal() or "∅"]
    x = _parse_ideal(p, args.target, args.strict)
    if args.element not in f(x):
        raise InputError(f"{args.element!r} is not in f({_names(x)})")
    u = build_gallery(f, hitting_selector(f, x, args.element))
    hit = args.element in eval_elementary(p, u, x)
    payload = {"gallery": list(u.items), "target": list(x), "element": args.element, "chosen": hit}
    lines = [u.literal() or "∅", f"{args.element} in f_U({_names(x)}): {str(hit).lower()}"]
    return (0 if hit else 1), RunReport("gallery", "pass" if hit else "fail", payload), lines


def cmd_irreducible(args) -> tuple[int, RunReport, list[str]]:
    p = load_poset(args.poset)
    f = _load_cf(p, args.cf)
    cap = _cap(args)
    if is_join_irreducible(f, cap):
        return 0, RunReport("irreducible", "pass", {"irreducible": True}), ["join-irreducible"]
    if f.is_empty():
        msg = "empty choice function is the unit of union, not join-irreducible"
        return 1, RunReport("irreducible", "fail", {"irreducible": False, "split": None}), [msg]
    g, h = find_split(f, cap)  # type: ignore[misc]
    parts = []
    lines = ["reducible: f = g | h"]
    for label, part in (("g", g), ("h", h)):
        seqs = [s.literal() for s in minimize(part, decompose(part)).sequences]
        parts.append({"table": _table_rows(part), "sequences": seqs})
        lines.append(f"{label} = {part!r}")
        lines.append(f"  sequences: {'; '.join(seqs)}")
    return 1, RunReport("irreducible", "fail", {"irreducible": False, "split": parts}), lines


# -- driver -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON run report")
    common.add_argument("--cap", type=int, default=None,
                        help=f"search cap (default {DEFAULT_TABLE_CAP}, or ${CAP_ENV})")
    common.add_argument("--strict", action="store_true", help="reject ideal literals that are not downward closed")
    common.add_argument("--timing", action="store_true", help="report elapsed time")

    parser = argparse.ArgumentParser(prog="posetchoice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check a law on a choice function")
    c.add_argument("poset")
    c.add_argument("cf")
    c.add_argument("--law", choices=LAWS, default="conservative")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("eval", parents=[common], help="evaluate an elementary choice function")
    c.add_argument("poset")
    c.add_argument("sequence", help="comma-separated element names, e.g. a,b")
    c.add_argument("ideal", help="comma-separated element names; empty string for the empty ideal")
    c.set_defaults(func=cmd_eval)

    c = sub.add_parser("decompose", parents=[common], help="decompose into elementary choice functions")
    c.add_argument("poset")
    c.add_argument("cf")
    c.add_argument("--minimize", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_decompose)

    c = sub.add_parser("enumerate", parents=[common], help="count choice functions by brute force")
    c.add_argument("poset")
    c.add_argument("--kind", choices=("conservative", "path-independent"), default="conservative")
    c.add_argument("--show", action="store_true", help="also print every table")
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("gallery", parents=[common], help="build the through gallery of a selector")
    c.add_argument("poset")
    c.add_argument("cf")
    c.add_argument("--target", help="ideal X for the special selector")
    c.add_argument("--element", help="element x of f(X) for the special selector")
    c.set_defaults(func=cmd_gallery)

    c = sub.add_parser("irreducible", parents=[common], help="test join-irreducibility")
    c.add_argument("poset")
    c.add_argument("cf")
    c.set_defaults(func=cmd_irreducible)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code, report, lines = args.func(args)
    except (PosetChoiceError, InputError, OSError) as exc:
        code = 2
        report = RunReport(args.command, "error", {"error": type(exc).__name__, "message": str(exc)})
        lines = [f"error: {type(exc).__name__}: {exc}"]
    if args.timing:
        report.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
        lines.append(f"elapsed: {report.elapsed_ms} ms")
    if args.json:
        print(report.to_json())
    else:
        print("\n".join(lines), file=sys.stderr if code == 2 else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
