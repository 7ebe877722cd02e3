"""Command-line interface.

Exit codes: 0 success, 1 parse error, 2 invalid space (or an operation that
does not apply to the family), 3 no path, 4 inapplicable link, 5 a selfcheck
criterion failed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional

from .binforms import FormError, FormSyntaxError, parse_form
from .intersection import intersection_data
from .links import (LinkError, enumerate_links, find_path, make_link, parse_link_id,
                    to_dot, neighbourhood)
from .spaces import (ARITY, InvalidSpace, MoriFibreSpace, aut_info, check, is_maximal,
                     normalize, orbit_structure, validate)
from .toric import (ToricError, box_points, fan_of, is_smooth, is_terminal,
                    singular_cones)

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_NO_PATH, EXIT_INAPPLICABLE, EXIT_SELFCHECK = range(6)


class SpaceSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_NAMED = ("P1112", "P1123", "P3", "Q3")
_HEAD = re.compile(r"\s*([A-Z][A-Z0-9]*)\s*")
_INT = re.compile(r"\s*([+-]?\d+)\s*")


def parse_syntax(text: str) -> MoriFibreSpace:
    """Parse without validating."""
    m = _HEAD.match(text)
    if not m:
        raise SpaceSyntaxError("expected a family name", 0)
    name, pos = m.group(1), m.end()
    if name in _NAMED:
        if pos != len(text):
            raise SpaceSyntaxError("unexpected trailing text", pos)
        return MoriFibreSpace(name)
    if name not in ARITY:
        raise SpaceSyntaxError(f"unknown family {name!r}", m.start(1))
    if pos >= len(text) or text[pos] != "[":
        raise SpaceSyntaxError("expected '['", pos)
    close = text.rfind("]")
    if close < pos or text[close + 1:].strip():
        raise SpaceSyntaxError("expected a closing ']' at the end", len(text))
    body = text[pos + 1:close]
    if name == "Q":
        try:
            g = parse_form(body)
        except FormSyntaxError as e:
            raise SpaceSyntaxError(e.message, pos + 1 + e.position) from None
        except FormError as e:
            raise SpaceSyntaxError(str(e), pos + 1) from None
        return MoriFibreSpace("Q", (), g)
    params, offset = [], pos + 1
    for piece in body.split(","):
        im = _INT.fullmatch(piece)
        if not im:
            raise SpaceSyntaxError(f"expected an integer, got {piece.strip()!r}", offset)
        params.append(int(im.group(1)))
        offset += len(piece) + 1
    if len(params) != ARITY[name]:
        raise SpaceSyntaxError(f"{name} takes {ARITY[name]} integers, got {len(params)}", pos)
    return MoriFibreSpace(name, tuple(params))


def parse_space(text: str) -> MoriFibreSpace:
    """Parse and validate: SpaceSyntaxError on bad text, InvalidSpace on bad values."""
    return check(parse_syntax(text))


# ---------------------------------------------------------------- commands

def _emit(obj, as_json: bool, lines):
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _info(space, args):
    s = normalize(space)
    res = validate(space)
    verdict = is_maximal(s)
    aut = aut_info(s)
    orbits = orbit_structure(s)
    try:
        data = intersection_data(s)
    except InvalidSpace:
        data = None
    w = verdict.witness
    obj = {
        "input": space.to_text(),
        "normal_form": s.to_text(),
        "valid": res.ok,
        "mori_fibration": res.mori_fibration,
        "status": verdict.status,
        "label": verdict.label,
        "witness": None if w is None else {
            "target": w.target.to_text() if w.target else None,
            "description": w.description, "off_list": w.off_list},
        "aut": {"dimension": aut.dimension, "description": aut.description},
        "orbits": orbits.as_dict() if orbits else None,
        "intersection": data.as_dict() if data else None,
    }
    lines = [f"space: {space.to_text()}", f"normal form: {s.to_text()}"]
    if not res.mori_fibration:
        lines.append("not a Mori fibration: g is a square")
    if w is None:
        lines.append(f"{verdict.status}: {verdict.label}")
    else:
        lines.append(f"{verdict.status}: {w.description}")
        target = w.target.to_text() if w.target else "none recorded"
        lines.append(f"witness target: {target}" + (" (off-list)" if w.off_list else ""))
    dim = "unavailable" if aut.dimension is None else str(aut.dimension)
    lines.append(f"aut: dim {dim} ({aut.description})")
    if orbits:
        count = "infinitely many" if orbits.count is None else str(orbits.count)
        lines.append(f"orbits: {count}: " + "; ".join(orbits.orbits))
    if data:
        degs = ", ".join(f"{c}: {k}" for c, k in data.as_dict()["K_degrees"].items())
        lines.append(f"K-degrees: {degs}")
        lines.append("cone of curves: " + ", ".join(data.cone))
    _emit(obj, args.json, lines)
    return EXIT_OK


def _links(space, args):
    e = enumerate_links(space)
    obj = {"space": normalize(space).to_text(),
           "links": [l.as_dict() for l in e.links],
           "infinite": e.infinite, "notes": list(e.notes),
           "witness": None}
    lines = [l.describe() for l in e.links]
    if e.infinite:
        lines.insert(0, e.infinite)
    if e.witness is not None:
        w = e.witness
        obj["witness"] = {"target": w.target.to_text() if w.target else None,
                          "description": w.description}
        lines.append(f"NotMaximal: {w.description}")
    lines += [f"note: {n}" for n in e.notes]
    if not lines:
        lines.append("no links")
    _emit(obj, args.json, lines)
    return EXIT_OK


def _apply(space, args):
    try:
        lid, inv = parse_link_id(args.link)
    except LinkError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    payload = args.payload
    if args.h is not None:
        try:
            payload = parse_form(args.h)
        except FormError as e:
            print(f"error: --h: {e}", file=sys.stderr)
            return EXIT_PARSE
    try:
        link = make_link(space, lid, payload, inv)
    except LinkError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    _emit(link.as_dict(), args.json, [link.target.to_text()])
    return EXIT_OK


def _path(args):
    src, dst = parse_space(args.src), parse_space(args.dst)
    path = find_path(src, dst, args.max_depth, args.max_qdeg)
    if path is None:
        print(f"no path from {normalize(src)} to {normalize(dst)} within depth "
              f"{args.max_depth}", file=sys.stderr)
        return EXIT_NO_PATH
    lines = [f"{l.label}: {l.source.to_text()} -> {l.target.to_text()}" for l in path]
    lines.append(f"length {len(path)}")
    _emit({"length": len(path), "links": [l.as_dict() for l in path]}, args.json, lines)
    return EXIT_OK


def _toric(space, args):
    try:
        fan = fan_of(space)
    except ToricError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    if args.action == "export":
        if args.json:
            print(json.dumps(fan.as_dict(), indent=2, sort_keys=True))
        else:
            sys.stdout.write(fan.to_text())
        return EXIT_OK
    sing = singular_cones(fan)
    boxes = {",".join(fan.labels[i] for i in c): [[str(t) for t in tt] for _, tt in box_points(fan, c)]
             for c in sing}
    obj = {"space": normalize(space).to_text(), "smooth": is_smooth(fan),
           "terminal": is_terminal(fan), "complete": fan.is_complete(),
           "singular_cones": [[fan.labels[i] for i in c] for c in sing],
           "box_points": boxes}
    lines = [f"smooth: {obj['smooth']}", f"terminal: {obj['terminal']}",
             f"complete: {obj['complete']}"]
    for c in sing:
        labels = ",".join(fan.labels[i] for i in c)
        pts = "; ".join("(" + ",".join(str(t) for t in tt) + ")" for _, tt in box_points(fan, c))
        lines.append(f"singular cone {{{labels}}} (index {fan.multiplicity(c)}): box points {pts}")
    _emit(obj, args.json, lines)
    return EXIT_OK


def _graph(space, args):
    if args.dot:
        sys.stdout.write(to_dot(space, args.radius))
        return EXIT_OK
    nodes, edges = neighbourhood(space, args.radius)
    obj = {"nodes": [n.to_text() for n in nodes],
           "edges": [[e.source.to_text(), e.label, e.target.to_text()] for e in edges]}
    lines = [f"{e.source.to_text()} --{e.label}--> {e.target.to_text()}" for e in edges]
    _emit(obj, args.json, lines or ["no links"])
    return EXIT_OK


def _selfcheck(args):
    from .selfcheck import CHECKS
    ok = True
    for check_fn in CHECKS:
        result = check_fn(args.grid)
        print(result.line(), flush=True)
        ok &= result.ok
    return EXIT_OK if ok else EXIT_SELFCHECK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are parse errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sarkisov",
                                description="Equivariant Sarkisov links of rank-3 "
                                            "Mori fibre spaces with connected automorphism groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = with_json(sub.add_parser("info", help="validity, maximality, automorphisms, tables"))
    sp.add_argument("space")
    sp = with_json(sub.add_parser("links", help="equivariant links from a space"))
    sp.add_argument("space")
    sp = with_json(sub.add_parser("apply", help="apply a link, e.g. S11 or S10^-1"))
    sp.add_argument("space")
    sp.add_argument("link")
    sp.add_argument("--h", help="linear form for S16")
    sp.add_argument("--payload", type=int, help="choice for S1 and S7 (1 or 2)")
    sp = with_json(sub.add_parser("path", help="shortest chain of links"))
    sp.add_argument("src")
    sp.add_argument("dst")
    sp.add_argument("--max-depth", type=int, default=6)
    sp.add_argument("--max-qdeg", type=int, default=None)
    sp = with_json(sub.add_parser("toric", help="fan checks and export"))
    sp.add_argument("space")
    sp.add_argument("action", choices=("check", "export"))
    sp = with_json(sub.add_parser("graph", help="link neighbourhood"))
    sp.add_argument("space")
    sp.add_argument("--radius", type=int, default=1)
    sp.add_argument("--dot", action="store_true")
    sp = sub.add_parser("selfcheck", help="run the acceptance sweeps")
    sp.add_argument("--grid", choices=("small", "full"), default="small")
    return p


def run_command(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "selfcheck":
            return _selfcheck(args)
        if args.command == "path":
            return _path(args)
        space = parse_space(args.space)
        handler = {"info": _info, "links": _links, "apply": _apply,
                   "toric": _toric, "graph": _graph}[args.command]
        return handler(space, args)
    except SpaceSyntaxError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidSpace as e:
        print(f"invalid space: {e}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
