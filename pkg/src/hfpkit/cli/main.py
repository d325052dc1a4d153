"""Entry point: ``hfpkit [flags] COMMAND [options]``.

Exit codes: 0 ok, 1 selftest failure, 2 invalid input, 3 cap exceeded, 64 usage.
"""
from __future__ import annotations

import argparse
import sys

from ..caps import CapExceeded, InvalidInput, caps_override
from .commands import REGISTRY
from .session import Session, canonical, load_session

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--session", default=d, help="session JSON file")
    p.add_argument("--out", default=d, help="write the JSON report here instead of stdout")
    p.add_argument("--cap-simplices", type=int, default=d, help="simplex budget (default 100000)")
    p.add_argument("--cap-order", type=int, default=d, help="group order cap (default 100)")
    p.add_argument("--cap-enum", type=int, default=d,
                   help="enumeration budget in candidate checks (default 10000000)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0,
                   help="seed for randomized suites (default 0)")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hfpkit", description="Finite equivariant homotopy computations.")
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name in sorted(REGISTRY):
        cmd = REGISTRY[name]
        sp = sub.add_parser(name, help=cmd.help)
        _common(sp, suppress=True)
        for flag, kw in cmd.options:
            sp.add_argument(flag, **kw)
    return p


def _args_record(ns, cmd) -> dict:
    out = {}
    for flag, _ in cmd.options:
        key = flag.lstrip("-").replace("-", "_")
        out[key] = getattr(ns, key)
    return out


def run(command: str, args, session: Session) -> tuple:
    """(report dict, human-readable line) for one registered command."""
    if command not in REGISTRY:
        raise UsageError(f"unknown command {command!r}")
    cmd = REGISTRY[command]
    result, text = cmd.run(session, args)
    report = {"command": command, "anchor": cmd.anchor, "args": _args_record(args, cmd),
              "seed": args.seed, "result": result}
    return report, text


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if ns.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    out = getattr(ns, "out", None)
    try:
        with caps_override(simplices=ns.cap_simplices, order=ns.cap_order, enum=ns.cap_enum):
            session = load_session(ns.session) if ns.session else Session()
            report, text = run(ns.command, ns, session)
    except CapExceeded as exc:
        _emit(canonical({"command": ns.command, "error": {"kind": "cap", "cap": exc.cap,
                                                          "limit": exc.limit,
                                                          "message": str(exc)}}), out)
        print(f"cap exceeded: {exc.cap} (limit {exc.limit})", file=sys.stderr)
        return EXIT_CAP
    except InvalidInput as exc:
        _emit(canonical({"command": ns.command, "error": {"kind": "invalid",
                                                          "message": str(exc)}}), out)
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(canonical(report), out)
    print(text, file=sys.stderr)
    if ns.command == "selftest" and not report["result"]["ok"]:
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
