"""Command-line entry point: ``rookposet <command> <instance> [options]``.

Instances are ``rook:n``, ``sym:n`` or ``rook:n:k``; elements are
comma-separated one-line sequences such as ``0,1,0``.

Exit status: 0 ok, 1 verification failure, 2 usage error, 3 internal
invariant breach.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import serialize as pio
from .instances import DEFAULT_MAX_N, InstanceSpec, build_instance
from .poset import (
    ChainCutoffExceeded,
    DEFAULT_CHAIN_CUTOFF,
    GradedPoset,
    Interval,
    PosetError,
    all_maximal_chains,
    count_increasing_chains,
    count_maximal_chains,
    count_strictly_decreasing_chains,
    interval,
    leq,
    lex_first_chain,
    mobius,
    mobius_table,
)
from .rook import RookElement
from .verify import CampaignConfig, Scope, parse_checks, run_campaign

log = logging.getLogger("rookposet")

UNSAFE_MAX_N = 7


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rookposet", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats: tuple[str, ...], default: str) -> None:
        p.add_argument("instance", help="rook:n, sym:n or rook:n:k")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("-o", "--output", type=Path, help="write here instead of stdout")
        p.add_argument("--unsafe-large-n", action="store_true",
                       help=f"allow n up to {UNSAFE_MAX_N} (memory heavy)")

    def endpoints(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument("--from", dest="lo", required=required, help="bottom, e.g. 0,1,0")
        p.add_argument("--to", dest="hi", required=required, help="top, e.g. 3,1,2")

    common(sub.add_parser("enumerate", help="list elements with their ranks"),
           ("text", "json", "csv"), "text")
    common(sub.add_parser("hasse", help="export the labeled Hasse diagram"),
           ("dot", "json", "csv", "text"), "dot")

    p = sub.add_parser("interval", help="members of [x, y]")
    common(p, ("text", "json"), "text")
    endpoints(p)
    p.add_argument("--lex-first", action="store_true", help="also print the lex-first chain")

    p = sub.add_parser("chain", help="maximal-chain queries on [x, y]")
    common(p, ("text", "json"), "text")
    endpoints(p)
    p.add_argument("--all", action="store_true", help="list every maximal chain")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CHAIN_CUTOFF)

    p = sub.add_parser("mobius", help="Möbius values")
    common(p, ("text", "csv", "json"), "text")
    endpoints(p, required=False)
    p.add_argument("--all-pairs", action="store_true", help="table over all comparable pairs")

    p = sub.add_parser("verify", help="run a verification campaign")
    common(p, ("text", "json"), "text")
    p.add_argument("--checks", default="all", help="comma list of checks or aliases")
    p.add_argument("--scope", default="all", help="all | length2 | bounded:L | sample:COUNT:SEED")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    p.add_argument("--include-timing", dest="timing", action="store_true",
                   help="include wall-clock times in the JSON report")
    p.add_argument("--json-out", type=Path, help="also write the JSON report here")
    return ap


def _emit(args, text: str) -> None:
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _element(p: GradedPoset, text: str) -> int:
    try:
        e = RookElement.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if e not in p.index:
        raise UsageError(f"{text} is not an element of {p.name}")
    return p.index[e]


def _fmt(e) -> str:
    return "(" + ",".join(map(str, e)) + ")"


def _cmd_enumerate(args, p: GradedPoset) -> int:
    if args.format == "json":
        out = json.dumps([{"element": list(e), "rank": r} for e, r in zip(p.elements, p.ranks)])
        _emit(args, out + "\n")
    elif args.format == "csv":
        lines = ["element,rank"] + [f'"{",".join(map(str, e))}",{r}' for e, r in zip(p.elements, p.ranks)]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, "".join(pio.element_line(e, r) + "\n" for e, r in zip(p.elements, p.ranks)))
    return 0


def _cmd_hasse(args, p: GradedPoset) -> int:
    if args.format == "dot":
        _emit(args, pio.to_dot(p))
    elif args.format == "json":
        _emit(args, pio.to_json(p))
    elif args.format == "csv":
        _emit(args, pio.to_csv(p))
    else:
        _emit(args, "".join(
            f"{_fmt(p.elements[u])} -> {_fmt(p.elements[v])}  {lab}\n" for u, v, lab in p.edges()
        ))
    return 0


def _cmd_interval(args, p: GradedPoset) -> int:
    iv = _interval(p, args)
    members = sorted(iv.members)
    doc = {"bottom": list(p.elements[iv.bottom]), "top": list(p.elements[iv.top]),
           "length": iv.length, "members": [list(p.elements[m]) for m in members]}
    if args.lex_first:
        c = lex_first_chain(p, iv)
        doc["lex_first"] = {"vertices": [list(p.elements[v]) for v in c.vertices],
                            "labels": [list(l) for l in c.labels]}
    if args.format == "json":
        _emit(args, json.dumps(doc) + "\n")
        return 0
    lines = [f"interval {_fmt(p.elements[iv.bottom])} .. {_fmt(p.elements[iv.top])}: "
             f"length {iv.length}, {len(members)} elements"]
    lines += ["  " + _fmt(p.elements[m]) for m in members]
    if args.lex_first:
        c = doc["lex_first"]
        lines.append("lex-first chain: " + " < ".join(_fmt(v) for v in c["vertices"]))
        lines.append("labels: " + ",".join(_fmt(l) for l in c["labels"]))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_chain(args, p: GradedPoset) -> int:
    iv = _interval(p, args)
    doc = {
        "maximal_chains": count_maximal_chains(p, iv),
        "weakly_increasing": count_increasing_chains(p, iv),
        "strictly_increasing": count_increasing_chains(p, iv, strict=True),
        "strictly_decreasing": count_strictly_decreasing_chains(p, iv),
    }
    lex = lex_first_chain(p, iv)
    doc["lex_first_labels"] = [list(l) for l in lex.labels]
    if args.all:
        doc["chains"] = [[list(l) for l in c.labels] for c in all_maximal_chains(p, iv, args.cutoff)]
    if args.format == "json":
        _emit(args, json.dumps(doc) + "\n")
        return 0
    lines = [f"{k}: {doc[k]}" for k in
             ("maximal_chains", "weakly_increasing", "strictly_increasing", "strictly_decreasing")]
    lines.append("lex-first labels: " + ",".join(_fmt(l) for l in lex.labels))
    for labs in doc.get("chains", []):
        lines.append("  " + ",".join(_fmt(l) for l in labs))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_mobius(args, p: GradedPoset) -> int:
    if args.all_pairs:
        table = mobius_table(p)
        if args.format == "json":
            _emit(args, json.dumps([[list(p.elements[x]), list(p.elements[y]), mu]
                                    for x, y, mu in table.values()]) + "\n")
        else:
            _emit(args, pio.mobius_csv(table))
        return 0
    if args.lo is None and args.hi is None:
        x, y = p.bottom, p.top
    elif args.lo is None or args.hi is None:
        raise UsageError("give both --from and --to, or --all-pairs")
    else:
        iv = _interval(p, args)
        x, y = iv.bottom, iv.top
    mu = mobius(p, x, y)
    if args.format == "json":
        _emit(args, json.dumps({"x": list(p.elements[x]), "y": list(p.elements[y]), "mobius": mu}) + "\n")
    else:
        _emit(args, f"mu({_fmt(p.elements[x])}, {_fmt(p.elements[y])}) = {mu}\n")
    return 0


def _cmd_verify(args, spec: InstanceSpec, max_n: int) -> int:
    try:
        config = CampaignConfig(spec, Scope.parse(args.scope), parse_checks(args.checks))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_campaign(config, workers=max(1, args.threads), max_n=max_n)
    js = report.to_json(include_timing=args.timing)
    if args.json_out:
        args.json_out.write_text(js, encoding="utf-8")
    _emit(args, js if args.format == "json" else report.to_text())
    return 0 if report.ok else 1


def _interval(p: GradedPoset, args) -> Interval:
    x, y = _element(p, args.lo), _element(p, args.hi)
    if not leq(p, x, y):
        raise UsageError(f"{args.lo} is not below {args.hi}")
    return interval(p, x, y)


def run(argv: list[str] | None = None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)  # argparse exits 2 on malformed flags
    max_n = UNSAFE_MAX_N if args.unsafe_large_n else DEFAULT_MAX_N
    try:
        try:
            spec = InstanceSpec.parse(args.instance)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if spec.n > max_n:
            raise UsageError(f"n = {spec.n} exceeds {max_n}; pass --unsafe-large-n")
        if spec.n > DEFAULT_MAX_N:
            log.warning("building n = %d needs several GB of memory", spec.n)
        if args.command == "verify":
            return _cmd_verify(args, spec, max_n)
        handler = {
            "enumerate": _cmd_enumerate,
            "hasse": _cmd_hasse,
            "interval": _cmd_interval,
            "chain": _cmd_chain,
            "mobius": _cmd_mobius,
        }[args.command]
        return handler(args, build_instance(spec, max_n=max_n))
    except (UsageError, ChainCutoffExceeded) as exc:
        ap.print_usage(sys.stderr)
        print(f"rookposet: error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, PosetError) as exc:
        print(f"rookposet: internal invariant breach: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # Downstream closed early (e.g. piped into head); silence the flush at exit.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
