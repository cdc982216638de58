"""Command-line front end.

Exit codes: 0 yes/valid, 1 no/invalid, 2 input error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from .errors import CapacityError, DomainError, ParseError
from .graph_core import Graph, canonical_code, components, format_graph, parse_graph
from .oracle import exact_pathwidth, format_decomposition, parse_decomposition, verify_decomposition
from .structure import decide, format_certificate, generate, recognize_pw2


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror}") from None


def _load(path: str) -> Graph:
    try:
        return parse_graph(_read(path))
    except ParseError as exc:
        raise _InputError(f"{path}: {exc}") from None


# one function per graph command; each returns (exit code, text, json record)

def _decide(path: str):
    ok = decide(_load(path))
    verdict = "pw<=2" if ok else "pw>2"
    return (0 if ok else 1), verdict, {"input": path, "verdict": verdict}


def _decompose(path: str):
    cert = recognize_pw2(_load(path))
    if not cert.positive:
        return 1, "pw>2", {"input": path, "verdict": "pw>2"}
    bags = [sorted(b) for b in cert.decomposition.bags]
    return 0, format_decomposition(cert.decomposition).rstrip("\n"), \
        {"input": path, "verdict": "pw<=2", "width": cert.decomposition.width, "bags": bags}


def _certify(path: str):
    cert = recognize_pw2(_load(path))
    rec = {"input": path, "verdict": "pw<=2" if cert.positive else "pw>2"}
    if cert.positive:
        rec["width"] = cert.decomposition.width
        rec["bags"] = [sorted(b) for b in cert.decomposition.bags]
    else:
        rec.update(reason=cert.reason.value, oracle_width=cert.oracle_width,
                   witness=format_graph(cert.witness), minimal_witness=format_graph(cert.minimal_witness))
    return (0 if cert.positive else 1), format_certificate(cert).rstrip("\n"), rec


def _oracle(path: str):
    width, _ = exact_pathwidth(_load(path))
    return 0, str(width), {"input": path, "width": width}


_COMMANDS: dict[str, Callable] = {"decide": _decide, "decompose": _decompose, "certify": _certify, "oracle": _oracle}


def _run_one(args: tuple[str, str]):
    command, path = args
    try:
        return _COMMANDS[command](path)
    except _InputError as exc:
        return 2, f"error: {exc}", {"input": path, "error": str(exc)}
    except DomainError as exc:
        return 2, f"error: {path}: {exc}", {"input": path, "error": str(exc)}
    except CapacityError as exc:
        return 3, f"error: {path}: {exc}", {"input": path, "error": str(exc)}


def _graph_command(ns) -> int:
    tasks = [(ns.command, p) for p in ns.inputs]
    if ns.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    worst = 0
    for (code, text, rec), (_, path) in zip(results, tasks):
        if code >= 2:
            print(text, file=sys.stderr)
            if ns.format == "json":
                print(json.dumps(rec, sort_keys=True))
        elif ns.format == "json":
            print(json.dumps(rec, sort_keys=True))
        else:
            print(f"{path}: {text}" if len(tasks) > 1 and "\n" not in text else text)
        worst = max(worst, code)
    return worst


def _verify(ns) -> int:
    try:
        g = _load(ns.graph)
        d = parse_decomposition(_read(ns.decomposition))
    except ParseError as exc:
        print(f"error: {ns.decomposition}: {exc}", file=sys.stderr)
        return 2
    report = verify_decomposition(g, d, ns.width)
    if ns.format == "json":
        print(json.dumps({"valid": report.ok, "violations": list(report.violations)}, sort_keys=True))
    else:
        print("valid" if report.ok else str(report))
    return 0 if report.ok else 1


def _generate(ns) -> int:
    kind = {"pw2": "pw2-structure"}.get(ns.kind, ns.kind)
    sys.stdout.write(format_graph(generate(kind, ns.n, ns.seed)))
    return 0


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    """G(n, p) with its components chained together by extra edges."""
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    parts = components(Graph.from_edges(n, edges))
    for a, b in zip(parts, parts[1:]):
        edges.add((rng.choice(a), rng.choice(b)))
    return Graph.from_edges(n, edges)


def mine(n: int, seed: int, count: int, jobs: int = 1) -> list[Graph]:
    """Minor-minimal obstructions from ``count`` seeded random rejects,
    deduplicated by canonical code, in order of first discovery."""
    rng = random.Random(seed)
    rejects = []
    tries = 0
    while len(rejects) < count:
        tries += 1
        if tries > 1000 * max(count, 1):
            raise CapacityError("could not find enough rejected graphs; raise --n")
        g = random_connected(rng, n, rng.choice((0.3, 0.45, 0.6)))
        if not decide(g):
            rejects.append(g)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            minimal = list(pool.map(_minimal_of, rejects))
    else:
        minimal = [_minimal_of(g) for g in rejects]
    seen: dict[bytes, Graph] = {}
    for h in minimal:
        seen.setdefault(canonical_code(h), h)
    return list(seen.values())


def _minimal_of(g: Graph) -> Graph:
    return recognize_pw2(g).minimal_witness


def _mine(ns) -> int:
    found = mine(ns.n, ns.seed, ns.count, ns.jobs)
    if ns.format == "json":
        for h in found:
            print(json.dumps({"code": canonical_code(h).hex(), "witness": format_graph(h)}, sort_keys=True))
    else:
        for h in found:
            print(f"# code {canonical_code(h).hex()}")
            sys.stdout.write(format_graph(h))
            print()
    print(f"{len(found)} distinct obstructions from {ns.count} rejects", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pw2", description="Decide and certify path-width at most two.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (output order is input order)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("decide", "print pw<=2 or pw>2"), ("decompose", "print a width-2 decomposition"),
                       ("certify", "print a structure report or a negative certificate"),
                       ("oracle", "print the exact path-width")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("inputs", nargs="+", metavar="GRAPH", help="edge-list file, '-' for stdin")
        p.set_defaults(func=_graph_command)
    p = sub.add_parser("verify", parents=[common], help="check a path-decomposition")
    p.add_argument("graph")
    p.add_argument("decomposition")
    p.add_argument("--width", type=int, required=True)
    p.set_defaults(func=_verify)
    p = sub.add_parser("generate", parents=[common], help="print a generated graph")
    p.add_argument("--kind", choices=("track", "pw2", "pw2-structure", "tree"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_generate)
    p = sub.add_parser("mine", parents=[common], help="collect minor-minimal obstructions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.set_defaults(func=_mine)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(ns, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return 2
    try:
        return ns.func(ns)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
