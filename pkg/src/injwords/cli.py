"""Command-line front end.

Every subcommand prints a single JSON report to standard output
(``tables`` prints plain text); diagnostics go to standard error.
Exit codes: 0 success, 1 usage or input error, 2 computation failure
such as a falsified certificate record.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .collapse import POLICIES, collapse_step, free_faces, greedy_collapse, top_collapse_experiment
from .complexes import (
    GeneratedComplex,
    boundary_matrix,
    coface_list,
    euler_characteristic,
    generate_complex,
)
from .homology import homology
from .matrices import RingSpec, coordinate_text, legend_text
from .redundancy import CertificateError, build_certificate, redundancy_fixed_point
from .words import InjWord, nonderangements, permutations


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we own the exit codes
        raise _UsageError(message)


def load_generators(path: str, n: int) -> list[InjWord]:
    """Read one canonical word per line; '#' lines and blanks are skipped.

    Raises ValueError with the offending line number on any malformed
    word, duplicate letters, or letters outside [1, n].
    """
    words: list[InjWord] = []
    seen: set[tuple[int, ...]] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                w = InjWord.parse(line, n)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if w.letters not in seen:
                seen.add(w.letters)
                words.append(w)
    return words


def _generator_set(gen: list[str], n: int) -> tuple[list[InjWord], str]:
    kind = gen[0]
    if kind == "full":
        if len(gen) != 1:
            raise _UsageError("--gen full takes no extra argument")
        return permutations(n), "full"
    if kind == "nonderangements":
        if len(gen) != 1:
            raise _UsageError("--gen nonderangements takes no extra argument")
        return nonderangements(n), "nonderangements"
    if kind == "file":
        if len(gen) != 2:
            raise _UsageError("--gen file needs a path")
        return load_generators(gen[1], n), f"file:{gen[1]}"
    raise _UsageError(f"unknown generator preset {kind!r} (full, nonderangements, file)")


def _load_complex(ns) -> tuple[GeneratedComplex, str]:
    generators, label = _generator_set(ns.gen, ns.n)
    return generate_complex(generators, ns.n), label


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (result, parameters)
# ---------------------------------------------------------------------------


def _cmd_homology(ns):
    cx, label = _load_complex(ns)
    ring = RingSpec.parse(ns.ring)
    summary = homology(cx, ring)
    return summary.to_json_obj(), {"n": ns.n, "gen": label, "ring": ring.token}


def _cmd_euler(ns):
    cx, label = _load_complex(ns)
    return euler_characteristic(cx), {"n": ns.n, "gen": label}


def _cmd_collapse(ns):
    cx, label = _load_complex(ns)
    trace = greedy_collapse(cx, ns.policy)
    return trace.to_json_obj(), {"n": ns.n, "gen": label, "policy": ns.policy}


def _cmd_top_experiment(ns):
    report = top_collapse_experiment(ns.n, ns.policy)
    return report.to_json_obj(), {"n": ns.n, "policy": ns.policy}


def _cmd_certify(ns):
    cert = build_certificate(ns.n)
    result = {
        "n": cert.n,
        "faces": cert.faces,
        "records": cert.record_count,
        "acyclic": cert.acyclic,
    }
    params = {"n": ns.n}
    if ns.emit:
        with open(ns.emit, "w", encoding="utf-8") as fh:
            fh.write(cert.to_jsonl())
        result["emitted"] = ns.emit
        params["emit"] = ns.emit
    return result, params


def _cmd_fredpoint(ns):
    return redundancy_fixed_point(ns.n).to_json_obj(), {"n": ns.n}


def _cmd_export_matrix(ns):
    cx, label = _load_complex(ns)
    ring = RingSpec.parse(ns.ring)
    m = boundary_matrix(cx, ns.level, ring)
    row_path = ns.out + ".rows"
    col_path = ns.out + ".cols"
    with open(ns.out, "w", encoding="utf-8") as fh:
        fh.write(coordinate_text(m, ns.level))
    with open(row_path, "w", encoding="utf-8") as fh:
        fh.write(legend_text(cx.level(ns.level - 1)))
    with open(col_path, "w", encoding="utf-8") as fh:
        fh.write(legend_text(cx.level(ns.level)))
    result = {
        "out": ns.out,
        "row_legend": row_path,
        "col_legend": col_path,
        "level": ns.level,
        "ring": ring.token,
        "rows": m.rows,
        "cols": m.cols,
        "entries": m.nnz,
    }
    params = {
        "n": ns.n,
        "gen": label,
        "level": ns.level,
        "ring": ring.token,
        "out": ns.out,
    }
    return result, params


def _cmd_tables(ns):
    if ns.n != 3:
        raise _UsageError("tables supports only --n 3")
    return render_incidence_tables(), {"n": ns.n}


# ---------------------------------------------------------------------------
# incidence tables for n = 3
# ---------------------------------------------------------------------------


def render_incidence_tables() -> str:
    """The three n=3 incidence tables: the full non-derangement complex,
    the complex after its single forced collapse, and the triangle left
    after two more.  Output is deterministic byte for byte.
    """
    stages = []
    cx = generate_complex(nonderangements(3), 3)
    stages.append(("table 1: complex of the 4 non-derangement words, n=3", cx))
    (first,) = free_faces(cx)
    cx = collapse_step(cx, first)
    stages.append(
        (f"table 2: after collapsing {first.face} into {first.coface}", cx)
    )
    second, third = free_faces(cx)
    cx = collapse_step(collapse_step(cx, second), third)
    stages.append(
        (
            "table 3: after collapsing "
            f"{second.face} into {second.coface} and {third.face} into {third.coface}",
            cx,
        )
    )
    blocks = [_render_stage(title, stage) for title, stage in stages]
    return "\n".join(blocks)


def _render_stage(title: str, cx: GeneratedComplex) -> str:
    def incidences(w):
        return " ".join(str(s) for s, _ in coface_list(cx, w))

    col3 = [str(w) for w in cx.level(3)]
    col2 = [(str(w), incidences(w)) for w in cx.level(2)]
    col1 = [(str(w), incidences(w)) for w in cx.level(1)]
    headers = ("len 3", "len 2", "in cells", "len 1", "in cells")
    rows = []
    for idx in range(max(len(col3), len(col2), len(col1))):
        rows.append(
            (
                col3[idx] if idx < len(col3) else "",
                col2[idx][0] if idx < len(col2) else "",
                col2[idx][1] if idx < len(col2) else "",
                col1[idx][0] if idx < len(col1) else "",
                col1[idx][1] if idx < len(col1) else "",
            )
        )
    widths = [
        max(len(headers[j]), *(len(r[j]) for r in rows)) for j in range(len(headers))
    ]
    lines = [title]
    lines.append("  ".join(h.ljust(widths[j]) for j, h in enumerate(headers)).rstrip())
    for r in rows:
        lines.append("  ".join(r[j].ljust(widths[j]) for j in range(len(r))).rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parser and dispatch
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--no-meta",
        action="store_true",
        help="omit volatile report fields (wall-clock duration)",
    )
    parser = _Parser(prog="injwords", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(handler=handler)
        return p

    def add_gen(p):
        p.add_argument(
            "--gen",
            nargs="+",
            required=True,
            metavar=("{full|nonderangements|file}", "PATH"),
            help="generator set: full, nonderangements, or file <path>",
        )
        p.add_argument("--n", type=int, required=True, help="alphabet size")

    p = add("homology", _cmd_homology, help="homology summary of a generated complex")
    add_gen(p)
    p.add_argument("--ring", required=True, help="coefficient ring: z, q, or fp:P")

    p = add("euler", _cmd_euler, help="Euler characteristic of a generated complex")
    add_gen(p)

    p = add("collapse", _cmd_collapse, help="greedy elementary collapse trace")
    add_gen(p)
    p.add_argument("--policy", choices=POLICIES, default="lex")

    p = add("top-experiment", _cmd_top_experiment, help="top-cell-only collapse run")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--policy", choices=POLICIES, default="lex")

    p = add("certify", _cmd_certify, help="build and verify the redundancy certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", help="write the certificate as JSON lines to this path")

    p = add("fredpoint", _cmd_fredpoint, help="iterative redundancy marking rounds")
    p.add_argument("--n", type=int, required=True)

    p = add("tables", _cmd_tables, help="the three n=3 incidence tables")
    p.add_argument("--n", type=int, required=True)

    p = add("export-matrix", _cmd_export_matrix, help="write one boundary matrix")
    add_gen(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--out", required=True)

    return parser


def _check_thread_env() -> None:
    raw = os.environ.get("INJWORDS_THREADS")
    if raw is None:
        return
    if not raw.isdigit() or int(raw) < 1:
        raise _UsageError(f"INJWORDS_THREADS must be a positive integer, got {raw!r}")


def dispatch(argv: list[str]) -> int:
    """Run one subcommand; returns the process exit status."""
    parser = _build_parser()
    started = time.monotonic()
    try:
        ns = parser.parse_args(argv)
        _check_thread_env()
        result, parameters = ns.handler(ns)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return 0 if not exc.code else int(exc.code)
    except (ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1
    except CertificateError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 2
    if ns.command == "tables":
        sys.stdout.write(result)
        return 0
    report = {
        "command": ns.command,
        "parameters": parameters,
        "result": result,
        "version": __version__,
    }
    if not ns.no_meta:
        report["duration_seconds"] = round(time.monotonic() - started, 6)
    print(json.dumps(report, indent=2))
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
