"""Command-line front end.

Subcommands::

    corpus list
    conditions --function NAME --t-grid SPEC [--t1 F]
    partial    --function NAME --x F --T F
    mean       --function NAME --x F --h F
    diff       --function NAME --x F --h F
    verify {theorem2|theorem3|lemma2|lemma3} --function NAME
           [--x-grid SPEC] [--h-seq SPEC] [--t-grid SPEC] [--x0 F] [--t1 F]

Global flags: --tol F, --format {csv,json,table}, --out PATH,
--config PATH (flat key=value file, command-line flags win) and
--dump-config PATH.  Grid specifiers are linear:a:b:n or geometric:a:b:n.

Exit codes: 0 on success (verdicts pass / converging / not-applicable),
1 when a verdict fails or a computation cannot be completed, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import corpus, functionals, harness, render, summability
from .errors import GridError, TrigsumError, UnknownFunctionError

_COMMANDS = ("corpus", "conditions", "partial", "mean", "diff", "verify")
_OK_VERDICTS = (functionals.PASS, functionals.NOT_APPLICABLE, harness.CONVERGING)


def parse_grid(spec: str) -> tuple[float, ...]:
    """Expand linear:a:b:n or geometric:a:b:n into a value tuple."""
    parts = spec.split(":")
    if len(parts) != 4 or parts[0] not in ("linear", "geometric"):
        raise GridError(f"bad grid spec {spec!r}: expected linear:a:b:n or geometric:a:b:n")
    try:
        a, b, n = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError:
        raise GridError(f"bad grid spec {spec!r}: non-numeric fields") from None
    if n < 2:
        raise GridError(f"bad grid spec {spec!r}: need n >= 2")
    if parts[0] == "linear":
        return tuple(a + (b - a) * k / (n - 1) for k in range(n))
    if a <= 0.0 or b <= 0.0:
        raise GridError(f"bad grid spec {spec!r}: geometric grids need a, b > 0")
    la, lb = math.log10(a), math.log10(b)
    out = []
    for k in range(n):
        e = la + (lb - la) * k / (n - 1)
        if abs(e - round(e)) < 1e-12:
            e = round(e)
        out.append(10.0**e)
    return tuple(out)


def _read_config(path: str) -> dict[str, str]:
    cfg: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise GridError(f"bad config line {line!r}: expected key=value")
            key, value = line.split("=", 1)
            cfg[key.strip()] = value.strip()
    return cfg


def _merge_config(argv: list[str]) -> list[str]:
    """Inject config-file values as flags; explicit argv flags win."""
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None:
        return argv
    cfg = _read_config(path)
    new = list(argv)
    cmd_len = 0
    if new and new[0] in _COMMANDS:
        cmd_len = 2 if new[0] in ("corpus", "verify") else 1
    elif "command" in cfg:
        head = cfg["command"].split()
        new = head + new
        cmd_len = len(head)
    present = {tok.split("=", 1)[0][2:] for tok in argv if tok.startswith("--")}
    inject: list[str] = []
    for key, value in cfg.items():
        if key == "command" or key in present:
            continue
        inject.extend([f"--{key}", value])
    return new[:cmd_len] + inject + new[cmd_len:]


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--format", choices=("csv", "json", "table"), default="table")
    common.add_argument("--out", default=None)
    common.add_argument("--config", default=None)
    common.add_argument("--dump-config", dest="dump_config", default=None)

    p = argparse.ArgumentParser(prog="trigsum", allow_abbrev=False)
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("corpus", parents=[common])
    pc.add_argument("action", choices=("list",))

    pd = sub.add_parser("conditions", parents=[common])
    pd.add_argument("--function", required=True)
    pd.add_argument("--t-grid", dest="t_grid", required=True)
    pd.add_argument("--t1", type=float, default=1.0)

    pp = sub.add_parser("partial", parents=[common])
    pp.add_argument("--function", required=True)
    pp.add_argument("--x", type=float, required=True)
    pp.add_argument("--T", dest="T", type=float, required=True)

    pm = sub.add_parser("mean", parents=[common])
    pm.add_argument("--function", required=True)
    pm.add_argument("--x", type=float, required=True)
    pm.add_argument("--h", type=float, required=True)

    pf = sub.add_parser("diff", parents=[common])
    pf.add_argument("--function", required=True)
    pf.add_argument("--x", type=float, required=True)
    pf.add_argument("--h", type=float, required=True)

    pv = sub.add_parser("verify", parents=[common])
    pv.add_argument("target", choices=("theorem2", "theorem3", "lemma2", "lemma3"))
    pv.add_argument("--function", required=True)
    pv.add_argument("--x-grid", dest="x_grid", default="linear:-10:10:41")
    pv.add_argument("--h-seq", dest="h_seq", default="geometric:1:0.001:4")
    pv.add_argument("--t-grid", dest="t_grid", default=None)
    pv.add_argument("--x0", type=float, default=1.0)
    pv.add_argument("--t1", type=float, default=1.0)
    return p


def _dump_config(args, pairs: list[tuple[str, str]]):
    if not args.dump_config:
        return
    lines = [f"{k}={v}" for k, v in pairs]
    with open(args.dump_config, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _emit(args, text: str) -> int:
    if args.out is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"trigsum: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return 0


def _fmt_param(v) -> str:
    if isinstance(v, float):
        return render.fmt(v)
    return str(v)


def _run_corpus(args) -> tuple[int, str]:
    _dump_config(args, [("command", "corpus list"), ("format", args.format)])
    entries = corpus.list_functions()
    header, rows = render.corpus_rows(entries)
    if args.format == "csv":
        return 0, render.render_csv(header, rows)
    if args.format == "json":
        return 0, render.dump_json(entries)
    return 0, render.render_table(header, rows)


def _run_conditions(args) -> tuple[int, str]:
    _dump_config(
        args,
        [
            ("command", "conditions"),
            ("function", args.function),
            ("t-grid", args.t_grid),
            ("t1", _fmt_param(args.t1)),
            ("tol", _fmt_param(args.tol)),
            ("format", args.format),
        ],
    )
    fn = corpus.get(args.function)
    grid = parse_grid(args.t_grid)
    report = functionals.lemma_report(fn, grid, args.t1, args.tol)
    header, rows = render.lemma_rows(report)
    if args.format == "csv":
        return 0, render.render_csv(header, rows)
    if args.format == "json":
        return 0, render.dump_json(render.lemma_payload(report))
    return 0, render.render_table(header, rows, render.condition_footer(report))


def _run_point(args, kind: str) -> tuple[int, str]:
    keys = [("command", kind), ("function", args.function), ("x", _fmt_param(args.x))]
    if kind == "partial":
        keys.append(("T", _fmt_param(args.T)))
    else:
        keys.append(("h", _fmt_param(args.h)))
    keys += [("tol", _fmt_param(args.tol)), ("format", args.format)]
    _dump_config(args, keys)

    fn = corpus.get(args.function)
    if kind == "partial":
        r = summability.partial_integral_result(fn, args.x, args.T, args.tol)
        header = ["x", "T", "re", "im", "abs_error"]
        row = [args.x, args.T, r.value.real if isinstance(r.value, complex) else float(r.value),
               r.value.imag if isinstance(r.value, complex) else 0.0, r.abs_error_estimate]
        payload = {
            "function": fn.name, "x": args.x, "T": args.T,
            "value": complex(r.value), "abs_error": r.abs_error_estimate,
            "panels": r.panels_used, "evaluations": r.evaluations,
        }
    elif kind == "mean":
        m = summability.lebesgue_mean(fn, args.x, args.h, tol=args.tol)
        header = ["x", "h", "re", "im", "tail_bound", "quad_error", "truncation_T"]
        row = [args.x, args.h, m.value.real, m.value.imag, m.tail_bound,
               m.quad.abs_error_estimate, m.truncation_T]
        payload = {
            "function": fn.name, "x": args.x, "h": args.h, "value": m.value,
            "truncation_T": m.truncation_T, "tail_bound": m.tail_bound,
            "quad_error": m.quad.abs_error_estimate, "error_budget": m.error_budget,
        }
    else:
        d = summability.diff_detail(fn, args.x, args.h, tol=args.tol)
        header = ["x", "h", "re", "im", "budget"]
        row = [args.x, args.h, d.value.real, d.value.imag, d.error_budget]
        payload = {
            "function": fn.name, "x": args.x, "h": args.h, "value": d.value,
            "error_budget": d.error_budget,
        }
    if args.format == "csv":
        return 0, render.render_csv(header, [row])
    if args.format == "json":
        return 0, render.dump_json(payload)
    return 0, render.render_table(header, [row])


def _run_verify(args) -> tuple[int, str]:
    keys = [("command", f"verify {args.target}"), ("function", args.function)]
    if args.target == "theorem2":
        keys += [("x-grid", args.x_grid), ("h-seq", args.h_seq)]
    elif args.target == "theorem3":
        t_grid = args.t_grid or "geometric:10:10000:8"
        keys += [("x0", _fmt_param(args.x0)), ("t-grid", t_grid), ("h-seq", args.h_seq)]
    else:
        t_grid = args.t_grid or "geometric:1:10000:40"
        keys += [("t-grid", t_grid), ("t1", _fmt_param(args.t1))]
    keys += [("tol", _fmt_param(args.tol)), ("format", args.format)]
    _dump_config(args, keys)

    fn = corpus.get(args.function)
    if args.target == "theorem2":
        report = harness.abelian_sweep(fn, parse_grid(args.x_grid), parse_grid(args.h_seq), args.tol)
        verdict = report.verdict
        header, rows = render.sweep_rows(report)
        payload = render.sweep_payload(report)
        footer = [f"verdict: {verdict}", f"classification: {report.classification}"]
        footer += list(report.notes)
    elif args.target == "theorem3":
        report = harness.tauberian_check(
            fn, args.x0, parse_grid(args.t_grid or "geometric:10:10000:8"),
            parse_grid(args.h_seq), args.tol
        )
        verdict = report.verdict
        header, rows = render.convergence_rows(report)
        payload = render.convergence_payload(report)
        footer = [
            f"verdict: {verdict}",
            f"ell_hat: {render.fmt(report.ell_hat.real)} + {render.fmt(report.ell_hat.imag)}i",
            f"stability: {render.fmt(report.stability)}",
        ] + list(report.notes)
    else:
        grid = parse_grid(args.t_grid or "geometric:1:10000:40")
        if args.target == "lemma2":
            report = functionals.verify_lemma2(fn, grid, args.tol)
            verdict = report.lemma2_verdict
        else:
            report = functionals.verify_lemma3(fn, args.t1, grid, args.tol)
            verdict = report.lemma3_verdict
        header, rows = render.lemma_rows(report)
        payload = render.lemma_payload(report)
        footer = render.condition_footer(report)

    code = 0 if verdict in _OK_VERDICTS else 1
    if args.format == "csv":
        return code, render.render_csv(header, rows)
    if args.format == "json":
        return code, render.dump_json(payload)
    return code, render.render_table(header, rows, footer)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _merge_config(argv)
    except (OSError, GridError) as exc:
        print(f"trigsum: {exc}", file=sys.stderr)
        return 2
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        if args.command == "corpus":
            code, text = _run_corpus(args)
        elif args.command == "conditions":
            code, text = _run_conditions(args)
        elif args.command in ("partial", "mean", "diff"):
            code, text = _run_point(args, args.command)
        else:
            code, text = _run_verify(args)
    except (UnknownFunctionError, GridError) as exc:
        print(f"trigsum: {exc}", file=sys.stderr)
        return 2
    except TrigsumError as exc:
        print(f"trigsum: {exc}", file=sys.stderr)
        return 1

    emit = _emit(args, text)
    return emit if emit else code


if __name__ == "__main__":
    sys.exit(main())
