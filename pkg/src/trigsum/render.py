"""Deterministic CSV / JSON / table rendering for reports.

All floating-point output is rendered with 17 significant digits, which
round-trips IEEE doubles losslessly, so re-running a command reproduces
its output byte for byte.
"""

from __future__ import annotations

import math


def fmt(x) -> str:
    """17-significant-digit rendering of a real number."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def _json_number(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return "%.17g" % x


def dump_json(obj, indent: int = 2) -> str:
    """Serialize dicts/lists/scalars with fixed float formatting and key order."""
    out = []
    _write_json(obj, out, indent, 0)
    out.append("\n")
    return "".join(out)


def _write_json(obj, out, indent, level):
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_json_number(obj))
    elif isinstance(obj, complex):
        _write_json({"re": obj.real, "im": obj.imag}, out, indent, level)
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f'{pad_in}"{k}": ')
            _write_json(v, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(seq):
            out.append(pad_in)
            _write_json(v, out, indent, level + 1)
            out.append(",\n" if i < len(seq) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v) -> str:
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def render_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_table(header: list[str], rows: list[list], footer: list[str] | None = None) -> str:
    def short(v):
        if isinstance(v, float):
            if math.isfinite(v):
                return "%.9g" % v
            return fmt(v)
        return str(v)

    cells = [[short(v) for v in row] for row in rows]
    widths = [len(h) for h in header]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)) for row in cells)
    if footer:
        lines.append("")
        lines.extend(footer)
    return "\n".join(lines) + "\n"


# --- report payloads -------------------------------------------------------


def corpus_rows(entries: list[dict]):
    header = ["name", "formula", "support_radius", "globally_integrable", "condition_class"]
    rows = [
        [e["name"], e["formula"], float(e["support_radius"]),
         str(e["globally_integrable"]).lower(), e["condition_class"]]
        for e in entries
    ]
    return header, rows


def lemma_rows(report):
    header = ["T", "M", "Q"]
    rows = [
        [float(T), float(m), float(q)]
        for T, m, q in zip(report.T_grid, report.M_values, report.Q_values)
    ]
    return header, rows


def lemma_payload(report) -> dict:
    return {
        "function": report.fn_name,
        "classification": report.classification,
        "B_hat": float(report.B_hat),
        "T1": float(report.T1),
        "lemma2_verdict": report.lemma2_verdict,
        "lemma3_verdict": report.lemma3_verdict,
        "bound_ratio": float(report.bound_ratio),
        "rows": [
            {"T": float(T), "M": float(m), "Q": float(q)}
            for T, m, q in zip(report.T_grid, report.M_values, report.Q_values)
        ],
    }


def sweep_rows(report):
    header = ["x", "h", "re_D", "im_D", "budget"]
    rows = []
    for ix, x in enumerate(report.x_grid):
        for ih, h in enumerate(report.h_seq):
            d = report.D_matrix[ix][ih]
            rows.append([float(x), float(h), d.real, d.imag,
                         float(report.error_budget_matrix[ix][ih])])
    return header, rows


def sweep_payload(report) -> dict:
    return {
        "function": report.fn_name,
        "verdict": report.verdict,
        "classification": report.classification,
        "hypothesis_ok": report.hypothesis_ok,
        "tol": float(report.tol),
        "x_window": [float(report.x_grid[0]), float(report.x_grid[-1])],
        "x_points": len(report.x_grid),
        "h_seq": [float(h) for h in report.h_seq],
        "sup_abs_D": [float(s) for s in report.sup_abs_D],
        "notes": list(report.notes),
        "cells": [
            {
                "x": float(x),
                "h": float(h),
                "D": report.D_matrix[ix][ih],
                "budget": float(report.error_budget_matrix[ix][ih]),
            }
            for ix, x in enumerate(report.x_grid)
            for ih, h in enumerate(report.h_seq)
        ],
    }


def convergence_rows(report):
    header = ["series", "param", "re", "im"]
    rows = []
    for T, v in zip(report.T_seq, report.I_values):
        rows.append(["partial_T", float(T), v.real, v.imag])
    for h, v in zip(report.h_seq, report.mean_values):
        rows.append(["mean_h", float(h), v.real, v.imag])
    for h, d in zip(report.h_seq, report.D_abs):
        rows.append(["abs_D_h", float(h), float(d), 0.0])
    return header, rows


def convergence_payload(report) -> dict:
    return {
        "function": report.fn_name,
        "x0": float(report.x0),
        "verdict": report.verdict,
        "classification": report.classification,
        "hypothesis_ok": report.hypothesis_ok,
        "tol": float(report.tol),
        "ell_hat": report.ell_hat,
        "stability": float(report.stability),
        "T_seq": [float(T) for T in report.T_seq],
        "I_values": list(report.I_values),
        "h_seq": [float(h) for h in report.h_seq],
        "mean_values": list(report.mean_values),
        "abs_D": [float(d) for d in report.D_abs],
        "residuals": [float(r) for r in report.residuals],
        "error_budgets": [float(b) for b in report.error_budgets],
        "notes": list(report.notes),
    }


def condition_footer(report) -> list[str]:
    return [
        f"classification: {report.classification}",
        f"B_hat (sup M over T > {fmt(report.T1)}): {fmt(report.B_hat)}",
        f"lemma2: {report.lemma2_verdict}   lemma3: {report.lemma3_verdict}   "
        f"bound_ratio: {fmt(report.bound_ratio)}",
    ]
