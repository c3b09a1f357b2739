"""Command-line scenario runner.

Subcommands build a preset or user-defined system, couple it along a scheme,
and emit basis transforms, moment matrices, Zeeman classifications, level
sweeps, exchange symmetries, and scheme overlaps as aligned tables, JSON, or
CSV.  Output is deterministic: floats are fixed to 12 significant digits and
negative zero is normalized.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .coupling import (
    CouplingTree,
    classify_exchange,
    couple,
    full_transform,
    like_species_pairs,
    m_sector,
    scheme_overlap,
)
from .system import SpinSystem, species_from_name
from .zeeman import DegeneracySpec, classify, level_curves, moment_matrix


def fmt(value: float) -> str:
    """12-significant-digit float formatting with -0 normalized to 0."""
    text = f"{value:.12g}"
    return "0" if text == "-0" else text


def fmt_complex(value: complex) -> str:
    real = fmt(float(value.real))
    imag = fmt(float(value.imag))
    if imag == "0":
        return real
    sign = "" if imag.startswith("-") else "+"
    return f"{real}{sign}{imag}i"


def _rounded(value: float) -> float:
    return float(fmt(value))


# ---------------------------------------------------------------------------
# scenario construction


_PRESET_SYSTEMS = ("dipositronium", "positronium")


def _build_system(text: str, mu0: float) -> SpinSystem:
    name = text.strip().lower()
    if name == "dipositronium":
        return SpinSystem.dipositronium(mu0)
    if name == "positronium":
        return SpinSystem.positronium(mu0)
    if "," in text:
        species = [species_from_name(tok) for tok in text.split(",")]
        return SpinSystem.from_species(species, mu0)
    raise ValueError(
        f"unknown system {text!r}; use one of {', '.join(_PRESET_SYSTEMS)} "
        "or a comma-separated species list such as 'e,p,e,p'"
    )


def _build_tree(scheme: "str | None", system: SpinSystem) -> CouplingTree:
    if scheme is None:
        scheme = "positronium-pairs" if system.n == 2 else "like-pairs"
    name = scheme.strip().lower()
    if name == "like-pairs":
        return CouplingTree.like_pairs(system)
    if name == "positronium-pairs":
        return CouplingTree.positronium_pairs(system)
    if scheme.strip().startswith("("):
        return CouplingTree.parse(scheme, system)
    raise ValueError(
        f"unknown scheme {scheme!r}; use 'like-pairs', 'positronium-pairs', "
        "or a tree expression such as '((e1,e2),(p1,p2))'"
    )


def parse_energies(path: str, states) -> DegeneracySpec:
    """Read a 'label,energy' file into a degeneracy spec.

    Lines starting with '#' and blank lines are skipped.  The label is
    everything before the last comma (labels themselves contain commas).
    Unlisted states form a single zero-energy group.
    """
    labels = [s.label for s in states]
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ValueError(f"cannot read energies file {path}: {exc}") from None
    seen: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label, sep, value = line.rpartition(",")
        label = label.strip()
        if not sep or not label:
            raise ValueError(f"{path}:{lineno}: expected 'label,energy'")
        if label not in labels:
            raise ValueError(
                f"{path}:{lineno}: unknown state label {label!r}; labels must "
                "match the rendered kets exactly"
            )
        if label in seen:
            raise ValueError(f"{path}:{lineno}: duplicate label {label!r}")
        try:
            energy = float(value)
        except ValueError:
            raise ValueError(
                f"{path}:{lineno}: non-numeric energy {value.strip()!r}"
            ) from None
        if not np.isfinite(energy):
            raise ValueError(f"{path}:{lineno}: energy must be finite")
        seen[label] = energy
    return DegeneracySpec.from_energy_map(labels, seen)


def _parse_m(text: str) -> float:
    try:
        if "/" in text:
            num, den = text.split("/")
            value = float(num) / float(den)
        else:
            value = float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"invalid spin projection {text!r}; use forms like 1, -2, 1/2"
        ) from None
    if abs(2 * value - round(2 * value)) > 1e-9:
        raise argparse.ArgumentTypeError(
            f"spin projection must be an integer or half-integer, got {text!r}"
        )
    return round(2 * value) / 2.0


# ---------------------------------------------------------------------------
# rendering


def _table(headers: "list[str]", rows: "list[list[str]]") -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for k, cell in enumerate(row):
            widths[k] = max(widths[k], len(cell))
    lines = []
    for cells in [headers] + rows:
        padded = [cells[0].ljust(widths[0])]
        padded += [cells[k].rjust(widths[k]) for k in range(1, len(cells))]
        lines.append("  ".join(padded).rstrip())
    return "\n".join(lines) + "\n"


def _json_dump(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def _csv_dump(rows: "list[list[str]]") -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _matrix_output(row_labels, col_labels, entries, fmt_name: str) -> str:
    entries = np.asarray(entries, dtype=complex)
    if fmt_name == "json":
        payload = {
            "rows": list(row_labels),
            "cols": list(col_labels),
            "entries": [
                [[_rounded(z.real), _rounded(z.imag)] for z in row]
                for row in entries
            ],
        }
        return _json_dump(payload)
    cells = [
        [label] + [fmt_complex(z) for z in row]
        for label, row in zip(row_labels, entries)
    ]
    headers = ["state"] + list(col_labels)
    if fmt_name == "csv":
        return _csv_dump([headers] + cells)
    return _table(headers, cells)


# ---------------------------------------------------------------------------
# commands


def _cmd_basis(args) -> str:
    system = _build_system(args.system, args.mu0)
    states = couple(system, _build_tree(args.scheme, system))
    block = m_sector(states, args.m) if args.m is not None else full_transform(states)
    return _matrix_output(
        block.row_labels, block.column_labels, block.matrix, args.format
    )


def _cmd_moment(args) -> str:
    system = _build_system(args.system, args.mu0)
    states = couple(system, _build_tree(args.scheme, system))
    block = m_sector(states, args.m) if args.m is not None else full_transform(states)
    matrix = moment_matrix(block)
    return _matrix_output(matrix.labels, matrix.labels, matrix.entries, args.format)


def _degeneracy(args, states) -> DegeneracySpec:
    if args.energies:
        return parse_energies(args.energies, states)
    return DegeneracySpec.isolated(len(states))


def _cmd_classify(args) -> str:
    system = _build_system(args.system, args.mu0)
    states = couple(system, _build_tree(args.scheme, system))
    if args.m is not None:
        block = m_sector(states, args.m)
        selected = list(block.states)
    else:
        block = full_transform(states)
        selected = states
    spec = _degeneracy(args, selected)
    report = classify(moment_matrix(block), spec)
    if args.format == "json":
        payload = {
            "states": [
                {
                    "label": s.label,
                    "classification": s.classification.value,
                    "moment": _rounded(s.moment),
                    "linear_slope": _rounded(s.linear_slope),
                    "quadratic_partners": list(s.quadratic_partners),
                }
                for s in report.states
            ]
        }
        return _json_dump(payload)
    rows = [
        [
            s.label,
            s.classification.value,
            fmt(s.linear_slope),
            fmt(s.moment),
            " ".join(s.quadratic_partners),
        ]
        for s in report.states
    ]
    headers = ["state", "class", "slope", "moment", "partners"]
    if args.format == "csv":
        return _csv_dump([headers] + rows)
    return _table(headers, rows)


def _cmd_sweep(args) -> str:
    system = _build_system(args.system, args.mu0)
    states = couple(system, _build_tree(args.scheme, system))
    if args.m is not None:
        block = m_sector(states, args.m)
        selected = list(block.states)
    else:
        block = full_transform(states)
        selected = states
    spec = _degeneracy(args, selected)
    if args.steps < 1:
        raise ValueError("steps must be at least 1")
    grid = np.linspace(args.bmin, args.bmax, args.steps)
    curves = level_curves(moment_matrix(block), spec, grid)
    if args.format == "json":
        payload = {
            "B": [_rounded(b) for b in curves.b_values],
            "curves": [
                {
                    "label": label,
                    "energies": [
                        _rounded(e) for e in curves.energies[:, k]
                    ],
                }
                for k, label in enumerate(curves.labels)
            ],
            "flagged": [[_rounded(b), label] for b, label in curves.flagged],
        }
        return _json_dump(payload)
    order = sorted(range(len(curves.labels)), key=lambda k: curves.labels[k])
    rows = []
    for i, b in enumerate(curves.b_values):
        for k in order:
            rows.append([fmt(b), curves.labels[k], fmt(curves.energies[i, k])])
    headers = ["B", "label", "energy"]
    if args.format == "csv":
        return _csv_dump([headers] + rows)
    return _table(headers, rows)


def _cmd_exchange(args) -> str:
    system = _build_system(args.system, args.mu0)
    states = couple(system, _build_tree(args.scheme, system))
    pairs = like_species_pairs(system)
    names = system.names
    pair_labels = [f"{names[i]}<->{names[j]}" for i, j in pairs]
    values = classify_exchange(states, pairs)
    if args.format == "json":
        payload = {
            "pairs": pair_labels,
            "states": [
                {"label": s.label, "eigenvalues": row}
                for s, row in zip(states, values)
            ],
        }
        return _json_dump(payload)
    rows = [
        [s.label] + [str(v) for v in row] for s, row in zip(states, values)
    ]
    headers = ["state"] + pair_labels
    if args.format == "csv":
        return _csv_dump([headers] + rows)
    return _table(headers, rows)


def _cmd_overlap(args) -> str:
    system = _build_system(args.system, args.mu0)
    states_a = couple(system, _build_tree(args.scheme, system))
    states_b = couple(system, _build_tree(args.scheme2, system))
    overlap = scheme_overlap(states_a, states_b)
    return _matrix_output(
        [s.label for s in states_a],
        [s.label for s in states_b],
        overlap,
        args.format,
    )


_COMMANDS = {
    "basis": _cmd_basis,
    "moment": _cmd_moment,
    "classify": _cmd_classify,
    "sweep": _cmd_sweep,
    "exchange": _cmd_exchange,
    "overlap": _cmd_overlap,
}


def _add_common(parser: argparse.ArgumentParser, sector: bool = True,
                energies: bool = False) -> None:
    parser.add_argument("--system", default="dipositronium",
                        help="preset name or species list such as 'e,p,e,p'")
    parser.add_argument("--scheme", default=None,
                        help="'like-pairs', 'positronium-pairs', or a tree "
                             "expression like '((e1,e2),(p1,p2))'")
    parser.add_argument("--mu0", type=float, default=1.0,
                        help="magnetic-moment unit (default 1)")
    parser.add_argument("--format", choices=("table", "json", "csv"),
                        default="table")
    if sector:
        parser.add_argument("--m", type=_parse_m, default=None,
                            help="restrict to one spin-projection sector")
    if energies:
        parser.add_argument("--energies", default=None,
                            help="path to a 'label,energy' file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinzeeman",
        description="Coupled spin bases and Zeeman analysis for "
                    "electron-positron systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="basis-transform block")
    _add_common(p)

    p = sub.add_parser("moment", help="magnetic-moment matrix")
    _add_common(p)

    p = sub.add_parser("classify", help="Zeeman classification per state")
    _add_common(p, energies=True)

    p = sub.add_parser("sweep", help="exact level curves over a field grid")
    _add_common(p, energies=True)
    p.add_argument("--bmin", type=float, required=True)
    p.add_argument("--bmax", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)

    p = sub.add_parser("exchange", help="exchange symmetry per state")
    _add_common(p, sector=False)

    p = sub.add_parser("overlap", help="overlap between two coupling schemes")
    _add_common(p, sector=False)
    p.add_argument("--scheme2", required=True,
                   help="second scheme for the overlap")

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        output = _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    buffer = getattr(sys.stdout, "buffer", None)
    if buffer is not None:
        buffer.write(output.encode("utf-8"))
        buffer.flush()
    else:
        sys.stdout.write(output)
    return 0
