"""Command-line front end: ``enriques-lattice <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__, e10, enriques, f2q, groups, polarizations
from .intlattice import AdeType, InternalConsistencyError, PreconditionError
from .reference_tables import ORBIT_TABLES

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4, 5
DEFAULT_BUDGET = 20_000_000
UNGROUPED_ROW_CAP = 100_000


class InputError(Exception):
    pass


class Mismatch(Exception):
    pass


# formatting -----------------------------------------------------------------


def factor(n: int) -> str:
    """``2^7·17·31`` style factorisation."""
    if n == 1:
        return "1"
    parts = []
    p = 2
    while p * p <= n:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            parts.append(f"{p}^{k}" if k > 1 else str(p))
        p += 1
    if n > 1:
        parts.append(str(n))
    return "·".join(parts)


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    header: list[str] = field(default_factory=list)
    footer: list[str] = field(default_factory=list)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"meta": self.header, "columns": self.columns,
                   "rows": [dict(zip(self.columns, r)) for r in self.rows], "footer": self.footer}
            return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"
        lines = [f"# {h}" for h in self.header]
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            for r in self.rows:
                w.writerow([_cell(c) for c in r])
            body = buf.getvalue().splitlines()
        else:
            cells = [[_cell(c) for c in r] for r in self.rows]
            widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(self.columns)]
            body = ["| " + " | ".join(c.ljust(w) for c, w in zip(self.columns, widths)) + " |",
                    "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
            body += ["| " + " | ".join(c.ljust(w) for c, w in zip(r, widths)) + " |" for r in cells]
        lines += body + [f"# {f}" for f in self.footer]
        return "\n".join(lines) + "\n"


def _cell(c) -> str:
    if isinstance(c, (list, tuple)):
        return " ".join(str(x) for x in c)
    return "" if c is None else str(c)


def _emit(table: Table, args) -> None:
    text = table.render(args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _meta(args, **extra) -> list[str]:
    out = [f"enriques-lattice {__version__}", f"command: {args.command}"]
    for k, v in extra.items():
        out.append(f"{k}: {v}")
    return out


# model input ----------------------------------------------------------------


def load_root_file(path: str | Path) -> enriques.SurfaceModel:
    """Read a TOML root-data file (keys: name, roots, expected_tau, expected_taubar)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: {exc}") from exc
    roots = doc.get("roots")
    if not isinstance(roots, list):
        raise InputError(f"{path}: missing 'roots' array")
    lines = text.splitlines()
    for k, r in enumerate(roots):
        where = _line_of(lines, r)
        if not isinstance(r, list) or len(r) != e10.RANK or not all(isinstance(c, int) for c in r):
            raise InputError(f"{path}:{where}: root {k + 1} must be an array of {e10.RANK} integers")
        if e10.norm(r) != -2:
            raise InputError(f"{path}:{where}: root {k + 1} has square {e10.norm(r)}, expected -2")
    try:
        model = enriques.surface_from_roots(roots, name=str(doc.get("name", path)))
    except PreconditionError as exc:
        raise InputError(f"{path}: {exc}") from exc
    for key, got in (("expected_tau", model.tau), ("expected_taubar", model.taubar)):
        if key in doc and AdeType.parse(str(doc[key])) != got:
            raise Mismatch(f"{path}: {key} = {doc[key]!r} but the roots give {got}")
    return model


def _line_of(lines: list[str], root) -> str:
    if not isinstance(root, list):
        return "?"
    needle = ",".join(str(c) for c in root)
    for i, line in enumerate(lines, 1):
        if needle in line.replace(" ", ""):
            return str(i)
    return "?"


def _model(args) -> enriques.SurfaceModel:
    if args.roots:
        return load_root_file(args.roots)
    try:
        return enriques.preset(args.tau or "unnodal")
    except PreconditionError as exc:
        raise InputError(str(exc)) from exc


# commands -------------------------------------------------------------------


def cmd_fibrations(args) -> int:
    m = _model(args)
    classes = enriques.fibration_classes(m)
    t = Table(["fibers", "weight", "count"], header=_meta(args, model=m.label, name=m.name))
    total = 0
    for sig, w, n in enriques.group_fibrations(classes):
        t.rows.append([sig, w, n])
        total += w * n
    t.footer.append(f"sum weight*count = {total} (expected {enriques.ISOTROPIC_COUNT})")
    _emit(t, args)
    return EXIT_OK if total == enriques.ISOTROPIC_COUNT else EXIT_INTERNAL


def cmd_table1(args) -> int:
    rows = polarizations.table1()
    t = Table(["h2", "phi", "h", "index", "factored", "expected"], header=_meta(args))
    bad = []
    for r in rows:
        t.rows.append([r.hsq, "-" if r.phi is None else r.phi, r.h, r.index, factor(r.index),
                       factor(r.expected)])
        if not r.ok:
            bad.append(f"h2={r.hsq} phi={r.phi}: got {factor(r.index)}, expected {factor(r.expected)}")
    t.footer += bad or ["all rows match"]
    _emit(t, args)
    for b in bad:
        print(f"mismatch: {b}", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_polarizations(args) -> int:
    m = _model(args)
    if args.hsq == 0:
        phi = None
    elif args.phi is None:
        raise InputError("--phi is required when --hsq > 0")
    else:
        phi = args.phi
    try:
        h = polarizations.find_h(args.hsq, phi)
    except (polarizations.NotFound, PreconditionError) as exc:
        raise InputError(str(exc)) from exc
    res = polarizations.polarization_orbits(m, h, budget=args.budget, singularities=args.singularities)
    header = _meta(args, model=m.label, name=m.name, h2=args.hsq, phi="-" if phi is None else phi,
                   h=" ".join(map(str, h)), budget=args.budget, singularities=args.singularities)
    expected = polarizations.STABILIZER_INDICES.get((args.hsq, phi))
    if args.ungrouped:
        t = Table(["singularities", "r", "h_prime"], header=header)
        n = len(res.space)
        for row in res.ungrouped(limit=min(n, args.row_cap)):
            t.rows.append([row.singularities, row.r, row.h_prime])
        if n > args.row_cap:
            t.footer.append(f"{n} double cosets; printed the first {args.row_cap} (raise --row-cap)")
    else:
        t = Table(["singularities", "orbits", "r", "h_prime"], header=header)
        for row in res.grouped():
            t.rows.append([row.singularities, row.orbit_count, row.r, row.h_prime])
    total = res.weighted_sum()
    t.footer.append(f"double cosets = {len(res.space)}; sum r = {total}; index = {res.index} = {factor(res.index)}")
    status = EXIT_OK
    if expected is not None and expected != res.index:
        t.footer.append(f"MISMATCH: table index is {factor(expected)}")
        status = EXIT_MISMATCH
    if total != res.index:
        status = EXIT_INTERNAL
    ref = ORBIT_TABLES.get((m.name, args.hsq, phi)) if not args.roots and args.singularities == "mod2" else None
    if ref is not None and not args.ungrouped:
        got = sorted((r[0], r[1], r[2]) for r in t.rows)
        if got != sorted(ref):
            t.footer.append("MISMATCH against the reference table")
            status = status or EXIT_MISMATCH
        else:
            t.footer.append("matches the reference table")
    _emit(t, args)
    return status


def cmd_group_info(args) -> int:
    chain = groups.full_group_chain()
    order = chain.order()
    formula = groups.full_group_order_formula()
    v = e10.weyl_vector()
    t = Table(["quantity", "value"], header=_meta(args))
    t.rows += [[f"gram row {i + 1}", list(e10.GRAM[i])] for i in range(e10.RANK)]
    t.rows += [
        ["weyl vector v", v],
        ["v^2", e10.norm(v)],
        ["isotropic vectors mod 2", len(f2q.isotropic_vectors())],
        ["anisotropic vectors mod 2", len(f2q.anisotropic_vectors())],
        ["|<simple transvections>|", order],
        ["factored", factor(order)],
        ["|O+(10,2)| by formula", formula],
        ["base orbit sizes", chain.orbit_sizes()],
    ]
    if args.tau or args.roots:
        m = _model(args)
        t.rows += [["model", m.label], ["|G_Y|", m.gbar_chain.order()],
                   ["volume index", enriques.volume_index(m)]]
    _emit(t, args)
    return EXIT_OK if order == formula else EXIT_INTERNAL


def cmd_validate(args) -> int:
    from . import validation

    report = validation.run(args.level, log=lambda s: print(s, file=sys.stderr, flush=True))
    t = Table(["check", "status", "detail"], header=_meta(args, level=args.level))
    for r in report:
        t.rows.append([r.name, "PASS" if r.ok else "FAIL", r.detail])
    nfail = sum(not r.ok for r in report)
    t.footer.append(f"{len(report) - nfail} passed, {nfail} failed")
    _emit(t, args)
    return EXIT_OK if nfail == 0 else EXIT_INTERNAL


# parser -----------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, model: bool = True) -> None:
    if model:
        src = p.add_mutually_exclusive_group()
        src.add_argument("--tau", help="preset: unnodal, A1, 2A1, 3A1, A2, E8 (or '(A1,A1)')")
        src.add_argument("--roots", help="TOML file with 'name', 'roots' and optional expected types")
    p.add_argument("--format", choices=["csv", "json", "md"], default="md")
    p.add_argument("--out", help="write the table here instead of stdout")
    p.add_argument("--threads", type=int, default=1,
                   help="worker count (accepted for compatibility; output does not depend on it)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="enriques-lattice", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fibrations", help="elliptic fibration classes with weights and fibres")
    _add_common(p)
    p.set_defaults(func=cmd_fibrations)

    p = sub.add_parser("polarizations", help="orbits of h-polarizations with ramification degrees")
    _add_common(p)
    p.add_argument("--hsq", type=int, required=True)
    p.add_argument("--phi", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximal number of cosets")
    p.add_argument("--ungrouped", action="store_true", help="one row per double coset")
    p.add_argument("--row-cap", type=int, default=UNGROUPED_ROW_CAP)
    p.add_argument("--singularities", choices=polarizations.SINGULARITY_MODES, default="mod2")
    p.set_defaults(func=cmd_polarizations)

    p = sub.add_parser("table1", help="stabilizer indices of all (h^2, phi) orbits")
    _add_common(p, model=False)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("group-info", help="Gram matrix, Weyl vector and group orders")
    _add_common(p)
    p.set_defaults(func=cmd_group_info)

    p = sub.add_parser("validate", help="run the invariant suites")
    _add_common(p, model=False)
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except groups.BudgetExceeded as exc:
        print(f"budget exceeded: required index {exc.index} = {factor(exc.index)}, budget {exc.budget}",
              file=sys.stderr)
        return EXIT_BUDGET
    except InternalConsistencyError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
