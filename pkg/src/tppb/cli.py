"""Command-line surface: group-spec grammar, catalog manifests, batch CSV
reports, single-group analysis, triple verification, and degree printing.

Batch rows are buffered and written in manifest order so `--jobs` never
changes output bytes; the runtime column is left blank in CSV for the same
reason.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from sympy import factorint

from . import errors
from .bounds import bounds_report
from .chars import character_degrees, d_sum_int
from .groups import (
    ElementSet,
    Group,
    builtin,
    configured_order_limit,
    direct_product,
    group_from_ctab_file,
    group_from_pgens_file,
    group_stats,
    validate_family_parameter,
)
from .lattice import enumerate_subgroups, normal_cores
from .tpp import verify_triple_report

CSV_SCHEMA = "tppb-csv-v1"
CSV_COLUMNS = [
    "name",
    "order",
    "is_abelian",
    "subgroup_count",
    "class_count",
    "d3",
    "t",
    "b",
    "h",
    "t_le_d3",
    "h_le_d3",
    "beta_g",
    "runtime_ms",
    "error",
]

BUILTIN_FAMILIES = ("cyclic", "dihedral", "dicyclic", "sym", "alt", "elem_abelian")


@dataclass(frozen=True)
class GroupSpec:
    """Parsed group description; exactly the fields for `kind` are set."""

    kind: str
    family: str | None = None
    parameter: int | None = None
    path: str | None = None
    factors: tuple["GroupSpec", "GroupSpec"] | None = None

    @property
    def name(self) -> str:
        return render_group_spec(self)


def render_group_spec(spec: GroupSpec) -> str:
    if spec.kind == "builtin":
        if spec.family == "elem_abelian":
            (prime, k), = factorint(spec.parameter).items()
            if k > 1:
                return f"elem_abelian:{prime}^{k}"
        return f"{spec.family}:{spec.parameter}"
    if spec.kind == "perm":
        return f"perm:{spec.path}"
    if spec.kind == "table":
        return f"table:{spec.path}"
    left, right = spec.factors
    return f"product({render_group_spec(left)},{render_group_spec(right)})"


def _parse_int(text: str, pos: int, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise errors.ParseError(text, pos, f"expected an integer, got {token!r}") from None


def _parse_spec_at(text: str, pos: int):
    if text.startswith("product(", pos):
        left, pos = _parse_spec_at(text, pos + len("product("))
        if pos >= len(text) or text[pos] != ",":
            raise errors.ParseError(text, pos, "expected ',' between product factors")
        right, pos = _parse_spec_at(text, pos + 1)
        if pos >= len(text) or text[pos] != ")":
            raise errors.ParseError(text, pos, "expected ')' closing product")
        return GroupSpec(kind="product", factors=(left, right)), pos + 1

    end = pos
    while end < len(text) and text[end] not in ",)":
        end += 1
    token = text[pos:end]
    if ":" not in token:
        raise errors.ParseError(text, pos, f"expected '<family>:<parameter>' in {token!r}")
    head, _, tail = token.partition(":")
    if head == "perm":
        if not tail:
            raise errors.ParseError(text, pos, "perm spec needs a file path")
        return GroupSpec(kind="perm", path=tail), end
    if head == "table":
        if not tail:
            raise errors.ParseError(text, pos, "table spec needs a file path")
        return GroupSpec(kind="table", path=tail), end
    if head not in BUILTIN_FAMILIES:
        raise errors.UnknownFamily(f"unknown builtin family {head!r}")
    if head == "elem_abelian" and "^" in tail:
        base, _, exp = tail.partition("^")
        parameter = _parse_int(text, pos, base) ** _parse_int(text, pos, exp)
    else:
        parameter = _parse_int(text, pos, tail)
    validate_family_parameter(head, parameter)
    return GroupSpec(kind="builtin", family=head, parameter=parameter), end


def parse_group_spec(text: str) -> GroupSpec:
    """Parse `cyclic:n | dihedral:m | dicyclic:m | sym:k | alt:k |
    elem_abelian:p^k | perm:<path> | table:<path> | product(<spec>,<spec>)`."""
    if not text or not text.strip():
        raise errors.ParseError(text or "", 0, "empty group spec")
    spec, pos = _parse_spec_at(text.strip(), 0)
    if pos != len(text.strip()):
        raise errors.ParseError(text, pos, "unexpected trailing characters")
    return spec


def realize_group_spec(spec: GroupSpec, base_dir=".", order_limit: int | None = None) -> Group:
    """Build the group, resolving relative paths against `base_dir`."""
    limit = configured_order_limit() if order_limit is None else order_limit
    if spec.kind == "builtin":
        return builtin(spec.family, spec.parameter, order_limit=limit)
    if spec.kind in ("perm", "table"):
        path = spec.path
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        loader = group_from_pgens_file if spec.kind == "perm" else group_from_ctab_file
        return loader(path, order_limit=limit)
    left, right = spec.factors
    G = direct_product(
        realize_group_spec(left, base_dir, limit),
        realize_group_spec(right, base_dir, limit),
    )
    if G.order > limit:
        raise errors.OrderLimitExceeded(
            f"product order {G.order} exceeds limit {limit}"
        )
    return G


@dataclass(frozen=True)
class CatalogManifest:
    entries: tuple
    declared_order: int | None


def load_manifest(path) -> CatalogManifest:
    """Read `name<TAB>spec` lines, `#` comments, optional `order=<n>` header."""
    entries = []
    declared = None
    names = set()
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if declared is None and not entries and line.startswith("order=") and "\t" not in line:
                try:
                    declared = int(line[len("order="):])
                except ValueError:
                    raise errors.ManifestError(f"line {lineno}: bad order header {line!r}") from None
                continue
            if "\t" not in line:
                raise errors.ManifestError(f"line {lineno}: expected name<TAB>spec")
            name, spec_text = (part.strip() for part in line.split("\t", 1))
            if not name:
                raise errors.ManifestError(f"line {lineno}: empty name")
            if name in names:
                raise errors.ManifestError(f"line {lineno}: duplicate name {name!r}")
            names.add(name)
            try:
                spec = parse_group_spec(spec_text)
            except errors.TppbError as exc:
                raise errors.ManifestError(f"line {lineno}: {exc}") from None
            entries.append((name, spec))
    return CatalogManifest(tuple(entries), declared)


@dataclass(frozen=True)
class ReportRow:
    """One evaluated catalog entry; blank-rendered fields stay None."""

    name: str
    order: int | None = None
    is_abelian: bool | None = None
    subgroup_count: int | None = None
    class_count: int | None = None
    d3: int | None = None
    t: int | None = None
    b_or_blank: int | None = None
    h: int | None = None
    t_le_d3: bool | None = None
    h_le_d3: bool | None = None
    beta_g_or_blank: int | None = None
    runtime_ms: int | None = None
    error: str = ""


def evaluate_spec(
    name: str,
    spec: GroupSpec,
    base_dir=".",
    exact_beta: bool = False,
    order_limit: int | None = None,
    with_runtime: bool = False,
):
    """Run the full pipeline for one group and return (ReportRow, BoundsReport)."""
    start = time.perf_counter()
    G = realize_group_spec(spec, base_dir, order_limit)
    lattice = enumerate_subgroups(G)
    cores = normal_cores(G, lattice)
    degrees = character_degrees(G)
    report = bounds_report(
        G, lattice, cores, degrees, group_name=name, exact_beta=exact_beta
    )
    runtime = int((time.perf_counter() - start) * 1000) if with_runtime else None
    row = ReportRow(
        name=name,
        order=G.order,
        is_abelian=group_stats(G).is_abelian,
        subgroup_count=lattice.count,
        class_count=len(degrees.degrees),
        d3=report.d3,
        t=report.t,
        b_or_blank=report.b,
        h=report.h,
        t_le_d3=report.flags.t_le_d3,
        h_le_d3=report.flags.h_le_d3,
        beta_g_or_blank=report.beta_g,
        runtime_ms=runtime,
    )
    return row, report


def _cell(value) -> str:
    if value is None:
        return ""
    if value is True:
        return "true"
    if value is False:
        return "false"
    return str(value)


def _row_cells(row: ReportRow):
    return [
        row.name,
        _cell(row.order),
        _cell(row.is_abelian),
        _cell(row.subgroup_count),
        _cell(row.class_count),
        _cell(row.d3),
        _cell(row.t),
        _cell(row.b_or_blank),
        _cell(row.h),
        _cell(row.t_le_d3),
        _cell(row.h_le_d3),
        _cell(row.beta_g_or_blank),
        _cell(row.runtime_ms),
        row.error,
    ]


def write_report_csv(path, rows) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(f"# {CSV_SCHEMA}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(_row_cells(row))


def _batch_worker(payload):
    index, name, spec_text, base_dir, exact_beta, order_limit, declared = payload
    try:
        spec = parse_group_spec(spec_text)
        row, _ = evaluate_spec(
            name, spec, base_dir, exact_beta=exact_beta, order_limit=order_limit
        )
        if declared is not None and row.order != declared:
            return index, ReportRow(
                name=name,
                error=f"order {row.order} does not match declared order {declared}",
            )
        return index, row
    except errors.TppbError as exc:
        return index, ReportRow(name=name, error=f"{type(exc).__name__}: {exc}")
    except OSError as exc:
        return index, ReportRow(name=name, error=f"{type(exc).__name__}: {exc}")


def _cmd_batch(args) -> int:
    manifest = load_manifest(args.manifest)
    base_dir = os.path.dirname(os.path.abspath(args.manifest))
    payloads = [
        (
            index,
            name,
            render_group_spec(spec),
            base_dir,
            args.exact_beta,
            args.order_limit,
            manifest.declared_order,
        )
        for index, (name, spec) in enumerate(manifest.entries)
    ]
    if args.jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_worker, payloads))
    else:
        results = [_batch_worker(p) for p in payloads]
    rows = [row for _, row in sorted(results, key=lambda r: r[0])]
    write_report_csv(args.out, rows)

    orders = {row.order for row in rows if row.order is not None}
    if manifest.declared_order is not None:
        order_tag = str(manifest.declared_order)
    elif len(orders) == 1:
        order_tag = str(orders.pop())
    else:
        order_tag = "?"
    t_count = sum(1 for row in rows if row.t_le_d3 is True)
    h_count = sum(1 for row in rows if row.h_le_d3 is True)
    print(f"order={order_tag} groups={len(rows)} t_le_d3={t_count} h_le_d3={h_count}")
    return 1 if any(row.error for row in rows) else 0


def _cmd_analyze(args) -> int:
    spec = parse_group_spec(args.spec)
    row, report = evaluate_spec(
        spec.name,
        spec,
        exact_beta=args.exact_beta,
        order_limit=args.order_limit,
        with_runtime=True,
    )
    degrees = " ".join(str(d) for d in character_degrees(realize_group_spec(spec, order_limit=args.order_limit)).degrees)
    print(f"group: {row.name}")
    print(f"order: {row.order}")
    print(f"abelian: {_cell(row.is_abelian)}")
    print(f"subgroups: {row.subgroup_count}")
    print(f"classes: {row.class_count}")
    print(f"degrees: {degrees}")
    print(f"d3: {row.d3}")
    print(f"N: {report.N}")
    print(f"t: {row.t}")
    print(f"b: {_cell(row.b_or_blank)}")
    print(f"h: {row.h}")
    if args.exact_beta:
        print(f"beta_g: {_cell(row.beta_g_or_blank)}")
        witness = report.beta_witness
        print(f"beta_witness: {','.join(map(str, witness)) if witness else ''}")
    print(f"t_le_d3: {_cell(row.t_le_d3)}")
    print(f"h_le_d3: {_cell(row.h_le_d3)}")
    print(f"runtime_ms: {row.runtime_ms}")
    if args.verbose:
        print("candidates:")
        for c in report.candidates:
            print(
                f"  i={c.index} order={c.order} core={c.core_size}"
                f" delta={_cell(c.delta)} left={c.left}"
                f" right={_cell(c.right)} min={_cell(c.minimum)}"
            )
    return 0


def _parse_elements(G: Group, text: str) -> ElementSet:
    indices = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token.isdigit():
            index = int(token)
            if index >= G.order:
                raise errors.UnknownElement(f"index {index} outside 0..{G.order - 1}")
        else:
            index = G.index_of_label(token)
        indices.append(index)
    if not indices:
        raise errors.EmptySet("element list is empty")
    return ElementSet.from_indices(indices)


def _cmd_verify_tpp(args) -> int:
    spec = parse_group_spec(args.spec)
    G = realize_group_spec(spec, order_limit=args.order_limit)
    s = _parse_elements(G, args.s)
    t = _parse_elements(G, args.t)
    u = _parse_elements(G, args.u)
    verdict = verify_triple_report(G, s, t, u)
    sizes = f"sizes ({len(s)}, {len(t)}, {len(u)})"
    if verdict.holds:
        print(f"TPP holds for {spec.name} with {sizes}")
        return 0
    ws, wt, wu = verdict.witness_labels
    print(f"TPP fails for {spec.name} with {sizes}")
    print(f"witness: s={ws!r} t={wt!r} u={wu!r}")
    return 1


def _cmd_degrees(args) -> int:
    spec = parse_group_spec(args.spec)
    G = realize_group_spec(spec, order_limit=args.order_limit)
    degrees = character_degrees(G)
    print(f"group: {spec.name}")
    print(f"order: {G.order}")
    print(f"classes: {len(degrees.degrees)}")
    print(f"degrees: {' '.join(str(d) for d in degrees.degrees)}")
    print(f"d3: {d_sum_int(degrees, 3)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tppb",
        description="Subgroup-triple capacity bounds and character-degree sums "
        "for finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="evaluate all bounds for one group")
    analyze.add_argument("spec")
    analyze.add_argument("--exact-beta", action="store_true")
    analyze.add_argument("--verbose", action="store_true")
    analyze.add_argument("--order-limit", type=int, default=None)
    analyze.set_defaults(func=_cmd_analyze)

    batch = sub.add_parser("batch", help="evaluate a manifest into a CSV report")
    batch.add_argument("manifest")
    batch.add_argument("--out", required=True)
    batch.add_argument("--jobs", type=int, default=1)
    batch.add_argument("--exact-beta", action="store_true")
    batch.add_argument("--order-limit", type=int, default=None)
    batch.set_defaults(func=_cmd_batch)

    verify = sub.add_parser("verify-tpp", help="check one explicit subset triple")
    verify.add_argument("spec")
    verify.add_argument("--s", required=True)
    verify.add_argument("--t", required=True)
    verify.add_argument("--u", required=True)
    verify.add_argument("--order-limit", type=int, default=None)
    verify.set_defaults(func=_cmd_verify_tpp)

    degrees = sub.add_parser("degrees", help="print irreducible character degrees")
    degrees.add_argument("spec")
    degrees.add_argument("--order-limit", type=int, default=None)
    degrees.set_defaults(func=_cmd_degrees)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except errors.TppbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
