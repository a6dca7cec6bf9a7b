"""Command line interface: recipcurves <subcommand> ..."""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .artin_schreier import ArtinSchreierCurve, count_as, genus_as
from .covers import DegreeDeficiency
from .fibre_product import count_points_fibre, genus_fibre, make_fibre
from .field_tower import make_tower, tower_for_q
from .kummer_curve import HypothesisError, ReciprocalKummer, count_points, genus_general
from .polynomial import Poly, format_poly, parse_poly
from .records import RecordTable, classify, load_default_table, many_points_threshold
from .rows import ReportRow, rows_to_csv, rows_to_json
from .search import COEFF_MODES, FAMILIES, SearchConfig, search
from .tables import UnknownTable, reproduce_table, table_ids


def _ints(text: str) -> list[int]:
    """'2,3,5' or '2-6' or a mix."""
    out = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _tower(args):
    if args.q is not None:
        return tower_for_q(args.q)
    if args.p is None:
        raise SystemExit("give --q or --p (with --n)")
    return make_tower(args.p, args.n)


def _table(args) -> RecordTable:
    return RecordTable.from_csv(args.table) if args.table else load_default_table()


def _field_args(p):
    p.add_argument("--q", type=int, help="field size q (curves live over F_{q^2})")
    p.add_argument("--p", type=int, help="characteristic")
    p.add_argument("--n", type=int, default=1, help="q = p^n")
    p.add_argument("--table", help="record table CSV (q,g,lower,upper); default: shipped fixture")


def _single_args(p):
    _field_args(p)
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--eps", type=int, default=-1, choices=(-1, 1))
    p.add_argument("--lam", type=int, default=1, choices=(-1, 1))
    p.add_argument("--f", help='polynomial over F_q, e.g. "x^2+xi^3"')


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=1))


def cmd_field_info(args) -> int:
    T = _tower(args)
    _emit(T.header())
    return 0


def _single_curve(args, T) -> ReciprocalKummer:
    if args.m is None or args.f is None:
        raise SystemExit("--m and --f are required")
    return ReciprocalKummer(T.q, args.m, args.s, args.eps, args.lam, parse_poly(args.f, T.small), T)


def _batch_rows(path, table) -> tuple[list[ReportRow], int]:
    """Rows q,m,b,s,family[,d][,f][,g][,points]; returns (rows, number of mismatches)."""
    rows, bad = [], 0
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            q, m, s = int(rec["q"]), int(rec["m"]), int(rec["s"])
            fam = rec.get("family") or "THM41"
            eps, lam = (-1, 1) if fam == "THM41" else (1, -1)
            T = tower_for_q(q)
            if rec.get("f"):
                f = parse_poly(rec["f"], T.small)
            else:
                d = int(rec.get("d") or 1)
                f = Poly.monomial(T.small, d) + parse_poly(rec["b"], T.small)
            rep = count_points(ReciprocalKummer(q, m, s, eps, lam, f, T), table)
            v = rep.verdict
            note = "; ".join(rep.notes)
            for key, got in (("g", rep.genus), ("points", rep.points)):
                if rec.get(key) and int(rec[key]) != got:
                    bad += 1
                    note = "; ".join(x for x in (note, f"expected {key}={rec[key]}") if x)
            rows.append(ReportRow(
                family=fam, q=q, m=m, f=format_poly(f), s=s, g=rep.genus, points=rep.points,
                olb=v.lower if v.lower is not None else v.L, verdict=v.kind.value,
                maximal=rep.maximal, note=note,
            ))
    return rows, bad


def cmd_count(args) -> int:
    table = _table(args)
    if args.batch:
        rows, bad = _batch_rows(args.batch, table)
        sys.stdout.write(rows_to_csv(rows))
        return 1 if bad else 0
    c = _single_curve(args, _tower(args))
    print(count_points(c, table).to_json())
    return 0


def cmd_genus(args) -> int:
    c = _single_curve(args, _tower(args))
    out = {"riemann_hurwitz": c.genus_rh()}
    try:
        out["closed_general"] = genus_general(c)
    except HypothesisError as exc:
        out["closed_general"] = None
        out["note"] = str(exc)
    _emit(out)
    return 0


def cmd_count_fibre(args) -> int:
    T = _tower(args)
    fp = make_fibre(T.q, args.m1, args.s1, args.f1, args.m2, args.s2, args.f2, args.family)
    rep = count_points_fibre(fp, _table(args))
    d = rep.to_dict()
    for mode in ("CLOSED61", "CLOSED63"):
        try:
            d[f"genus_{mode.lower()}"] = genus_fibre(fp, mode)
        except HypothesisError:
            pass
    _emit(d)
    return 0


def cmd_count_as(args) -> int:
    T = _tower(args)
    c = ArtinSchreierCurve(T.q, args.s, parse_poly(args.f, T.small), T)
    rep = count_as(c, _table(args))
    assert rep.genus == genus_as(c)
    print(rep.to_json())
    return 0


def cmd_search(args) -> int:
    cfg = SearchConfig(
        family=args.family,
        qs=_ints(args.qs),
        d_max=args.d_max,
        coeffs=args.coeffs,
        m_values=_ints(args.m) if args.m else None,
        s_values=_ints(args.s) if args.s else None,
        d_values=_ints(args.d) if args.d else None,
        b_values=_ints(args.b) if args.b else None,
        threshold=args.threshold,
        table_path=args.table,
        threads=args.threads,
        checkpoint=args.checkpoint,
    )
    table = None if args.table else load_default_table()
    rows = search(cfg, table)
    text = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_reproduce(args) -> int:
    ids = table_ids() if args.table == "all" else [args.table]
    records = RecordTable.from_csv(args.records) if args.records else load_default_table()
    status = 0
    for tid in ids:
        try:
            rep = reproduce_table(tid, records)
        except UnknownTable as exc:
            print(exc.args[0], file=sys.stderr)
            return 2
        if args.verbose:
            sys.stdout.write(rows_to_csv(rep.rows))
        print(f"table {tid}: {len(rep.rows)} rows, {len(rep.diff)} differences")
        for line in rep.diff:
            print(f"  DIFF {line}")
        if not rep.ok:
            status = 1
    return status


def cmd_records(args) -> int:
    table = _table(args)
    if args.points is not None:
        if args.q is None or args.g is None:
            raise SystemExit("--points needs --q and --g")
        _emit(classify(args.points, args.q, args.g, table).to_dict())
        return 0
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["q", "g", "lower", "upper", "L"])
    for (q, g), e in sorted(table.entries.items()):
        w.writerow([q, g, "" if e.lower is None else e.lower, e.upper, many_points_threshold(q, g, e.upper)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="recipcurves", description="Curves y^m = x^{eps s} f f*^lam over F_{q^2}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="the tower F_q < F_{q^2} and its conventions")
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_field_info)

    p = sub.add_parser("count", help="exact point count of one curve (or --batch CSV)")
    _single_args(p)
    p.add_argument("--batch", help="CSV with columns q,m,b,s,family[,d][,f][,g][,points]")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("genus", help="genus by the closed formula and by Riemann-Hurwitz")
    _single_args(p)
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("count-fibre", help="fibre product of two covers")
    _field_args(p)
    for i in (1, 2):
        p.add_argument(f"--m{i}", type=int, required=True)
        p.add_argument(f"--s{i}", type=int, default=0)
        p.add_argument(f"--f{i}", required=True)
    p.add_argument("--family", choices=("61", "63"), default="61")
    p.set_defaults(func=cmd_count_fibre)

    p = sub.add_parser("count-as", help="y^q + y = f f*/x^s")
    _field_args(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--f", required=True)
    p.set_defaults(func=cmd_count_as)

    p = sub.add_parser("search", help="sweep a family over a parameter grid")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--q", dest="qs", required=True, help="e.g. 5,7,9 or 5-13")
    p.add_argument("--d-max", type=int, default=2)
    p.add_argument("--coeffs", choices=COEFF_MODES, default="binomial")
    p.add_argument("--m")
    p.add_argument("--s")
    p.add_argument("--d", help="explicit polynomial degrees (overrides --d-max)")
    p.add_argument("--b", help="restrict b (as F_q codes) for the closed families")
    p.add_argument("--threshold", default="NONE", choices=("NONE", "MANY_POINTS", "NEW_ENTRY", "MEETS_RECORD", "NEW_RECORD"))
    p.add_argument("--table")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--checkpoint", help="resumable cursor file, updated after each (q, m) cell")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reproduce", help="recompute a stored example table")
    p.add_argument("--table", dest="table", required=True, help=f"one of {', '.join(table_ids())} or 'all'")
    p.add_argument("--records", dest="records", help="record table CSV")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("records", help="list or query a record table")
    p.add_argument("--table")
    p.add_argument("--q", type=int, help="field size q^2 of the curve's base field")
    p.add_argument("--g", type=int)
    p.add_argument("--points", type=int)
    p.set_defaults(func=cmd_records)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HypothesisError, DegreeDeficiency, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
