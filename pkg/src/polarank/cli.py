"""Command-line interface.

Subcommands: verify, table, export, rank, formula, dmatrix, posets,
lab verify-lemmas.  Exit codes: 0 success (and, for verify, formula/oracle
match); 2 a scientific mismatch between formula and oracle; 1 operational
errors.  A mismatch never masquerades as an operational failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import dimensions, geometry, incidence, ranks
from .errors import PolarankError, RangeError, ResourceCapExceeded
from .gf import build_field
from .reports import RankReport, Timer, field_descriptor, library_version

DEFAULT_CELL_CAP = 500_000_000  # admits the q = 27 job at ~4.2e8 cells

EXIT_OK = 0
EXIT_OPERATIONAL = 1
EXIT_MISMATCH = 2


@dataclass
class VerifyJob:
    m: int
    p: int
    t: int
    r: int
    mode: str = "cross-validate"
    out: str | None = None
    max_cells: int = DEFAULT_CELL_CAP
    force: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.m < 2:
            raise RangeError("m >= 2")
        if self.t < 1:
            raise RangeError("t >= 1")
        if not 1 <= self.r <= 2 * self.m - 1:
            raise RangeError(f"r={self.r} outside [1, {2 * self.m - 1}]")

    def flat_count(self) -> int:
        q = self.p**self.t
        r_eff = self.r if self.r <= self.m else 2 * self.m - self.r
        return geometry.isotropic_count(self.m, r_eff, q)

    def cell_count(self) -> int:
        return self.flat_count() * geometry.point_count(self.m, self.p**self.t)

    def check_cap(self):
        cells = self.cell_count()
        if cells > self.max_cells and not self.force:
            raise ResourceCapExceeded(
                f"{cells} matrix cells exceed the cap {self.max_cells}; "
                "pass --force to override"
            )


def _emit(doc: dict, out_path, fmt: str = "json") -> None:
    if fmt == "json":
        text = json.dumps(doc, indent=2, sort_keys=True)
    else:
        text = _to_csv(doc)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _to_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    if doc.get("report") == "rank-table":
        writer.writerow(["t"] + [f"p={c['p']}" for c in doc["columns"]])
        for i, t in enumerate(doc["t_values"]):
            writer.writerow([t] + [c["ranks"][i] for c in doc["columns"]])
    else:
        for key in sorted(doc):
            writer.writerow([key, json.dumps(doc[key])])
    return buf.getvalue().rstrip("\n")


def _build_matrix(job: VerifyJob):
    space = geometry.SymplecticSpace(job.m, build_field(job.p, job.t))
    return incidence.build_incidence(space, job.r)


def cmd_verify(job: VerifyJob) -> tuple[dict, int]:
    report = RankReport(job.m, job.p, job.t, job.r, mode=job.mode)
    if job.r > job.m:
        report.notes.append(
            "coisotropic flats (r > m): unsigned ideal formula, dual convention"
        )
    if job.mode in ("formula-only", "cross-validate"):
        timer = Timer()
        report.formula_rank = dimensions.rank_point_flat(job.m, job.p, job.t, job.r)
        report.timings["formula_s"] = timer.elapsed()
    if job.mode in ("oracle-only", "cross-validate"):
        job.check_cap()
        timer = Timer()
        mat = _build_matrix(job)
        report.timings["build_s"] = timer.elapsed()
        timer = Timer()
        report.oracle_rank = ranks.rank_mod_p(mat)
        report.timings["rank_s"] = timer.elapsed()
    report.finalize()
    doc = report.to_json()
    if report.match is False:
        return doc, EXIT_MISMATCH
    return doc, EXIT_OK


def cmd_table(m: int, p_list, t_max: int) -> dict:
    t_values = list(range(1, t_max + 1))
    columns = []
    if m == 2:
        columns.append(
            {"p": 2, "ranks": [dimensions.rank_W3_char2(t) for t in t_values]}
        )
    for p in p_list:
        columns.append(
            {
                "p": p,
                "ranks": [dimensions.rank_point_flat(m, p, t, m) for t in t_values],
            }
        )
    return {
        "report": "rank-table",
        "m": m,
        "t_values": t_values,
        "columns": columns,
        "version": library_version(),
    }


def cmd_export(job: VerifyJob, path: str, fmt: str = "v1") -> dict:
    job.check_cap()
    mat = _build_matrix(job)
    if fmt == "mm":
        incidence.write_matrix_market(mat, path)
    else:
        incidence.write_matrix(mat, path)
    sums_r = set(mat.row_sums())
    sums_c = set(mat.col_sums())
    assert len(sums_r) == 1 and len(sums_c) == 1
    return {
        "report": "export-metadata",
        "m": job.m,
        "p": job.p,
        "t": job.t,
        "r": job.r,
        "rows": mat.rows,
        "cols": mat.cols,
        "row_sum": sums_r.pop(),
        "col_sum": sums_c.pop(),
        "nnz": mat.nnz(),
        "format": fmt,
        "path": path,
        "sha256": incidence.file_checksum(path),
        "version": library_version(),
        "field": field_descriptor(job.p, job.t),
    }


def cmd_rank(path: str) -> dict:
    mat = incidence.read_matrix(path)
    return {
        "report": "matrix-rank",
        "rows": mat.rows,
        "cols": mat.cols,
        "modulus": mat.modulus,
        "rank": ranks.rank_mod_p(mat),
    }


def cmd_formula(m: int, p: int, t: int, r: int, all_t: int | None = None) -> dict:
    report = RankReport(m, p, t, r, mode="formula-only")
    report.formula_rank = dimensions.rank_point_flat(m, p, t, r)
    if r > m:
        report.notes.append(
            "coisotropic flats (r > m): unsigned ideal formula, dual convention"
        )
    if all_t:
        report.notes.append(
            "ranks for t=1..%d: %s"
            % (all_t, [dimensions.rank_point_flat(m, p, tt, r) for tt in range(1, all_t + 1)])
        )
    return report.finalize().to_json()


def cmd_dmatrix(m: int, p: int) -> dict:
    d = dimensions.build_D_matrix(m, p)
    return {
        "report": "transfer-matrix",
        "m": m,
        "p": p,
        "entries": [list(row) for row in d.entries],
        "trace": d.trace(),
        "det": d.det(),
        "version": library_version(),
    }


def cmd_posets(m: int, p: int, t: int, d: int = 0) -> dict:
    from . import posets

    h = posets.enumerate_H(m, p, t)
    hd = posets.enumerate_H_d(m, p, t, d)
    s = posets.enumerate_S(m, p, t, d)
    return {
        "report": "posets",
        "m": m,
        "p": p,
        "t": t,
        "d": d,
        "H": [list(x.s) for x in h],
        "H_d": [list(x.s) for x in hd],
        "S": [{"s": list(a.s), "eps": sorted(a.eps)} for a in s],
        "version": library_version(),
    }


def cmd_lab_verify(m: int, p: int, t: int) -> tuple[dict, int]:
    from . import labchecks

    doc = labchecks.verify_lemmas(m, p, t)
    return doc, EXIT_OK if doc["passed"] else EXIT_MISMATCH


def _add_common(sub, *flags):
    if "m" in flags:
        sub.add_argument("--m", type=int, required=True, help="half-dimension, m >= 2")
    if "p" in flags:
        sub.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    if "t" in flags:
        sub.add_argument("--t", type=int, required=True, help="field degree, q = p^t")
    if "r" in flags:
        sub.add_argument("--r", type=int, required=True, help="flat dimension, 1..2m-1")
    sub.add_argument("--out", default=None, help="write the report to this path")
    sub.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for interface compatibility; kernels are single-threaded",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polarank",
        description="Exact p-ranks of point-flat incidence in W(2m-1, p^t): "
        "geometry oracle vs representation-theoretic formulas.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp_verify = sub.add_parser("verify", help="cross-validate formula against the matrix oracle")
    _add_common(sp_verify, "m", "p", "t", "r")
    sp_verify.add_argument("--mode", choices=["formula-only", "oracle-only", "cross-validate"], default="cross-validate")
    sp_verify.add_argument("--max-cells", type=int, default=DEFAULT_CELL_CAP)
    sp_verify.add_argument("--force", action="store_true", help="override the cell cap")

    sp_table = sub.add_parser("table", help="formula rank table over p and t")
    sp_table.add_argument("--m", type=int, required=True)
    sp_table.add_argument("--p", type=int, nargs="+", required=True, help="odd primes")
    sp_table.add_argument("--t-max", type=int, required=True)
    sp_table.add_argument("--format", choices=["json", "csv"], default="json")
    sp_table.add_argument("--out", default=None)
    sp_table.add_argument("--threads", type=int, default=1, help=argparse.SUPPRESS)

    sp_export = sub.add_parser("export", help="write an incidence matrix file plus metadata")
    _add_common(sp_export, "m", "p", "t", "r")
    sp_export.add_argument("--matrix-out", required=True, help="matrix file destination")
    sp_export.add_argument("--format", choices=["v1", "mm"], default="v1")
    sp_export.add_argument("--max-cells", type=int, default=DEFAULT_CELL_CAP)
    sp_export.add_argument("--force", action="store_true")

    sp_rank = sub.add_parser("rank", help="rank of a matrix file over its modulus")
    sp_rank.add_argument("matrixfile")
    sp_rank.add_argument("--out", default=None)
    sp_rank.add_argument("--threads", type=int, default=1, help=argparse.SUPPRESS)

    sp_formula = sub.add_parser("formula", help="formula rank only (no matrix build)")
    _add_common(sp_formula, "m", "p", "t", "r")
    sp_formula.add_argument("--all-t", type=int, default=None, help="also list t=1..N")

    sp_dm = sub.add_parser("dmatrix", help="the exact m x m transfer matrix")
    sp_dm.add_argument("--m", type=int, required=True)
    sp_dm.add_argument("--p", type=int, required=True)
    sp_dm.add_argument("--out", default=None)
    sp_dm.add_argument("--threads", type=int, default=1, help=argparse.SUPPRESS)

    sp_po = sub.add_parser("posets", help="dump H, H[d], S as JSON or a DOT Hasse diagram")
    sp_po.add_argument("--m", type=int, required=True)
    sp_po.add_argument("--p", type=int, required=True)
    sp_po.add_argument("--t", type=int, required=True)
    sp_po.add_argument("--d", type=int, default=0)
    sp_po.add_argument("--dot", choices=["h", "s"], default=None, help="emit DOT for this poset instead of JSON")
    sp_po.add_argument("--out", default=None)
    sp_po.add_argument("--threads", type=int, default=1, help=argparse.SUPPRESS)

    sp_lab = sub.add_parser("lab", help="function-space laboratory")
    lab_sub = sp_lab.add_subparsers(dest="lab_command", required=True)
    sp_lemmas = lab_sub.add_parser("verify-lemmas", help="run the operator-identity suites")
    sp_lemmas.add_argument("--m", type=int, required=True)
    sp_lemmas.add_argument("--p", type=int, required=True)
    sp_lemmas.add_argument("--t", type=int, required=True)
    sp_lemmas.add_argument("--out", default=None)
    sp_lemmas.add_argument("--threads", type=int, default=1, help=argparse.SUPPRESS)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = EXIT_OK
        if args.command == "verify":
            job = VerifyJob(
                args.m, args.p, args.t, args.r,
                mode=args.mode, out=args.out,
                max_cells=args.max_cells, force=args.force, threads=args.threads,
            )
            doc, code = cmd_verify(job)
            _emit(doc, args.out)
        elif args.command == "table":
            doc = cmd_table(args.m, args.p, args.t_max)
            _emit(doc, args.out, args.format)
        elif args.command == "export":
            job = VerifyJob(
                args.m, args.p, args.t, args.r,
                max_cells=args.max_cells, force=args.force, threads=args.threads,
            )
            doc = cmd_export(job, args.matrix_out, args.format)
            _emit(doc, args.out)
        elif args.command == "rank":
            _emit(cmd_rank(args.matrixfile), args.out)
        elif args.command == "formula":
            _emit(cmd_formula(args.m, args.p, args.t, args.r, args.all_t), args.out)
        elif args.command == "dmatrix":
            _emit(cmd_dmatrix(args.m, args.p), args.out)
        elif args.command == "posets":
            if args.dot:
                from . import posets

                text = posets.hasse_dot(args.m, args.p, args.t, args.d, args.dot)
                if args.out:
                    with open(args.out, "w", encoding="utf-8") as fh:
                        fh.write(text + "\n")
                else:
                    print(text)
            else:
                _emit(cmd_posets(args.m, args.p, args.t, args.d), args.out)
        elif args.command == "lab":
            doc, code = cmd_lab_verify(args.m, args.p, args.t)
            _emit(doc, args.out)
        return code
    except PolarankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPERATIONAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPERATIONAL


if __name__ == "__main__":
    sys.exit(main())
