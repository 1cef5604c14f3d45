"""Survey rows: lambda and y for one-parameter maps vartheta_a over a range of levels."""
from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .homspace import HomGamma, default_precision, one_parameter
from .jacobi import compute_lambda
from .padic import make_context

CSV_HEADER = ("p", "a", "i", "rho", "v", "lambda", "y", "wj", "wk", "wl", "ms")


@dataclass(frozen=True)
class SurveyRow:
    p: int
    a: object  # int, or "mixed" for a general gamma
    i: int
    rho: int
    v: int
    lam: int
    y: int
    witness: tuple
    ms: int

    @property
    def one_parameter(self) -> bool:
        return self.a != "mixed"

    def csv_fields(self) -> list:
        return [self.p, self.a, self.i, self.rho, self.v, self.lam, self.y, *self.witness, self.ms]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "i": self.i,
            "rho": self.rho,
            "v": self.v,
            "lambda": self.lam,
            "y": self.y,
            "y_main": self.lam - (3 * self.i + 13 - 2 * self.p),
            "witness": list(self.witness),
            "ms": self.ms,
        }


def gamma_row(g: HomGamma, timing: bool = True) -> SurveyRow:
    """Row for an arbitrary gamma; y = lambda - (3i+3) when gamma = c vartheta_a with c a unit."""
    t0 = time.perf_counter()
    rep = compute_lambda(g)
    ms = round((time.perf_counter() - t0) * 1000) if timing else 0
    if g.is_one_parameter():
        (a,) = g.coeffs
        y = rep.lam - (3 * g.i + 3)
    else:
        a = "mixed"
        y = rep.y_main
    return SurveyRow(g.p, a, g.i, rep.rho, rep.v, rep.lam, y, tuple(rep.witness), ms)


def survey_row(p: int, a: int, i: int, precision: int | None = None, timing: bool = True) -> SurveyRow:
    ctx = make_context(p, precision or default_precision(p, i))
    return gamma_row(one_parameter(ctx, a, i), timing)


def _row_args(args):
    return survey_row(*args)


def survey(p: int, a_set, i_values, precision: int | None = None, jobs: int = 1, timing: bool = True) -> list:
    """One row per (a, i), in input order, optionally computed in a process pool."""
    tasks = [(p, a, i, precision, timing) for a in a_set for i in i_values]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row_args, tasks))
    return [survey_row(*t) for t in tasks]


# -- formatting --------------------------------------------------------------


def format_rows(rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow(r.csv_fields())
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([r.to_json() for r in rows], indent=1) + "\n"
    lines = ["{:>3} {:>5} {:>3} {:>4} {:>4} {:>6} {:>3}  {:<12} {:>6}".format(
        "p", "a", "i", "rho", "v", "lambda", "y", "witness", "ms")]
    for r in rows:
        wit = "(" + ",".join(map(str, r.witness)) + ")"
        lines.append("{:>3} {:>5} {:>3} {:>4} {:>4} {:>6} {:>3}  {:<12} {:>6}".format(
            r.p, str(r.a), r.i, r.rho, r.v, r.lam, r.y, wit, r.ms))
    return "\n".join(lines) + "\n"


def format_matrix(rows, fmt: str, labels: dict | None = None) -> str:
    """Row-major integer matrix; text is one space-separated line per row."""
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        obj = dict(labels or {})
        obj["rows"] = [list(r) for r in rows]
        return json.dumps(obj) + "\n"
    return "".join(" ".join(str(x) for x in r) + "\n" for r in rows)
