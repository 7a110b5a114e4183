"""Command-line front end.

    quadwalk count --model gessel --max-n 8 --end 0,0
    quadwalk kernel --model kreweras --order 6 --show symfuns
    quadwalk verify --check all --order 24
    quadwalk multistep --lambda 2 --order 20 --check all
    quadwalk classify --all
    quadwalk report --format csv

Exit status is 0 when every check passes, 1 when one fails and 2 on a
usage error.  Output depends only on the flags.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .checks import DEFAULT_ORDERS, GESSEL_CHECKS, WEIGHTED_CHECKS, run_gessel_checks, run_weighted_check
from .kernel import build_kernel, group_orbit, is_xbar_polynomial, kernel_roots, symmetric_functions
from .multistep import TESTED_LAMBDAS, classification_table, classify, classify_kernel_symmetry
from .report import Report
from .walks import DEFAULT_LAMBDA_BOUND, MODEL_NAMES, UNWEIGHTED, count_walks, get_model, gessel_closed_form

COMMANDS = ("count", "kernel", "verify", "multistep", "classify", "report")
FORMATS = ("json", "csv", "text")
SEQUENCE_RANGE = range(0, 13)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    model: str = "gessel"
    order: Optional[int] = None
    lam: int = 1
    format: str = "json"
    out: Optional[str] = None
    check: str = "all"
    show: str = "roots"
    max_n: int = 10
    end: Optional[Tuple[int, int]] = None
    all_models: bool = False
    jobs: int = 1
    corrupt: Optional[Tuple[int, int, int]] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.order is not None and self.order < 0:
            raise UsageError("--order must be non-negative")
        if self.max_n < 0:
            raise UsageError("--max-n must be non-negative")
        if self.lam < 0:
            raise UsageError("--lambda must be non-negative")
        if self.lam > DEFAULT_LAMBDA_BOUND:
            raise UsageError(f"--lambda is capped at {DEFAULT_LAMBDA_BOUND}")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        try:
            get_model(self.model, self.lam)
        except (KeyError, ValueError):
            raise UsageError(f"unknown model {self.model!r}; choose from {', '.join(MODEL_NAMES)}")
        if self.command == "verify" and self.check not in GESSEL_CHECKS + ("all",):
            raise UsageError(f"unknown check {self.check!r}")
        if self.command == "multistep" and self.check not in WEIGHTED_CHECKS + ("all",):
            raise UsageError(f"unknown check {self.check!r}")


# ---------------------------------------------------------------------------
# rendering


def _encode(obj, depth: int = 0) -> str:
    """JSON with two-space indentation; lists of scalars stay on one line."""
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_encode(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return json.dumps(list(obj))
        return "[\n" + ",\n".join(inner + _encode(v, depth + 1) for v in obj) + "\n" + pad + "]"
    return json.dumps(obj)


def _dump_json(doc) -> str:
    return _encode(doc) + "\n"


def _dump_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _mark(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


REPORT_CSV_HEADER = ("check", "item", "order", "pass", "first_failing_order", "residual_sample")


def _report_rows(reports: List[Report]):
    for rep in reports:
        for r in rep.results:
            yield (rep.check, r.name, r.order, str(r.passed).lower(),
                   "" if r.first_failing_order is None else r.first_failing_order,
                   r.residual_sample or r.note or "")


def _report_text(reports: List[Report]) -> str:
    lines = []
    for rep in reports:
        lines.append(f"{_mark(rep.passed)} {rep.check} (order {rep.order})")
        for r in rep.results:
            line = f"  {_mark(r.passed)} {r.name}"
            if r.first_failing_order is not None:
                line += f" first failing order {r.first_failing_order}: {r.residual_sample}"
            elif r.note:
                line += f" ({r.note})"
            lines.append(line)
    return "\n".join(lines) + "\n"


def render_reports(reports: List[Report], fmt: str, name: str, order: Optional[int]) -> str:
    if fmt == "csv":
        return _dump_csv(REPORT_CSV_HEADER, _report_rows(reports))
    if fmt == "text":
        return _report_text(reports)
    if len(reports) == 1:
        return _dump_json(reports[0].to_json())
    doc = {"check": name, "order": order, "pass": all(r.passed for r in reports)}
    bad = [r.first_failing_order for r in reports if r.first_failing_order is not None]
    if bad:
        doc["first_failing_order"] = min(bad)
        first = next(r for r in reports if r.first_failing_order == min(bad))
        doc["residual_sample"] = first.to_json()["residual_sample"]
    doc["reports"] = [r.to_json() for r in reports]
    return _dump_json(doc)


# ---------------------------------------------------------------------------
# commands


def _count(cfg: RunConfig) -> Tuple[str, int]:
    model = get_model(cfg.model, cfg.lam)
    table = count_walks(model, cfg.max_n)
    if cfg.end is not None:
        i, j = cfg.end
        rows = [(n, i, j, table(i, j, n)) for n in range(table.maxn + 1)]
    else:
        rows = list(table.nonzero())
    if cfg.format == "csv":
        return _dump_csv(("n", "i", "j", "value"), rows), 0
    if cfg.format == "text":
        return "".join(f"{n} {i} {j} {v}\n" for n, i, j, v in rows), 0
    doc = {"model": model.name, "maxn": table.maxn, "counts": [[n, i, j, str(v)] for n, i, j, v in rows]}
    return _dump_json(doc), 0


def _kernel(cfg: RunConfig) -> Tuple[str, int]:
    model = get_model(cfg.model, cfg.lam)
    order = 6 if cfg.order is None else cfg.order
    k = build_kernel(model)
    roots = kernel_roots(k, order)
    doc = {"model": model.name, "steps": model.label(), "kernel": str(k), "order": order}
    ok = True
    if cfg.show == "roots":
        res = [r.first_nonzero() is None or r.first_nonzero() > order for r in roots.residuals()]
        ok = all(res)
        doc["Y0"] = roots.y0
        doc["Y1"] = roots.y1
        doc["K(x,Yi)=0"] = ok
    elif cfg.show == "symfuns":
        sf = symmetric_functions(roots)
        doc["predicate"] = classify_kernel_symmetry(model)
        if sf is None:
            doc["Y0+Y1"] = doc["Y0*Y1"] = None
            doc["xbar_polynomial"] = False
        else:
            doc["Y0+Y1"], doc["Y0*Y1"] = sf
            doc["xbar_polynomial"] = all(is_xbar_polynomial(s) for s in sf)
        ok = doc["predicate"] == doc["xbar_polynomial"]
    else:
        orbit = group_orbit(k, order=order)
        doc["group_order"] = len(orbit)
        doc["orbit"] = [
            {"word": el.word or "id", "pair": el.label, "substitutable": bool(el.substitutable),
             **({"note": el.note} if el.note else {})}
            for el in orbit
        ]
    if cfg.format == "json":
        return _dump_json(_jsonable(doc)), 0 if ok else 1
    if cfg.format == "csv":
        if cfg.show == "orbit":
            rows = [(e["word"], e["pair"], str(e["substitutable"]).lower()) for e in doc["orbit"]]
            return _dump_csv(("word", "pair", "substitutable"), rows), 0
        rows = [(key, _text(v)) for key, v in doc.items()]
        return _dump_csv(("field", "value"), rows), 0 if ok else 1
    lines = []
    for key, v in doc.items():
        if key == "orbit":
            for e in v:
                flag = "substitutable" if e["substitutable"] else "not substitutable"
                lines.append(f"  {e['word']}: {e['pair']} {flag}" + (f" ({e['note']})" if "note" in e else ""))
        else:
            lines.append(f"{key}: {_text(v)}")
    return "\n".join(lines) + "\n", 0 if ok else 1


def _text(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return str(v).lower()
    if hasattr(v, "to_text"):
        return v.to_text()
    return str(v)


def _jsonable(doc):
    out = {}
    for key, v in doc.items():
        out[key] = v.to_json() if hasattr(v, "to_json") else v
    return out


def _verify(cfg: RunConfig) -> Tuple[str, int]:
    names = GESSEL_CHECKS if cfg.check == "all" else (cfg.check,)
    reports = run_gessel_checks(names, cfg.order, cfg.corrupt, cfg.jobs)
    return render_reports(reports, cfg.format, cfg.check, cfg.order), 0 if all(r.passed for r in reports) else 1


def _multistep(cfg: RunConfig) -> Tuple[str, int]:
    names = WEIGHTED_CHECKS if cfg.check == "all" else (cfg.check,)
    order = 20 if cfg.order is None else cfg.order
    reports = [run_weighted_check(name, cfg.lam, order) for name in names]
    return render_reports(reports, cfg.format, cfg.check, order), 0 if all(r.passed for r in reports) else 1


CLASSIFY_HEADER = ("model", "steps", "predicate", "roots_symmetric", "agree", "group_order")


def _classification_rows(rows):
    return [(r.model, r.steps, str(r.predicate).lower(), str(r.roots_symmetric).lower(),
             str(r.agree).lower(), r.group_order) for r in rows]


def _classification_doc(rows) -> dict:
    return {
        "models": [dict(zip(CLASSIFY_HEADER, (r.model, r.steps, r.predicate, r.roots_symmetric, r.agree, r.group_order)))
                   for r in rows],
        "flagged_unweighted": [r.model for r in rows if r.model in UNWEIGHTED and r.predicate],
        "all_agree": all(r.agree for r in rows),
    }


def _classify(cfg: RunConfig) -> Tuple[str, int]:
    order = 10 if cfg.order is None else cfg.order
    if cfg.all_models:
        rows = classification_table(order=order)
    else:
        rows = [classify(get_model(cfg.model, cfg.lam), order)]
    status = 0 if all(r.agree for r in rows) else 1
    if cfg.format == "csv":
        return _dump_csv(CLASSIFY_HEADER, _classification_rows(rows)), status
    if cfg.format == "text":
        lines = [f"{r.model:<20} {r.steps:<28} symmetric-kernel={str(r.predicate).lower():<5} "
                 f"roots={str(r.roots_symmetric).lower():<5} group={r.group_order}" for r in rows]
        return "\n".join(lines) + "\n", status
    return _dump_json(_classification_doc(rows)), status


SEQUENCE_HEADER = ("n", "dp", "closed_form", "match")


def gessel_sequence_rows(ns=SEQUENCE_RANGE):
    """``(n, q(0,0;2n), closed form, match)`` with exact integers."""
    ns = list(ns)
    table = count_walks(get_model("gessel"), 2 * max(ns))
    rows = []
    for n in ns:
        dp = table(0, 0, 2 * n)
        cf = gessel_closed_form(n)
        rows.append((n, dp, cf, cf.denominator == 1 and dp == cf.numerator))
    return rows


def _fraction_str(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _report(cfg: RunConfig) -> Tuple[str, int]:
    seq = gessel_sequence_rows()
    rows = classification_table()
    checks = run_gessel_checks(GESSEL_CHECKS, None, None, cfg.jobs)
    weighted = [run_weighted_check(name, lam, 20) for lam in TESTED_LAMBDAS for name in WEIGHTED_CHECKS]
    for rep, lam in zip(weighted, [lam for lam in TESTED_LAMBDAS for _ in WEIGHTED_CHECKS]):
        rep.check = f"{rep.check.split('[')[0]}[lambda={lam}]"
    reports = checks + weighted
    ok = all(m for *_, m in seq) and all(r.agree for r in rows) and all(r.passed for r in reports)
    if cfg.format == "csv":
        parts = [
            _dump_csv(SEQUENCE_HEADER, [(n, dp, _fraction_str(cf), str(m).lower()) for n, dp, cf, m in seq]),
            _dump_csv(CLASSIFY_HEADER, _classification_rows(rows)),
            _dump_csv(REPORT_CSV_HEADER, _report_rows(reports)),
        ]
        return "\n".join(parts), 0 if ok else 1
    if cfg.format == "text":
        lines = ["Gessel excursions q(0,0;2n)"]
        lines += [f"  n={n:<3} dp={dp} closed_form={_fraction_str(cf)} {_mark(m)}" for n, dp, cf, m in seq]
        lines.append("Kernel-symmetry classification")
        lines += [f"  {r.model:<20} predicate={str(r.predicate).lower():<5} roots={str(r.roots_symmetric).lower():<5} "
                  f"group={r.group_order}" for r in rows]
        lines.append("Residual summaries")
        lines += [f"  {_mark(r.passed)} {r.check} (order {r.order})" for r in reports]
        return "\n".join(lines) + "\n", 0 if ok else 1
    doc = {
        "pass": ok,
        "gessel_sequence": [{"n": n, "dp": str(dp), "closed_form": _fraction_str(cf), "match": m} for n, dp, cf, m in seq],
        "classification": _classification_doc(rows),
        "checks": [{"check": r.check, "order": r.order, "pass": r.passed,
                    **({"first_failing_order": r.first_failing_order} if r.first_failing_order is not None else {})}
                   for r in reports],
    }
    return _dump_json(doc), 0 if ok else 1


def report_tables(cfg: RunConfig) -> Tuple[str, int]:
    """Sequence, classification and residual tables in ``cfg.format``."""
    return _report(cfg)


_DISPATCH = {
    "count": _count,
    "kernel": _kernel,
    "verify": _verify,
    "multistep": _multistep,
    "classify": _classify,
    "report": _report,
}


def run(cfg: RunConfig) -> Tuple[str, int]:
    """Render the document for ``cfg`` and return it with the exit status."""
    return _DISPATCH[cfg.command](cfg)


# ---------------------------------------------------------------------------
# argument parsing


def _pair(text: str) -> Tuple[int, int]:
    try:
        i, j = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j but got {text!r}")
    return i, j


def _triple(text: str) -> Tuple[int, int, int]:
    try:
        i, j, n = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j,n but got {text!r}")
    return i, j, n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", metavar="PATH", help="write here instead of standard output")

    p = argparse.ArgumentParser(prog="quadwalk", description="Exact enumeration and kernel-method checks for quadrant walks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="walk counts q(i,j;n)")
    c.add_argument("--model", default="gessel")
    c.add_argument("--lambda", dest="lam", type=int, default=1)
    c.add_argument("--max-n", type=int, default=10)
    c.add_argument("--end", type=_pair, help="restrict to one endpoint i,j")

    k = sub.add_parser("kernel", parents=[common], help="kernel roots, orbit, symmetric functions")
    k.add_argument("--model", default="gessel")
    k.add_argument("--lambda", dest="lam", type=int, default=1)
    k.add_argument("--order", type=int)
    k.add_argument("--show", choices=("roots", "orbit", "symfuns"), default="roots")

    v = sub.add_parser("verify", parents=[common], help="identities for Gessel's model")
    v.add_argument("--check", default="all", help="|".join(GESSEL_CHECKS + ("all",)))
    v.add_argument("--order", type=int, help="default depends on the check")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--corrupt", type=_triple, metavar="i,j,n", help="add one to q(i,j;n) first (fault injection)")

    m = sub.add_parser("multistep", parents=[common], help="identities for the weighted model")
    m.add_argument("--lambda", dest="lam", type=int, default=1)
    m.add_argument("--order", type=int)
    m.add_argument("--check", default="all", help="|".join(WEIGHTED_CHECKS + ("all",)))

    cl = sub.add_parser("classify", parents=[common], help="kernel-symmetry predicate")
    cl.add_argument("--all", dest="all_models", action="store_true")
    cl.add_argument("--model", default="gessel")
    cl.add_argument("--lambda", dest="lam", type=int, default=1)
    cl.add_argument("--order", type=int)

    r = sub.add_parser("report", parents=[common], help="sequence table, classification and residual summaries")
    r.add_argument("--jobs", type=int, default=1)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fmt = ns.format or ("text" if ns.command == "kernel" else "json")
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    fields["format"] = fmt
    return RunConfig(**fields)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        parser.error(str(exc))
    text, status = run(cfg)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
