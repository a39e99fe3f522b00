"""Bit-stable CSV/JSON report emission and parsing.

Determinism contract: a structurally equal report serializes to identical
bytes regardless of worker count or evaluation order.  Numbers are written as
Python's shortest round-trip decimal for binary64, line endings are "\n",
encoding is UTF-8, column order is fixed, and JSON key order follows the
declared field order (never hash order).
"""

from __future__ import annotations

import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from .decomposition import LeadingComponent, TailDecomposition
from .eta import ComplexPoint, EvalResult
from .propositions import PropSuiteResult
from .scanner import (
    BoundSample,
    GridReport,
    LineScanReport,
    ScanFailure,
    ZeroRecord,
)
from .exceptions import DomainError

__all__ = [
    "EvalReport",
    "PropsReport",
    "PcaReport",
    "ZeroRow",
    "ZerosReport",
    "serialize_report",
    "parse_report_json",
    "reports_equal",
    "merge_reports",
    "write_report_bytes",
    "SCAN_CSV_HEADER",
]

SCHEMA_VERSION = 1

SCAN_CSV_HEADER = "alpha,beta,eta_abs,floor,margin,tail_abs,tail_bound,leading,tail_ineq_holds"
EVAL_CSV_HEADER = "alpha,beta,value_re,value_im,abs_error_estimate,method,terms_used"
PROPS_CSV_HEADER = "proposition,cases,failures,worst_violation,seed,passed"
PCA_CSV_HEADER = ("alpha,beta,theta,tail_re,tail_im,tail3_re,tail3_im,"
                  "w,w1,w2,variance1,variance2,inner_product,leading")
ZEROS_CSV_HEADER = "t,residual,engine_gap,bracket_lo,bracket_hi,angle,in_claimed_range"


@dataclass(frozen=True)
class EvalReport:
    s: ComplexPoint
    tol: float
    engine: str
    result: EvalResult


@dataclass(frozen=True)
class PropsReport:
    cases: int
    seed: int
    rows: tuple[PropSuiteResult, ...]


@dataclass(frozen=True)
class PcaReport:
    tol: float
    rows: tuple[TailDecomposition, ...]


@dataclass(frozen=True)
class ZeroRow:
    record: ZeroRecord
    angle: float
    in_claimed_range: bool


@dataclass(frozen=True)
class ZerosReport:
    t_range: tuple[float, float]
    tol: float
    rows: tuple[ZeroRow, ...]


def _fnum(x: float) -> str:
    return repr(float(x))


def _fbool(x: bool) -> str:
    return "true" if x else "false"


# ----------------------------------------------------------------------------
# dict <-> dataclass mapping (JSON payloads)
# ----------------------------------------------------------------------------

def _point_dict(p: ComplexPoint) -> dict:
    return {"alpha": p.alpha, "beta": p.beta}


def _point_from(d: dict) -> ComplexPoint:
    return ComplexPoint(float(d["alpha"]), float(d["beta"]))


def _complex_dict(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _complex_from(d: dict) -> complex:
    return complex(float(d["re"]), float(d["im"]))


def _sample_dict(b: BoundSample) -> dict:
    return {
        "s": _point_dict(b.s),
        "eta_abs": b.eta_abs,
        "floor": b.floor_value,
        "margin": b.margin,
        "tail_abs": b.tail_abs,
        "tail_bound": b.tail_bound,
        "leading": b.leading.value,
        "tail_ineq_holds": b.tail_inequality_holds,
    }


def _sample_from(d: dict) -> BoundSample:
    return BoundSample(
        s=_point_from(d["s"]),
        eta_abs=float(d["eta_abs"]),
        floor_value=float(d["floor"]),
        margin=float(d["margin"]),
        tail_abs=float(d["tail_abs"]),
        tail_bound=float(d["tail_bound"]),
        leading=LeadingComponent(d["leading"]),
        tail_inequality_holds=bool(d["tail_ineq_holds"]),
    )


def _failure_dict(f: ScanFailure) -> dict:
    return {"s": _point_dict(f.s), "error": f.error, "message": f.message}


def _failure_from(d: dict) -> ScanFailure:
    return ScanFailure(_point_from(d["s"]), str(d["error"]), str(d["message"]))


def _line_dict(r: LineScanReport) -> dict:
    return {
        "kind": "line_scan",
        "schema": SCHEMA_VERSION,
        "alpha": r.alpha,
        "beta_range": list(r.beta_range),
        "step": r.step,
        "tol": r.tol,
        "min_eta_abs": r.min_eta_abs,
        "argmin_beta": r.argmin_beta,
        "samples": [_sample_dict(s) for s in r.samples],
        "violations": [_sample_dict(s) for s in r.violations],
        "failures": [_failure_dict(f) for f in r.failures],
    }


def _line_from(d: dict) -> LineScanReport:
    return LineScanReport(
        alpha=float(d["alpha"]),
        beta_range=(float(d["beta_range"][0]), float(d["beta_range"][1])),
        step=float(d["step"]),
        tol=float(d["tol"]),
        samples=tuple(_sample_from(s) for s in d["samples"]),
        min_eta_abs=float(d["min_eta_abs"]),
        argmin_beta=float(d["argmin_beta"]),
        violations=tuple(_sample_from(s) for s in d["violations"]),
        failures=tuple(_failure_from(f) for f in d["failures"]),
    )


def _grid_dict(r: GridReport) -> dict:
    return {
        "kind": "grid_scan",
        "schema": SCHEMA_VERSION,
        "min_eta_abs": r.min_eta_abs,
        "argmin_alpha": r.argmin_alpha,
        "argmin_beta": r.argmin_beta,
        "violation_count": r.violation_count,
        "lines": [_line_dict(ln) for ln in r.lines],
    }


def _grid_from(d: dict) -> GridReport:
    return GridReport(
        lines=tuple(_line_from(ln) for ln in d["lines"]),
        min_eta_abs=float(d["min_eta_abs"]),
        argmin_alpha=float(d["argmin_alpha"]),
        argmin_beta=float(d["argmin_beta"]),
        violation_count=int(d["violation_count"]),
    )


def _eval_dict(r: EvalReport) -> dict:
    return {
        "kind": "eval",
        "schema": SCHEMA_VERSION,
        "s": _point_dict(r.s),
        "tol": r.tol,
        "engine": r.engine,
        "value": _complex_dict(r.result.value),
        "abs_error_estimate": r.result.abs_error_estimate,
        "method": r.result.method,
        "terms_used": r.result.terms_used,
    }


def _eval_from(d: dict) -> EvalReport:
    return EvalReport(
        s=_point_from(d["s"]),
        tol=float(d["tol"]),
        engine=str(d["engine"]),
        result=EvalResult(
            value=_complex_from(d["value"]),
            abs_error_estimate=float(d["abs_error_estimate"]),
            method=str(d["method"]),
            terms_used=int(d["terms_used"]),
        ),
    )


def _props_dict(r: PropsReport) -> dict:
    return {
        "kind": "props",
        "schema": SCHEMA_VERSION,
        "cases": r.cases,
        "seed": r.seed,
        "rows": [
            {
                "proposition": row.proposition,
                "cases": row.cases,
                "failures": row.failures,
                "worst_violation": row.worst_violation,
                "seed": row.seed,
            }
            for row in r.rows
        ],
    }


def _props_from(d: dict) -> PropsReport:
    return PropsReport(
        cases=int(d["cases"]),
        seed=int(d["seed"]),
        rows=tuple(
            PropSuiteResult(
                proposition=str(row["proposition"]),
                cases=int(row["cases"]),
                failures=int(row["failures"]),
                worst_violation=float(row["worst_violation"]),
                seed=int(row["seed"]),
            )
            for row in d["rows"]
        ),
    )


def _pca_dict(r: PcaReport) -> dict:
    return {
        "kind": "pca",
        "schema": SCHEMA_VERSION,
        "tol": r.tol,
        "rows": [
            {
                "s": _point_dict(row.s),
                "theta": row.theta,
                "tail": _complex_dict(row.tail),
                "tail3": _complex_dict(row.tail3),
                "w": row.w,
                "w1": row.w1,
                "w2": row.w2,
                "variance1": row.variance1,
                "variance2": row.variance2,
                "inner_product": row.inner_product,
                "leading": row.leading.value,
            }
            for row in r.rows
        ],
    }


def _pca_from(d: dict) -> PcaReport:
    return PcaReport(
        tol=float(d["tol"]),
        rows=tuple(
            TailDecomposition(
                s=_point_from(row["s"]),
                theta=float(row["theta"]),
                tail=_complex_from(row["tail"]),
                tail3=_complex_from(row["tail3"]),
                w=float(row["w"]),
                w1=float(row["w1"]),
                w2=float(row["w2"]),
                variance1=float(row["variance1"]),
                variance2=float(row["variance2"]),
                inner_product=float(row["inner_product"]),
                leading=LeadingComponent(row["leading"]),
            )
            for row in d["rows"]
        ),
    )


def _zeros_dict(r: ZerosReport) -> dict:
    return {
        "kind": "zeros",
        "schema": SCHEMA_VERSION,
        "t_range": list(r.t_range),
        "tol": r.tol,
        "rows": [
            {
                "t": row.record.t,
                "residual": row.record.residual,
                "engine_gap": row.record.engine_gap,
                "bracket": list(row.record.bracket),
                "angle": row.angle,
                "in_claimed_range": row.in_claimed_range,
            }
            for row in r.rows
        ],
    }


def _zeros_from(d: dict) -> ZerosReport:
    return ZerosReport(
        t_range=(float(d["t_range"][0]), float(d["t_range"][1])),
        tol=float(d["tol"]),
        rows=tuple(
            ZeroRow(
                record=ZeroRecord(
                    t=float(row["t"]),
                    residual=float(row["residual"]),
                    engine_gap=float(row["engine_gap"]),
                    bracket=(float(row["bracket"][0]), float(row["bracket"][1])),
                ),
                angle=float(row["angle"]),
                in_claimed_range=bool(row["in_claimed_range"]),
            )
            for row in d["rows"]
        ),
    )


_TO_DICT = {
    LineScanReport: _line_dict,
    GridReport: _grid_dict,
    EvalReport: _eval_dict,
    PropsReport: _props_dict,
    PcaReport: _pca_dict,
    ZerosReport: _zeros_dict,
}

_FROM_DICT = {
    "line_scan": _line_from,
    "grid_scan": _grid_from,
    "eval": _eval_from,
    "props": _props_from,
    "pca": _pca_from,
    "zeros": _zeros_from,
}


# ----------------------------------------------------------------------------
# CSV writers
# ----------------------------------------------------------------------------

def _scan_csv_rows(out: io.StringIO, lines) -> None:
    out.write(SCAN_CSV_HEADER + "\n")
    for line in lines:
        for b in line.samples:
            out.write(
                ",".join(
                    (
                        _fnum(b.s.alpha),
                        _fnum(b.s.beta),
                        _fnum(b.eta_abs),
                        _fnum(b.floor_value),
                        _fnum(b.margin),
                        _fnum(b.tail_abs),
                        _fnum(b.tail_bound),
                        b.leading.value,
                        _fbool(b.tail_inequality_holds),
                    )
                )
                + "\n"
            )


def _to_csv(report) -> str:
    out = io.StringIO()
    if isinstance(report, LineScanReport):
        _scan_csv_rows(out, (report,))
    elif isinstance(report, GridReport):
        _scan_csv_rows(out, report.lines)
    elif isinstance(report, EvalReport):
        out.write(EVAL_CSV_HEADER + "\n")
        r = report.result
        out.write(
            ",".join(
                (
                    _fnum(report.s.alpha),
                    _fnum(report.s.beta),
                    _fnum(r.value.real),
                    _fnum(r.value.imag),
                    _fnum(r.abs_error_estimate),
                    r.method,
                    str(r.terms_used),
                )
            )
            + "\n"
        )
    elif isinstance(report, PropsReport):
        out.write(PROPS_CSV_HEADER + "\n")
        for row in report.rows:
            out.write(
                ",".join(
                    (
                        row.proposition,
                        str(row.cases),
                        str(row.failures),
                        _fnum(row.worst_violation),
                        str(row.seed),
                        _fbool(row.passed),
                    )
                )
                + "\n"
            )
    elif isinstance(report, PcaReport):
        out.write(PCA_CSV_HEADER + "\n")
        for row in report.rows:
            out.write(
                ",".join(
                    (
                        _fnum(row.s.alpha),
                        _fnum(row.s.beta),
                        _fnum(row.theta),
                        _fnum(row.tail.real),
                        _fnum(row.tail.imag),
                        _fnum(row.tail3.real),
                        _fnum(row.tail3.imag),
                        _fnum(row.w),
                        _fnum(row.w1),
                        _fnum(row.w2),
                        _fnum(row.variance1),
                        _fnum(row.variance2),
                        _fnum(row.inner_product),
                        row.leading.value,
                    )
                )
                + "\n"
            )
    elif isinstance(report, ZerosReport):
        out.write(ZEROS_CSV_HEADER + "\n")
        for row in report.rows:
            out.write(
                ",".join(
                    (
                        _fnum(row.record.t),
                        _fnum(row.record.residual),
                        _fnum(row.record.engine_gap),
                        _fnum(row.record.bracket[0]),
                        _fnum(row.record.bracket[1]),
                        _fnum(row.angle),
                        _fbool(row.in_claimed_range),
                    )
                )
                + "\n"
            )
    else:
        raise DomainError(f"no CSV schema for report type {type(report).__name__}")
    return out.getvalue()


# ----------------------------------------------------------------------------
# public API
# ----------------------------------------------------------------------------

def serialize_report(report, output_format: str = "json") -> bytes:
    """Deterministic bytes for a report; identical report -> identical bytes."""
    if output_format == "json":
        to_dict = _TO_DICT.get(type(report))
        if to_dict is None:
            raise DomainError(f"no JSON schema for report type {type(report).__name__}")
        return (json.dumps(to_dict(report), separators=(",", ":")) + "\n").encode("utf-8")
    if output_format == "csv":
        return _to_csv(report).encode("utf-8")
    raise DomainError(f"unknown output format {output_format!r}; expected csv or json")


def parse_report_json(data: bytes | str):
    """Inverse of serialize_report(..., 'json'): structurally equal round trip."""
    obj = json.loads(data)
    kind = obj.get("kind")
    from_dict = _FROM_DICT.get(kind)
    if from_dict is None:
        raise DomainError(f"unknown report kind {kind!r}")
    return from_dict(obj)


def reports_equal(a, b) -> bool:
    return type(a) is type(b) and a == b


def merge_reports(reports: list):
    """Merge scan reports into a GridReport, or zeros reports into one report.

    Line reports are ordered by (alpha, beta_range); zeros rows by ordinate.
    """
    if not reports:
        raise DomainError("nothing to merge")
    if all(isinstance(r, (LineScanReport, GridReport)) for r in reports):
        lines: list[LineScanReport] = []
        for r in reports:
            lines.extend(r.lines if isinstance(r, GridReport) else [r])
        lines.sort(key=lambda ln: (ln.alpha, ln.beta_range))
        best = min(lines, key=lambda ln: (ln.min_eta_abs, ln.alpha))
        return GridReport(
            lines=tuple(lines),
            min_eta_abs=best.min_eta_abs,
            argmin_alpha=best.alpha,
            argmin_beta=best.argmin_beta,
            violation_count=sum(len(ln.violations) for ln in lines),
        )
    if all(isinstance(r, ZerosReport) for r in reports):
        rows = sorted((row for r in reports for row in r.rows), key=lambda z: z.record.t)
        return ZerosReport(
            t_range=(min(r.t_range[0] for r in reports), max(r.t_range[1] for r in reports)),
            tol=max(r.tol for r in reports),
            rows=tuple(rows),
        )
    raise DomainError("can only merge scan reports together or zeros reports together")


def write_report_bytes(data: bytes, output_path: str) -> None:
    """Atomic write: temp file in the destination directory, then rename."""
    if output_path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    directory = os.path.dirname(os.path.abspath(output_path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".etafloor-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_path, output_path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise
