"""JSON/CSV formats for complexes, actions and reports.

Floats in reports are rounded to 12 significant digits so that identical
inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import asdict
from pathlib import Path

from hdx.covers import CosetAction, GammaComplexData
from hdx.family import DegreeStats, FamilyReport, MemberReport, Verdict
from hdx.hodge import SpectrumReport
from hdx.simplicial import SimplicialComplex, build_complex


def round_sig(x: float | None, digits: int = 12) -> float | None:
    if x is None:
        return None
    y = float(f"{float(x):.{digits}g}")
    return 0.0 if y == 0 else y


def _round_all(obj):
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {k: _round_all(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_all(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_round_all(obj), indent=2) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(path: str | os.PathLike):
    with open(path) as fh:
        return json.load(fh)


def complex_from_json(data: dict) -> SimplicialComplex:
    return build_complex(data["facets"], data.get("vertex_count"))


def complex_to_json(K: SimplicialComplex) -> dict:
    return {"vertex_count": K.vertex_count, "facets": [list(s) for s in K.facets()]}


def gamma_from_json(data: dict) -> GammaComplexData:
    return GammaComplexData.from_json(data)


def action_from_json(data: dict) -> CosetAction:
    return CosetAction.from_json(data)


def spectrum_report_to_json(r: SpectrumReport) -> dict:
    return _round_all(r.to_dict())


def spectrum_report_from_json(data: dict) -> SpectrumReport:
    return SpectrumReport.from_dict(data)


def member_to_json(m: MemberReport) -> dict:
    return _round_all({
        "label": m.label,
        "N": m.N,
        "vertex_count": m.vertex_count,
        "degree_bounded": m.degree_bounded,
        "degrees": [asdict(s) for s in m.degrees],
        "upper_spectra": [list(s) for s in m.upper_spectra],
        "lower_spectra": [list(s) for s in m.lower_spectra],
    })


def member_from_json(data: dict) -> MemberReport:
    return MemberReport(
        label=data["label"],
        N=data["N"],
        vertex_count=data["vertex_count"],
        degrees=tuple(DegreeStats(**s) for s in data["degrees"]),
        upper_spectra=tuple(tuple(s) for s in data["upper_spectra"]),
        lower_spectra=tuple(tuple(s) for s in data["lower_spectra"]),
        degree_bounded=data["degree_bounded"],
    )


def family_to_json(r: FamilyReport) -> dict:
    v = r.verdict
    return _round_all({
        "n": r.n,
        "uniform_gap_plus": list(r.uniform_gap_plus),
        "uniform_gap_minus": list(r.uniform_gap_minus),
        "betti_vanishing": list(r.betti_vanishing),
        "degree_bounded": r.degree_bounded,
        "verdict": {
            "expander_at_scale": v.expander_at_scale,
            "threshold": v.threshold,
            "failing_members": list(v.failing_members),
            "failing_degrees": list(v.failing_degrees),
            "gap_witness": v.gap_witness,
            "note": v.note,
        },
        "members": [member_to_json(m) for m in r.members],
    })


def family_from_json(data: dict) -> FamilyReport:
    v = data["verdict"]
    return FamilyReport(
        n=data["n"],
        members=tuple(member_from_json(m) for m in data["members"]),
        uniform_gap_plus=tuple(data["uniform_gap_plus"]),
        uniform_gap_minus=tuple(data["uniform_gap_minus"]),
        betti_vanishing=tuple(data["betti_vanishing"]),
        degree_bounded=data["degree_bounded"],
        verdict=Verdict(
            expander_at_scale=v["expander_at_scale"],
            threshold=v["threshold"],
            failing_members=tuple(v["failing_members"]),
            failing_degrees=tuple(v["failing_degrees"]),
            gap_witness=v["gap_witness"],
            note=v["note"],
        ),
    )


FAMILY_CSV_COLUMNS = ["label", "N", "vertices", "degree", "lambda_plus", "lambda_minus", "gap_restricted", "betti"]


def family_csv(r: FamilyReport) -> str:
    """One row per member per degree, for plotting gap against index."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FAMILY_CSV_COLUMNS)
    for m in r.members:
        for s in m.degrees:
            cells = [round_sig(x) for x in (s.lambda_plus, s.lambda_minus, s.gap_restricted)]
            w.writerow([m.label, m.N, m.vertex_count, s.degree,
                        *("" if x is None else repr(x) for x in cells), s.betti])
    return buf.getvalue()
