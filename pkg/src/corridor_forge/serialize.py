"""JSON and CSV interchange formats.

The JSON complex object {"n": ..., "d": ..., "facets": [[...], ...]} with
sorted facets and sorted vertices is the interchange unit for every CLI
command; it is validated against the embedded schema on both read and
write. Trajectory CSVs have fixed, documented columns (see CSV_COLUMNS).
"""

from __future__ import annotations

import csv
import json
import math
from typing import Any

import jsonschema

from .complexes import SimplicialComplex, complex_from_facets
from .corridor import ProcessConfig, RunReport, TrajectoryRecord, volume_bound_steps
from .errors import InvalidParams
from .pm import PmConfig, PmRunReport

COMPLEX_SCHEMA = {
    "type": "object",
    "required": ["n", "d", "facets"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "d": {"type": "integer", "minimum": 0},
        "facets": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "minItems": 1,
                "items": {"type": "integer", "minimum": 1},
            },
        },
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["mode", "config", "steps", "termination", "image"],
    "properties": {
        "mode": {"enum": ["corridor", "pm"]},
        "config": {"type": "object"},
        "steps": {"type": "integer", "minimum": 0},
        "termination": {"type": "string"},
        "image": COMPLEX_SCHEMA,
    },
}


def complex_to_dict(X: SimplicialComplex) -> dict:
    obj = {
        "n": X.n,
        "d": X.dim,
        "facets": [list(f) for f in X.sorted_facets()],
    }
    jsonschema.validate(obj, COMPLEX_SCHEMA)
    return obj


def complex_from_dict(obj: dict) -> SimplicialComplex:
    jsonschema.validate(obj, COMPLEX_SCHEMA)
    X = complex_from_facets(obj["facets"], n=obj["n"])
    if X.dim != obj["d"]:
        raise InvalidParams(
            f"declared dimension {obj['d']} but facets have dimension {X.dim}"
        )
    return X


def save_complex(X: SimplicialComplex, path: str):
    with open(path, "w") as fh:
        json.dump(complex_to_dict(X), fh, sort_keys=True)
        fh.write("\n")


def load_complex(path: str) -> SimplicialComplex:
    with open(path) as fh:
        return complex_from_dict(json.load(fh))


def _finite_or_none(x: float | None) -> float | None:
    if x is None or not math.isfinite(x):
        return None
    return x


def _record_to_dict(rec: TrajectoryRecord) -> dict:
    entries = {}
    for name, e in sorted(rec.entries.items()):
        band = _finite_or_none(e.band)
        entries[name] = {
            "size": e.size,
            "y": e.y,
            "w": list(e.w),
            "pred": _finite_or_none(e.pred),
            "band": band,
            "z": None if band is None or e.z is None else list(e.z),
        }
    return {
        "step": rec.step,
        "t": rec.t,
        "p": rec.p,
        "terminal_y": rec.terminal_y,
        "entries": entries,
    }


def _config_to_dict(cfg: ProcessConfig | PmConfig) -> dict:
    out = {
        "n": cfg.n,
        "d": cfg.d,
        "seed": cfg.seed,
        "record_every": cfg.record_every,
        "track_random": cfg.track_random,
        "track_link": cfg.track_link,
    }
    if cfg.track:
        out["track"] = [
            {"name": name, "faces": [list(f) for f in faces]}
            for name, faces in cfg.track
        ]
    return out


def corridor_report_to_dict(report: RunReport) -> dict:
    return {
        "mode": "corridor",
        "config": _config_to_dict(report.config),
        "steps": report.steps,
        "path_length": report.path_length,
        "first_low_step": report.first_low_step,
        "first_band_exit": report.first_band_exit,
        "termination": report.termination,
        "volume_bound": volume_bound_steps(report.config.n, report.config.d),
        "image": complex_to_dict(report.image),
        "trajectory": [_record_to_dict(r) for r in report.records],
    }


def pm_report_to_dict(report: PmRunReport) -> dict:
    return {
        "mode": "pm",
        "config": _config_to_dict(report.config),
        "steps": report.steps,
        "mapped_vertices": report.mapped_vertices,
        "first_low_step": report.first_low_step,
        "first_band_exit": report.first_band_exit,
        "termination": report.termination,
        "pseudomanifold": report.pseudomanifold,
        "diameter": report.dual_diameter,
        "diameter_lower": report.diameter_lower,
        "image": complex_to_dict(report.image),
        "trajectory": [_record_to_dict(r) for r in report.records],
    }


def report_json(report: RunReport | PmRunReport) -> str:
    """Canonical, byte-stable JSON serialization of a run report."""
    if isinstance(report, PmRunReport):
        obj = pm_report_to_dict(report)
    else:
        obj = corridor_report_to_dict(report)
    jsonschema.validate(obj, REPORT_SCHEMA)
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def csv_columns(period: int) -> list[str]:
    cols = ["step", "t", "p", "A_id", "size_A", "Y_obs", "Y_pred", "band"]
    cols += [f"W_{j}" for j in range(period)]
    cols += [f"Z_{j}" for j in range(period)]
    return cols


def write_trajectory_csv(records: list[TrajectoryRecord], period: int, path: str, d: int, n: int):
    """One row per (recorded step, tracked complex), plus a row for the
    terminal-face statistic (A_id 'terminal', W/Z columns empty)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(csv_columns(period))
        for rec in records:
            pred_term = n * rec.p**d if rec.p >= 0 else ""
            writer.writerow(
                [rec.step, rec.t, rec.p, "terminal", d, rec.terminal_y, pred_term, ""]
                + [""] * (2 * period)
            )
            for name, e in sorted(rec.entries.items()):
                band = _finite_or_none(e.band)
                z = (
                    list(e.z)
                    if (e.z is not None and band is not None)
                    else [""] * period
                )
                writer.writerow(
                    [
                        rec.step,
                        rec.t,
                        rec.p,
                        name,
                        e.size,
                        e.y,
                        _finite_or_none(e.pred),
                        band if band is not None else "",
                    ]
                    + list(e.w)
                    + z
                )
