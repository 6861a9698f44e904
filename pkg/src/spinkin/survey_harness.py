"""Random-ensemble survey of symmetric two-qubit states.

Each record is a flat-Dirichlet mixture of ``k`` Haar-random spin-1 states,
viewed as a symmetric two-qubit state.  Kinematical columns are axis
averaged; full-state quantities are computed in the spin-1 picture (the
embedded 4x4 state has a zero singlet eigenvalue, but rotations never leave
the symmetric sector, so the Bures norms coincide) and reduced quantities on
the partial trace of the embedded state.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import fs_kinematics as fs
from .bures_geometry import bures_sq, mixed_acceleration
from .entanglement_measures import MeasurePanel
from .errors import DegenerateStateError, ValidationError
from .matrix_kernel import commutator, half_trace_sq, partial_trace
from .rotational_averages import (
    QUBIT_GENERATORS,
    design_average,
    total_acceleration_closed,
    total_variance,
)
from .spin_algebra import spin_matrices
from .states import (
    constellation_from_pairwise_angles,
    constellation_to_state,
    is_pure,
    purity,
    random_mixed_symmetric,
    symmetric_embed,
)

COLUMNS = (
    "index", "seed", "flag", "purity", "s_vn", "s_vn_red", "s_lin", "s_lin_red",
    "concurrence", "negativity", "geo_discord", "totvar", "v2_total", "v2_red",
    "a2_total", "a2_red", "excess_F",
)
METRIC_COLUMNS = ("totvar", "v2_total", "v2_red", "a2_total", "a2_red", "excess_F")
NUMERIC_COLUMNS = COLUMNS[3:]

# (x, y) column pairs; a caption "Y vs X" becomes the file columns (X, Y)
FIGURES: dict[str, tuple[str, str]] = {
    "fig4a": ("s_vn", "s_lin"),
    "fig4b": ("s_vn_red", "s_vn"),
    "fig4c": ("s_vn_red", "s_lin_red"),
    "fig5a": ("s_vn_red", "concurrence"),
    "fig5b": ("s_vn", "concurrence"),
    "fig5c": ("concurrence", "negativity"),
    "fig6a": ("a2_total", "s_vn"),
    "fig6b": ("a2_total", "s_vn_red"),
    "fig6c": ("a2_total", "concurrence"),
    "fig6d": ("a2_total", "v2_total"),
    "fig6e": ("a2_total", "v2_red"),
    "fig6f": ("a2_total", "a2_red"),
    "fig7a": ("a2_red", "s_vn"),
    "fig7b": ("a2_red", "s_vn_red"),
    "fig7c": ("a2_red", "concurrence"),
    "fig7d": ("a2_red", "v2_total"),
    "fig7e": ("a2_red", "v2_red"),
    "fig8a": ("v2_total", "concurrence"),
    "fig8b": ("v2_red", "concurrence"),
    "fig8c": ("v2_total", "s_lin"),
    "fig8d": ("v2_total", "s_lin_red"),
    "fig8e": ("v2_red", "concurrence"),
    "fig8f": ("v2_red", "s_lin_red"),
    "fig9a": ("v2_total", "geo_discord"),
    "fig9b": ("v2_red", "geo_discord"),
    "fig9c": ("a2_total", "geo_discord"),
    "fig9d": ("excess_F", "geo_discord"),
    "fig9e": ("excess_F", "concurrence"),
}


def fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class SurveyConfig:
    sample_count: int = 3000
    master_seed: int = 0
    components: int = 3
    metric: str = "bures"
    out_dir: str | None = None

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValidationError(f"sample_count must be >= 1, got {self.sample_count}")
        if self.components < 1:
            raise ValidationError(f"components must be >= 1, got {self.components}")
        if self.metric not in ("bures", "trace"):
            raise ValidationError(f"metric must be 'bures' or 'trace', got {self.metric!r}")


@dataclass
class SurveyRecord:
    index: int
    seed: int
    flag: str
    purity: float
    s_vn: float
    s_vn_red: float
    s_lin: float
    s_lin_red: float
    concurrence: float
    negativity: float
    geo_discord: float
    totvar: float | None = None
    v2_total: float | None = None
    v2_red: float | None = None
    a2_total: float | None = None
    a2_red: float | None = None
    excess_F: float | None = None

    def row(self) -> list[str]:
        out = []
        for name in COLUMNS:
            v = getattr(self, name)
            if v is None:
                out.append("")
            elif isinstance(v, (str, int)):
                out.append(str(v))
            else:
                out.append(fmt(v))
        return out


def record_seed(master_seed: int, index: int) -> int:
    """Per-record seed from the (master, counter) pair."""
    return int(np.random.SeedSequence([master_seed, index]).generate_state(1, dtype=np.uint64)[0])


# --- per-state kinematics -------------------------------------------------------


def _trace_kinematics(rho: np.ndarray, gens) -> tuple[float, float]:
    """Axis-averaged speed and design-averaged ``|rho''|^2`` in the flat trace metric."""
    v2 = sum(half_trace_sq(-1j * commutator(g, rho)) for g in gens) / 3

    def acc(n):
        h = sum(n[a] * gens[a] for a in range(3))
        return half_trace_sq(-commutator(h, commutator(h, rho)))

    return v2, design_average(acc)


def _bures_kinematics(rho: np.ndarray, gens) -> tuple[float, float]:
    v2 = total_variance(rho, gens) / 3
    pure = is_pure(rho)

    def acc(n):
        h = sum(n[a] * gens[a] for a in range(3))
        if pure:
            return fs.acc_norm_sq(rho, h)
        return bures_sq(rho, mixed_acceleration(rho, h))

    return v2, design_average(acc)


def kinematics(rho: np.ndarray, gens, metric: str = "bures") -> tuple[float, float]:
    """``(avg |v|^2, avg |a|^2)`` under rotations generated by ``gens``."""
    if metric == "trace":
        return _trace_kinematics(rho, gens)
    return _bures_kinematics(rho, gens)


def evaluate_state(rho3: np.ndarray, index: int = 0, seed: int = 0, metric: str = "bures") -> SurveyRecord:
    rho4 = symmetric_embed(rho3)
    r1 = partial_trace(rho4, (2, 2), keep=1)
    r2 = partial_trace(rho4, (2, 2), keep=2)
    panel = MeasurePanel.of(rho4)
    rec = SurveyRecord(
        index=index, seed=seed, flag="pure" if is_pure(rho3) else "mixed", purity=purity(rho3),
        s_vn=panel.s_vn, s_vn_red=panel.s_vn_reduced, s_lin=panel.s_lin, s_lin_red=panel.s_lin_reduced,
        concurrence=panel.concurrence, negativity=panel.negativity, geo_discord=panel.geo_discord,
    )
    try:
        v2, a2 = kinematics(rho3, spin_matrices(1), metric)
        v2_1, a2_1 = kinematics(r1, QUBIT_GENERATORS, metric)
        v2_2, _ = kinematics(r2, QUBIT_GENERATORS, metric)
    except DegenerateStateError:
        rec.flag = "degenerate"
        return rec
    rec.totvar = 3 * v2
    rec.v2_total = v2
    rec.v2_red = v2_1
    rec.a2_total = a2
    rec.a2_red = a2_1
    rec.excess_F = v2 - v2_1 - v2_2
    return rec


# --- ensemble ------------------------------------------------------------------


@dataclass
class SurveyResult:
    config: SurveyConfig
    records: list[SurveyRecord]
    correlation: np.ndarray = field(repr=False)

    def column(self, name: str, flag: str | None = None) -> np.ndarray:
        vals = [getattr(r, name) for r in self.records if flag is None or r.flag == flag]
        return np.array([np.nan if v is None else v for v in vals], dtype=float)

    @property
    def negative_F_fraction(self) -> float:
        f = self.column("excess_F")
        f = f[np.isfinite(f)]
        return float((f < 0).mean()) if f.size else 0.0

    def summary(self) -> dict:
        flags = [r.flag for r in self.records]
        return {
            "samples": len(self.records),
            "pure": flags.count("pure"),
            "mixed": flags.count("mixed"),
            "degenerate": flags.count("degenerate"),
            "negative_F_fraction": self.negative_F_fraction,
            "metric": self.config.metric,
        }


def correlation_matrix(records: Sequence[SurveyRecord]) -> np.ndarray:
    """Pearson correlations over :data:`NUMERIC_COLUMNS`, on records with every column present."""
    rows = [
        [getattr(r, c) for c in NUMERIC_COLUMNS]
        for r in records
        if all(getattr(r, c) is not None for c in NUMERIC_COLUMNS)
    ]
    if len(rows) < 2:
        return np.full((len(NUMERIC_COLUMNS),) * 2, np.nan)
    data = np.array(rows, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.corrcoef(data, rowvar=False)


def run_survey(cfg: SurveyConfig) -> SurveyResult:
    records = []
    for i in range(cfg.sample_count):
        seed = record_seed(cfg.master_seed, i)
        rho3 = random_mixed_symmetric(seed, cfg.components)
        records.append(evaluate_state(rho3, i, seed, cfg.metric))
    result = SurveyResult(cfg, records, correlation_matrix(records))
    if cfg.out_dir is not None:
        write_outputs(result, cfg.out_dir)
    return result


def _header(cfg: SurveyConfig) -> str:
    echo = dict(asdict(cfg))
    echo.pop("out_dir")
    return "# " + json.dumps(echo, sort_keys=True) + " kinematics=axis-averaged"


def survey_csv(result: SurveyResult) -> str:
    buf = io.StringIO()
    buf.write(_header(result.config) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in result.records:
        w.writerow(r.row())
    return buf.getvalue()


def correlation_csv(result: SurveyResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("column",) + NUMERIC_COLUMNS)
    for name, row in zip(NUMERIC_COLUMNS, result.correlation):
        w.writerow([name] + ["" if not math.isfinite(v) else fmt(v) for v in row])
    return buf.getvalue()


def write_outputs(result: SurveyResult, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "survey.csv").write_text(survey_csv(result))
    (out / "correlations.csv").write_text(correlation_csv(result))
    (out / "summary.json").write_text(json.dumps(result.summary(), indent=1, sort_keys=True) + "\n")
    for fig in FIGURES:
        emit_figure_data(result.records, fig, out)
    return out


def emit_figure_data(records: Iterable[SurveyRecord], figure_id: str, out_dir) -> Path:
    """Write ``{figure_id}.csv`` with columns ``index, x, y`` for one scatter panel."""
    key = figure_id.lower().removesuffix(".csv")
    if key not in FIGURES:
        raise ValidationError(f"unknown figure id {figure_id!r}; known: {', '.join(FIGURES)}")
    xname, yname = FIGURES[key]
    path = Path(out_dir) / f"{key}.csv"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("index", xname, yname))
    for r in records:
        x, y = getattr(r, xname), getattr(r, yname)
        if x is None or y is None:
            continue
        w.writerow((r.index, fmt(x), fmt(y)))
    path.write_text(buf.getvalue())
    return path


# --- spin-3/2 contour grid --------------------------------------------------


def contour_value(alpha: float, beta: float, gamma: float) -> float | None:
    """Total acceleration of the spin-3/2 constellation with the given star angles, or None."""
    try:
        stars = constellation_from_pairwise_angles((alpha, beta, gamma))
    except ValidationError:
        return None
    return total_acceleration_closed(constellation_to_state(stars), 1.5)


def contour_grid(resolution: int) -> list[tuple[float, float, float, float | None]]:
    if resolution < 2:
        raise ValidationError(f"resolution must be >= 2, got {resolution}")
    axis = np.linspace(0.0, math.pi, resolution)
    return [(a, b, c, contour_value(a, b, c)) for a in axis for b in axis for c in axis]


def emit_contour_grid(resolution: int, path) -> Path:
    """Rows ``alpha, beta, gamma, realizable, value``; unrealizable triples have an empty value."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("alpha", "beta", "gamma", "realizable", "value"))
    for a, b, c, v in contour_grid(resolution):
        w.writerow((fmt(a), fmt(b), fmt(c), int(v is not None), "" if v is None else fmt(v)))
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(buf.getvalue())
    return p
