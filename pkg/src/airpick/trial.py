"""Pattern recognition trials: scheduling, records, and the analysis tables.

The analysis end reproduces the standard psychophysics summaries: a
row-stochastic confusion matrix in percent (rows = shown pattern) and
per-pattern mean response times with their unweighted overall mean.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from statistics import fmean

from .haptics import PatternId
from .types import ValidationError

TRIAL_PATTERNS = (PatternId.OB, PatternId.MR, PatternId.MF, PatternId.ML)


@dataclass(frozen=True)
class TrialSchedule:
    seed: int
    sequence: tuple[PatternId, ...]


@dataclass(frozen=True)
class TrialRecord:
    shown: PatternId
    answered: PatternId
    latency: float
    t_stimulus_end: float | None = None
    t_answer: float | None = None

    def __post_init__(self):
        if self.latency < 0:
            raise ValidationError(f"latency must be >= 0, got {self.latency}")
        if self.shown not in TRIAL_PATTERNS or self.answered not in TRIAL_PATTERNS:
            raise ValidationError("shown/answered must be one of OB, MR, MF, ML")


def make_schedule(seed: int, reps: int = 10) -> TrialSchedule:
    """Seeded pseudo-random order with each pattern appearing exactly reps times.

    Shuffling is an explicit Fisher-Yates driven by random.Random(seed).random(),
    the one stream Python guarantees stable across versions, so a seed pins the
    same sequence on every platform.
    """
    if reps < 1:
        raise ValidationError(f"reps must be >= 1, got {reps}")
    rng = random.Random(seed)
    seq = [p for p in TRIAL_PATTERNS for _ in range(reps)]
    for i in range(len(seq) - 1, 0, -1):
        j = int(rng.random() * (i + 1))
        seq[i], seq[j] = seq[j], seq[i]
    return TrialSchedule(seed=seed, sequence=tuple(seq))


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class ConfusionMatrix:
    """4x4 percentages; rows = shown, columns = answered, order OB, MR, MF, ML."""

    rows: tuple[tuple[float, float, float, float], ...]

    @property
    def diagonal(self) -> tuple[float, float, float, float]:
        return tuple(self.rows[i][i] for i in range(4))

    @property
    def overall_accuracy(self) -> float:
        return fmean(self.diagonal)


def confusion_matrix(records: list[TrialRecord]) -> ConfusionMatrix:
    """entry[r][c] = 100 * count(shown=r, answered=c) / count(shown=r)."""
    counts = {p: {q: 0 for q in TRIAL_PATTERNS} for p in TRIAL_PATTERNS}
    for rec in records:
        counts[rec.shown][rec.answered] += 1
    missing = [p.value for p in TRIAL_PATTERNS if sum(counts[p].values()) == 0]
    if missing:
        raise AnalysisError(f"patterns never shown, rows undefined: {missing}")
    rows = []
    for p in TRIAL_PATTERNS:
        shown = sum(counts[p].values())
        rows.append(tuple(100.0 * counts[p][q] / shown for q in TRIAL_PATTERNS))
    return ConfusionMatrix(rows=tuple(rows))


def mean_recognition_times(
    records: list[TrialRecord],
) -> tuple[dict[PatternId, float], float]:
    """Per-pattern mean latency plus the unweighted mean of the four means."""
    groups: dict[PatternId, list[float]] = {p: [] for p in TRIAL_PATTERNS}
    for rec in records:
        groups[rec.shown].append(rec.latency)
    empty = [p.value for p in TRIAL_PATTERNS if not groups[p]]
    if empty:
        raise AnalysisError(f"no records for patterns: {empty}")
    means = {p: fmean(groups[p]) for p in TRIAL_PATTERNS}
    overall = fmean(means.values())
    return means, overall


def write_trial_log(path: str | Path, records: list[TrialRecord]) -> None:
    with open(path, "w") as fh:
        for rec in records:
            line = {
                "shown": rec.shown.value,
                "answered": rec.answered.value,
                "latency": rec.latency,
            }
            if rec.t_stimulus_end is not None:
                line["t_stimulus_end"] = rec.t_stimulus_end
            if rec.t_answer is not None:
                line["t_answer"] = rec.t_answer
            fh.write(json.dumps(line) + "\n")


def read_trial_log(path: str | Path) -> list[TrialRecord]:
    records = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
                records.append(TrialRecord(
                    shown=PatternId(raw["shown"]),
                    answered=PatternId(raw["answered"]),
                    latency=float(raw["latency"]),
                    t_stimulus_end=raw.get("t_stimulus_end"),
                    t_answer=raw.get("t_answer"),
                ))
            except (KeyError, ValueError) as exc:
                raise AnalysisError(f"{path}:{lineno}: bad trial record: {exc}") from exc
    return records


def format_confusion_matrix(matrix: ConfusionMatrix) -> str:
    names = [p.value for p in TRIAL_PATTERNS]
    out = ["shown\\ans " + "".join(f"{n:>8}" for n in names)]
    for name, row in zip(names, matrix.rows):
        out.append(f"{name:<9} " + "".join(f"{v:8.1f}" for v in row))
    out.append(f"overall recognition rate: {matrix.overall_accuracy:.1f}%")
    return "\n".join(out)


def format_times(means: dict[PatternId, float], overall: float) -> str:
    header = "         " + "".join(f"{p.value:>8}" for p in TRIAL_PATTERNS)
    row = "time, s  " + "".join(f"{means[p]:8.2f}" for p in TRIAL_PATTERNS)
    return "\n".join([header, row, f"overall mean time: {overall:.2f} s"])
