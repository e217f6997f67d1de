"""Study analytics: acceptance scoring, paired t-tests, anticipation scores.

The p-value kernel is the Student-t survival function evaluated through the
regularized incomplete beta function (continued-fraction form), good to
about 1e-12 absolute error in double precision.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

ONE = "one"
TWO = "two"
GREATER = "greater"
LESS = "less"

USEFULNESS_ITEMS = (0, 2, 4, 6, 8)   # 0-based positions of the usefulness items
SATISFACTION_ITEMS = (1, 3, 5, 7)

_CF_MAX_ITER = 300
_CF_EPS = 3e-16
_CF_FPMIN = 1e-300


class DegenerateDataError(ValueError):
    """Paired differences have zero spread but a nonzero mean."""


@dataclass(frozen=True)
class PairedSamples:
    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.a) == 0 or len(self.a) != len(self.b):
            raise ValueError(
                f"paired samples need equal nonzero lengths, got {len(self.a)} and {len(self.b)}"
            )
        if not all(math.isfinite(v) for v in (*self.a, *self.b)):
            raise ValueError("paired samples must be finite")


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    p: float
    tails: str


@dataclass(frozen=True)
class VanDerLaanResponse:
    """Nine acceptance-scale ratings, pre-oriented so +2 is the positive pole."""

    items: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.items) != 9:
            raise ValueError(f"expected exactly 9 items, got {len(self.items)}")
        for i, v in enumerate(self.items):
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"item {i + 1}: ratings must be integers, got {v!r}")
            if not -2 <= v <= 2:
                raise ValueError(f"item {i + 1}: rating {v} outside [-2, 2]")


@dataclass(frozen=True)
class AcceptanceScores:
    usefulness: float
    satisfaction: float


def mean_sd(values: Sequence[float]) -> tuple[float, float]:
    """Sample mean and standard deviation (n - 1 denominator)."""
    n = len(values)
    if n < 2:
        raise ValueError(f"need at least 2 values for a standard deviation, got {n}")
    m = math.fsum(values) / n
    var = math.fsum((v - m) ** 2 for v in values) / (n - 1)
    return m, math.sqrt(var)


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_FPMIN:
        d = _CF_FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta CF did not converge for a={a}, b={b}, x={x}")


def _betai(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log(1.0 - x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_sf(t: float, df: int) -> float:
    """Upper-tail probability P(T > t) of the Student-t distribution."""
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    tail = 0.5 * _betai(df / 2.0, 0.5, x)
    return tail if t > 0 else 1.0 - tail


def paired_t_test(
    samples: PairedSamples, tails: str = TWO, direction: str | None = None
) -> TTestResult:
    """Paired t-test on a - b.

    One-sided tests must state the direction explicitly: ``greater`` tests
    mean(a - b) > 0, ``less`` tests mean(a - b) < 0.
    """
    if tails not in (ONE, TWO):
        raise ValueError(f"tails must be 'one' or 'two', got {tails!r}")
    if tails == ONE and direction not in (GREATER, LESS):
        raise ValueError("one-sided test requires direction='greater' or 'less'")
    n = len(samples.a)
    if n < 2:
        raise ValueError("paired t-test needs at least 2 pairs")
    diffs = [ai - bi for ai, bi in zip(samples.a, samples.b)]
    m, s = mean_sd(diffs)
    df = n - 1
    if s == 0.0:
        if m == 0.0:
            return TTestResult(t=0.0, df=df, p=1.0, tails=tails)
        raise DegenerateDataError(
            "all paired differences identical and nonzero; t statistic undefined"
        )
    t = m / (s / math.sqrt(n))
    if tails == TWO:
        p = 2.0 * t_sf(abs(t), df)
    elif direction == GREATER:
        p = t_sf(t, df)
    else:
        p = t_sf(-t, df)
    return TTestResult(t=t, df=df, p=p, tails=tails)


def van_der_laan(resp: VanDerLaanResponse) -> AcceptanceScores:
    """Usefulness (odd items) and satisfaction (even items) means."""
    usefulness = sum(resp.items[i] for i in USEFULNESS_ITEMS) / len(USEFULNESS_ITEMS)
    satisfaction = sum(resp.items[i] for i in SATISFACTION_ITEMS) / len(SATISFACTION_ITEMS)
    return AcceptanceScores(usefulness=usefulness, satisfaction=satisfaction)


def anticipation_score(answers: Sequence[tuple[int, int]]) -> float:
    """Fraction of (chosen_index, correct_index) pairs that match."""
    if not answers:
        raise ValueError("no answers to score")
    hits = sum(1 for chosen, correct in answers if chosen == correct)
    return hits / len(answers)


# --- questionnaire ingestion and reporting --------------------------------

CONDITIONS = ("hud", "nohud")
_ITEM_COLUMNS = tuple(f"item_{i}" for i in range(1, 10))


def load_reverse_flags(path: str) -> dict[str, bool]:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("items file must be a JSON object mapping item -> reverse flag")
    flags = {}
    for col in _ITEM_COLUMNS:
        if col not in doc:
            raise ValueError(f"items file missing reverse flag for {col}")
        if not isinstance(doc[col], bool):
            raise ValueError(f"items file: {col} flag must be true/false")
        flags[col] = doc[col]
    extra = set(doc) - set(_ITEM_COLUMNS)
    if extra:
        raise ValueError(f"items file has unknown keys: {', '.join(sorted(extra))}")
    return flags


def load_responses(
    responses_path: str, items_path: str
) -> dict[tuple[str, str], VanDerLaanResponse]:
    """Read the questionnaire CSV, flipping reversed items to the +2 pole.

    Keys are (participant_id, condition); duplicates are rejected.
    """
    flags = load_reverse_flags(items_path)
    out: dict[tuple[str, str], VanDerLaanResponse] = {}
    with open(responses_path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        expected = {"participant_id", "condition", *_ITEM_COLUMNS}
        if reader.fieldnames is None or set(reader.fieldnames) != expected:
            raise ValueError(
                "responses CSV must have columns participant_id, condition, item_1..item_9"
            )
        for lineno, row in enumerate(reader, start=2):
            pid = row["participant_id"].strip()
            condition = row["condition"].strip()
            if condition not in CONDITIONS:
                raise ValueError(f"line {lineno}: condition must be one of {CONDITIONS}")
            items = []
            for col in _ITEM_COLUMNS:
                try:
                    raw = int(row[col])
                except (TypeError, ValueError):
                    raise ValueError(f"line {lineno}: {col} must be an integer") from None
                items.append(-raw if flags[col] else raw)
            key = (pid, condition)
            if key in out:
                raise ValueError(f"line {lineno}: duplicate response for {key}")
            out[key] = VanDerLaanResponse(items=tuple(items))
    return out


@dataclass(frozen=True)
class ScaleReport:
    scale: str
    mean_hud: float
    sd_hud: float
    mean_nohud: float
    sd_nohud: float
    t: float
    df: int
    p: float


def acceptance_report(
    responses: dict[tuple[str, str], VanDerLaanResponse]
) -> list[ScaleReport]:
    """Per-condition means/SDs plus two-sided paired tests for both scales.

    Only participants with both conditions are used; they must all be
    complete pairs.
    """
    participants = sorted({pid for pid, _ in responses})
    incomplete = [
        pid
        for pid in participants
        if (pid, "hud") not in responses or (pid, "nohud") not in responses
    ]
    if incomplete:
        raise ValueError(f"participants missing a condition: {', '.join(incomplete)}")
    if len(participants) < 2:
        raise ValueError("need at least 2 complete participants")
    reports = []
    for scale in ("usefulness", "satisfaction"):
        hud_scores = [
            getattr(van_der_laan(responses[(pid, "hud")]), scale) for pid in participants
        ]
        nohud_scores = [
            getattr(van_der_laan(responses[(pid, "nohud")]), scale) for pid in participants
        ]
        m_h, s_h = mean_sd(hud_scores)
        m_n, s_n = mean_sd(nohud_scores)
        result = paired_t_test(PairedSamples(a=tuple(hud_scores), b=tuple(nohud_scores)))
        reports.append(
            ScaleReport(
                scale=scale,
                mean_hud=m_h,
                sd_hud=s_h,
                mean_nohud=m_n,
                sd_nohud=s_n,
                t=result.t,
                df=result.df,
                p=result.p,
            )
        )
    return reports


def write_report_csv(reports: Iterable[ScaleReport], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["scale", "mean_hud", "sd_hud", "mean_nohud", "sd_nohud", "t", "df", "p"]
        )
        for r in reports:
            writer.writerow(
                [r.scale, r.mean_hud, r.sd_hud, r.mean_nohud, r.sd_nohud, r.t, r.df, r.p]
            )
