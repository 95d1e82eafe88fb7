"""Rider models: the target speed ``drive_intent`` as a function of time."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

CONSTANT = "constant"
RAMP = "ramp"


@dataclass(frozen=True)
class Segment:
    """One piece of an intent profile.

    A ``constant`` segment jumps to ``target`` at ``start``.  A ``ramp``
    segment moves linearly from the value reached so far towards ``target``
    at ``slope`` (m/s^2, positive) and holds ``target`` once reached.
    """

    start: float
    kind: str = CONSTANT
    target: float = 0.0
    slope: float | None = None


def segment_problems(segments) -> list[tuple[str, str]]:
    """``(path, message)`` for every problem in a segment sequence."""
    out = []
    if not segments:
        return [("segments", "at least one segment is required")]
    if segments[0].start != 0:
        out.append(("segments[0].start", f"first segment must start at 0, got {segments[0].start}"))
    for i, seg in enumerate(segments):
        where = f"segments[{i}]"
        if seg.kind not in (CONSTANT, RAMP):
            out.append((f"{where}.kind", f"must be 'constant' or 'ramp', got {seg.kind!r}"))
        if not math.isfinite(seg.target):
            out.append((f"{where}.target", "must be finite"))
        if seg.kind == RAMP and (seg.slope is None or not seg.slope > 0 or not math.isfinite(seg.slope)):
            out.append((f"{where}.slope", f"ramp needs a finite slope > 0, got {seg.slope!r}"))
        if i and not seg.start > segments[i - 1].start:
            out.append((f"{where}.start", "segment start times must be strictly increasing"))
    return out


@dataclass(frozen=True)
class IntentProfile:
    segments: tuple[Segment, ...] = (Segment(0.0),)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        bad = self.problems()
        if bad:
            raise ValueError("; ".join(f"{k}: {m}" for k, m in bad))

    def problems(self) -> list[tuple[str, str]]:
        return segment_problems(self.segments)

    @classmethod
    def constant(cls, value: float) -> "IntentProfile":
        return cls((Segment(0.0, CONSTANT, value),))

    @classmethod
    def step(cls, at: float, before: float, after: float) -> "IntentProfile":
        return cls((Segment(0.0, CONSTANT, before), Segment(at, CONSTANT, after)))

    @classmethod
    def ramp(cls, start_value: float, end_value: float, t0: float, t1: float) -> "IntentProfile":
        """Hold ``start_value`` until ``t0``, then ramp to ``end_value`` by ``t1``.

        A ramp at ``t0 == 0`` always starts from 0, so ``start_value`` must be 0 there.
        """
        if not t1 > t0:
            raise ValueError("ramp needs t1 > t0")
        slope = abs(end_value - start_value) / (t1 - t0) or 1.0
        ramp = Segment(t0, RAMP, end_value, slope)
        if t0 == 0:
            if start_value != 0:
                raise ValueError("a ramp starting at t=0 starts from 0")
            return cls((ramp,))
        return cls((Segment(0.0, CONSTANT, start_value), ramp))

    def to_dict(self) -> dict:
        segs = []
        for s in self.segments:
            d = {"start": s.start, "kind": s.kind, "target": s.target}
            if s.kind == RAMP:
                d["slope"] = s.slope
            segs.append(d)
        return {"segments": segs}


def _advance(value: float, seg: Segment, elapsed: float) -> float:
    if seg.kind == CONSTANT:
        return seg.target
    gap = seg.target - value
    reach = seg.slope * elapsed
    if reach >= abs(gap):
        return seg.target
    return value + math.copysign(reach, gap)


def intent_at(profile: IntentProfile, t: float) -> float:
    """Drive intent at time ``t >= 0``.  A leading ramp starts from 0."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    segs = profile.segments
    last = bisect.bisect_right([s.start for s in segs], t) - 1
    value = 0.0
    for i in range(last + 1):
        end = t if i == last else segs[i + 1].start
        value = _advance(value, segs[i], end - segs[i].start)
    return value
