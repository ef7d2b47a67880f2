"""Rewrite raw interval sequences into coincidence (windowed) form.

The unique begin/finish times of a sequence cut the timeline into windows;
each window's coincidence is the set of labels whose intervals fully cover
it. Empty windows are kept (they carry duration, zero utility).
"""
from __future__ import annotations

from .model import (
    CEventset,
    Coincidence,
    CSequence,
    CSequenceDataset,
    DataError,
    ESequence,
    ESequenceDataset,
    UtilityTable,
)


def unique_time_points(s: ESequence) -> tuple[int, ...]:
    """All begin/finish times of s, deduplicated and ascending."""
    if not s.intervals:
        raise DataError("empty E-sequence")
    points = {e.begin for e in s.intervals} | {e.finish for e in s.intervals}
    return tuple(sorted(points))


def phi(s: ESequence, t_q: int, t_q2: int) -> Coincidence:
    """Labels of intervals covering the whole window [t_q, t_q2]."""
    if t_q >= t_q2:
        raise DataError(f"invalid window: [{t_q}, {t_q2}]")
    return Coincidence.of(
        e.label for e in s.intervals if e.begin <= t_q and t_q2 <= e.finish
    )


def to_csequence(s: ESequence) -> CSequence:
    """Windowed form of s: one C-eventset per consecutive time point pair."""
    points = unique_time_points(s)
    eventsets = tuple(
        CEventset(phi(s, points[k], points[k + 1]), points[k + 1] - points[k])
        for k in range(len(points) - 1)
    )
    return CSequence(id=s.id, eventsets=eventsets)


def transform_dataset(d: ESequenceDataset, utilities: UtilityTable) -> CSequenceDataset:
    """Windowed form of every sequence, with utilities attached.

    Every label occurring in d must have a utility entry; callers wanting a
    default should fill the table first (see cli --default-utility).
    """
    for label in d.labels():
        if label not in utilities:
            raise DataError(f"no external utility for label {label!r}")
    return CSequenceDataset(
        csequences=tuple(to_csequence(s) for s in d.sequences),
        utilities=utilities,
    )
