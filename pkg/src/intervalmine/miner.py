"""Pattern-growth miner over the promising-coincidence vocabulary.

Mining has two phases. Phase 1 grows coincidence candidates level-wise
(apriori over labels in lexicographic order) and keeps the ones that occur
in the data and whose weighted bound clears the threshold; the weighted
bound is the only one that stays valid while a coincidence can still gain
labels, because adding a label can raise a match's value at the very same
window, which a match-based estimate never anticipates. Phase 2 grows
patterns depth-first by appending whole vocabulary coincidences. There the
projected strategy tightens pruning: each prefix carries the minimum of
its own projected bound and every ancestor's, which keeps the pruning
value non-increasing along an extension chain and never above the
weighted bound. The strategy changes what gets pruned, never what gets
emitted.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import utility
from .encoding import (
    EncodedDataset,
    empty_prefix_scores,
    encode_coincidence,
    encode_dataset,
    summarize_scores,
    weighted_utilization,
)
from .kernels import extend_scores
from .model import Coincidence, CSequenceDataset, LSequence, lsequence_sort_key
from .utility import UpperBound


@dataclass(frozen=True)
class MiningConfig:
    xi: float
    max_length: int
    max_size: int
    xi_mode: str = "absolute"
    strategy: UpperBound = UpperBound.PROJECTED

    def __post_init__(self) -> None:
        if self.xi_mode not in ("absolute", "relative"):
            raise ValueError(f"xi_mode must be 'absolute' or 'relative': {self.xi_mode!r}")
        if self.xi < 0:
            raise ValueError(f"xi must be nonnegative: {self.xi}")
        if self.xi_mode == "relative" and self.xi > 1:
            raise ValueError(f"relative xi must be in [0, 1]: {self.xi}")
        if self.max_length < 1 or self.max_size < 1:
            raise ValueError("max_length and max_size must be >= 1")

    def with_strategy(self, strategy: UpperBound) -> "MiningConfig":
        return replace(self, strategy=strategy)


@dataclass(frozen=True)
class Pattern:
    lsequence: LSequence
    umax: float


@dataclass
class MiningStats:
    candidates_generated: int = 0
    candidates_pruned: int = 0
    patterns_found: int = 0
    elapsed_ms: float = 0.0

    def merge(self, other: "MiningStats") -> None:
        self.candidates_generated += other.candidates_generated
        self.candidates_pruned += other.candidates_pruned
        self.patterns_found += other.patterns_found


def resolve_threshold(cfg: MiningConfig, d: CSequenceDataset) -> float:
    """Absolute threshold; relative mode scales by total dataset utility."""
    if cfg.xi_mode == "absolute":
        return cfg.xi
    return cfg.xi * utility.dataset_utility(d)


@dataclass(frozen=True)
class _Candidate:
    """A vocabulary coincidence with its precomputed root evaluation."""

    coincidence: Coincidence
    mask: np.ndarray
    putil: float
    scores: np.ndarray   # score rows of the single-coincidence pattern
    matched: np.ndarray
    umax: float
    bound: float         # strategy bound for extending this as a root


@dataclass
class _Context:
    enc: EncodedDataset
    cfg: MiningConfig
    xi_abs: float
    vocab: list[_Candidate] = field(default_factory=list)


def _evaluate(ctx: _Context, prev_scores, prev_base, mask, putil):
    scores = extend_scores(
        ctx.enc.masks, ctx.enc.durations, ctx.enc.lengths,
        prev_scores, prev_base, mask, putil,
    )
    matched, best = summarize_scores(ctx.enc, scores)
    umax = float(best.sum())
    return scores, matched, umax


def _bound(ctx: _Context, matched, umax: float, length: int) -> float:
    """Upper bound on any pattern built by appending coincidences.

    The projected value is clamped to the weighted bound; the raw sum can
    exceed it when a best match sits on top-ranked eventsets, and an
    unclamped value would make the projected strategy keep candidates the
    weighted strategy discards.
    """
    if ctx.cfg.strategy is UpperBound.NONE:
        return float("inf")
    full = weighted_utilization(ctx.enc, matched, ctx.cfg.max_length)
    if ctx.cfg.strategy is UpperBound.LWU:
        return full
    remaining = weighted_utilization(
        ctx.enc, matched, ctx.cfg.max_length - length
    )
    return min(umax + remaining, full)


def _vocab_bound(ctx: _Context, matched) -> float:
    """Promise value while a coincidence may still grow labels.

    Label growth can raise a match's value inside the same window, so the
    match-based projected estimate is not a valid bound here; the weighted
    bound is, for every strategy.
    """
    if ctx.cfg.strategy is UpperBound.NONE:
        return float("inf")
    return weighted_utilization(ctx.enc, matched, ctx.cfg.max_length)


def _build_vocabulary(ctx: _Context, stats: MiningStats) -> None:
    """Level-wise promising coincidence generation (phase 1).

    Candidates that never occur in a single window are dead ends for both
    bound strategies and are dropped alongside the unpromising ones.
    """
    base = empty_prefix_scores(ctx.enc)
    labels = ctx.enc.labels
    level: list[_Candidate] = []
    for lab in labels:
        stats.candidates_generated += 1
        c = Coincidence.of([lab])
        cand = _make_candidate(ctx, base, c)
        if cand.matched.any() and _vocab_bound(ctx, cand.matched) >= ctx.xi_abs:
            level.append(cand)
        else:
            stats.candidates_pruned += 1
    ctx.vocab.extend(level)

    size = 1
    while size < ctx.cfg.max_size and level:
        nxt: list[_Candidate] = []
        for cand in level:
            top = cand.coincidence.labels[-1]
            for lab in labels:
                if lab <= top:
                    continue
                stats.candidates_generated += 1
                child = _make_candidate(ctx, base, cand.coincidence.union(lab))
                if child.matched.any() and _vocab_bound(ctx, child.matched) >= ctx.xi_abs:
                    nxt.append(child)
                else:
                    stats.candidates_pruned += 1
        ctx.vocab.extend(nxt)
        level = nxt
        size += 1

    ctx.vocab.sort(key=lambda v: (len(v.coincidence), v.coincidence.labels))


def _make_candidate(ctx: _Context, base, c: Coincidence) -> _Candidate:
    mask, putil = encode_coincidence(c, ctx.enc)
    scores, matched, umax = _evaluate(ctx, base, 0.0, mask, putil)
    return _Candidate(
        c, mask, putil, scores, matched, umax,
        bound=_bound(ctx, matched, umax, 1),
    )


def promising_coincidences(
    d: CSequenceDataset, cfg: MiningConfig, xi_abs: float
) -> list[Coincidence]:
    """Occurring coincidences up to the size cap that stay promising.

    Vocabulary promise uses the weighted bound for every strategy (see the
    module docstring for why the projected refinement only kicks in once
    coincidences stop growing).
    """
    ctx = _Context(enc=encode_dataset(d), cfg=cfg, xi_abs=xi_abs)
    _build_vocabulary(ctx, MiningStats())
    return [v.coincidence for v in ctx.vocab]


NEG_INF = float("-inf")


def _grow(
    ctx: _Context,
    prefix: list[Coincidence],
    prefix_scores: np.ndarray,
    limit: float,
    out: list[Pattern],
    stats: MiningStats,
) -> None:
    """Extend the prefix by every vocabulary coincidence, depth-first.

    `limit` is the tightest bound seen along the chain so far; a bound
    established for a prefix also covers everything grown from it, so the
    effective bound can only decrease down the tree.
    """
    depth = len(prefix) + 1
    for cand in ctx.vocab:
        stats.candidates_generated += 1
        scores, matched, umax = _evaluate(
            ctx, prefix_scores, NEG_INF, cand.mask, cand.putil
        )
        if not matched.any():
            stats.candidates_pruned += 1
            continue
        bound = min(limit, _bound(ctx, matched, umax, depth))
        if bound < ctx.xi_abs:
            stats.candidates_pruned += 1
            continue
        prefix.append(cand.coincidence)
        if umax >= ctx.xi_abs:
            out.append(Pattern(LSequence(tuple(prefix)), umax))
        if depth < ctx.cfg.max_length:
            _grow(ctx, prefix, scores, bound, out, stats)
        prefix.pop()


def _mine_root(ctx: _Context, root: _Candidate) -> tuple[list[Pattern], MiningStats]:
    out: list[Pattern] = []
    stats = MiningStats()
    if root.bound >= ctx.xi_abs:
        if root.umax >= ctx.xi_abs:
            out.append(Pattern(LSequence((root.coincidence,)), root.umax))
        if ctx.cfg.max_length > 1:
            _grow(ctx, [root.coincidence], root.scores, root.bound, out, stats)
    return out, stats


def mine(
    d: CSequenceDataset, cfg: MiningConfig, threads: int = 1
) -> tuple[list[Pattern], MiningStats]:
    """All patterns within the length/size caps whose utility meets xi.

    The emitted set is identical for every strategy; bounds only control
    how much of the candidate space is visited. Root subtrees may be mined
    by a thread pool; output order is canonical regardless of scheduling.
    """
    start = time.perf_counter()
    stats = MiningStats()
    xi_abs = resolve_threshold(cfg, d)
    ctx = _Context(enc=encode_dataset(d), cfg=cfg, xi_abs=xi_abs)
    _build_vocabulary(ctx, stats)

    patterns: list[Pattern] = []
    if threads > 1 and len(ctx.vocab) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for sub, substats in pool.map(lambda r: _mine_root(ctx, r), ctx.vocab):
                patterns.extend(sub)
                stats.merge(substats)
    else:
        for root in ctx.vocab:
            sub, substats = _mine_root(ctx, root)
            patterns.extend(sub)
            stats.merge(substats)

    patterns.sort(key=lambda p: lsequence_sort_key(p.lsequence))
    stats.patterns_found = len(patterns)
    stats.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return patterns, stats
