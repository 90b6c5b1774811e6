"""Match a normalized chroma vector against the 24 key profiles.

Scores are plain dot products; since both sides are unit vectors each
score is the cosine of the angle between them, and with nonnegative
inputs all scores land in [0, 1]. The winner is the first profile (in
set order) achieving the maximum score.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chroma import ChromaVector
from .profiles import KeyProfileSet, Mode

__all__ = ["KeyEstimate", "correlate", "estimate_key"]


@dataclass(frozen=True)
class KeyEstimate:
    """Winning key with its score, runner-up margin, and the full score vector."""

    tonic: int
    mode: Mode
    correlation: float
    margin: float
    scores: np.ndarray

    def __post_init__(self):
        scores = np.array(self.scores, dtype=np.float64)
        if scores.shape != (24,):
            raise ValueError("scores must have exactly 24 entries")
        if self.margin < 0:
            raise ValueError("margin must be nonnegative")
        if self.correlation != np.max(scores):
            raise ValueError("correlation must equal the maximum score")
        if np.any(scores < -1 - 1e-9) or np.any(scores > 1 + 1e-9):
            raise ValueError("scores must lie in [-1, 1]")
        scores.setflags(write=False)
        object.__setattr__(self, "scores", scores)


def correlate(chroma: ChromaVector, profiles: KeyProfileSet) -> np.ndarray:
    """Dot product of a unit-normalized chroma against all 24 profiles.

    Returned in profile-set order (major tonics 0..11, then minor).
    """
    if not chroma.normalized:
        raise ValueError("chroma must be unit-normalized before correlation")
    return profiles.matrix() @ chroma.values


def estimate_key(
    chroma: ChromaVector | None, profiles: KeyProfileSet
) -> KeyEstimate | None:
    """Pick the profile with the maximum correlation score.

    `None` input is the silence signal; it bypasses scoring and yields the
    no-key outcome (`None`). Exact ties resolve to the lowest profile-set
    index, so results are deterministic.
    """
    if chroma is None:
        return None
    scores = correlate(chroma, profiles)
    best = int(np.argmax(scores))
    runner_up = float(np.partition(scores, -2)[-2])
    winner = profiles[best]
    return KeyEstimate(
        tonic=winner.tonic,
        mode=winner.mode,
        correlation=float(scores[best]),
        margin=float(scores[best]) - runner_up,
        scores=scores,
    )
