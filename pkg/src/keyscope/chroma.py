"""Fold magnitude spectra onto 12 pitch classes and reduce to one vector.

Each spectrogram bin k >= 1 whose center frequency lies in [27.5 Hz,
Nyquist) is assigned to the pitch class of its nearest equal-tempered
semitone (A4 = 440 Hz); bin magnitudes are summed per class. The
per-frame vectors are averaged over time and unit-normalized, with a
near-zero norm treated as silence rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .notation import PITCH_CLASS_NAMES
from .profiles import euclidean_norm
from .spectral import Spectrogram

__all__ = [
    "A0_HZ",
    "SILENCE_NORM_EPS",
    "ChromaVector",
    "Chromagram",
    "freq_to_midi",
    "midi_to_pitch_class",
    "compute_chromagram",
    "mean_chroma",
    "normalize_chroma",
    "write_chromagram_csv",
]

# Lowest analyzed frequency: A0. Bins below this are sub-musical rumble.
A0_HZ = 27.5

# Mean-chroma norms at or below this are reported as silence.
SILENCE_NORM_EPS = 1e-9

UNIT_NORM_TOL = 1e-9


@dataclass(frozen=True)
class ChromaVector:
    """12 nonnegative pitch-class energies, indexed 0 = C .. 11 = B."""

    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (12,):
            raise ValueError("chroma vector must have exactly 12 elements")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValueError("chroma values must be finite and nonnegative")
        if self.normalized and abs(euclidean_norm(values) - 1.0) > UNIT_NORM_TOL:
            raise ValueError("normalized chroma must have unit Euclidean norm")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class Chromagram:
    """Per-frame (unnormalized) chroma vectors as a (num_frames, 12) array."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] != 12:
            raise ValueError("chromagram must have shape (num_frames, 12)")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValueError("chromagram values must be finite and nonnegative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def num_frames(self) -> int:
        return self.values.shape[0]


def freq_to_midi(f):
    """Real-valued MIDI pitch number: 69 + 12*log2(f / 440). Accepts arrays."""
    f = np.asarray(f, dtype=np.float64)
    if np.any(f <= 0):
        raise ValueError("frequency must be positive")
    midi = 69.0 + 12.0 * np.log2(f / 440.0)
    return float(midi) if midi.ndim == 0 else midi


def _round_half_away(x):
    # Rounds .5 cases away from zero so quarter-tone boundaries are
    # deterministic (np.round would round them to the nearest even integer).
    x = np.asarray(x, dtype=np.float64)
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


def midi_to_pitch_class(m) -> int:
    """Nearest pitch class: round(m) mod 12, rounding half away from zero."""
    m = float(m)
    if not np.isfinite(m):
        raise ValueError("MIDI number must be finite")
    return int(_round_half_away(m)) % 12


@lru_cache(maxsize=8)
def _fold_matrix(sample_rate: int, frame_length: int, fmin: float) -> np.ndarray:
    """(num_bins, 12) indicator matrix assigning each usable bin to its class."""
    num_bins = frame_length // 2 + 1
    freqs = np.arange(num_bins) * (sample_rate / frame_length)
    usable = (freqs >= fmin) & (freqs < sample_rate / 2)
    usable[0] = False  # DC has no pitch
    fold = np.zeros((num_bins, 12))
    bins = np.nonzero(usable)[0]
    classes = (_round_half_away(freq_to_midi(freqs[bins])).astype(np.int64)) % 12
    fold[bins, classes] = 1.0
    fold.setflags(write=False)
    return fold


def compute_chromagram(spec: Spectrogram, fmin: float = A0_HZ) -> Chromagram:
    """Sum bin magnitudes into pitch classes, one chroma vector per frame."""
    fold = _fold_matrix(spec.sample_rate, spec.config.frame_length, fmin)
    return Chromagram(values=spec.magnitudes @ fold)


def mean_chroma(cg: Chromagram) -> ChromaVector:
    """Element-wise mean over all frames; unnormalized."""
    if cg.num_frames == 0:
        raise ValueError("cannot average an empty chromagram")
    return ChromaVector(values=cg.values.mean(axis=0), normalized=False)


def normalize_chroma(c: ChromaVector, eps: float = SILENCE_NORM_EPS) -> ChromaVector | None:
    """Scale to unit Euclidean norm, or None when the input is silence.

    A norm at or below `eps` means there was no measurable tonal energy;
    that is a modeled outcome (key estimation is bypassed), not a fault.
    """
    norm = euclidean_norm(c.values)
    if norm <= eps:
        return None
    return ChromaVector(values=c.values / norm, normalized=True)


def write_chromagram_csv(cg: Chromagram, path) -> None:
    """Dump per-frame chroma as CSV with a frame index column, 9 significant digits."""
    with open(path, "w") as fh:
        fh.write("frame," + ",".join(PITCH_CLASS_NAMES) + "\n")
        for i, row in enumerate(cg.values):
            fh.write(f"{i}," + ",".join(f"{v:.9g}" for v in row))
            fh.write("\n")
