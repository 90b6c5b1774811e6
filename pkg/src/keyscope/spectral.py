"""Windowed framing and magnitude spectrogram via a radix-2 FFT.

Frames exist only where the full window fits (no centering or zero
padding), and only bins 0..L/2 are kept: real input makes the upper half
redundant by conjugate symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .audio_io import AudioBuffer

__all__ = [
    "InputTooShortError",
    "StftConfig",
    "Spectrogram",
    "hann_window",
    "fft",
    "stft",
    "write_spectrogram_csv",
]

DEFAULT_FRAME_LENGTH = 4096
DEFAULT_HOP_LENGTH = 512


class InputTooShortError(ValueError):
    """Signal shorter than one analysis frame."""


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class StftConfig:
    frame_length: int = DEFAULT_FRAME_LENGTH
    hop_length: int = DEFAULT_HOP_LENGTH
    window: str = "hann"

    def __post_init__(self):
        if not _is_pow2(self.frame_length):
            raise ValueError(f"frame_length must be a power of two, got {self.frame_length}")
        if not 0 < self.hop_length <= self.frame_length:
            raise ValueError(
                f"hop_length must be in 1..frame_length, got {self.hop_length}"
            )
        if self.window != "hann":
            raise ValueError(f"unknown window: {self.window!r}")


@dataclass(frozen=True)
class Spectrogram:
    """Per-frame magnitude spectra: (num_frames, frame_length/2 + 1)."""

    magnitudes: np.ndarray
    sample_rate: int
    config: StftConfig

    def __post_init__(self):
        magnitudes = np.array(self.magnitudes, dtype=np.float64)
        expected_bins = self.config.frame_length // 2 + 1
        if magnitudes.ndim != 2 or magnitudes.shape[1] != expected_bins:
            raise ValueError(f"magnitudes must be (num_frames, {expected_bins})")
        if not np.all(np.isfinite(magnitudes)) or np.any(magnitudes < 0):
            raise ValueError("magnitudes must be finite and nonnegative")
        magnitudes.setflags(write=False)
        object.__setattr__(self, "magnitudes", magnitudes)

    @property
    def num_frames(self) -> int:
        return self.magnitudes.shape[0]

    @property
    def num_bins(self) -> int:
        return self.magnitudes.shape[1]

    def bin_frequencies(self) -> np.ndarray:
        """Center frequency of each bin: k * sample_rate / frame_length."""
        return np.arange(self.num_bins) * (self.sample_rate / self.config.frame_length)


def hann_window(length: int) -> np.ndarray:
    """Periodic Hann window: 0.5 - 0.5*cos(2*pi*n/length), n = 0..length-1."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    n = np.arange(length)
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * n / length)


@lru_cache(maxsize=8)
def _bit_reverse_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    rev.setflags(write=False)
    return rev


def fft(frame) -> np.ndarray:
    """Discrete Fourier transform along the last axis.

    X[k] = sum_n x[n] * exp(-2j*pi*k*n/L). Iterative radix-2
    decimation-in-time with an up-front bit-reversal permutation; the
    transform length must be a power of two.
    """
    x = np.asarray(frame)
    if x.ndim == 0:
        raise ValueError("transform input must be a sequence, not a scalar")
    n = x.shape[-1]
    if not _is_pow2(n):
        raise ValueError(f"transform length must be a power of two, got {n}")
    out = x[..., _bit_reverse_indices(n)].astype(np.complex128)
    m = 2
    while m <= n:
        half = m // 2
        twiddle = np.exp((-2j * np.pi / m) * np.arange(half))
        blocks = out.reshape(out.shape[:-1] + (n // m, m))
        upper = blocks[..., :half]
        lower = blocks[..., half:] * twiddle
        blocks[..., half:] = upper - lower
        blocks[..., :half] = upper + lower
        m *= 2
    return out


def stft(buf: AudioBuffer, config: StftConfig | None = None) -> Spectrogram:
    """Magnitude spectrogram of a buffer.

    Frame m covers samples m*hop .. m*hop + frame_length - 1, windowed and
    transformed; trailing samples that do not fill a frame are dropped.
    """
    if config is None:
        config = StftConfig()
    n = buf.samples.size
    length, hop = config.frame_length, config.hop_length
    if n < length:
        raise InputTooShortError(
            f"need at least {length} samples for one frame, got {n}"
        )
    frames = np.lib.stride_tricks.sliding_window_view(buf.samples, length)[::hop]
    spectrum = fft(frames * hann_window(length))
    magnitudes = np.abs(spectrum[:, : length // 2 + 1])
    return Spectrogram(magnitudes=magnitudes, sample_rate=buf.sample_rate, config=config)


def write_spectrogram_csv(spec: Spectrogram, path) -> None:
    """Dump magnitudes as CSV: one row per frame, 9 significant digits, no header."""
    with open(path, "w") as fh:
        for row in spec.magnitudes:
            fh.write(",".join(f"{v:.9g}" for v in row))
            fh.write("\n")
