"""End-to-end analysis: waveform in, key estimate out.

Chains load -> length guard -> spectrogram -> chromagram -> mean chroma ->
normalize -> profile match, keeping the intermediate products around for
inspection and CSV dumps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .audio_io import AudioBuffer, check_min_length, load_audio
from .chroma import (
    A0_HZ,
    ChromaVector,
    Chromagram,
    compute_chromagram,
    mean_chroma,
    normalize_chroma,
)
from .estimator import KeyEstimate, estimate_key
from .profiles import KeyProfileSet, default_profile_set
from .spectral import InputTooShortError, Spectrogram, StftConfig, stft

__all__ = ["Analysis", "analyze_buffer", "analyze_file"]


@dataclass(frozen=True)
class Analysis:
    """Everything the pipeline produced for one input."""

    spectrogram: Spectrogram
    chromagram: Chromagram
    mean_chroma: ChromaVector
    normalized_chroma: ChromaVector | None
    estimate: KeyEstimate | None

    @property
    def is_silence(self) -> bool:
        return self.estimate is None


def analyze_buffer(
    buf: AudioBuffer,
    config: StftConfig | None = None,
    profiles: KeyProfileSet | None = None,
    fmin: float = A0_HZ,
) -> Analysis:
    """Run the full pipeline on a decoded buffer.

    Raises InputTooShortError when the buffer cannot fill a single analysis
    frame. A silent input produces an Analysis with estimate=None.
    """
    if config is None:
        config = StftConfig()
    if profiles is None:
        profiles = default_profile_set()
    if not check_min_length(buf, config.frame_length):
        raise InputTooShortError(
            f"need at least {config.frame_length} samples, got {buf.samples.size}"
        )
    spectrogram = stft(buf, config)
    chromagram = compute_chromagram(spectrogram, fmin=fmin)
    mean = mean_chroma(chromagram)
    normalized = normalize_chroma(mean)
    estimate = estimate_key(normalized, profiles)
    return Analysis(
        spectrogram=spectrogram,
        chromagram=chromagram,
        mean_chroma=mean,
        normalized_chroma=normalized,
        estimate=estimate,
    )


def analyze_file(
    path,
    config: StftConfig | None = None,
    profiles: KeyProfileSet | None = None,
    fmin: float = A0_HZ,
) -> Analysis:
    """Decode a WAV file and run the full pipeline on it."""
    return analyze_buffer(load_audio(path), config=config, profiles=profiles, fmin=fmin)
