"""Deterministic synthesis of labeled test audio: sine tones and silence."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .audio_io import AudioBuffer

__all__ = [
    "ToneSpec",
    "MAJOR_SCALE_STEPS",
    "HARMONIC_MINOR_STEPS",
    "midi_to_frequency",
    "synth_tones",
    "synth_silence",
    "scale_specs",
]

# Semitone offsets from the tonic.
MAJOR_SCALE_STEPS = (0, 2, 4, 5, 7, 9, 11)
HARMONIC_MINOR_STEPS = (0, 2, 3, 5, 7, 8, 11)

_FADE_SECONDS = 0.010


def midi_to_frequency(midi_pitch: float) -> float:
    """Equal-tempered frequency of a MIDI pitch: 440 * 2**((m - 69) / 12)."""
    return 440.0 * 2.0 ** ((midi_pitch - 69) / 12.0)


@dataclass(frozen=True)
class ToneSpec:
    """One sine segment: MIDI pitch, duration in seconds, peak amplitude."""

    midi_pitch: int
    duration: float
    amplitude: float = 0.5

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if not 0 < self.amplitude <= 1:
            raise ValueError(f"amplitude must be in (0, 1], got {self.amplitude}")


def synth_tones(specs: Iterable[ToneSpec], sample_rate: int = 44100) -> AudioBuffer:
    """Concatenate sine segments, each starting at phase zero.

    A 10 ms linear fade-in/out shapes every segment so splices do not add
    broadband clicks. Output is fully determined by the inputs.
    """
    if sample_rate <= 0:
        raise ValueError(f"sample_rate must be positive, got {sample_rate}")
    specs = list(specs)
    if not specs:
        raise ValueError("specs must be nonempty")
    parts = []
    for spec in specs:
        n = round(spec.duration * sample_rate)
        freq = midi_to_frequency(spec.midi_pitch)
        t = np.arange(n) / sample_rate
        segment = np.sin(2.0 * np.pi * freq * t) * spec.amplitude
        fade = min(round(_FADE_SECONDS * sample_rate), n // 2)
        if fade > 0:
            ramp = np.arange(fade) / fade
            segment[:fade] *= ramp
            segment[-fade:] *= ramp[::-1]
        parts.append(segment)
    return AudioBuffer(samples=np.concatenate(parts), sample_rate=sample_rate)


def synth_silence(duration: float, sample_rate: int = 44100) -> AudioBuffer:
    """All-zero buffer of round(duration * sample_rate) samples."""
    if duration <= 0:
        raise ValueError(f"duration must be positive, got {duration}")
    if sample_rate <= 0:
        raise ValueError(f"sample_rate must be positive, got {sample_rate}")
    return AudioBuffer(samples=np.zeros(round(duration * sample_rate)), sample_rate=sample_rate)


def scale_specs(
    tonic_midi: int,
    steps: Sequence[int] = MAJOR_SCALE_STEPS,
    note_duration: float = 0.5,
    amplitude: float = 0.5,
) -> list[ToneSpec]:
    """Ascending scale as tone specs, one note per semitone offset in `steps`."""
    return [
        ToneSpec(midi_pitch=tonic_midi + step, duration=note_duration, amplitude=amplitude)
        for step in steps
    ]
