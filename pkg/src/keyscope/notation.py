"""Human-readable key names and Camelot wheel codes.

Spelling is sharps-only (C, C#, D, ... B); no enharmonic preference logic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .profiles import Mode

__all__ = ["PITCH_CLASS_NAMES", "KeyName", "key_name", "parse_key_name", "to_camelot"]

PITCH_CLASS_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")

# Camelot wheel lookup, indexed by tonic pitch class. Major keys sit on the
# "B" ring, minor keys on the "A" ring; relative keys share a number and
# adjacent numbers are a fifth apart.
_CAMELOT_MAJOR = ("8B", "3B", "10B", "5B", "12B", "7B", "2B", "9B", "4B", "11B", "6B", "1B")
_CAMELOT_MINOR = ("5A", "12A", "7A", "2A", "9A", "4A", "11A", "6A", "1A", "8A", "3A", "10A")


@dataclass(frozen=True)
class KeyName:
    tonic: int
    mode: Mode
    text: str


def _check_tonic(tonic: int) -> None:
    if not 0 <= tonic <= 11:
        raise ValueError(f"tonic must be in 0..11, got {tonic}")


def key_name(tonic: int, mode: Mode) -> KeyName:
    """Canonical sharp-spelled name, e.g. (7, Mode.MAJOR) -> "G Major"."""
    _check_tonic(tonic)
    word = "Major" if mode is Mode.MAJOR else "Minor"
    return KeyName(tonic=tonic, mode=mode, text=f"{PITCH_CLASS_NAMES[tonic]} {word}")


def parse_key_name(text: str) -> tuple[int, Mode]:
    """Invert key_name: "G Major" -> (7, Mode.MAJOR)."""
    note, _, word = text.partition(" ")
    if note not in PITCH_CLASS_NAMES or word not in ("Major", "Minor"):
        raise ValueError(f"not a canonical key name: {text!r}")
    mode = Mode.MAJOR if word == "Major" else Mode.MINOR
    return PITCH_CLASS_NAMES.index(note), mode


def to_camelot(tonic: int, mode: Mode) -> str:
    """Camelot wheel code for a key, e.g. (0, Mode.MAJOR) -> "8B"."""
    _check_tonic(tonic)
    table = _CAMELOT_MAJOR if mode is Mode.MAJOR else _CAMELOT_MINOR
    return table[tonic]
