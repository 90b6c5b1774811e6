"""Key profiles: normalized 12-element pitch-class templates for all 24 keys.

The base C Major / C Minor templates are the Krumhansl-Kessler tonal
hierarchy ratings. The remaining 22 keys are generated by circularly
shifting the base vectors, then unit-normalizing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

__all__ = [
    "Mode",
    "KeyProfile",
    "KeyProfileSet",
    "KRUMHANSL_MAJOR",
    "KRUMHANSL_MINOR",
    "euclidean_norm",
    "normalize_profile",
    "circular_shift",
    "build_profile_set",
    "default_profile_set",
    "load_profiles_file",
]


class Mode(Enum):
    MAJOR = "major"
    MINOR = "minor"


# Krumhansl-Kessler probe-tone ratings, indexed C..B.
KRUMHANSL_MAJOR = (6.35, 2.23, 3.48, 2.33, 4.38, 4.09, 2.52, 5.19, 2.39, 3.66, 2.29, 2.88)
KRUMHANSL_MINOR = (6.33, 2.68, 3.52, 5.38, 2.60, 3.53, 2.54, 4.75, 3.98, 2.69, 3.34, 3.17)

UNIT_NORM_TOL = 1e-9


def euclidean_norm(v) -> float:
    """Euclidean (L2) norm of a vector.

    Uses exact float summation so the norm is invariant under any
    permutation of the elements, bit for bit.
    """
    v = np.asarray(v, dtype=np.float64)
    return math.sqrt(math.fsum(x * x for x in v.ravel()))


def normalize_profile(v) -> np.ndarray:
    """Scale a vector to unit Euclidean norm. Raises on a zero vector."""
    v = np.asarray(v, dtype=np.float64)
    norm = euclidean_norm(v)
    if norm == 0.0:
        raise ValueError("cannot normalize a zero vector")
    return v / norm


def circular_shift(base, s: int) -> np.ndarray:
    """Rotate a 12-element template up by `s` semitones.

    Element k of the result is element (k - s) mod 12 of the input, so the
    template for C transposes to the template for the key s semitones above.
    """
    if not 0 <= s <= 11:
        raise ValueError(f"shift must be in 0..11, got {s}")
    return np.roll(np.asarray(base, dtype=np.float64), s)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class KeyProfile:
    """A unit-normalized 12-element template with its key identity."""

    values: np.ndarray
    tonic: int
    mode: Mode

    def __post_init__(self):
        values = _readonly(self.values)
        if values.shape != (12,):
            raise ValueError("profile must have exactly 12 elements")
        if not np.all(values > 0):
            raise ValueError("profile values must be positive")
        if abs(euclidean_norm(values) - 1.0) > UNIT_NORM_TOL:
            raise ValueError("profile must have unit Euclidean norm")
        if not 0 <= self.tonic <= 11:
            raise ValueError(f"tonic must be in 0..11, got {self.tonic}")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class KeyProfileSet:
    """All 24 key profiles: major tonics 0..11, then minor tonics 0..11.

    The ordering is normative; argmax tie-breaking in the estimator scans
    in this order.
    """

    profiles: tuple[KeyProfile, ...]

    def __post_init__(self):
        if len(self.profiles) != 24:
            raise ValueError("profile set must contain exactly 24 profiles")
        seen = {(p.tonic, p.mode) for p in self.profiles}
        if len(seen) != 24:
            raise ValueError("every (tonic, mode) pair must appear exactly once")
        matrix = _readonly(np.stack([p.values for p in self.profiles]))
        object.__setattr__(self, "_matrix", matrix)

    def __len__(self) -> int:
        return len(self.profiles)

    def __iter__(self):
        return iter(self.profiles)

    def __getitem__(self, j: int) -> KeyProfile:
        return self.profiles[j]

    def matrix(self) -> np.ndarray:
        """The profiles stacked as a read-only (24, 12) array."""
        return self._matrix


def build_profile_set(major=None, minor=None) -> KeyProfileSet:
    """Generate the 24-profile set from base major/minor templates.

    `major` and `minor` default to the Krumhansl-Kessler vectors; overrides
    must be 12 positive reals. Each key's profile is the base template
    circularly shifted to its tonic, then unit-normalized.
    """
    bases = {
        Mode.MAJOR: np.asarray(major if major is not None else KRUMHANSL_MAJOR, dtype=np.float64),
        Mode.MINOR: np.asarray(minor if minor is not None else KRUMHANSL_MINOR, dtype=np.float64),
    }
    for mode, base in bases.items():
        if base.shape != (12,):
            raise ValueError(f"{mode.value} base profile must have 12 elements")
        if not np.all(base > 0):
            raise ValueError(f"{mode.value} base profile values must be positive")
    profiles = []
    for mode in (Mode.MAJOR, Mode.MINOR):
        for s in range(12):
            shifted = circular_shift(bases[mode], s)
            profiles.append(KeyProfile(values=normalize_profile(shifted), tonic=s, mode=mode))
    return KeyProfileSet(profiles=tuple(profiles))


_DEFAULT_SET: KeyProfileSet | None = None


def default_profile_set() -> KeyProfileSet:
    """Shared immutable profile set built from the Krumhansl-Kessler bases."""
    global _DEFAULT_SET
    if _DEFAULT_SET is None:
        _DEFAULT_SET = build_profile_set()
    return _DEFAULT_SET


def load_profiles_file(path) -> tuple[np.ndarray, np.ndarray]:
    """Parse a profile-override file into (major, minor) base vectors.

    Format: one line ``major: v1, v2, ..., v12`` and one line
    ``minor: v1, v2, ..., v12``; values must be positive. Blank lines and
    lines starting with '#' are ignored.
    """
    found: dict[str, np.ndarray] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label, sep, rest = line.partition(":")
        label = label.strip().lower()
        if not sep or label not in ("major", "minor"):
            raise ValueError(f"{path}:{lineno}: expected 'major:' or 'minor:' line")
        if label in found:
            raise ValueError(f"{path}:{lineno}: duplicate '{label}' line")
        try:
            values = np.array([float(tok) for tok in rest.split(",")], dtype=np.float64)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: values must be comma-separated reals") from None
        if values.shape != (12,):
            raise ValueError(f"{path}:{lineno}: expected 12 values, got {values.size}")
        if not np.all(values > 0):
            raise ValueError(f"{path}:{lineno}: profile values must be positive")
        found[label] = values
    for label in ("major", "minor"):
        if label not in found:
            raise ValueError(f"{path}: missing '{label}:' line")
    return found["major"], found["minor"]
