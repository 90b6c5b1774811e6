"""scikit-learn compatible estimators wrapping the analysis pipeline.

ChromaTransformer turns variable-length audio clips into fixed-size chroma
rows; KeyTemplateClassifier labels chroma rows with key names. The two
compose in a standard Pipeline:

    Pipeline([("chroma", ChromaTransformer()), ("key", KeyTemplateClassifier())])
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .audio_io import AudioBuffer
from .chroma import A0_HZ, SILENCE_NORM_EPS
from .notation import key_name
from .pipeline import analyze_buffer
from .profiles import build_profile_set, euclidean_norm
from .spectral import StftConfig

__all__ = ["ChromaTransformer", "KeyTemplateClassifier"]


def _as_buffer(clip, sample_rate: int) -> AudioBuffer:
    """Accept an AudioBuffer as-is; interpret plain arrays at `sample_rate`."""
    if isinstance(clip, AudioBuffer):
        return clip
    samples = np.asarray(clip, dtype=np.float64)
    if samples.ndim != 1:
        raise ValueError("each clip must be an AudioBuffer or a 1-D sample array")
    return AudioBuffer(samples=samples, sample_rate=sample_rate)


class ChromaTransformer(TransformerMixin, BaseEstimator):
    """Reduce each audio clip to one unit-normalized mean-chroma row.

    Stateless: fit only validates parameters. transform accepts a sequence
    of AudioBuffers or 1-D sample arrays (interpreted at `sample_rate`) and
    returns an (n_clips, 12) array. Silent clips come out as all-zero rows,
    which the key classifier maps to the no-key label.
    """

    def __init__(self, sample_rate=44100, frame_length=4096, hop_length=512, fmin=A0_HZ):
        self.sample_rate = sample_rate
        self.frame_length = frame_length
        self.hop_length = hop_length
        self.fmin = fmin

    def _validated_config(self) -> StftConfig:
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if self.fmin <= 0:
            raise ValueError(f"fmin must be positive, got {self.fmin}")
        return StftConfig(frame_length=self.frame_length, hop_length=self.hop_length)

    def fit(self, X=None, y=None):
        self._validated_config()
        return self

    def transform(self, X) -> np.ndarray:
        config = self._validated_config()
        clips = list(X)
        rows = np.zeros((len(clips), 12))
        for i, clip in enumerate(clips):
            buf = _as_buffer(clip, self.sample_rate)
            analysis = analyze_buffer(buf, config=config, fmin=self.fmin)
            if analysis.normalized_chroma is not None:
                rows[i] = analysis.normalized_chroma.values
        return rows


class KeyTemplateClassifier(ClassifierMixin, BaseEstimator):
    """Nearest-template key classifier over (n_samples, 12) chroma rows.

    fit ignores X and y: the 24 templates are fixed by the base profiles.
    predict returns canonical key names ("C Major" ... "B Minor") as an
    object array, with None for all-zero (silent) rows. decision_function
    returns the (n_samples, 24) cosine score matrix in class order.
    """

    def __init__(self, major_profile=None, minor_profile=None):
        self.major_profile = major_profile
        self.minor_profile = minor_profile

    def fit(self, X=None, y=None):
        self.profile_set_ = build_profile_set(self.major_profile, self.minor_profile)
        self.classes_ = np.array(
            [key_name(p.tonic, p.mode).text for p in self.profile_set_], dtype=object
        )
        return self

    def _scores(self, X) -> tuple[np.ndarray, np.ndarray]:
        """Validated rows -> (per-row norms, (n, 24) cosine scores)."""
        check_is_fitted(self, "profile_set_")
        X = check_array(X, dtype=np.float64, ensure_min_features=12)
        if X.shape[1] != 12:
            raise ValueError(f"chroma rows must have 12 features, got {X.shape[1]}")
        if np.any(X < 0):
            raise ValueError("chroma energies must be nonnegative")
        norms = np.array([euclidean_norm(row) for row in X])
        unit = X / np.where(norms > SILENCE_NORM_EPS, norms, 1.0)[:, None]
        return norms, unit @ self.profile_set_.matrix().T

    def decision_function(self, X) -> np.ndarray:
        _, scores = self._scores(X)
        return scores

    def predict(self, X) -> np.ndarray:
        norms, scores = self._scores(X)
        labels = self.classes_[np.argmax(scores, axis=1)].astype(object)
        labels[norms <= SILENCE_NORM_EPS] = None
        return labels
