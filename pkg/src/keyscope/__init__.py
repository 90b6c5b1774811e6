"""Musical key estimation from audio.

Decodes WAV files, extracts a chroma representation via short-time Fourier
analysis, and matches it against 24 normalized major/minor key profiles,
reporting the best key plus a confidence score and Camelot code.
"""

from .audio_io import (
    AudioBuffer,
    MalformedWavError,
    UnsupportedEncodingError,
    WavDecodeError,
    check_min_length,
    load_audio,
    write_wav,
)
from .chroma import (
    A0_HZ,
    ChromaVector,
    Chromagram,
    compute_chromagram,
    freq_to_midi,
    mean_chroma,
    midi_to_pitch_class,
    normalize_chroma,
)
from .detector import ChromaTransformer, KeyTemplateClassifier
from .estimator import KeyEstimate, correlate, estimate_key
from .notation import KeyName, key_name, parse_key_name, to_camelot
from .pipeline import Analysis, analyze_buffer, analyze_file
from .profiles import (
    KeyProfile,
    KeyProfileSet,
    Mode,
    build_profile_set,
    circular_shift,
    default_profile_set,
    euclidean_norm,
    normalize_profile,
)
from .signalgen import ToneSpec, synth_silence, synth_tones
from .spectral import (
    InputTooShortError,
    Spectrogram,
    StftConfig,
    fft,
    hann_window,
    stft,
)

__version__ = "0.1.0"

__all__ = [
    "A0_HZ",
    "Analysis",
    "AudioBuffer",
    "ChromaTransformer",
    "ChromaVector",
    "Chromagram",
    "InputTooShortError",
    "KeyEstimate",
    "KeyName",
    "KeyProfile",
    "KeyProfileSet",
    "KeyTemplateClassifier",
    "MalformedWavError",
    "Mode",
    "Spectrogram",
    "StftConfig",
    "ToneSpec",
    "UnsupportedEncodingError",
    "WavDecodeError",
    "analyze_buffer",
    "analyze_file",
    "build_profile_set",
    "check_min_length",
    "circular_shift",
    "compute_chromagram",
    "correlate",
    "default_profile_set",
    "estimate_key",
    "euclidean_norm",
    "fft",
    "freq_to_midi",
    "hann_window",
    "key_name",
    "load_audio",
    "mean_chroma",
    "midi_to_pitch_class",
    "normalize_chroma",
    "normalize_profile",
    "parse_key_name",
    "stft",
    "synth_silence",
    "synth_tones",
    "to_camelot",
    "write_wav",
    "__version__",
]
