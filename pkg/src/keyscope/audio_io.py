"""WAV decoding into mono float sample arrays, plus a PCM encoder for fixtures.

Supported container: WAV/RIFF only, little-endian, with the `fmt ` chunk
preceding `data`. Accepted encodings: integer PCM at 16/24/32 bits
(format code 1) and 32-bit IEEE float (format code 3). Anything else is
rejected rather than guessed at.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "AudioBuffer",
    "WavDecodeError",
    "MalformedWavError",
    "UnsupportedEncodingError",
    "load_audio",
    "write_wav",
    "check_min_length",
]

_FORMAT_PCM = 1
_FORMAT_IEEE_FLOAT = 3

# Full-scale magnitudes for integer PCM widths.
_INT_SCALE = {16: 32768.0, 24: 8388608.0, 32: 2147483648.0}


class WavDecodeError(ValueError):
    """Base class for WAV decoding failures."""


class MalformedWavError(WavDecodeError):
    """Structurally broken file: bad magic, truncated chunks, empty stream."""


class UnsupportedEncodingError(WavDecodeError):
    """Well-formed file using an encoding this decoder does not handle."""


@dataclass(frozen=True)
class AudioBuffer:
    """Immutable mono waveform: float64 samples nominally in [-1, 1] plus rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        rate = int(self.sample_rate)
        if rate != self.sample_rate or rate <= 0:
            raise ValueError(f"sample_rate must be a positive integer, got {self.sample_rate}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", rate)

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate


def check_min_length(buf: AudioBuffer, frame_length: int) -> bool:
    """True iff at least one full analysis frame fits in the buffer."""
    if frame_length <= 0:
        raise ValueError("frame_length must be positive")
    return buf.samples.size >= frame_length


def _parse_chunks(data: bytes):
    """Yield (chunk_id, payload) from a RIFF body, honoring word alignment."""
    offset = 12
    while offset + 8 <= len(data):
        chunk_id = data[offset : offset + 4]
        (size,) = struct.unpack_from("<I", data, offset + 4)
        payload = data[offset + 8 : offset + 8 + size]
        if len(payload) < size:
            raise MalformedWavError(f"chunk {chunk_id!r} truncated")
        yield chunk_id, payload
        offset += 8 + size + (size & 1)


def load_audio(path) -> AudioBuffer:
    """Decode a WAV file into a mono AudioBuffer.

    Integer samples are scaled to [-1, 1] by the type's full-scale magnitude
    (1/32768 for 16-bit, 1/8388608 for 24-bit, 1/2147483648 for 32-bit);
    float samples pass through clamped to [-1, 1]. Stereo is downmixed by
    per-sample channel averaging. The sample rate is taken from the header
    verbatim; no resampling.
    """
    data = Path(path).read_bytes()
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedWavError(f"{path}: not a RIFF/WAVE file")

    fmt = None
    for chunk_id, payload in _parse_chunks(data):
        if chunk_id == b"fmt ":
            if len(payload) < 16:
                raise MalformedWavError(f"{path}: fmt chunk too small")
            fmt = struct.unpack_from("<HHIIHH", payload)
            continue
        if chunk_id == b"data":
            if fmt is None:
                raise MalformedWavError(f"{path}: data chunk precedes fmt chunk")
            return _decode_data(path, fmt, payload)
    raise MalformedWavError(f"{path}: missing {'fmt' if fmt is None else 'data'} chunk")


def _decode_data(path, fmt, payload: bytes) -> AudioBuffer:
    format_code, channels, sample_rate, _byte_rate, _block_align, bits = fmt

    if channels == 0:
        raise MalformedWavError(f"{path}: zero-channel stream")
    if channels > 2:
        raise UnsupportedEncodingError(f"{path}: {channels} channels not supported (max 2)")
    if sample_rate == 0:
        raise MalformedWavError(f"{path}: zero sample rate")

    if format_code == _FORMAT_PCM:
        if bits not in _INT_SCALE:
            raise UnsupportedEncodingError(f"{path}: {bits}-bit integer PCM not supported")
    elif format_code == _FORMAT_IEEE_FLOAT:
        if bits != 32:
            raise UnsupportedEncodingError(f"{path}: {bits}-bit float not supported")
    else:
        raise UnsupportedEncodingError(f"{path}: format code {format_code} not supported")

    frame_size = channels * bits // 8
    n_frames = len(payload) // frame_size
    if n_frames == 0:
        raise MalformedWavError(f"{path}: zero-sample stream")
    payload = payload[: n_frames * frame_size]

    if format_code == _FORMAT_IEEE_FLOAT:
        samples = np.frombuffer(payload, dtype="<f4").astype(np.float64)
        if not np.all(np.isfinite(samples)):
            raise MalformedWavError(f"{path}: non-finite float samples")
        samples = np.clip(samples, -1.0, 1.0)
    elif bits == 16:
        samples = np.frombuffer(payload, dtype="<i2").astype(np.float64) / _INT_SCALE[16]
    elif bits == 32:
        samples = np.frombuffer(payload, dtype="<i4").astype(np.float64) / _INT_SCALE[32]
    else:  # 24-bit: sign-extend packed 3-byte little-endian values
        raw = np.frombuffer(payload, dtype=np.uint8).reshape(-1, 3).astype(np.int32)
        ints = raw[:, 0] | (raw[:, 1] << 8) | (raw[:, 2] << 16)
        ints = (ints ^ 0x800000) - 0x800000
        samples = ints.astype(np.float64) / _INT_SCALE[24]

    if channels == 2:
        samples = samples.reshape(-1, 2).mean(axis=1)

    return AudioBuffer(samples=samples, sample_rate=sample_rate)


def write_wav(path, buf: AudioBuffer, encoding: str = "pcm16") -> None:
    """Encode a mono AudioBuffer as a WAV file.

    Encodings: pcm16, pcm24, pcm32 (integer PCM) and float32. Float samples
    are mapped to integers by rounding at full scale, so 16-bit decode ->
    encode -> decode round-trips exactly.
    """
    samples = buf.samples
    if encoding == "float32":
        format_code, bits = _FORMAT_IEEE_FLOAT, 32
        payload = samples.astype("<f4").tobytes()
    elif encoding in ("pcm16", "pcm24", "pcm32"):
        format_code, bits = _FORMAT_PCM, int(encoding[3:])
        scale = _INT_SCALE[bits]
        ints = np.clip(np.rint(samples * scale), -scale, scale - 1).astype(np.int64)
        if bits == 16:
            payload = ints.astype("<i2").tobytes()
        elif bits == 32:
            payload = ints.astype("<i4").tobytes()
        else:
            u = ints.astype(np.int64) & 0xFFFFFF
            packed = np.empty((ints.size, 3), dtype=np.uint8)
            packed[:, 0] = u & 0xFF
            packed[:, 1] = (u >> 8) & 0xFF
            packed[:, 2] = (u >> 16) & 0xFF
            payload = packed.tobytes()
    else:
        raise ValueError(f"unknown encoding: {encoding!r}")

    byte_rate = buf.sample_rate * bits // 8
    block_align = bits // 8
    header = b"RIFF" + struct.pack("<I", 36 + len(payload)) + b"WAVE"
    header += b"fmt " + struct.pack(
        "<IHHIIHH", 16, format_code, 1, buf.sample_rate, byte_rate, block_align, bits
    )
    header += b"data" + struct.pack("<I", len(payload))
    Path(path).write_bytes(header + payload)
