import struct

import numpy as np
import pytest

from keyscope.audio_io import (
    AudioBuffer,
    MalformedWavError,
    UnsupportedEncodingError,
    check_min_length,
    load_audio,
    write_wav,
)


def make_wav(
    payload: bytes,
    *,
    format_code=1,
    channels=1,
    sample_rate=44100,
    bits=16,
    data_before_fmt=False,
    extra_chunk=None,
    declared_data_size=None,
):
    """Assemble WAV bytes with full control over the header fields."""
    byte_rate = sample_rate * channels * bits // 8
    block_align = channels * bits // 8
    fmt = b"fmt " + struct.pack(
        "<IHHIIHH", 16, format_code, channels, sample_rate, byte_rate, block_align, bits
    )
    size = len(payload) if declared_data_size is None else declared_data_size
    data = b"data" + struct.pack("<I", size) + payload
    chunks = [data, fmt] if data_before_fmt else [fmt, data]
    if extra_chunk is not None:
        chunks.insert(0 if not data_before_fmt else 1, extra_chunk)
    body = b"".join(chunks)
    return b"RIFF" + struct.pack("<I", 4 + len(body)) + b"WAVE" + body


def pcm16(*values):
    return struct.pack(f"<{len(values)}h", *values)


class TestLoadPcm16:
    def test_scaling(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(pcm16(0, 16384, -32768)))
        buf = load_audio(path)
        np.testing.assert_array_equal(buf.samples, [0.0, 0.5, -1.0])

    def test_stereo_downmix_is_channel_average(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(pcm16(16384, 0), channels=2))
        buf = load_audio(path)
        np.testing.assert_array_equal(buf.samples, [0.25])

    def test_sample_rate_from_header(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(pcm16(0), sample_rate=44100))
        assert load_audio(path).sample_rate == 44100
        path.write_bytes(make_wav(pcm16(0), sample_rate=8000))
        assert load_audio(path).sample_rate == 8000


class TestLoadOtherEncodings:
    def test_pcm24_scaling(self, tmp_path):
        # -8388608, +8388607, and -1 as packed little-endian 3-byte values.
        payload = bytes([0x00, 0x00, 0x80, 0xFF, 0xFF, 0x7F, 0xFF, 0xFF, 0xFF])
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(payload, bits=24))
        buf = load_audio(path)
        np.testing.assert_array_equal(
            buf.samples, [-1.0, 8388607 / 8388608, -1 / 8388608]
        )

    def test_pcm32_scaling(self, tmp_path):
        payload = struct.pack("<3i", -2147483648, 1073741824, 0)
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(payload, bits=32))
        buf = load_audio(path)
        np.testing.assert_array_equal(buf.samples, [-1.0, 0.5, 0.0])

    def test_float32_passthrough_with_clamp(self, tmp_path):
        payload = struct.pack("<4f", 0.25, -0.5, 1.5, -2.0)
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(payload, format_code=3, bits=32))
        buf = load_audio(path)
        np.testing.assert_array_equal(buf.samples, [0.25, -0.5, 1.0, -1.0])

    def test_float32_nan_rejected(self, tmp_path):
        payload = struct.pack("<2f", 0.0, float("nan"))
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(payload, format_code=3, bits=32))
        with pytest.raises(MalformedWavError):
            load_audio(path)


class TestLoadErrors:
    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_audio(tmp_path / "nope.wav")

    def test_not_riff(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(b"OggS" + b"\x00" * 40)
        with pytest.raises(MalformedWavError):
            load_audio(path)

    def test_data_before_fmt(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(pcm16(0), data_before_fmt=True))
        with pytest.raises(MalformedWavError):
            load_audio(path)

    def test_missing_data_chunk(self, tmp_path):
        full = make_wav(pcm16(0))
        path = tmp_path / "a.wav"
        path.write_bytes(full[: 12 + 8 + 16])  # RIFF header + fmt only
        with pytest.raises(MalformedWavError):
            load_audio(path)

    def test_truncated_data_chunk(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(pcm16(0, 1), declared_data_size=64))
        with pytest.raises(MalformedWavError):
            load_audio(path)

    def test_compressed_format_rejected(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(b"\x00" * 8, format_code=2))
        with pytest.raises(UnsupportedEncodingError):
            load_audio(path)

    def test_pcm8_rejected(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(b"\x80\x80", bits=8))
        with pytest.raises(UnsupportedEncodingError):
            load_audio(path)

    def test_three_channels_rejected(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(pcm16(0, 0, 0), channels=3))
        with pytest.raises(UnsupportedEncodingError):
            load_audio(path)

    def test_zero_channels_rejected(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(pcm16(0), channels=0))
        with pytest.raises(MalformedWavError):
            load_audio(path)

    def test_zero_samples_rejected(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(b""))
        with pytest.raises(MalformedWavError):
            load_audio(path)


class TestChunkWalking:
    def test_unknown_chunks_are_skipped(self, tmp_path):
        junk = b"LIST" + struct.pack("<I", 6) + b"noise\x00"
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(pcm16(16384), extra_chunk=junk))
        np.testing.assert_array_equal(load_audio(path).samples, [0.5])

    def test_odd_sized_chunk_word_alignment(self, tmp_path):
        # 5-byte payload is padded to 6; the data chunk must still be found.
        junk = b"LIST" + struct.pack("<I", 5) + b"noise" + b"\x00"
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(pcm16(16384), extra_chunk=junk))
        np.testing.assert_array_equal(load_audio(path).samples, [0.5])


class TestWriteWav:
    def test_pcm16_round_trip_is_exact(self, tmp_path):
        rng = np.random.default_rng(42)
        ints = rng.integers(-32768, 32768, size=1000)
        first = tmp_path / "a.wav"
        first.write_bytes(make_wav(struct.pack("<1000h", *ints)))
        decoded = load_audio(first)
        second = tmp_path / "b.wav"
        write_wav(second, decoded, encoding="pcm16")
        redecoded = load_audio(second)
        np.testing.assert_array_equal(redecoded.samples, decoded.samples)
        assert redecoded.sample_rate == decoded.sample_rate

    @pytest.mark.parametrize(
        "encoding,tol",
        [("pcm16", 1 / 32768), ("pcm24", 1 / 8388608), ("pcm32", 1 / 2147483648), ("float32", 1e-7)],
    )
    def test_encode_decode_accuracy(self, tmp_path, encoding, tol):
        rng = np.random.default_rng(7)
        buf = AudioBuffer(samples=rng.uniform(-0.99, 0.99, 500), sample_rate=22050)
        path = tmp_path / "a.wav"
        write_wav(path, buf, encoding=encoding)
        out = load_audio(path)
        assert out.sample_rate == 22050
        np.testing.assert_allclose(out.samples, buf.samples, rtol=0, atol=tol)

    def test_unknown_encoding(self, tmp_path):
        buf = AudioBuffer(samples=np.zeros(4), sample_rate=8000)
        with pytest.raises(ValueError):
            write_wav(tmp_path / "a.wav", buf, encoding="mp3")


class TestDownmixBounds:
    def test_mono_sample_within_channel_range(self, tmp_path):
        rng = np.random.default_rng(99)
        frames = [
            (int(left), int(right))
            for left, right in rng.integers(-32768, 32768, size=(500, 2))
        ]
        frames += [(-32768, 32767), (32767, 32767), (-32768, -32768), (0, -1)]
        payload = b"".join(pcm16(left, right) for left, right in frames)
        path = tmp_path / "a.wav"
        path.write_bytes(make_wav(payload, channels=2))
        buf = load_audio(path)
        for (left, right), mono in zip(frames, buf.samples):
            lo = min(left, right) / 32768
            hi = max(left, right) / 32768
            assert lo <= mono <= hi


class TestAudioBuffer:
    def test_validation(self):
        with pytest.raises(ValueError):
            AudioBuffer(samples=np.zeros((2, 2)), sample_rate=44100)
        with pytest.raises(ValueError):
            AudioBuffer(samples=np.array([0.0, np.nan]), sample_rate=44100)
        with pytest.raises(ValueError):
            AudioBuffer(samples=np.zeros(4), sample_rate=0)
        with pytest.raises(ValueError):
            AudioBuffer(samples=np.zeros(4), sample_rate=0.5)

    def test_samples_read_only(self):
        buf = AudioBuffer(samples=np.zeros(4), sample_rate=44100)
        with pytest.raises(ValueError):
            buf.samples[0] = 1.0

    def test_duration(self):
        buf = AudioBuffer(samples=np.zeros(22050), sample_rate=44100)
        assert buf.duration == 0.5


class TestCheckMinLength:
    def test_boundary(self):
        buf = AudioBuffer(samples=np.zeros(4096), sample_rate=44100)
        assert check_min_length(buf, 4096) is True

    def test_one_short(self):
        buf = AudioBuffer(samples=np.zeros(4095), sample_rate=44100)
        assert check_min_length(buf, 4096) is False

    def test_long_input(self):
        buf = AudioBuffer(samples=np.zeros(100000), sample_rate=44100)
        assert check_min_length(buf, 4096) is True

    def test_frame_length_must_be_positive(self):
        buf = AudioBuffer(samples=np.zeros(10), sample_rate=44100)
        with pytest.raises(ValueError):
            check_min_length(buf, 0)
