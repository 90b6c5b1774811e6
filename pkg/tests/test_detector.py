import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from keyscope.detector import ChromaTransformer, KeyTemplateClassifier
from keyscope.profiles import KRUMHANSL_MAJOR, KRUMHANSL_MINOR
from keyscope.signalgen import scale_specs, synth_silence, synth_tones
from keyscope.spectral import InputTooShortError


@pytest.fixture(scope="module")
def c_major_clip():
    return synth_tones(scale_specs(72))


class TestSklearnPlumbing:
    def test_chroma_transformer_params_round_trip(self):
        t = ChromaTransformer(sample_rate=22050, frame_length=1024, hop_length=128, fmin=55.0)
        assert t.get_params() == {
            "sample_rate": 22050,
            "frame_length": 1024,
            "hop_length": 128,
            "fmin": 55.0,
        }
        cloned = clone(t)
        assert cloned.get_params() == t.get_params()

    def test_classifier_params_round_trip(self):
        clf = KeyTemplateClassifier(major_profile=list(KRUMHANSL_MAJOR))
        cloned = clone(clf)
        assert cloned.get_params()["major_profile"] == list(KRUMHANSL_MAJOR)

    def test_set_params(self):
        t = ChromaTransformer().set_params(frame_length=2048)
        assert t.frame_length == 2048

    def test_fit_returns_self(self):
        t = ChromaTransformer()
        assert t.fit() is t
        clf = KeyTemplateClassifier()
        assert clf.fit() is clf

    def test_invalid_params_surface_in_fit(self):
        with pytest.raises(ValueError):
            ChromaTransformer(frame_length=4095).fit()
        with pytest.raises(ValueError):
            ChromaTransformer(sample_rate=0).fit()
        with pytest.raises(ValueError):
            ChromaTransformer(fmin=-1.0).fit()


class TestChromaTransformer:
    def test_transform_shapes_and_silence_row(self, c_major_clip):
        rows = ChromaTransformer().transform([c_major_clip, synth_silence(1.0)])
        assert rows.shape == (2, 12)
        assert np.linalg.norm(rows[0]) == pytest.approx(1.0, abs=1e-9)
        assert np.all(rows[1] == 0)

    def test_plain_arrays_use_sample_rate_param(self, c_major_clip):
        rows_buf = ChromaTransformer().transform([c_major_clip])
        rows_arr = ChromaTransformer(sample_rate=44100).transform(
            [np.asarray(c_major_clip.samples)]
        )
        np.testing.assert_allclose(rows_arr, rows_buf)

    def test_short_clip_raises(self):
        with pytest.raises(InputTooShortError):
            ChromaTransformer().transform([np.zeros(100)])

    def test_2d_clip_rejected(self):
        with pytest.raises(ValueError):
            ChromaTransformer().transform([np.zeros((2, 8192))])


class TestKeyTemplateClassifier:
    def test_unfitted_predict_raises(self):
        with pytest.raises(NotFittedError):
            KeyTemplateClassifier().predict(np.ones((1, 12)))

    def test_classes_are_24_key_names(self):
        clf = KeyTemplateClassifier().fit()
        assert len(clf.classes_) == 24
        assert clf.classes_[0] == "C Major"
        assert clf.classes_[7] == "G Major"
        assert clf.classes_[12] == "C Minor"
        assert clf.classes_[21] == "A Minor"

    def test_predict_recovers_each_template(self):
        clf = KeyTemplateClassifier().fit()
        labels = clf.predict(clf.profile_set_.matrix())
        np.testing.assert_array_equal(labels, clf.classes_)

    def test_decision_function_shape_and_range(self):
        clf = KeyTemplateClassifier().fit()
        rng = np.random.default_rng(3)
        scores = clf.decision_function(rng.uniform(0, 1, (5, 12)))
        assert scores.shape == (5, 24)
        assert np.all(scores >= -1e-9) and np.all(scores <= 1 + 1e-9)

    def test_silent_rows_predict_none(self):
        clf = KeyTemplateClassifier().fit()
        X = np.zeros((2, 12))
        X[1, 0] = 1.0
        labels = clf.predict(X)
        assert labels[0] is None
        assert labels[1] == "C Major"

    def test_unnormalized_rows_are_scale_invariant(self):
        clf = KeyTemplateClassifier().fit()
        rng = np.random.default_rng(9)
        X = rng.uniform(0, 1, (3, 12))
        np.testing.assert_allclose(
            clf.decision_function(X), clf.decision_function(10.0 * X), atol=1e-9
        )

    def test_negative_values_rejected(self):
        clf = KeyTemplateClassifier().fit()
        X = np.zeros((1, 12))
        X[0, 0] = -1.0
        with pytest.raises(ValueError):
            clf.predict(X)

    def test_wrong_width_rejected(self):
        clf = KeyTemplateClassifier().fit()
        with pytest.raises(ValueError):
            clf.predict(np.ones((1, 13)))

    def test_profile_overrides_change_templates(self):
        swapped = KeyTemplateClassifier(
            major_profile=list(KRUMHANSL_MINOR), minor_profile=list(KRUMHANSL_MAJOR)
        ).fit()
        reference = KeyTemplateClassifier().fit()
        np.testing.assert_allclose(
            swapped.profile_set_.matrix()[0], reference.profile_set_.matrix()[12]
        )


class TestPipelineComposition:
    def test_end_to_end_pipeline(self, c_major_clip):
        pipe = Pipeline(
            [("chroma", ChromaTransformer()), ("key", KeyTemplateClassifier())]
        )
        pipe.fit([])
        labels = pipe.predict([c_major_clip, synth_silence(1.0), synth_tones(scale_specs(79))])
        assert labels[0] == "C Major"
        assert labels[1] is None
        assert labels[2] == "G Major"
