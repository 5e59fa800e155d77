import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deformlab import io
from deformlab.errors import DimensionMismatch, EmptyBatch, InvalidProbability, NonFiniteInput
from deformlab.losses import adversarial_loss, content_loss_cv, perceptual_loss
from tests.helpers import GOLDEN, checkerboard


def test_content_loss_identical_images():
    img = checkerboard(16, 4)
    assert content_loss_cv(img, img, 1.0, 20) == 0.0


def test_content_loss_zero_alpha(rng):
    a = rng.integers(0, 256, (12, 12), dtype=np.uint8)
    b = rng.integers(0, 256, (12, 12), dtype=np.uint8)
    assert content_loss_cv(a, b, 0.0, 10) == 0.0


def test_content_loss_symmetric():
    a = checkerboard(16, 4)
    b = np.roll(a, 2, axis=1)
    assert content_loss_cv(a, b, 1.0, 20) == content_loss_cv(b, a, 1.0, 20)


def test_content_loss_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        content_loss_cv(np.zeros((8, 8), np.uint8), np.zeros((8, 9), np.uint8))


def test_content_loss_golden():
    hr = io.read_image(GOLDEN / "checkerboard.png")
    sr = io.read_image(GOLDEN / "checkerboard_blur.png")
    expected = float((GOLDEN / "content_loss.txt").read_text())
    assert content_loss_cv(hr, sr, 1.0, 100) == pytest.approx(expected, rel=1e-10)


def test_adversarial_values():
    assert adversarial_loss([1.0, 1.0, 1.0]) == 0.0
    assert adversarial_loss([math.exp(-1)] * 3) == pytest.approx(3.0, rel=1e-15)
    assert adversarial_loss([0.5]) == pytest.approx(math.log(2), rel=1e-15)


@pytest.mark.parametrize("probs", [[0.0], [1.5], [0.3, -0.1], [float("nan")]])
def test_adversarial_invalid(probs):
    with pytest.raises(InvalidProbability):
        adversarial_loss(probs)


def test_adversarial_empty():
    with pytest.raises(EmptyBatch):
        adversarial_loss([])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(1e-6, 1.0), min_size=1, max_size=20), st.data())
def test_adversarial_strictly_decreasing_in_each_prob(probs, data):
    k = data.draw(st.integers(0, len(probs) - 1))
    lowered = list(probs)
    lowered[k] = probs[k] * data.draw(st.floats(0.1, 0.99))
    assert adversarial_loss(lowered) > adversarial_loss(probs)


def test_perceptual_values():
    assert perceptual_loss(0.0, 0.0) == 0.0
    assert perceptual_loss(1.0, 1000.0) == 2.0
    assert perceptual_loss(0.25, 2.0) == pytest.approx(0.252, rel=1e-15)


@pytest.mark.parametrize("args", [(float("nan"), 0.0), (0.0, float("inf")), (-1.0, 0.0)])
def test_perceptual_rejects_bad_input(args):
    with pytest.raises(NonFiniteInput):
        perceptual_loss(*args)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 1e6), st.floats(0, 1e6))
def test_perceptual_slope(content, adversarial):
    total = perceptual_loss(content, adversarial)
    assert abs((total - content) - 1e-3 * adversarial) <= math.ulp(total)
