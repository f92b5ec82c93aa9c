import numpy as np
import pytest

from pkt import (
    COSINE,
    GAUSSIAN,
    KernelSpec,
    cosine_kernel,
    gaussian_kernel,
    kernel_eval,
    kernel_matrix,
)

SQ2 = np.sqrt(2.0) / 2.0


def test_cosine_hand_values():
    # orthogonal pair sits at the neutral midpoint
    assert kernel_eval([1.0, 0.0], [0.0, 1.0], cosine_kernel()) == pytest.approx(0.5, abs=1e-12)
    # 45-degree pair: (cos(pi/4) + 1) / 2
    k = kernel_eval([1.0, 0.0], [SQ2, SQ2], cosine_kernel())
    assert k == pytest.approx(0.853553390593, abs=1e-11)
    # identical and opposite directions hit the bounds exactly
    assert kernel_eval([2.0, 1.0], [2.0, 1.0], cosine_kernel()) == pytest.approx(1.0, abs=1e-12)
    assert kernel_eval([1.0, 0.0], [-3.0, 0.0], cosine_kernel()) == pytest.approx(0.0, abs=1e-12)


def test_gaussian_hand_values():
    # squared distance equal to the width gives exp(-1)
    assert kernel_eval([0.0, 0.0], [1.0, 0.0], gaussian_kernel(1.0)) == pytest.approx(
        0.367879441171, abs=1e-11
    )
    # width is the full denominator, no hidden squaring: d^2 = 4, width = 4
    assert kernel_eval([0.0, 0.0], [2.0, 0.0], gaussian_kernel(4.0)) == pytest.approx(
        0.367879441171, abs=1e-11
    )
    assert kernel_eval([1.5, -2.0], [1.5, -2.0], gaussian_kernel(2.0)) == 1.0


@pytest.mark.parametrize("spec", [cosine_kernel(), gaussian_kernel(2.0), gaussian_kernel(0.5)])
def test_matrix_matches_pairwise_eval(spec):
    rng = np.random.default_rng(11)
    for _ in range(5):
        x = rng.normal(size=(7, 4))
        k = kernel_matrix(x, spec)
        for i in range(7):
            for j in range(7):
                assert k[i, j] == pytest.approx(kernel_eval(x[i], x[j], spec), abs=1e-12)


@pytest.mark.parametrize("spec", [cosine_kernel(), gaussian_kernel(3.0)])
def test_matrix_exactly_symmetric_and_bounded(spec):
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = rng.normal(size=(rng.integers(2, 15), rng.integers(1, 6)))
        k = kernel_matrix(x, spec)
        assert np.array_equal(k, k.T)
        assert np.all(k >= 0.0) and np.all(k <= 1.0)
        assert np.allclose(np.diag(k), 1.0, atol=0.0)


def test_cosine_scale_invariance():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(10, 6))
    base = kernel_matrix(x, cosine_kernel())
    for factor in (3.0, 0.001, 1e6):
        scaled = kernel_matrix(x * factor, cosine_kernel())
        assert np.max(np.abs(scaled - base)) <= 1e-12


def test_zero_vector_is_neutral():
    spec = cosine_kernel()
    assert kernel_eval([0.0, 0.0], [1.0, 2.0], spec) == pytest.approx(0.5, abs=1e-12)
    assert kernel_eval([0.0, 0.0], [0.0, 0.0], spec) == pytest.approx(0.5, abs=1e-12)
    x = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 3.0]])
    k = kernel_matrix(x, spec)
    assert k[0, 1] == pytest.approx(0.5, abs=1e-12)
    assert k[0, 2] == pytest.approx(0.5, abs=1e-12)


def test_spec_validation():
    with pytest.raises(ValueError):
        KernelSpec("triangle")
    with pytest.raises(ValueError):
        KernelSpec(GAUSSIAN)
    with pytest.raises(ValueError):
        gaussian_kernel(-1.0)
    with pytest.raises(ValueError):
        gaussian_kernel(float("nan"))
    assert KernelSpec(COSINE).width is None


def test_eval_dimension_mismatch():
    with pytest.raises(ValueError):
        kernel_eval([1.0, 2.0], [1.0, 2.0, 3.0], cosine_kernel())
    with pytest.raises(ValueError):
        kernel_matrix(np.zeros(4), cosine_kernel())
