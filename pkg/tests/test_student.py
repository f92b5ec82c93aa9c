import numpy as np
import pytest

from pkt import (
    StudentModel,
    adam_step,
    init_adam,
    init_student,
    load_model,
    save_model,
)
from pkt.gradcheck import max_relative_error


def naive_forward(model, x):
    # per-sample, per-layer loops; no shared code with the batched pass
    outs = []
    n_layers = len(model.weights)
    for sample in x:
        h = np.array(sample, dtype=float)
        for i in range(n_layers):
            z = model.weights[i].T @ h + model.biases[i]
            h = z if i == n_layers - 1 else np.where(z > 0.0, z, 0.0)
        outs.append(h)
    return np.array(outs)


def fd_param_grads(model, x, loss_fn, h=1e-6):
    grads = []
    for p in model.parameters():
        g = np.zeros_like(p)
        it = np.nditer(p, flags=["multi_index"])
        while not it.finished:
            idx = it.multi_index
            orig = p[idx]
            p[idx] = orig + h
            up = loss_fn(model.forward(x))
            p[idx] = orig - h
            down = loss_fn(model.forward(x))
            p[idx] = orig
            g[idx] = (up - down) / (2.0 * h)
            it.iternext()
        grads.append(g)
    return grads


def test_forward_matches_naive_loops():
    rng = np.random.default_rng(3)
    for dims in ([3, 4, 2], [5, 8, 8, 3], [2, 6]):
        model = init_student(dims, seed=int(rng.integers(0, 100)))
        x = rng.normal(size=(7, dims[0]))
        assert model.forward(x) == pytest.approx(naive_forward(model, x), abs=1e-12)


def test_relu_hidden_linear_output():
    # one hidden unit driven negative must be clamped; the output layer
    # passes negatives through untouched
    model = StudentModel([1, 2, 1],
                         weights=[np.array([[1.0, -1.0]]), np.array([[1.0], [-1.0]])],
                         biases=[np.zeros(2), np.zeros(1)])
    y = model.forward(np.array([[2.0], [-2.0]]))
    assert y[0, 0] == 2.0
    assert y[1, 0] == -2.0


def test_glorot_init_bounds_and_determinism():
    dims = [20, 50, 10]
    model = init_student(dims, seed=9)
    again = init_student(dims, seed=9)
    for w, fan_in, fan_out in zip(model.weights, dims[:-1], dims[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        assert np.all(np.abs(w) <= bound)
        assert np.max(np.abs(w)) > 0.5 * bound
    for b in model.biases:
        assert np.all(b == 0.0)
    assert all(np.array_equal(a, b) for a, b in zip(model.parameters(), again.parameters()))
    assert not np.array_equal(model.weights[0], init_student(dims, seed=10).weights[0])


def test_backward_matches_finite_differences():
    rng = np.random.default_rng(12)
    model = init_student([3, 4, 2], seed=1)
    x = rng.normal(size=(5, 3))
    c = rng.normal(size=(5, 2))

    for loss_fn, grad_y in (
        (lambda y: float(np.sum(c * y)), c),
        (lambda y: 0.5 * float(np.sum(y * y)), model.forward(x)),
    ):
        analytic = model.backward(x, grad_y)
        numeric = fd_param_grads(model, x, loss_fn)
        for a, n in zip(analytic, numeric):
            assert max_relative_error(a, n) < 1e-6


def test_backward_shape_validation():
    model = init_student([3, 4, 2], seed=0)
    x = np.zeros((5, 3))
    with pytest.raises(ValueError):
        model.backward(x, np.zeros((5, 3)))
    with pytest.raises(ValueError):
        model.forward(np.zeros((5, 4)))


def test_model_validation():
    with pytest.raises(ValueError):
        StudentModel([3])
    with pytest.raises(ValueError):
        StudentModel([3, 0])
    with pytest.raises(ValueError):
        StudentModel([2, 2], weights=[np.zeros((2, 3))], biases=[np.zeros(2)])


def test_adam_first_step_is_signed_lr():
    model = init_student([4, 3], seed=2)
    params = model.parameters()
    state = init_adam(params, lr=1e-3)
    rng = np.random.default_rng(0)
    grads = [rng.uniform(0.5, 2.0, size=p.shape) * np.sign(rng.normal(size=p.shape))
             for p in params]
    before = [p.copy() for p in params]
    adam_step(state, params, grads)
    for p, b, g in zip(params, before, grads):
        assert np.max(np.abs((p - b) + state.lr * np.sign(g))) <= state.lr * 1e-6
    assert state.step == 1


def test_adam_zero_gradient_is_stationary():
    model = init_student([3, 2], seed=4)
    params = model.parameters()
    state = init_adam(params)
    before = [p.copy() for p in params]
    adam_step(state, params, [np.zeros_like(p) for p in params])
    assert all(np.array_equal(p, b) for p, b in zip(params, before))


def test_adam_descends_on_quadratic():
    w = np.array([1.0])
    state = init_adam([w], lr=1e-4)
    for _ in range(100):
        adam_step(state, [w], [2.0 * w])
    assert 0.0 < w[0] < 1.0 - 50 * state.lr
    assert state.step == 100


def test_adam_validation():
    with pytest.raises(ValueError):
        init_adam([np.zeros(2)], lr=0.0)
    state = init_adam([np.zeros(2)])
    with pytest.raises(ValueError):
        adam_step(state, [np.zeros(2), np.zeros(2)], [np.zeros(2), np.zeros(2)])
    with pytest.raises(ValueError):
        adam_step(state, [np.zeros(2)], [np.zeros(3)])


def test_serialization_round_trip(tmp_path):
    model = init_student([5, 7, 3], seed=77)
    # drag in awkward magnitudes so the 17-digit format gets exercised
    model.weights[0][0, 0] = 1.0 / 3.0
    model.weights[1][2, 1] = 1e-15
    model.biases[0][:] = np.pi
    path = tmp_path / "model.txt"
    save_model(model, path)
    text = path.read_text()
    assert text.splitlines()[0] == "PKT-MODEL v1"
    assert text.splitlines()[1] == "dims 5 7 3"
    loaded = load_model(path)
    assert loaded.layer_dims == [5, 7, 3]
    assert all(np.array_equal(a, b) for a, b in zip(model.parameters(), loaded.parameters()))
    # a second save of the loaded model is byte-identical
    path2 = tmp_path / "model2.txt"
    save_model(loaded, path2)
    assert path2.read_bytes() == path.read_bytes()


def test_load_rejects_malformed_files(tmp_path):
    good = tmp_path / "good.txt"
    save_model(init_student([2, 2], seed=0), good)
    lines = good.read_text().splitlines()

    bad = tmp_path / "bad.txt"
    bad.write_text("SOMETHING ELSE\n" + "\n".join(lines[1:]) + "\n")
    with pytest.raises(ValueError):
        load_model(bad)
    bad.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(ValueError):
        load_model(bad)
    bad.write_text(lines[0] + "\ndims 2\n")
    with pytest.raises(ValueError):
        load_model(bad)
