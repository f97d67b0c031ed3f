import numpy as np
import pytest
import torch

from hico.exceptions import ShapeMismatch
from hico.nn.functional import (avgpool1d, conv1d, layer_norm_op, linear_map,
                                maxpool1d, sequence_max)


def tensor(*shape, seed=0):
    generator = torch.Generator().manual_seed(seed)
    return torch.randn(*shape, generator=generator, dtype=torch.float64)


def test_linear_map():
    x, W, b = tensor(2, 3, 4), tensor(5, 4, seed=1), tensor(5, seed=2)
    expected = x.numpy() @ W.numpy().T + b.numpy()
    assert np.allclose(linear_map(x, W, b).numpy(), expected)
    with pytest.raises(ShapeMismatch):
        linear_map(tensor(2, 3), W, b)
    with pytest.raises(ShapeMismatch):
        linear_map(x, W, tensor(4))


def test_conv1d_against_loop():
    x, K, b = tensor(2, 6, 3), tensor(4, 3, 5, seed=1), tensor(4, seed=2)
    out = conv1d(x, K, b).numpy()
    assert out.shape == (2, 6, 4)
    padded = np.pad(x.numpy(), ((0, 0), (2, 2), (0, 0)))
    expected = np.empty_like(out)
    for i in range(6):
        window = padded[:, i:i + 5, :]
        expected[:, i, :] = np.einsum('bkc,ock->bo', window, K.numpy()) \
            + b.numpy()
    assert np.allclose(out, expected)


def test_conv1d_shapes():
    K, b = tensor(4, 3, 5), tensor(4)
    assert conv1d(tensor(1, 1, 3), K, b).shape == (1, 1, 4)
    with pytest.raises(ShapeMismatch):
        conv1d(tensor(1, 4, 2), K, b)
    with pytest.raises(ShapeMismatch):
        conv1d(tensor(1, 4, 3), tensor(4, 3, 3), b)


def test_layer_norm():
    x = tensor(2, 3, 6)
    gain, shift = tensor(6, seed=1), tensor(6, seed=2)
    out = layer_norm_op(x, gain, shift).numpy()
    X = x.numpy()
    mu = X.mean(axis=-1, keepdims=True)
    var = X.var(axis=-1, keepdims=True)
    expected = (X - mu) / np.sqrt(var + 1e-5) * gain.numpy() + shift.numpy()
    assert np.allclose(out, expected)


@pytest.mark.parametrize('length, expected', [(2, 1), (5, 2), (8, 4)])
def test_pool_lengths(length, expected):
    x = tensor(1, length, 3)
    assert maxpool1d(x).shape == (1, expected, 3)
    assert avgpool1d(x).shape == (1, expected, 3)


def test_pool_values():
    x = torch.tensor([[[1.], [4.], [2.], [-1.], [7.]]], dtype=torch.float64)
    assert maxpool1d(x).flatten().tolist() == [4., 2.]
    assert avgpool1d(x).flatten().tolist() == [2.5, 0.5]
    with pytest.raises(ShapeMismatch):
        maxpool1d(x[:, :1])


def test_sequence_max():
    x = tensor(3, 7, 2)
    assert np.array_equal(sequence_max(x).numpy(), x.numpy().max(axis=1))
