import math

import torch

from hico.nn.functional import (KinkRecorder, conv1d, layer_norm_op,
                                maxpool1d, relu, sequence_max)
from hico.nn.gradient_check import (directional_gradient_check,
                                    kink_distances, kink_ratio,
                                    relative_error)


def test_relative_error_floor():
    assert relative_error(0., 0.) == 0.
    assert relative_error(1e-6, 0.) == 1e-6 / 1e-3
    assert relative_error(2., 1.) == 0.5


def test_primitives_pass_gradient_check():
    generator = torch.Generator().manual_seed(0)

    def param(*shape):
        return torch.randn(*shape, generator=generator,
                           dtype=torch.float64).requires_grad_()

    tensors = {'x': param(2, 6, 3), 'kernel': param(4, 3, 5),
               'bias': param(4), 'gain': param(4), 'shift': param(4)}

    def loss_fn():
        out = conv1d(tensors['x'], tensors['kernel'], tensors['bias'])
        out = layer_norm_op(relu(out), tensors['gain'], tensors['shift'])
        return (maxpool1d(out) ** 2).sum() + sequence_max(out).sum()

    result = directional_gradient_check(loss_fn, tensors)
    assert list(result.index) == list(tensors)
    assert (result['kink_ratio'] < 1).all()
    assert (result['relative_error'] < 1e-4).all()


def test_constant_tensor_has_zero_gradient():
    x = torch.ones(3, dtype=torch.float64, requires_grad=True)
    c = torch.ones(3, dtype=torch.float64)
    result = directional_gradient_check(lambda: (x * 2).sum(),
                                        {'x': x, 'c': c})
    assert result.loc['c', 'analytic'] == 0.
    assert abs(result.loc['c', 'numeric']) < 1e-12
    assert math.isinf(result.loc['x', 'margin'])
    assert result.loc['x', 'kink_ratio'] == 0.


def test_recorder_collects_kink_quantities():
    seq = torch.tensor([[[1.], [3.], [2.], [-1.], [5.]]],
                       dtype=torch.float64)
    relu(torch.ones(2))
    with KinkRecorder() as recorder:
        relu(seq)
        maxpool1d(seq)
        sequence_max(seq)
    assert [kind for kind, _ in recorder.sites] == ['relu', 'pool', 'max']
    assert recorder.sites[1][1].reshape(-1).tolist() == [-2., 3.]
    assert KinkRecorder.active is None

    distances, argmaxes = kink_distances(recorder.sites)
    assert argmaxes[2].reshape(-1).tolist() == [4]
    assert distances[-4:].tolist() == [4., 2., 3., 6.]


def test_kink_ratio():
    base = torch.tensor([0.5, -2., 1.], dtype=torch.float64)
    assert kink_ratio(base, base.clone()) == 0.
    moved = torch.tensor([0.4, -2., 1.], dtype=torch.float64)
    assert math.isclose(kink_ratio(base, moved), 0.2)
    assert kink_ratio(base, torch.tensor([-0.1, -2., 1.],
                                         dtype=torch.float64)) > 1


def test_directions_across_a_kink_are_redrawn():
    x = torch.zeros(1, dtype=torch.float64, requires_grad=True)
    result = directional_gradient_check(lambda: relu(x).sum(), {'x': x},
                                        max_draws=3)
    assert result.loc['x', 'margin'] == 0.
    assert result.loc['x', 'draws'] == 3
    assert math.isinf(result.loc['x', 'kink_ratio'])


def test_far_from_kink_needs_one_draw():
    x = torch.tensor([1., -2.], dtype=torch.float64, requires_grad=True)
    result = directional_gradient_check(lambda: (relu(x) ** 2).sum(),
                                        {'x': x})
    assert result.loc['x', 'draws'] == 1
    assert result.loc['x', 'margin'] == 1.
    assert result.loc['x', 'kink_ratio'] < 1e-3
    assert result.loc['x', 'relative_error'] < 1e-8
