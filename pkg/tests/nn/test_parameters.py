import math

import torch
from torch import nn

from hico.nn.parameters import (count_parameters, init_uniform_,
                                named_arrays, parameter_bytes)


def make_module():
    return nn.Sequential(nn.Linear(4, 3), nn.LayerNorm(3), nn.Linear(3, 2))


def test_seeded_init_is_reproducible():
    a = init_uniform_(make_module(), seed=4)
    b = init_uniform_(make_module(), seed=4)
    c = init_uniform_(make_module(), seed=5)
    assert parameter_bytes(a) == parameter_bytes(b)
    assert parameter_bytes(a) != parameter_bytes(c)


def test_bounds_follow_fan_in():
    module = init_uniform_(make_module(), seed=0)
    arrays = named_arrays(module)
    assert abs(arrays['0.weight']).max() <= 1. / math.sqrt(4)
    assert abs(arrays['0.bias']).max() <= 1. / math.sqrt(4)
    assert abs(arrays['2.weight']).max() <= 1. / math.sqrt(3)
    assert (arrays['1.weight'] == 1.).all()
    assert (arrays['1.bias'] == 0.).all()


def test_count_parameters():
    assert count_parameters(make_module()) == 4 * 3 + 3 + 3 + 3 + 3 * 2 + 2


def test_init_respects_dtype():
    module = init_uniform_(make_module().double(), seed=1)
    assert all(p.dtype == torch.float64 for p in module.parameters())
