# -*- coding: utf-8 -*-
import math
from collections import OrderedDict

import numpy as np
import torch
from torch import nn


def _fan_in(tensor):
    return int(np.prod(tensor.shape[1:]))


@torch.no_grad()
def init_uniform_(module, seed=0):
    """Reinitialise all parameters from a seeded generator.

    Every weight is drawn from ``U(-1/sqrt(fan_in), 1/sqrt(fan_in))``,
    every bias uses the fan in of the weight with the same suffix.
    Layer norms are reset to unit gain and zero shift.
    The enumeration order of :meth:`torch.nn.Module.named_modules`
    decides the order of the draws.

    Args:
        module (torch.nn.Module):
        seed (int):

    Returns:
        torch.nn.Module: ``module`` itself.
    """
    generator = torch.Generator().manual_seed(int(seed))
    for sub in module.modules():
        if isinstance(sub, nn.LayerNorm):
            sub.reset_parameters()
            continue
        own = OrderedDict(sub.named_parameters(recurse=False))
        for name, param in own.items():
            if param.dim() >= 2:
                fan_in = _fan_in(param)
            else:
                weight = own.get(name.replace('bias', 'weight'))
                if weight is not None and weight.dim() >= 2:
                    fan_in = _fan_in(weight)
                else:
                    fan_in = param.shape[0]
            bound = 1. / math.sqrt(fan_in)
            sample = torch.empty(param.shape, dtype=torch.float64)
            sample.uniform_(-bound, bound, generator=generator)
            param.copy_(sample.to(param.dtype))
    return module


def named_arrays(module):
    """The parameters as :class:`numpy.ndarray` in enumeration order.

    Returns:
        collections.OrderedDict:
    """
    return OrderedDict((name, p.detach().cpu().numpy().copy())
                       for name, p in module.named_parameters())


def parameter_bytes(module):
    """All parameters as one byte string, e.g. for equality checks."""
    return b''.join(a.tobytes() for a in named_arrays(module).values())


def count_parameters(module):
    return sum(p.numel() for p in module.parameters())
