# -*- coding: utf-8 -*-
import torch
from torch import nn

from hico.exceptions import DegenerateProjection
from hico.nn.functional import linear_map, relu


class ProjectionHead(nn.Module):
    """Two layer perceptron followed by L2 normalisation.

    Args:
        in_width (int):
        hidden (int):
        out_width (int):
    """
    def __init__(self, in_width, hidden, out_width=128):
        super(ProjectionHead, self).__init__()
        self.first = nn.Linear(in_width, hidden)
        self.second = nn.Linear(hidden, out_width)

    def forward(self, v):
        hidden = relu(linear_map(v, self.first.weight, self.first.bias))
        out = linear_map(hidden, self.second.weight, self.second.bias)
        norm = torch.linalg.vector_norm(out, dim=-1, keepdim=True)
        if bool((norm == 0).any()):
            raise DegenerateProjection(
                'A projected feature has zero norm, the batch is rejected')
        return out / norm
