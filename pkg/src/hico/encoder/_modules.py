# -*- coding: utf-8 -*-
import torch
from torch import nn

from hico.exceptions import ShapeMismatch
from hico.nn.functional import (KERNEL_SIZE, avgpool1d, conv1d, layer_norm_op,
                                linear_map, maxpool1d, relu, sequence_max)
from hico.nn.sequence_encoders import SequenceEncoder


class TokenEmbedding(nn.Module):
    """Two layer perceptron applied to every row.

    ``W_2 ReLU(W_1 row + b_1) + b_2``
    """
    def __init__(self, in_width, width):
        super(TokenEmbedding, self).__init__()
        self.in_width = in_width
        self.first = nn.Linear(in_width, width)
        self.second = nn.Linear(width, width)

    def forward(self, rows):
        if rows.shape[-1] != self.in_width:
            raise ShapeMismatch('Embedding expects rows of width {}, got {}'
                                .format(self.in_width, rows.shape[-1]))
        hidden = relu(linear_map(rows, self.first.weight, self.first.bias))
        return linear_map(hidden, self.second.weight, self.second.bias)


class UnifiedDownsampling(nn.Module):
    """Halve the length of a token sequence.

    The default ``'conv_max'`` variant is
    ``MaxPool(LayerNorm(ReLU(Conv1d(x))))`` with kernel size 5.
    ``'conv_mean'`` pools by the mean, ``'max'`` and ``'mean'`` leave
    out the convolution.
    """
    def __init__(self, width, kind='conv_max'):
        super(UnifiedDownsampling, self).__init__()
        self.kind = kind
        if kind.startswith('conv'):
            self.weight = nn.Parameter(
                torch.empty(width, width, KERNEL_SIZE))
            self.bias = nn.Parameter(torch.empty(width))
        self.norm = nn.LayerNorm(width)
        self.pool = maxpool1d if kind.endswith('max') else avgpool1d

    def forward(self, seq):
        if seq.shape[1] < 2:
            raise ShapeMismatch('Can not downsample {} tokens'.format(
                seq.shape[1]))
        if self.kind.startswith('conv'):
            seq = conv1d(seq, self.weight, self.bias)
        seq = layer_norm_op(relu(seq), self.norm.weight, self.norm.bias,
                            self.norm.eps)
        return self.pool(seq)

    def extra_repr(self):
        return 'kind={!r}'.format(self.kind)


class Branch(nn.Module):
    """One branch of the hierarchical encoder.

    The downsampling module and the sequence encoder are shared between
    all granularities, so the number of parameters does not depend on
    ``n_levels``.

    Args:
        in_width (int): Width of the input rows,
            ``3 J`` for the temporal and ``3 T`` for the spatial branch.
        cfg (EncoderConfig):
    """
    def __init__(self, in_width, cfg):
        super(Branch, self).__init__()
        self.n_levels = cfg.L
        self.embedding = TokenEmbedding(in_width, cfg.C)
        self.udm = UnifiedDownsampling(cfg.C, kind=cfg.udm)
        self.s2s = SequenceEncoder(cfg.s2s_kind, cfg.C,
                                   out_width=cfg.out_width)

    def build_pyramid(self, tokens):
        """Apply the downsampling module ``n_levels - 1`` times.

        Returns:
            list: ``n_levels`` token sequences, the first is ``tokens``.
        """
        needed = 2 ** (self.n_levels - 1)
        if tokens.shape[1] < needed:
            raise ShapeMismatch(
                '{} granularities need at least {} tokens, got {}'.format(
                    self.n_levels, needed, tokens.shape[1]))
        levels = [tokens]
        for _ in range(self.n_levels - 1):
            levels.append(self.udm(levels[-1]))
        return levels

    def encode_level(self, seq):
        return sequence_max(self.s2s(seq))

    def forward(self, rows):
        """
        Args:
            rows (torch.Tensor): ``(batch, n_rows, in_width)``

        Returns:
            list: ``n_levels`` tensors of shape ``(batch, out_width)``.
        """
        levels = self.build_pyramid(self.embedding(rows))
        return [self.encode_level(level) for level in levels]


class Fusion(nn.Module):
    """Combine the temporal and spatial domain features."""
    def __init__(self, kind, width):
        super(Fusion, self).__init__()
        self.kind = kind
        if kind == 'weighted':
            self.gate = nn.Linear(2 * width, 2)

    def forward(self, v_t, v_s):
        if self.kind == 'concat':
            return torch.cat([v_t, v_s], dim=-1)
        elif self.kind == 'sum':
            return v_t + v_s
        elif self.kind == 'product':
            return v_t * v_s
        weights = torch.softmax(self.gate(torch.cat([v_t, v_s], dim=-1)),
                                dim=-1)
        return weights[..., :1] * v_t + weights[..., 1:] * v_s

    def extra_repr(self):
        return 'kind={!r}'.format(self.kind)
