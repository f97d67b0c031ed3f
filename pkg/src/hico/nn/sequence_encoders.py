# -*- coding: utf-8 -*-
import torch
from torch import nn

from hico.constants import sinusoidal_table
from hico.exceptions import IllegalArgumentCombination, ShapeMismatch
from hico.nn.functional import relu

S2S_KINDS = ('gru', 'lstm', 'transformer')


class SequenceEncoder(nn.Module):
    """Sequence to sequence encoder with one contract for all kinds.

    The input is a token sequence ``(batch, length, width)``, the output
    keeps the length and has ``out_width`` channels per token.

    * ``'gru'`` and ``'lstm'``: two stacked bidirectional layers with
      ``out_width // 2`` hidden units per direction. The output is the
      concatenation of both directions of the top layer.
    * ``'transformer'``: one pre-norm encoder layer with ``n_heads``
      attention heads, a feed forward width of ``feedforward`` and no
      dropout. Fixed sinusoidal positions are added to the input.
      A linear map to ``out_width`` follows if ``width != out_width``.

    Args:
        kind (str):
        width (int): Model width ``C``.
        out_width (int):
        n_heads (int):
        feedforward (int):
    """
    def __init__(self, kind, width, out_width=512, n_heads=8,
                 feedforward=1024):
        super(SequenceEncoder, self).__init__()
        if kind not in S2S_KINDS:
            raise IllegalArgumentCombination(
                'kind has to be one of {}, got {!r}'.format(S2S_KINDS, kind))
        self.kind = kind
        self.width = width
        self.out_width = out_width
        if kind in ('gru', 'lstm'):
            if out_width % 2:
                raise IllegalArgumentCombination(
                    'Bidirectional encoders need an even out_width')
            rnn = nn.GRU if kind == 'gru' else nn.LSTM
            self.rnn = rnn(width, out_width // 2, num_layers=2,
                           bidirectional=True, batch_first=True)
        else:
            if width % n_heads:
                raise IllegalArgumentCombination(
                    'width {} is not divisible by {} heads'.format(
                        width, n_heads))
            self.block = nn.TransformerEncoderLayer(
                d_model=width, nhead=n_heads, dim_feedforward=feedforward,
                dropout=0., activation=relu, norm_first=True,
                batch_first=True)
            if width != out_width:
                self.out = nn.Linear(width, out_width)
            else:
                self.out = None

    def positions(self, length, like):
        table = sinusoidal_table(length, self.width)
        return torch.as_tensor(table, dtype=like.dtype, device=like.device)

    def forward(self, seq):
        if seq.shape[-1] != self.width:
            raise ShapeMismatch('SequenceEncoder expects width {}, got {}'
                                .format(self.width, seq.shape[-1]))
        if self.kind in ('gru', 'lstm'):
            out, _ = self.rnn(seq)
            return out
        out = self.block(seq + self.positions(seq.shape[1], seq))
        if self.out is not None:
            out = self.out(out)
        return out

    def extra_repr(self):
        return 'kind={!r}, width={}, out_width={}'.format(
            self.kind, self.width, self.out_width)
