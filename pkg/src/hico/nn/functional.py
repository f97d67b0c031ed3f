# -*- coding: utf-8 -*-
"""Differentiable primitives on token sequences.

A token sequence is a tensor of shape ``(batch, length, width)``.
Everything delegates to :mod:`torch.nn.functional`; the wrappers only fix
the conventions (kernel size 5, zero padding 2, pooling window 2) and
raise :class:`~hico.exceptions.ShapeMismatch` early.
"""
import torch
import torch.nn.functional as F

from hico.exceptions import ShapeMismatch

KERNEL_SIZE = 5
POOL_SIZE = 2
LAYER_NORM_EPS = 1e-5


class KinkRecorder(object):
    """Collect the quantities whose sign decides the branch taken by
    :func:`relu`, :func:`maxpool1d` and :func:`sequence_max`.

    While a recorder is entered, every call appends ``(kind, tensor)`` to
    :attr:`sites`:

    * ``'relu'``: the pre-activation.
    * ``'pool'``: first minus second token of every pooling window.
    * ``'max'``: the whole sequence; the kink is a change of the argmax.

    Used by :func:`~hico.nn.gradient_check.directional_gradient_check`.
    """
    active = None

    def __init__(self):
        self.sites = []

    def __enter__(self):
        self._previous = KinkRecorder.active
        KinkRecorder.active = self
        return self

    def __exit__(self, *exc):
        KinkRecorder.active = self._previous


def _record(kind, value):
    if KinkRecorder.active is not None:
        KinkRecorder.active.sites.append((kind, value.detach().clone()))


def _check_width(x, width, what):
    if x.shape[-1] != width:
        raise ShapeMismatch('{} expects width {}, got {}'.format(
            what, width, x.shape[-1]))


def linear_map(x, W, b):
    """``W x + b`` for the last axis of ``x``.

    Args:
        x (torch.Tensor): ``(..., d_in)``
        W (torch.Tensor): ``(d_out, d_in)``
        b (torch.Tensor): ``(d_out,)``

    Returns:
        torch.Tensor: ``(..., d_out)``
    """
    if W.dim() != 2 or b.shape != (W.shape[0],):
        raise ShapeMismatch('W has to be (d_out, d_in) and b (d_out,)')
    _check_width(x, W.shape[1], 'linear_map')
    return F.linear(x, W, b)


def conv1d(seq, kernel, bias):
    """Cross correlation along the sequence with kernel size 5.

    Stride 1 and zero padding 2 keep the length.

    Args:
        seq (torch.Tensor): ``(batch, length, width_in)``
        kernel (torch.Tensor): ``(width_out, width_in, 5)``
        bias (torch.Tensor): ``(width_out,)``

    Returns:
        torch.Tensor: ``(batch, length, width_out)``
    """
    if kernel.dim() != 3 or kernel.shape[2] != KERNEL_SIZE:
        raise ShapeMismatch('kernel has to be (width_out, width_in, {})'
                            .format(KERNEL_SIZE))
    _check_width(seq, kernel.shape[1], 'conv1d')
    if seq.shape[1] < 1:
        raise ShapeMismatch('conv1d needs at least one token')
    out = F.conv1d(seq.transpose(1, 2), kernel, bias,
                   padding=KERNEL_SIZE // 2)
    return out.transpose(1, 2)


def layer_norm_op(x, gain, shift, eps=LAYER_NORM_EPS):
    """Normalise every token over its width with a biased variance."""
    _check_width(x, gain.shape[0], 'layer_norm_op')
    return F.layer_norm(x, (x.shape[-1],), gain, shift, eps)


def relu(x):
    _record('relu', x)
    return F.relu(x)


def _pool(seq, pool):
    if seq.shape[1] < POOL_SIZE:
        raise ShapeMismatch(
            'Pooling needs at least {} tokens, got {}'.format(
                POOL_SIZE, seq.shape[1]))
    return pool(seq.transpose(1, 2), POOL_SIZE, POOL_SIZE).transpose(1, 2)


def maxpool1d(seq):
    """Maximum over non overlapping windows of two tokens.

    A trailing odd token is dropped.
    """
    out = _pool(seq, F.max_pool1d)
    if KinkRecorder.active is not None:
        n = POOL_SIZE * out.shape[1]
        _record('pool', seq[:, 0:n:2] - seq[:, 1:n:2])
    return out


def avgpool1d(seq):
    """Mean over non overlapping windows of two tokens."""
    return _pool(seq, F.avg_pool1d)


def sequence_max(seq):
    """Elementwise maximum over all positions."""
    _record('max', seq)
    return torch.amax(seq, dim=1)
