# -*- coding: utf-8 -*-
import math
from collections import OrderedDict

import pandas as pd
import torch

from hico.constants import FD_EPSILON, FD_REL_FLOOR
from hico.nn.functional import KinkRecorder

MAX_DRAWS = 50


def relative_error(analytic, numeric, floor=FD_REL_FLOOR):
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), floor)


def kink_distances(sites, argmaxes=None):
    """Signed distances of all recorded quantities from their kinks.

    Args:
        sites (list): :attr:`~hico.nn.functional.KinkRecorder.sites`.
        argmaxes (list): Reuse the argmax positions of an earlier call,
            so that a changed argmax shows up as a changed sign.

    Returns:
        tuple: The flat float64 distances and the argmax positions.
    """
    parts, positions = [], []
    for i, (kind, value) in enumerate(sites):
        if kind == 'max':
            if argmaxes is None:
                index = value.argmax(dim=1, keepdim=True)
            else:
                index = argmaxes[i]
            positions.append(index)
            gap = value.gather(1, index) - value
            others = torch.ones_like(gap, dtype=torch.bool).scatter_(
                1, index, False)
            value = gap[others]
        else:
            positions.append(None)
        parts.append(value.reshape(-1).to(torch.float64))
    if not parts:
        return torch.zeros(0, dtype=torch.float64), positions
    return torch.cat(parts), positions


def kink_ratio(base, moved):
    """Largest move of a kink quantity relative to its distance from the
    kink. Below 1, no branch of relu or max changes between the points.
    """
    delta = (moved - base).abs()
    moving = delta > 0
    if not bool(moving.any()):
        return 0.
    return float((delta[moving] / base[moving].abs()).max())


def _evaluate(loss_fn):
    with KinkRecorder() as recorder:
        loss = loss_fn()
    return loss, recorder.sites


def directional_gradient_check(loss_fn, tensors, eps=FD_EPSILON, seed=0,
                               max_draws=MAX_DRAWS):
    """Compare autograd against central differences.

    For every tensor a random direction ``d`` is drawn and the
    directional derivative ``<grad, d>`` is compared with
    ``(f(x + eps d) - f(x - eps d)) / (2 eps)``.
    A direction is redrawn, up to ``max_draws`` times, while one of
    ``x +- eps d`` lies across a kink of :func:`~hico.nn.functional.relu`,
    :func:`~hico.nn.functional.maxpool1d` or
    :func:`~hico.nn.functional.sequence_max`.
    Run it in double precision.

    Args:
        loss_fn (callable): Without arguments, returns a scalar tensor.
            It has to be a deterministic function of ``tensors``.
        tensors (dict): Name to tensor. Tensors that do not require a
            gradient get an analytic derivative of zero.
        eps (float):
        seed (int): Seed of the random directions.
        max_draws (int):

    Returns:
        pandas.DataFrame: One row per tensor with the columns
        ``['analytic', 'numeric', 'relative_error', 'margin',
        'kink_ratio', 'draws']``. ``margin`` is the smallest distance of
        a recorded quantity from its kink at ``x``, ``kink_ratio`` the
        value of :func:`kink_ratio` for the last direction.
    """
    tensors = OrderedDict(tensors)
    wrt = [t for t in tensors.values() if t.requires_grad]
    loss, sites = _evaluate(loss_fn)
    base, argmaxes = kink_distances(sites)
    margin = float(base.abs().min()) if len(base) else math.inf
    grads = dict(zip(
        [id(t) for t in wrt],
        torch.autograd.grad(loss, wrt, allow_unused=True) if wrt else []))
    generator = torch.Generator().manual_seed(seed)

    def shifted(t, step):
        with torch.no_grad():
            saved = t.detach().clone()
            t.add_(step)
            value, moved_sites = _evaluate(loss_fn)
            t.copy_(saved)
        return float(value), kink_distances(moved_sites, argmaxes)[0]

    rows = OrderedDict()
    for name, t in tensors.items():
        for draws in range(1, max_draws + 1):
            direction = torch.randn(t.shape, generator=generator,
                                    dtype=torch.float64).to(t.dtype)
            upper, moved_up = shifted(t, eps * direction)
            lower, moved_down = shifted(t, -eps * direction)
            ratio = max(kink_ratio(base, moved_up),
                        kink_ratio(base, moved_down))
            if ratio < 1:
                break
        grad = grads.get(id(t))
        analytic = 0. if grad is None else float((grad * direction).sum())
        numeric = (upper - lower) / (2 * eps)
        rows[name] = (analytic, numeric, relative_error(analytic, numeric),
                      margin, ratio, draws)
    return pd.DataFrame.from_dict(
        rows, orient='index',
        columns=['analytic', 'numeric', 'relative_error', 'margin',
                 'kink_ratio', 'draws'])
