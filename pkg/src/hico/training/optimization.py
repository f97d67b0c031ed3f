# -*- coding: utf-8 -*-
import numpy as np
import torch

from hico.exceptions import NonFiniteGradient


def lr_at_epoch(cfg, epoch):
    """Step decay schedule.

    ``lr * factor ** #{d in lr_decay_epochs : epoch >= d}``

    Args:
        cfg: Anything with the attributes ``lr``, ``lr_decay_epochs`` and
            ``lr_decay_factor``, e.g. :class:`TrainConfig`.
        epoch (int): Counted from zero.

    Returns:
        float:
    """
    n_decays = int(np.searchsorted(np.sort(cfg.lr_decay_epochs), epoch,
                                   side='right'))
    return cfg.lr * cfg.lr_decay_factor ** n_decays


def make_optimizer(parameters, lr, momentum, weight_decay):
    """SGD with momentum and weight decay on every parameter.

    Per step ``g = grad + weight_decay * theta``,
    ``buf = momentum * buf + g`` and ``theta = theta - lr * buf``.
    """
    return torch.optim.SGD([p for p in parameters if p.requires_grad],
                           lr=lr, momentum=momentum,
                           weight_decay=weight_decay)


def set_learning_rate(optimizer, lr):
    for group in optimizer.param_groups:
        group['lr'] = lr


def sgd_update(optimizer, lr, names=None):
    """One optimizer step with learning rate ``lr``.

    Args:
        optimizer (torch.optim.SGD):
        lr (float):
        names (dict): Maps parameters to names for the diagnostic.

    Raises:
        NonFiniteGradient: Before anything is changed, if a gradient
            contains NaN or inf.
    """
    for group in optimizer.param_groups:
        for i, param in enumerate(group['params']):
            if param.grad is not None and not torch.isfinite(
                    param.grad).all():
                name = i if names is None else names.get(param, i)
                raise NonFiniteGradient(name)
    set_learning_rate(optimizer, lr)
    optimizer.step()
