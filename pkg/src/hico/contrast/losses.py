# -*- coding: utf-8 -*-
import torch

from hico.exceptions import ShapeMismatch


def _as_batch(anchor, positives):
    if anchor.dim() == 1:
        anchor = anchor.unsqueeze(0)
        if isinstance(positives, (list, tuple)):
            positives = torch.stack(list(positives)).unsqueeze(0)
        else:
            positives = positives.reshape(1, -1, anchor.shape[-1])
    elif isinstance(positives, (list, tuple)):
        positives = torch.stack(list(positives), dim=1)
    if positives.dim() == 2:
        positives = positives.unsqueeze(1)
    return anchor, positives


def info_nce_multi(anchor, positives, negatives, tau, reduction='mean'):
    """InfoNCE with one or more positives per anchor.

    ``-log(sum_p exp(a.p / tau) / (sum_p exp(a.p / tau)
    + sum_m exp(a.m / tau)))``, evaluated with ``logsumexp``.

    Args:
        anchor (torch.Tensor): ``(dim,)`` or ``(batch, dim)``.
        positives: ``(batch, P, dim)``, ``(batch, dim)`` for a single
            positive, or a list of ``P`` tensors shaped like ``anchor``.
        negatives (torch.Tensor or ContrastQueue): ``(K, dim)``.
        tau (float): Temperature.
        reduction (str): ``'mean'`` over the batch or ``'none'``.

    Returns:
        torch.Tensor:
    """
    if hasattr(negatives, 'negatives'):
        negatives = negatives.negatives()
    if isinstance(positives, (list, tuple)) and not positives:
        raise ShapeMismatch('Need at least one positive')
    anchor, positives = _as_batch(anchor, positives)
    if positives.shape[1] == 0:
        raise ShapeMismatch('Need at least one positive')
    if negatives.shape[0] == 0:
        raise ShapeMismatch('Need at least one negative')
    if not (anchor.shape[-1] == positives.shape[-1] == negatives.shape[-1]):
        raise ShapeMismatch('Anchor, positives and negatives differ in width')
    positive_logits = torch.einsum('bd,bpd->bp', anchor, positives) / tau
    negative_logits = anchor @ negatives.t().to(anchor.dtype) / tau
    loss = (torch.logsumexp(torch.cat([positive_logits, negative_logits],
                                      dim=1), dim=1)
            - torch.logsumexp(positive_logits, dim=1))
    if reduction == 'mean':
        return loss.mean()
    return loss


def domain_loss(v_t, v_s, k_t, k_s, queue_t, queue_s, tau):
    """Pull the temporal and spatial domain features of one sample together.

    The temporal query is contrasted against the spatial key and the
    spatial queue, the spatial query against the temporal key and the
    temporal queue.
    """
    return (info_nce_multi(v_t, k_s, queue_s, tau)
            + info_nce_multi(v_s, k_t, queue_t, tau))
