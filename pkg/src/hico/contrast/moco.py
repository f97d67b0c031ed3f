# -*- coding: utf-8 -*-
import copy
import logging
from collections import OrderedDict

import torch
from torch import nn

from hico.contrast.losses import domain_loss, info_nce_multi
from hico.contrast.projection import ProjectionHead
from hico.contrast.queue import ContrastQueue
from hico.encoder.encoder_config import EncoderConfig
from hico.encoder.hierarchical_encoder import HierarchicalEncoder
from hico.exceptions import IllegalArgumentCombination
from hico.nn.parameters import init_uniform_

logger = logging.getLogger(__name__)

LOSS_TERMS = ('instance', 'domain', 'clip', 'part')


class HiCoNetwork(nn.Module):
    """Encoder plus one projection head per contrast level.

    The heads are ``instance`` always, ``clip`` if the temporal branch is
    active, ``part`` if the spatial branch is active and ``temporal`` and
    ``spatial`` if both are active.

    Args:
        encoder_cfg (EncoderConfig):
        dim (int): Width of the projected features.
        head_hidden (int): Hidden width of the heads. The instance and
            domain heads use ``min(in_width, head_hidden)``.
        seed (int):
    """
    def __init__(self, encoder_cfg, dim=128, head_hidden=512, seed=0):
        super(HiCoNetwork, self).__init__()
        cfg = encoder_cfg
        self.encoder = HierarchicalEncoder(cfg, seed=seed)
        widths = OrderedDict()
        widths['instance'] = (cfg.instance_width,
                              min(cfg.instance_width, head_hidden))
        if cfg.branches == 'both':
            for name in ('temporal', 'spatial'):
                widths[name] = (cfg.domain_width,
                                min(cfg.domain_width, head_hidden))
        if cfg.temporal:
            widths['clip'] = (cfg.out_width, head_hidden)
        if cfg.spatial:
            widths['part'] = (cfg.out_width, head_hidden)
        self.heads = nn.ModuleDict(
            (name, ProjectionHead(in_width, hidden, out_width=dim))
            for name, (in_width, hidden) in widths.items())
        init_uniform_(self.heads, seed=seed + 1)

    def forward(self, x):
        """Projected unit features of a batch.

        Returns:
            dict: ``'instance'``, ``'temporal'`` and ``'spatial'`` map to
            ``(batch, dim)``, ``'clip'`` and ``'part'`` to
            ``(batch, L, dim)``.
        """
        emb = self.encoder(x)
        out = {'instance': self.heads['instance'](emb.instance)}
        if 'temporal' in self.heads:
            out['temporal'] = self.heads['temporal'](emb.temporal)
            out['spatial'] = self.heads['spatial'](emb.spatial)
        if 'clip' in self.heads:
            out['clip'] = self.heads['clip'](torch.stack(emb.clip, dim=1))
        if 'part' in self.heads:
            out['part'] = self.heads['part'](torch.stack(emb.part, dim=1))
        return out


class HierarchicalMoCo(nn.Module):
    """Query network, momentum key network and the contrast queues.

    The key network is a copy of the query network that never receives
    gradients and follows it by :meth:`momentum_update`.
    One queue exists per projection head.

    Args:
        encoder_cfg (EncoderConfig):
        dim (int):
        head_hidden (int):
        queue_capacity (int):
        tau (float): Temperature.
        m_k (float): Momentum of the key network.
        terms (dict): Switches ``'instance'``, ``'domain'`` and
            ``'clip_part'``.
        seed (int): Seeds parameters and the initial queue entries.
    """
    def __init__(self, encoder_cfg, dim=128, head_hidden=512,
                 queue_capacity=2048, tau=0.2, m_k=0.999, terms=None,
                 seed=0):
        super(HierarchicalMoCo, self).__init__()
        if not tau > 0:
            raise IllegalArgumentCombination('tau has to be positive')
        if not 0. <= m_k <= 1.:
            raise IllegalArgumentCombination('m_k has to be in [0, 1]')
        self.tau = tau
        self.m_k = m_k
        self.terms = {'instance': True, 'domain': True, 'clip_part': True}
        if terms is not None:
            self.terms.update(terms)
        if not any(self.terms.values()):
            raise IllegalArgumentCombination('All loss terms are disabled')
        self.query = HiCoNetwork(encoder_cfg, dim=dim,
                                 head_hidden=head_hidden, seed=seed)
        self.key = copy.deepcopy(self.query)
        for param in self.key.parameters():
            param.requires_grad = False
        generator = torch.Generator().manual_seed(int(seed))
        self.queues = nn.ModuleDict()
        for name in self.query.heads:
            self.queues[name] = ContrastQueue(queue_capacity, dim=dim)
            self.queues[name].fill_random_(generator)

    @property
    def encoder_cfg(self):
        return self.query.encoder.cfg

    @classmethod
    def from_settings(cls, settings):
        """Build the model described by a settings dict."""
        train = settings['train']
        dtype = {'float32': torch.float32,
                 'float64': torch.float64}[train['dtype']]
        model = cls(EncoderConfig.from_settings(settings),
                    dim=settings['contrast']['dim'],
                    head_hidden=settings['contrast']['head_hidden'],
                    queue_capacity=train['queue_capacity'],
                    tau=train['tau'], m_k=train['m_k'],
                    terms=settings['loss'], seed=train['seed'])
        return model.to(dtype)

    @torch.no_grad()
    def momentum_update(self):
        """``theta_k <- m_k theta_k + (1 - m_k) theta_q`` elementwise."""
        m = self.m_k
        for param_q, param_k in zip(self.query.parameters(),
                                    self.key.parameters()):
            param_k.copy_(m * param_k + (1. - m) * param_q)

    def _active(self, term):
        if term in ('clip', 'part'):
            return self.terms['clip_part'] and term in self.query.heads
        elif term == 'domain':
            return self.terms['domain'] and 'temporal' in self.query.heads
        return self.terms['instance']

    def contrast(self, query_x, key_x):
        """Hierarchical contrastive loss of one batch of view pairs.

        The query views run through the query network, the key views
        through the key network without gradient.
        The queues are not changed.

        Args:
            query_x (torch.Tensor): ``(batch, T, J, 3)``
            key_x (torch.Tensor): ``(batch, T, J, 3)``

        Returns:
            tuple: The total loss as tensor, an ordered dict with the
            value of every term as float (0 for inactive terms) and the
            dict of projected key features for :meth:`enqueue`.
        """
        q = self.query(query_x)
        with torch.no_grad():
            k = self.key(key_x)
        terms = OrderedDict()
        if self._active('instance'):
            terms['instance'] = info_nce_multi(
                q['instance'], k['instance'], self.queues['instance'],
                self.tau)
        if self._active('domain'):
            terms['domain'] = domain_loss(
                q['temporal'], q['spatial'], k['temporal'], k['spatial'],
                self.queues['temporal'], self.queues['spatial'], self.tau)
        for name in ('clip', 'part'):
            if self._active(name):
                terms[name] = info_nce_multi(
                    q[name][:, 0], k[name], self.queues[name], self.tau)
        total = sum(terms.values())
        breakdown = OrderedDict(
            (name, terms[name].detach().item() if name in terms else 0.)
            for name in LOSS_TERMS)
        return total, breakdown, k

    def compute_loss(self, query_x, key_x, enqueue=True):
        """Like :meth:`contrast`, then push the key features into their
        queues if ``enqueue``.

        Returns:
            tuple: The total loss and the per term breakdown.
        """
        total, breakdown, keys = self.contrast(query_x, key_x)
        if enqueue:
            self.enqueue(keys)
        return total, breakdown

    def enqueue(self, keys):
        """Append key features, the clip and part queues get all
        granularities of a sample next to each other."""
        for name, queue in self.queues.items():
            value = keys[name]
            queue.enqueue(value.reshape(-1, value.shape[-1]))
