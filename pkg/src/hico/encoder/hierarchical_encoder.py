# -*- coding: utf-8 -*-
import numpy as np
import torch
from torch import nn

from hico.encoder._modules import Branch, Fusion
from hico.encoder.encoder_config import EncoderConfig
from hico.exceptions import ShapeMismatch
from hico.nn.parameters import init_uniform_
from hico.skeleton_sequences.topology import SkeletonTopology


class MultiLevelEmbedding(object):
    """Features of a batch at the clip, part, domain and instance level.

    Attributes:
        clip (list): ``L`` tensors ``(batch, out_width)``, finest first.
            Empty if the temporal branch is disabled.
        part (list): Same for the spatial branch.
        temporal (torch.Tensor): Concatenated clip features or None.
        spatial (torch.Tensor): Concatenated part features or None.
        instance (torch.Tensor): Fusion of both domain features, or the
            single domain feature if one branch is disabled.
    """
    def __init__(self, clip, part, temporal, spatial, instance):
        self.clip = clip
        self.part = part
        self.temporal = temporal
        self.spatial = spatial
        self.instance = instance

    def __repr__(self):
        def width(x):
            return None if x is None else x.shape[-1]
        return ('MultiLevelEmbedding(levels=({}, {}), temporal={}, '
                'spatial={}, instance={})').format(
                    len(self.clip), len(self.part), width(self.temporal),
                    width(self.spatial), width(self.instance))


class HierarchicalEncoder(nn.Module):
    """Two branch encoder over a batch of skeleton sequences.

    The temporal branch reads every frame as a token of ``3 J`` values,
    the spatial branch every joint as a token of ``3 T`` values.
    Joints are ordered by ``topology.joint_order`` so that merging
    neighbouring tokens merges anatomically nearby joints.

    Args:
        cfg (EncoderConfig):
        topology (SkeletonTopology): Defaults to
            :meth:`~hico.SkeletonTopology.for_joints`.
        seed (int): Seed of the parameter initialisation.
    """
    def __init__(self, cfg, topology=None, seed=0):
        super(HierarchicalEncoder, self).__init__()
        if topology is None:
            topology = SkeletonTopology.for_joints(cfg.J)
        if topology.n_joints != cfg.J:
            raise ShapeMismatch('Topology has {} joints, the config {}'
                                .format(topology.n_joints, cfg.J))
        self.cfg = cfg
        self.register_buffer(
            'joint_order', torch.as_tensor(topology.joint_order,
                                           dtype=torch.long),
            persistent=False)
        if cfg.temporal:
            self.temporal = Branch(3 * cfg.J, cfg)
        if cfg.spatial:
            self.spatial = Branch(3 * cfg.out_frames, cfg)
        if cfg.branches == 'both':
            self.fusion = Fusion(cfg.fusion, cfg.domain_width)
        init_uniform_(self, seed=seed)

    @property
    def out_width(self):
        return self.cfg.instance_width

    def time_majored(self, x):
        batch, n_frames, n_joints, _ = x.shape
        return x.reshape(batch, n_frames, 3 * n_joints)

    def space_majored(self, x):
        batch, n_frames, n_joints, _ = x.shape
        x = x.index_select(2, self.joint_order)
        return x.permute(0, 2, 1, 3).reshape(batch, n_joints, 3 * n_frames)

    def forward(self, x):
        """
        Args:
            x (torch.Tensor): ``(batch, out_frames, J, 3)``

        Returns:
            MultiLevelEmbedding:
        """
        if x.dim() != 4 or tuple(x.shape[1:]) != (self.cfg.out_frames,
                                                  self.cfg.J, 3):
            raise ShapeMismatch(
                'Expected input (batch, {}, {}, 3), got {}'.format(
                    self.cfg.out_frames, self.cfg.J, tuple(x.shape)))
        clip, part, v_t, v_s = [], [], None, None
        if self.cfg.temporal:
            clip = self.temporal(self.time_majored(x))
            v_t = torch.cat(clip, dim=-1)
        if self.cfg.spatial:
            part = self.spatial(self.space_majored(x))
            v_s = torch.cat(part, dim=-1)
        if v_t is not None and v_s is not None:
            instance = self.fusion(v_t, v_s)
        else:
            instance = v_t if v_t is not None else v_s
        return MultiLevelEmbedding(clip, part, v_t, v_s, instance)

    @classmethod
    def from_settings(cls, settings, seed=None):
        if seed is None:
            seed = settings['train']['seed']
        return cls(EncoderConfig.from_settings(settings), seed=seed)


def as_batch(sequences, dtype=torch.float32):
    """Stack sequences of equal shape into a ``(batch, T, J, 3)`` tensor."""
    frames = np.stack([np.asarray(seq.frames) for seq in sequences])
    return torch.as_tensor(frames).to(dtype)


def hico_forward(seq, encoder):
    """Encode one :class:`~hico.SkeletonSequence` or a list of them.

    Args:
        seq (SkeletonSequence or list):
        encoder (HierarchicalEncoder):

    Returns:
        MultiLevelEmbedding:
    """
    sequences = seq if isinstance(seq, (list, tuple)) else [seq]
    dtype = next(encoder.parameters()).dtype
    return encoder(as_batch(sequences, dtype=dtype))
