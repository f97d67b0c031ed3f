# -*- coding: utf-8 -*-
from hico.exceptions import IllegalArgumentCombination
from hico.nn.sequence_encoders import S2S_KINDS

BRANCHES = ('both', 'temporal', 'spatial')
FUSIONS = ('concat', 'sum', 'product', 'weighted')
UDM_KINDS = ('conv_max', 'conv_mean', 'max', 'mean')


class EncoderConfig(object):
    """Structure of the hierarchical encoder.

    Args:
        C (int): Token width after the embeddings.
        L (int): Number of granularities per branch.
        s2s_kind (str): ``'gru'``, ``'lstm'`` or ``'transformer'``.
        out_frames (int): Frames per input sequence.
        J (int): Joints per input sequence.
        out_width (int): Width of every clip and part feature.
        branches (str): ``'both'``, ``'temporal'`` or ``'spatial'``.
        fusion (str): How the temporal and spatial domain features are
            combined into the instance feature.
        udm (str): Variant of the downsampling module.
    """
    def __init__(self, C=512, L=4, s2s_kind='gru', out_frames=64, J=25,
                 out_width=512, branches='both', fusion='concat',
                 udm='conv_max'):
        self.C = int(C)
        self.L = int(L)
        self.s2s_kind = s2s_kind
        self.out_frames = int(out_frames)
        self.J = int(J)
        self.out_width = int(out_width)
        self.branches = branches
        self.fusion = fusion
        self.udm = udm
        self.check()

    def check(self):
        if self.C < 1 or self.L < 1 or self.out_width < 1:
            raise IllegalArgumentCombination('C, L and out_width have to be '
                                             'positive')
        for value, allowed in [(self.s2s_kind, S2S_KINDS),
                               (self.branches, BRANCHES),
                               (self.fusion, FUSIONS),
                               (self.udm, UDM_KINDS)]:
            if value not in allowed:
                raise IllegalArgumentCombination(
                    '{!r} is not one of {}'.format(value, allowed))
        smallest = 2 ** (self.L - 1)
        if self.temporal and self.out_frames < smallest:
            raise IllegalArgumentCombination(
                '{} granularities need at least {} frames'.format(
                    self.L, smallest))
        if self.spatial and self.J < smallest:
            raise IllegalArgumentCombination(
                '{} granularities need at least {} joints'.format(
                    self.L, smallest))

    @property
    def temporal(self):
        return self.branches in ('both', 'temporal')

    @property
    def spatial(self):
        return self.branches in ('both', 'spatial')

    @property
    def domain_width(self):
        return self.L * self.out_width

    @property
    def instance_width(self):
        if self.branches == 'both' and self.fusion == 'concat':
            return 2 * self.domain_width
        return self.domain_width

    @classmethod
    def from_settings(cls, settings):
        """Build from the ``encoder`` section of the settings dict."""
        return cls(**settings['encoder'])

    def to_dict(self):
        return dict(vars(self))

    def __eq__(self, other):
        return (isinstance(other, EncoderConfig)
                and self.to_dict() == other.to_dict())

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return 'EncoderConfig({})'.format(', '.join(
            '{}={!r}'.format(k, v) for k, v in vars(self).items()))
