# -*- coding: utf-8 -*-
import numpy as np
import torch

from hico.encoder.hierarchical_encoder import HierarchicalEncoder, as_batch
from hico.evaluation.embedding_table import EmbeddingTable
from hico.exceptions import ShapeMismatch
from hico.skeleton_sequences.sequence_functions import resample_time, to_view


def get_encoder(model):
    """The query encoder of a checkpoint, a MoCo model or an encoder."""
    if hasattr(model, 'build_model'):
        model = model.build_model()
    if hasattr(model, 'query'):
        model = model.query
    if hasattr(model, 'encoder'):
        model = model.encoder
    if not isinstance(model, HierarchicalEncoder):
        raise TypeError('Can not find an encoder in {!r}'.format(model))
    return model


def evaluation_view(seq, view, out_frames):
    """View transform and deterministic resample of the full sequence."""
    return resample_time(to_view(seq, view), out_frames)


def encode_sequences(encoder, sequences, batch_size=64):
    """Instance features of ``sequences`` without gradient.

    Returns:
        :class:`numpy.ndarray`: ``N * D``
    """
    dtype = next(encoder.parameters()).dtype
    features = []
    with torch.no_grad():
        for start in range(0, len(sequences), batch_size):
            x = as_batch(sequences[start:start + batch_size], dtype=dtype)
            features.append(encoder(x).instance.cpu().numpy())
    if not features:
        return np.empty((0, encoder.out_width), dtype='f4')
    return np.concatenate(features)


def extract_embeddings(model, manifest, view='joint', batch_size=64):
    """Instance level features of every manifest item.

    The features are taken before the projection heads.

    Args:
        model: :class:`~hico.Checkpoint`, :class:`~hico.HierarchicalMoCo`
            or :class:`~hico.HierarchicalEncoder`.
        manifest (DatasetManifest):
        view (str): ``'joint'``, ``'bone'`` or ``'motion'``.
        batch_size (int):

    Returns:
        EmbeddingTable:
    """
    encoder = get_encoder(model)
    cfg = encoder.cfg
    sequences = []
    for seq in manifest:
        if seq.n_joints != cfg.J:
            raise ShapeMismatch('Item has {} joints, the encoder expects {}'
                                .format(seq.n_joints, cfg.J))
        sequences.append(evaluation_view(seq, view, cfg.out_frames))
    return EmbeddingTable(encode_sequences(encoder, sequences, batch_size),
                          manifest.labels)
