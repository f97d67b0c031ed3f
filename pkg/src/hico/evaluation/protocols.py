# -*- coding: utf-8 -*-
import copy
import logging
from warnings import warn

import numpy as np
import torch
import torch.nn.functional as F
from numba import jit
from torch import nn

from hico.encoder.hierarchical_encoder import as_batch
from hico.evaluation.extraction import evaluation_view, get_encoder
from hico.exceptions import IllegalArgumentCombination, ShapeMismatch
from hico.nn.parameters import init_uniform_
from hico.training.optimization import (lr_at_epoch, make_optimizer,
                                        set_learning_rate)

logger = logging.getLogger(__name__)


class ProbeConfig(object):
    """Schedule of a supervised downstream run.

    The defaults are those of the linear probe. Fine-tuning uses the
    ``finetune`` section of the settings.
    """
    def __init__(self, epochs=80, lr=2., lr_decay_epochs=(50, 70),
                 lr_decay_factor=0.1, batch_size=64, momentum=0.9,
                 weight_decay=0., seed=0):
        if epochs < 0 or lr <= 0 or batch_size < 1:
            raise IllegalArgumentCombination(
                'epochs, lr and batch_size have to be positive')
        self.epochs = int(epochs)
        self.lr = float(lr)
        self.lr_decay_epochs = list(lr_decay_epochs)
        self.lr_decay_factor = float(lr_decay_factor)
        self.batch_size = int(batch_size)
        self.momentum = float(momentum)
        self.weight_decay = float(weight_decay)
        self.seed = int(seed)

    @classmethod
    def from_settings(cls, settings, section='probe'):
        keys = ['epochs', 'lr', 'lr_decay_epochs', 'lr_decay_factor',
                'batch_size', 'momentum']
        return cls(seed=settings['train']['seed'],
                   **{k: settings[section][k] for k in keys})

    def __repr__(self):
        return 'ProbeConfig({})'.format(', '.join(
            '{}={!r}'.format(k, v) for k, v in vars(self).items()))


def _n_classes(*label_arrays):
    return int(max(np.max(labels) for labels in label_arrays)) + 1


def _fit(model, parameters, inputs, labels, cfg):
    """Minimise the cross entropy of ``model(inputs[batch])`` by SGD.

    The order of every epoch is drawn from ``seed + epoch``.
    """
    optimizer = make_optimizer(parameters, cfg.lr, cfg.momentum,
                               cfg.weight_decay)
    targets = torch.as_tensor(labels, dtype=torch.long)
    if len(targets) == 0:
        raise ShapeMismatch('No labeled items to train on')
    for epoch in range(cfg.epochs):
        set_learning_rate(optimizer, lr_at_epoch(cfg, epoch))
        order = np.random.default_rng(cfg.seed + epoch).permutation(
            len(labels))
        for start in range(0, len(order), cfg.batch_size):
            batch = torch.as_tensor(order[start:start + cfg.batch_size])
            optimizer.zero_grad()
            loss = F.cross_entropy(model(inputs[batch]), targets[batch])
            loss.backward()
            optimizer.step()
        logger.debug('epoch %d loss %.6f', epoch, float(loss))


def _accuracy(predicted, labels):
    return float(np.mean(np.asarray(predicted) == np.asarray(labels)))


def probe_scores(train_table, test_table, cfg=None):
    """Train a linear classifier on frozen features.

    The classifier starts from zero weights.

    Returns:
        :class:`numpy.ndarray`: ``N_test * n_classes`` logits.
    """
    if cfg is None:
        cfg = ProbeConfig()
    if train_table.width != test_table.width:
        raise ShapeMismatch('Train and test features differ in width')
    if len(np.unique(train_table.labels)) < 2:
        warn('The probe is trained on a single class')
    n_classes = _n_classes(train_table.labels, test_table.labels)
    classifier = nn.Linear(train_table.width, n_classes).double()
    with torch.no_grad():
        classifier.weight.zero_()
        classifier.bias.zero_()
    inputs = torch.as_tensor(train_table.matrix, dtype=torch.float64)
    _fit(classifier, classifier.parameters(), inputs, train_table.labels,
         cfg)
    with torch.no_grad():
        return classifier(torch.as_tensor(
            test_table.matrix, dtype=torch.float64)).numpy()


def linear_probe(train_table, test_table, cfg=None):
    """Top-1 accuracy of a linear classifier on frozen features.

    Ties in the argmax go to the lowest class index.

    Args:
        train_table (EmbeddingTable):
        test_table (EmbeddingTable):
        cfg (ProbeConfig):

    Returns:
        float:
    """
    scores = probe_scores(train_table, test_table, cfg)
    return _accuracy(np.argmax(scores, axis=1), test_table.labels)


@jit(nopython=True, cache=True)
def _jit_cosine(Q, G):
    n_query, n_gallery, width = Q.shape[0], G.shape[0], Q.shape[1]
    q_norm = np.empty(n_query)
    g_norm = np.empty(n_gallery)
    for i in range(n_query):
        s = 0.
        for k in range(width):
            s += Q[i, k] * Q[i, k]
        q_norm[i] = np.sqrt(s)
    for j in range(n_gallery):
        s = 0.
        for k in range(width):
            s += G[j, k] * G[j, k]
        g_norm[j] = np.sqrt(s)
    S = np.empty((n_query, n_gallery))
    for i in range(n_query):
        for j in range(n_gallery):
            if q_norm[i] == 0. or g_norm[j] == 0.:
                S[i, j] = -np.inf
            else:
                dot = 0.
                for k in range(width):
                    dot += Q[i, k] * G[j, k]
                S[i, j] = dot / (q_norm[i] * g_norm[j])
    return S


def cosine_scores(query_table, gallery_table):
    """Cosine similarity of every query row to every gallery row.

    Rows of zero norm have similarity ``-inf`` to everything.

    Returns:
        :class:`numpy.ndarray`: ``N_query * N_gallery``
    """
    if query_table.width != gallery_table.width:
        raise ShapeMismatch('Query and gallery features differ in width')
    if len(gallery_table) == 0:
        raise ShapeMismatch('The gallery is empty')
    Q = query_table.matrix.astype('f8')
    G = gallery_table.matrix.astype('f8')
    if (not np.linalg.norm(Q, axis=1).all()
            or not np.linalg.norm(G, axis=1).all()):
        warn('Rows of zero norm are never retrieved and retrieve nothing')
    return _jit_cosine(Q, G)


def retrieve_1nn(query_table, gallery_table):
    """Top-1 accuracy of nearest neighbour retrieval by cosine similarity.

    Ties go to the lowest gallery index.

    Args:
        query_table (EmbeddingTable): Usually the test split.
        gallery_table (EmbeddingTable): Usually the train split.

    Returns:
        float:
    """
    nearest = np.argmax(cosine_scores(query_table, gallery_table), axis=1)
    return _accuracy(gallery_table.labels[nearest], query_table.labels)


def fuse_view_scores(score_tables):
    """Average per view scores and take the argmax.

    Args:
        score_tables (list): Arrays of equal shape, e.g. probe logits or
            retrieval similarities of several views.

    Returns:
        :class:`numpy.ndarray`: Index of the best column per row, ties
        go to the lowest index.
    """
    if not score_tables:
        raise ShapeMismatch('Need at least one score table')
    shape = np.shape(score_tables[0])
    if any(np.shape(table) != shape for table in score_tables):
        raise ShapeMismatch('Score tables are not aligned')
    return np.argmax(np.mean(np.stack(score_tables), axis=0), axis=1)


def stratified_subset(labels, fraction, seed):
    """Seeded choice of about ``fraction`` of the items of every class.

    Every class keeps ``max(1, round(fraction * n_class))`` items.
    If ``fraction * N`` is smaller than the number of classes, a plain
    random choice of ``max(1, round(fraction * N))`` items is returned
    with a warning.

    Returns:
        :class:`numpy.ndarray`: Sorted positions.
    """
    labels = np.asarray(labels)
    if not 0 < fraction <= 1:
        raise IllegalArgumentCombination('fraction has to be in (0, 1]')
    if fraction * len(labels) < 1:
        raise IllegalArgumentCombination(
            'fraction {} of {} items selects nothing'.format(
                fraction, len(labels)))
    rng = np.random.default_rng(seed)
    classes = np.unique(labels)
    if fraction == 1:
        return np.arange(len(labels))
    if fraction * len(labels) < len(classes):
        warn('Too few labeled items to stratify by class, '
             'falling back to an unstratified draw')
        n = max(1, int(round(fraction * len(labels))))
        return np.sort(rng.choice(len(labels), size=n, replace=False))
    chosen = []
    for c in classes:
        members = np.flatnonzero(labels == c)
        n = max(1, int(round(fraction * len(members))))
        chosen.append(rng.choice(members, size=n, replace=False))
    return np.sort(np.concatenate(chosen))


class _Classifier(nn.Module):
    def __init__(self, encoder, n_classes):
        super(_Classifier, self).__init__()
        self.encoder = encoder
        self.head = nn.Linear(encoder.out_width, n_classes)

    def forward(self, x):
        return self.head(self.encoder(x).instance)


def finetune(model, manifest, label_fraction=1., cfg=None, view='joint'):
    """Train encoder and a linear classifier on labeled train items.

    The encoder starts from the query encoder of ``model`` and is not
    frozen. Used for semi-supervised runs (``label_fraction < 1``) and for
    transfer (a checkpoint pre-trained on another manifest).

    Args:
        model: :class:`~hico.Checkpoint` or anything
            :func:`get_encoder` accepts. It is not changed.
        manifest (DatasetManifest): Needs ``'train'`` and ``'test'`` items.
        label_fraction (float): In ``(0, 1]``.
        cfg (ProbeConfig): Defaults to the ``finetune`` schedule.
        view (str):

    Returns:
        float: Top-1 accuracy on the test items.
    """
    if cfg is None:
        cfg = ProbeConfig(epochs=50, lr=0.1, lr_decay_epochs=(31, 44))
    encoder = copy.deepcopy(get_encoder(model))
    encoder_cfg = encoder.cfg
    dtype = next(encoder.parameters()).dtype
    train, test = manifest.subset('train'), manifest.subset('test')
    subset = stratified_subset(train.labels, label_fraction, cfg.seed)
    train = train.take(subset)
    if len(test) == 0:
        raise ShapeMismatch('The manifest has no test items')
    n_classes = _n_classes(train.labels, test.labels)

    def prepare(items):
        return as_batch([evaluation_view(seq, view, encoder_cfg.out_frames)
                         for seq in items], dtype=dtype)

    classifier = _Classifier(encoder, n_classes)
    init_uniform_(classifier.head, seed=cfg.seed)
    classifier.to(dtype)
    _fit(classifier, classifier.parameters(), prepare(train), train.labels,
         cfg)
    with torch.no_grad():
        scores = classifier(prepare(test)).numpy()
    return _accuracy(np.argmax(scores, axis=1), test.labels)
