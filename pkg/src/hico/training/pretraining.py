# -*- coding: utf-8 -*-
import logging
import math

import numpy as np
import pandas as pd
import torch
from torch.utils.data import DataLoader, Dataset

from hico.augmentation.augmentations import make_views
from hico.contrast.moco import LOSS_TERMS, HierarchicalMoCo
from hico.exceptions import IllegalArgumentCombination, NonFiniteLoss
from hico.skeleton_sequences.sequence_functions import to_view
from hico.training.checkpoint import Checkpoint
from hico.training.optimization import (lr_at_epoch, make_optimizer,
                                        sgd_update)

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ['step', 'epoch', 'lr', 'total'] + list(LOSS_TERMS)


def epoch_order(n_items, seed, epoch):
    """Shuffled item order of one epoch, seeded with ``seed + epoch``."""
    return np.random.default_rng(seed + epoch).permutation(n_items)


class ViewPairDataset(Dataset):
    """Query and key views of the items of a manifest.

    Position ``i`` of an epoch yields item ``order[i]``, augmented with a
    generator seeded by ``(seed, epoch, i)``. The pairs therefore do not
    depend on the number of loader workers.

    Args:
        manifest (DatasetManifest):
        cfg (TrainConfig):
    """
    def __init__(self, manifest, cfg):
        self.manifest = manifest
        self.cfg = cfg
        self.seed = cfg.seed
        self.set_epoch(0)

    def set_epoch(self, epoch):
        self.epoch = epoch
        self.order = epoch_order(len(self.manifest), self.seed, epoch)

    def __len__(self):
        return len(self.manifest)

    def __getitem__(self, position):
        seq = to_view(self.manifest.load(int(self.order[position])),
                      self.cfg.view)
        rng = np.random.default_rng([self.seed, self.epoch, position])
        query, key = make_views(seq, self.cfg.augment, rng)
        return (torch.from_numpy(query.frames.copy()),
                torch.from_numpy(key.frames.copy()))


def pretrain(manifest, cfg, resume=None, workers=0, checkpoint_path=None):
    """Pre-train a :class:`~hico.HierarchicalMoCo` on the train split.

    Every step runs: views, query and key forward, loss, backward on
    the query side, SGD step, momentum update of the key side, enqueue.

    Args:
        manifest (DatasetManifest): Only items tagged ``'train'`` are
            used.
        cfg (TrainConfig):
        resume (Checkpoint): Continue after ``resume.epoch``.
        workers (int): Data loading processes.
        checkpoint_path (str): If given, the checkpoint is written there
            after every epoch.

    Returns:
        tuple: The final :class:`~hico.Checkpoint` and the loss trace as
        :class:`pandas.DataFrame` with the columns
        ``['step', 'epoch', 'lr', 'total', 'instance', 'domain', 'clip',
        'part']``.

    Raises:
        NonFiniteLoss: With the global step index.
    """
    train = manifest.subset('train')
    if len(train) == 0:
        raise IllegalArgumentCombination('The manifest has no train items')
    if resume is None:
        model = HierarchicalMoCo.from_settings(cfg.settings)
        start_epoch, step = 0, 0
    else:
        model = resume.build_model()
        start_epoch, step = resume.epoch, resume.step
    dtype = next(model.parameters()).dtype
    optimizer = make_optimizer(model.query.parameters(), cfg.lr,
                               cfg.sgd_momentum, cfg.weight_decay)
    if resume is not None:
        resume.restore(model, optimizer)
    names = {p: n for n, p in model.query.named_parameters()}

    dataset = ViewPairDataset(train, cfg)
    rows = []
    for epoch in range(start_epoch, cfg.epochs):
        dataset.set_epoch(epoch)
        loader = DataLoader(dataset, batch_size=cfg.batch_size,
                            shuffle=False, num_workers=workers)
        lr = lr_at_epoch(cfg, epoch)
        for query_x, key_x in loader:
            optimizer.zero_grad()
            total, breakdown, keys = model.contrast(query_x.to(dtype),
                                                    key_x.to(dtype))
            value = float(total)
            if not math.isfinite(value):
                raise NonFiniteLoss(step, value)
            total.backward()
            sgd_update(optimizer, lr, names=names)
            model.momentum_update()
            model.enqueue(keys)
            rows.append([step, epoch, lr, value] + list(breakdown.values()))
            if step % cfg.log_every == 0:
                logger.info('step %d epoch %d lr %g loss %.6f (%s)', step,
                            epoch, lr, value, ', '.join(
                                '{} {:.6f}'.format(k, v)
                                for k, v in breakdown.items()))
            step += 1
        if checkpoint_path is not None:
            Checkpoint.from_training(model, optimizer, epoch + 1, step,
                                     cfg.settings).save(checkpoint_path)
    epochs_done = max(cfg.epochs, start_epoch)
    ckpt = Checkpoint.from_training(model, optimizer, epochs_done, step,
                                    cfg.settings)
    trace = pd.DataFrame(rows, columns=TRACE_COLUMNS)
    return ckpt, trace


def write_trace(trace, path):
    trace.to_csv(path, index=False, lineterminator='\n', encoding='utf-8',
                 float_format='%.17g')
