import os

import numpy as np
import pandas as pd
import pytest
import torch

import hico
from hico.exceptions import IllegalArgumentCombination, NonFiniteLoss
from hico.training.checkpoint import Checkpoint
from hico.training.pretraining import (TRACE_COLUMNS, ViewPairDataset,
                                       epoch_order, pretrain, write_trace)
from tests.training.tiny_settings import tiny_train_config


@pytest.fixture
def manifest(tmp_path):
    return hico.synth_dataset(2, 2, 12, 6, seed=0,
                              out_dir=os.path.join(str(tmp_path), 'data'),
                              n_test_per_class=1)


def test_epoch_order():
    assert sorted(epoch_order(7, 0, 3)) == list(range(7))
    assert np.array_equal(epoch_order(7, 0, 3), epoch_order(7, 0, 3))
    assert not np.array_equal(epoch_order(50, 0, 0), epoch_order(50, 0, 1))


def test_view_pairs(manifest):
    dataset = ViewPairDataset(manifest.subset('train'), tiny_train_config())
    query, key = dataset[1]
    assert query.shape == key.shape == (8, 6, 3)
    assert not torch.equal(query, key)
    again_q, _ = dataset[1]
    assert torch.equal(query, again_q)
    dataset.set_epoch(1)
    assert not torch.equal(dataset[1][0], query)


def test_step_count_and_trace(manifest):
    ckpt, trace = pretrain(manifest, tiny_train_config('train.epochs=2'))
    assert list(trace.columns) == TRACE_COLUMNS
    # 4 train items with batch size 2
    assert list(trace['step']) == [0, 1, 2, 3]
    assert list(trace['epoch']) == [0, 0, 1, 1]
    assert ckpt.epoch == 2 and ckpt.step == 4
    assert np.isfinite(trace[['total', 'instance', 'domain', 'clip',
                              'part']].values).all()
    terms = trace[['instance', 'domain', 'clip', 'part']].sum(axis=1)
    assert np.allclose(trace['total'], terms)


def test_pretraining_is_deterministic(tmp_path):
    manifest = hico.synth_dataset(2, 10, 12, 6, seed=0, out_dir=str(tmp_path))
    cfg = tiny_train_config()
    ckpt_a, trace_a = pretrain(manifest, cfg)
    ckpt_b, trace_b = pretrain(manifest, cfg)
    assert len(trace_a) == 10
    paths = [os.path.join(str(tmp_path), name) for name in 'ab']
    write_trace(trace_a, paths[0])
    write_trace(trace_b, paths[1])
    with open(paths[0], 'rb') as a, open(paths[1], 'rb') as b:
        assert a.read() == b.read()
    assert ckpt_a.to_bytes() == ckpt_b.to_bytes()


def test_query_moves_and_key_follows(manifest):
    cfg = tiny_train_config('train.m_k=0.5')
    ckpt, _ = pretrain(manifest, cfg)
    initial = hico.HierarchicalMoCo.from_settings(cfg.settings)
    name = 'query.heads.instance.second.weight'
    assert not np.array_equal(ckpt.tensors[name],
                              initial.state_dict()[name].numpy())
    key = ckpt.tensors['key.heads.instance.second.weight']
    assert not np.array_equal(key, initial.state_dict()[
        'key.heads.instance.second.weight'].numpy())


def test_resume_matches_uninterrupted_run(manifest, tmp_path):
    path = os.path.join(str(tmp_path), 'checkpoint.hck')
    full, full_trace = pretrain(manifest, tiny_train_config('train.epochs=2'))
    pretrain(manifest, tiny_train_config('train.epochs=1'),
             checkpoint_path=path)
    resumed, resumed_trace = pretrain(
        manifest, tiny_train_config('train.epochs=2'),
        resume=Checkpoint.load(path))
    assert list(resumed_trace['step']) == [2, 3]
    assert np.allclose(resumed_trace['total'], full_trace['total'][2:])
    for name, value in full.tensors.items():
        assert np.allclose(value, resumed.tensors[name]), name


def test_no_train_items(manifest):
    with pytest.raises(IllegalArgumentCombination):
        pretrain(manifest.subset('test'), tiny_train_config())


def test_non_finite_loss(manifest, monkeypatch):
    contrast = hico.HierarchicalMoCo.contrast

    def poisoned(self, query_x, key_x):
        total, breakdown, keys = contrast(self, query_x, key_x)
        return total * float('nan'), breakdown, keys

    monkeypatch.setattr(hico.HierarchicalMoCo, 'contrast', poisoned)
    with pytest.raises(NonFiniteLoss) as e:
        pretrain(manifest, tiny_train_config())
    assert e.value.step == 0


def test_write_trace(manifest, tmp_path):
    _, trace = pretrain(manifest, tiny_train_config())
    path = os.path.join(str(tmp_path), 'loss_trace.csv')
    write_trace(trace, path)
    read = pd.read_csv(path, float_precision='round_trip')
    assert list(read.columns) == TRACE_COLUMNS
    assert np.array_equal(read['total'].values, trace['total'].values)
