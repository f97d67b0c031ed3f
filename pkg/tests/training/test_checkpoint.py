import os
import struct

import pytest
import torch

from hico.contrast.moco import HierarchicalMoCo
from hico.exceptions import (CheckpointVersionMismatch, FormatError,
                             TruncatedPayload)
from hico.training.checkpoint import Checkpoint, load_checkpoint
from hico.training.optimization import make_optimizer
from tests.training.tiny_settings import tiny_train_config


def make_checkpoint():
    cfg = tiny_train_config()
    model = HierarchicalMoCo.from_settings(cfg.settings)
    optimizer = make_optimizer(model.query.parameters(), 0.1, 0.9, 0.)
    for param in model.query.parameters():
        param.grad = torch.ones_like(param)
    optimizer.step()
    model.queues['instance'].enqueue(torch.ones(3, 4, dtype=torch.float64))
    return model, optimizer, Checkpoint.from_training(
        model, optimizer, 3, 17, cfg.settings)


def test_contents():
    model, optimizer, ckpt = make_checkpoint()
    assert ckpt.epoch == 3 and ckpt.step == 17
    assert 'queues.instance.entries' in ckpt.tensors
    assert 'queues.instance.ptr' in ckpt.tensors
    assert any(name.startswith('key.') for name in ckpt.tensors)
    n_params = len(optimizer.param_groups[0]['params'])
    assert 'optimizer.{}.momentum_buffer'.format(n_params - 1) in ckpt.tensors


def test_save_load_is_byte_identical(tmp_path):
    _, _, ckpt = make_checkpoint()
    path = os.path.join(str(tmp_path), 'a.hck')
    ckpt.save(path)
    loaded = load_checkpoint(path)
    assert loaded.to_bytes() == ckpt.to_bytes()
    assert loaded.config == ckpt.config
    assert loaded.epoch == 3 and loaded.step == 17


def test_restore(tmp_path):
    model, optimizer, ckpt = make_checkpoint()
    path = os.path.join(str(tmp_path), 'a.hck')
    ckpt.save(path)
    rebuilt = Checkpoint.load(path).build_model()
    for (name, a), b in zip(model.state_dict().items(),
                            rebuilt.state_dict().values()):
        assert torch.equal(a, b), name
    new_optimizer = make_optimizer(rebuilt.query.parameters(), 0.1, 0.9, 0.)
    Checkpoint.load(path).restore(rebuilt, new_optimizer)
    for p_old, p_new in zip(optimizer.param_groups[0]['params'],
                            new_optimizer.param_groups[0]['params']):
        assert torch.equal(optimizer.state[p_old]['momentum_buffer'],
                           new_optimizer.state[p_new]['momentum_buffer'])


def test_header_layout():
    _, _, ckpt = make_checkpoint()
    data = ckpt.to_bytes()
    assert data[:4] == b'HCK1'
    assert struct.unpack('<I', data[4:8]) == (1,)


def test_version_mismatch(tmp_path):
    _, _, ckpt = make_checkpoint()
    data = ckpt.to_bytes()
    path = os.path.join(str(tmp_path), 'a.hck')
    with open(path, 'wb') as f:
        f.write(data[:4] + struct.pack('<I', 2) + data[8:])
    with pytest.raises(CheckpointVersionMismatch) as e:
        Checkpoint.load(path)
    assert (e.value.found, e.value.expected) == (2, 1)


def test_corrupted_files(tmp_path):
    _, _, ckpt = make_checkpoint()
    data = ckpt.to_bytes()
    path = os.path.join(str(tmp_path), 'a.hck')
    with open(path, 'wb') as f:
        f.write(data[:-1])
    with pytest.raises(TruncatedPayload):
        Checkpoint.load(path)
    with open(path, 'wb') as f:
        f.write(b'SKL1' + data[4:])
    with pytest.raises(FormatError):
        Checkpoint.load(path)
    n_index = struct.unpack('<I', data[8:12])[0]
    with open(path, 'wb') as f:
        f.write(data[:12] + b'{' * n_index + data[12 + n_index:])
    with pytest.raises(FormatError):
        Checkpoint.load(path)
