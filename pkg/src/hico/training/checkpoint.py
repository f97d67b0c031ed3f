# -*- coding: utf-8 -*-
import json
import struct
from collections import OrderedDict

import numpy as np
import torch

from hico import constants
from hico._generic_classes.generic_IO import GenericIO
from hico.exceptions import CheckpointVersionMismatch, FormatError

_OPTIMIZER = 'optimizer.'


class Checkpoint(GenericIO):
    """State of a pre-training run.

    Holds the query and key parameters, the queues, the momentum buffers
    of the optimizer, the number of finished epochs and steps and the
    settings dict of the run.

    The file layout is little endian::

        magic "HCK1" | u32 version | u32 index-byte-length
        | UTF-8 JSON index | raw tensor data

    The JSON index is written with sorted keys and lists every tensor as
    ``[name, dtype, shape]`` in storage order, so writing a loaded
    checkpoint again gives the same bytes.

    Args:
        tensors (collections.OrderedDict): Name to :class:`numpy.ndarray`.
        epoch (int): Finished epochs.
        step (int): Finished optimizer steps.
        config (dict): The settings dict.
    """
    _magic = constants.CHECKPOINT_MAGIC
    version = constants.CHECKPOINT_VERSION

    def __init__(self, tensors, epoch, step, config):
        self.tensors = OrderedDict(tensors)
        self.epoch = int(epoch)
        self.step = int(step)
        self.config = config

    def __repr__(self):
        return 'Checkpoint(epoch={}, step={}, n_tensors={})'.format(
            self.epoch, self.step, len(self.tensors))

    @classmethod
    def from_training(cls, model, optimizer, epoch, step, settings):
        """Snapshot a model and its optimizer.

        Args:
            model (HierarchicalMoCo):
            optimizer (torch.optim.SGD): May be None.
            epoch (int):
            step (int):
            settings (dict):

        Returns:
            Checkpoint:
        """
        tensors = OrderedDict(
            (name, value.detach().cpu().numpy().copy())
            for name, value in model.state_dict().items())
        if optimizer is not None:
            for i, param in enumerate(optimizer.param_groups[0]['params']):
                buf = optimizer.state.get(param, {}).get('momentum_buffer')
                if buf is not None:
                    name = '{}{}.momentum_buffer'.format(_OPTIMIZER, i)
                    tensors[name] = buf.detach().cpu().numpy().copy()
        return cls(tensors, epoch, step, settings)

    def model_state(self):
        return OrderedDict(
            (name, torch.from_numpy(value.copy()))
            for name, value in self.tensors.items()
            if not name.startswith(_OPTIMIZER))

    def build_model(self):
        """A :class:`~hico.HierarchicalMoCo` with the stored state."""
        from hico.contrast.moco import HierarchicalMoCo
        model = HierarchicalMoCo.from_settings(self.config)
        self.restore(model)
        return model

    def restore(self, model, optimizer=None):
        """Load the stored state into ``model`` and ``optimizer``."""
        model.load_state_dict(self.model_state())
        if optimizer is not None:
            params = optimizer.param_groups[0]['params']
            for i, param in enumerate(params):
                name = '{}{}.momentum_buffer'.format(_OPTIMIZER, i)
                if name in self.tensors:
                    optimizer.state[param]['momentum_buffer'] = \
                        torch.from_numpy(self.tensors[name].copy()).to(
                            param.dtype)

    def _index(self):
        return {'epoch': self.epoch, 'step': self.step,
                'config': self.config,
                'tensors': [[name, value.dtype.str[1:], list(value.shape)]
                            for name, value in self.tensors.items()]}

    def to_bytes(self):
        index = json.dumps(self._index(), sort_keys=True,
                           separators=(',', ':')).encode('utf-8')
        data = b''.join(self._array_bytes(value, value.dtype)
                        for value in self.tensors.values())
        return (self._magic + struct.pack('<II', self.version, len(index))
                + index + data)

    def save(self, buf):
        """Write the checkpoint to the path ``buf``."""
        with open(buf, mode='wb') as f:
            f.write(self.to_bytes())

    @classmethod
    def load(cls, buf):
        """Read a checkpoint.

        Raises:
            CheckpointVersionMismatch: For another format version.
            TruncatedPayload: If the file ends too early.
        """
        with open(buf, mode='rb') as f:
            cls._check_magic(f, path=buf)
            version, n_index = cls._unpack(f, 'II')
            if version != cls.version:
                raise CheckpointVersionMismatch(version, cls.version,
                                                path=buf)
            raw = cls._read_exact(f, n_index, what='index')
            try:
                index = json.loads(raw.decode('utf-8'),
                                   object_pairs_hook=OrderedDict)
                entries = index['tensors']
            except (ValueError, KeyError):
                raise FormatError('Corrupted checkpoint index', path=buf)
            tensors = OrderedDict()
            for name, dtype, shape in entries:
                count = int(np.prod(shape, dtype='i8'))
                tensors[name] = cls._read_array(
                    f, dtype, count, what=name).reshape(shape)
        return cls(tensors, index['epoch'], index['step'],
                   _plain(index['config']))


def _plain(value):
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def save_checkpoint(ckpt, path):
    ckpt.save(path)


def load_checkpoint(path):
    return Checkpoint.load(path)
