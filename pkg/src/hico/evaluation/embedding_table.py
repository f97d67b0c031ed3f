# -*- coding: utf-8 -*-
import struct

import numpy as np
import pandas as pd

from hico import constants
from hico._generic_classes.generic_IO import GenericIO
from hico.exceptions import FormatError, PhysicalMeaning, ShapeMismatch


class EmbeddingTable(GenericIO):
    """Instance features of ``N`` items with their labels.

    Args:
        matrix (sequence): ``N * D`` features, stored as float32.
        labels (sequence): ``N`` integer labels, ``-1`` for unknown.
    """
    _magic = constants.EMBEDDING_MAGIC

    def __init__(self, matrix, labels):
        matrix = np.array(matrix, dtype='f4')
        labels = np.array(labels, dtype='i4').reshape(-1)
        if matrix.ndim != 2:
            raise ShapeMismatch('matrix has to be two dimensional')
        if len(labels) != len(matrix):
            raise ShapeMismatch('{} rows but {} labels'.format(
                len(matrix), len(labels)))
        if not np.isfinite(matrix).all():
            raise PhysicalMeaning('Embeddings have to be finite')
        self.matrix = matrix
        self.labels = labels

    def __len__(self):
        return len(self.matrix)

    @property
    def width(self):
        return self.matrix.shape[1]

    def __repr__(self):
        return 'EmbeddingTable(N={}, D={})'.format(len(self), self.width)

    def __eq__(self, other):
        if not isinstance(other, EmbeddingTable):
            return NotImplemented
        return (self.matrix.shape == other.matrix.shape
                and self.matrix.tobytes() == other.matrix.tobytes()
                and np.array_equal(self.labels, other.labels))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def to_frame(self):
        """Columns ``['label', 'd0', 'd1', ...]``."""
        frame = pd.DataFrame(
            self.matrix,
            columns=['d{}'.format(i) for i in range(self.width)])
        frame.insert(0, 'label', self.labels)
        return frame

    def to_csv(self, buf):
        """Write a CSV file, floats with nine significant digits, which
        is enough to restore every float32 exactly."""
        self.to_frame().to_csv(buf, index=False, float_format='%.9g',
                               lineterminator='\n', encoding='utf-8')

    @classmethod
    def read_csv(cls, buf):
        frame = pd.read_csv(buf, float_precision='round_trip',
                            encoding='utf-8')
        if frame.columns[0] != 'label':
            raise FormatError('First column has to be "label"', path=buf)
        return cls(frame.iloc[:, 1:].values, frame['label'].values)

    def to_bytes(self):
        header = struct.pack('<II', len(self), self.width)
        return (self._magic + header
                + self._array_bytes(self.labels, 'i4')
                + self._array_bytes(self.matrix, 'f4'))

    def to_emb(self, buf):
        """Write the ``EMB1`` binary twin of the CSV export.

        The layout is little endian::

            magic "EMB1" | u32 N | u32 D | i32 labels[N] | f32 data[N * D]
        """
        with open(buf, mode='wb') as f:
            f.write(self.to_bytes())

    @classmethod
    def read_emb(cls, buf):
        with open(buf, mode='rb') as f:
            cls._check_magic(f, path=buf)
            n_rows, width = cls._unpack(f, 'II')
            labels = cls._read_array(f, 'i4', n_rows, what='labels')
            matrix = cls._read_array(f, 'f4', n_rows * width, what='data')
        return cls(matrix.reshape(n_rows, width), labels)
