# -*- coding: utf-8 -*-
import struct

import numpy as np

from hico.exceptions import FormatError, TruncatedPayload


class GenericIO(object):
    """Little endian binary container helpers shared by the
    ``SKL1``, ``EMB1`` and ``HCK1`` formats.
    """
    _magic = None

    @staticmethod
    def _read_exact(f, n_bytes, what='payload'):
        data = f.read(n_bytes)
        if len(data) != n_bytes:
            raise TruncatedPayload(
                'File ends inside the {}'.format(what),
                expected=n_bytes, received=len(data))
        return data

    @classmethod
    def _check_magic(cls, f, path=None):
        magic = f.read(len(cls._magic))
        if magic != cls._magic:
            raise FormatError('Expected magic bytes {!r}, found {!r}'.format(
                cls._magic, magic), path=path)

    @classmethod
    def _unpack(cls, f, fmt, what='header'):
        fmt = '<' + fmt
        return struct.unpack(
            fmt, cls._read_exact(f, struct.calcsize(fmt), what=what))

    @classmethod
    def _read_array(cls, f, dtype, count, what='payload'):
        dtype = np.dtype(dtype).newbyteorder('<')
        data = cls._read_exact(f, dtype.itemsize * count, what=what)
        return np.frombuffer(data, dtype=dtype, count=count).astype(
            dtype.newbyteorder('='))

    @staticmethod
    def _array_bytes(array, dtype):
        return np.ascontiguousarray(
            array, dtype=np.dtype(dtype).newbyteorder('<')).tobytes()
