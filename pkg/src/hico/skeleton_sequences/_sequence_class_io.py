# -*- coding: utf-8 -*-
import struct

from hico import constants
from hico._generic_classes.generic_IO import GenericIO
from hico.exceptions import FormatError
from hico.skeleton_sequences._sequence_class_core import SequenceCore


class SequenceIO(SequenceCore, GenericIO):
    """This class provides IO-methods.

    Contains ``to_skl`` and ``read_skl`` for the ``SKL1`` format.
    The layout is little endian::

        magic "SKL1" | u32 T | u32 J | i32 label (-1 = none)
        | u32 meta-byte-length | UTF-8 "key=value" lines
        | T * J * 3 float32 in (frame, joint, coordinate) order
    """
    _magic = constants.SKELETON_MAGIC

    def __repr__(self):
        return '{}(T={}, J={}, label={}, meta={})'.format(
            self.__class__.__name__, self.n_frames, self.n_joints,
            self.label, self.meta)

    def to_string(self, float_format='{:.6f}'.format):
        """Render the coordinates as console-friendly table.

        Wrapper around :meth:`pandas.DataFrame.to_string`.
        """
        return self.to_frame().to_string(float_format=float_format)

    def _meta_bytes(self):
        return ''.join('{}={}\n'.format(k, v)
                       for k, v in self.meta.items()).encode('utf-8')

    def to_bytes(self):
        meta = self._meta_bytes()
        label = -1 if self.label is None else self.label
        header = struct.pack('<IIiI', self.n_frames, self.n_joints,
                             label, len(meta))
        return (self._magic + header + meta
                + self._array_bytes(self.frames, 'f4'))

    def to_skl(self, buf):
        """Write a ``SKL1`` file.

        Args:
            buf (str): Path of the file.

        Returns:
            None:
        """
        with open(buf, mode='wb') as f:
            f.write(self.to_bytes())

    @classmethod
    def read_skl(cls, buf):
        """Read a ``SKL1`` file.

        Args:
            buf (str): Path of the file.

        Returns:
            SkeletonSequence:
        """
        with open(buf, mode='rb') as f:
            cls._check_magic(f, path=buf)
            n_frames, n_joints, label, n_meta = cls._unpack(f, 'IIiI')
            if n_frames < 1 or n_joints < 1 or label < -1:
                raise FormatError('Invalid header T={} J={} label={}'.format(
                    n_frames, n_joints, label), path=buf)
            try:
                text = cls._read_exact(f, n_meta, what='meta').decode('utf-8')
            except UnicodeDecodeError:
                raise FormatError('meta is not valid UTF-8', path=buf)
            meta = {}
            for line in text.splitlines():
                key, sep, value = line.partition('=')
                if not sep:
                    raise FormatError('meta line without "="', path=buf)
                meta[key] = value
            coords = cls._read_array(f, 'f4', n_frames * n_joints * 3)
        return cls(coords.reshape(n_frames, n_joints, 3),
                   label=None if label == -1 else label, meta=meta)
