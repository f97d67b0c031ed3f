# -*- coding: utf-8 -*-
import copy

import numpy as np
import pandas as pd

from hico.exceptions import PhysicalMeaning, ShapeMismatch


class SequenceCore(object):
    dtype = np.dtype('f4')

    def __init__(self, frames, label=None, meta=None):
        """How to initialize a SkeletonSequence instance.

        Args:
            frames (sequence): A ``T * J * 3`` array of joint
                coordinates. It is stored as float32.
            label (int): Non negative class id or None.
            meta (dict): Text key value pairs, e.g. subject and view.

        Returns:
            SkeletonSequence: A new instance.
        """
        frames = np.array(frames, dtype=self.dtype)
        if frames.ndim != 3 or frames.shape[2] != 3:
            raise ShapeMismatch('frames must have the shape (T, J, 3), '
                                'got {}'.format(frames.shape))
        if frames.shape[0] < 1 or frames.shape[1] < 1:
            raise ShapeMismatch('Need at least one frame and one joint')
        if not np.isfinite(frames).all():
            raise PhysicalMeaning('Coordinates have to be finite')
        if label is not None:
            label = int(label)
            if label < 0:
                raise ValueError('label has to be non negative or None')
        self._frames = frames
        self.label = label
        if meta is None:
            self.meta = {}
        else:
            self.meta = {str(k): str(v) for k, v in meta.items()}
            for k, v in self.meta.items():
                if '=' in k or len('{}={}'.format(k, v).splitlines()) != 1:
                    raise ValueError(
                        'meta keys may not contain "=" and neither keys '
                        'nor values may contain line breaks')

    @property
    def frames(self):
        return self._frames

    @property
    def n_frames(self):
        return self._frames.shape[0]

    @property
    def n_joints(self):
        return self._frames.shape[1]

    @property
    def shape(self):
        return self._frames.shape

    def __len__(self):
        return self.n_frames

    def copy(self):
        return self.__class__(self._frames, label=self.label,
                              meta=copy.deepcopy(self.meta))

    def _with_frames(self, frames):
        return self.__class__(frames, label=self.label,
                              meta=copy.deepcopy(self.meta))

    def __eq__(self, other):
        if not isinstance(other, SequenceCore):
            return NotImplemented
        return (self.shape == other.shape
                and self._frames.tobytes() == other._frames.tobytes()
                and self.label == other.label and self.meta == other.meta)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def flatten_time(self):
        """Reshape in the time-majored domain.

        Returns:
            :class:`numpy.ndarray`: ``T`` rows of ``3J`` values.
            Row ``t`` is frame ``t`` in (joint, coordinate) order.
        """
        return self._frames.reshape(self.n_frames, 3 * self.n_joints)

    def flatten_space(self, joint_order=None):
        """Reshape in the space-majored domain.

        Args:
            joint_order (sequence): Permutation of the joints that defines
                which rows are neighbours. Defaults to the stored order.

        Returns:
            :class:`numpy.ndarray`: ``J`` rows of ``3T`` values.
            Row ``j`` is the trajectory of one joint in
            (frame, coordinate) order.
        """
        frames = self._frames
        if joint_order is not None:
            frames = frames[:, np.asarray(joint_order)]
        return frames.transpose(1, 0, 2).reshape(self.n_joints,
                                                 3 * self.n_frames)

    def to_frame(self):
        """Return the coordinates as :class:`pandas.DataFrame`.

        The index is a ``(frame, joint)`` MultiIndex and the columns are
        ``['x', 'y', 'z']``.
        """
        index = pd.MultiIndex.from_product(
            [range(self.n_frames), range(self.n_joints)],
            names=['frame', 'joint'])
        return pd.DataFrame(self._frames.reshape(-1, 3), index=index,
                            columns=['x', 'y', 'z'])

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._frames.copy()
        return self._frames.astype(dtype)
