# -*- coding: utf-8 -*-
import numpy as np
from numba import jit

from hico import export
from hico.exceptions import ShapeMismatch


@jit(nopython=True, cache=True)
def _jit_resample(X, n_out):
    """Linear interpolation of the rows of ``X`` onto ``n_out`` rows.

    Output row ``i`` sits at input position ``i * (n_in - 1) / (n_out - 1)``.
    """
    n_in, n_feat = X.shape
    out = np.empty((n_out, n_feat))
    if n_in == 1 or n_out == 1:
        for i in range(n_out):
            out[i, :] = X[0, :]
        return out
    for i in range(n_out):
        pos = i * (n_in - 1) / (n_out - 1)
        lo = int(np.floor(pos))
        if lo >= n_in - 1:
            lo = n_in - 1
            w = 0.
        else:
            w = pos - lo
        hi = min(lo + 1, n_in - 1)
        for k in range(n_feat):
            out[i, k] = X[lo, k] * (1. - w) + X[hi, k] * w
    return out


@export
def resample_time(seq, n_out):
    """Resample a sequence linearly to a fixed number of frames.

    Args:
        seq (SkeletonSequence):
        n_out (int): Number of output frames, at least 1.

    Returns:
        SkeletonSequence: Label and meta are kept.
    """
    n_out = int(n_out)
    if n_out < 1:
        raise ValueError('n_out has to be positive')
    if n_out == seq.n_frames:
        return seq.copy()
    X = seq.flatten_time().astype('f8')
    out = _jit_resample(X, n_out)
    return seq._with_frames(out.reshape(n_out, seq.n_joints, 3))


@export
def to_bone(seq, topology):
    """Bone view: every joint minus its parent, zero for the root.

    Args:
        seq (SkeletonSequence):
        topology (SkeletonTopology):

    Returns:
        SkeletonSequence:
    """
    if topology.n_joints != seq.n_joints:
        raise ShapeMismatch(
            'Topology has {} joints, the sequence {}'.format(
                topology.n_joints, seq.n_joints))
    frames = seq.frames.astype('f8')
    bones = np.zeros_like(frames)
    edges = np.array(topology.edges, dtype='i8').reshape(-1, 2)
    parents, children = edges[:, 0], edges[:, 1]
    bones[:, children] = frames[:, children] - frames[:, parents]
    return seq._with_frames(bones)


@export
def to_motion(seq):
    """Motion view: forward difference along time, last frame zero.

    Args:
        seq (SkeletonSequence):

    Returns:
        SkeletonSequence:
    """
    frames = seq.frames.astype('f8')
    motion = np.zeros_like(frames)
    motion[:-1] = frames[1:] - frames[:-1]
    return seq._with_frames(motion)


@export
def to_view(seq, view, topology=None):
    """Dispatch to the joint, bone or motion view.

    Args:
        seq (SkeletonSequence):
        view (str): One of ``'joint', 'bone', 'motion'``.
        topology (SkeletonTopology): Needed for ``'bone'``.
            Defaults to :meth:`SkeletonTopology.for_joints`.

    Returns:
        SkeletonSequence:
    """
    if view == 'joint':
        return seq
    elif view == 'bone':
        if topology is None:
            from hico.skeleton_sequences.topology import SkeletonTopology
            topology = SkeletonTopology.for_joints(seq.n_joints)
        return to_bone(seq, topology)
    elif view == 'motion':
        return to_motion(seq)
    raise ValueError('Unknown view {!r}'.format(view))


@export
def save_sequence(seq, path):
    """Write ``seq`` as ``SKL1`` file."""
    seq.to_skl(path)


@export
def load_sequence(path):
    """Read a ``SKL1`` file."""
    from hico.skeleton_sequences.sequence_class_main import SkeletonSequence
    return SkeletonSequence.read_skl(path)


def isclose(a, b, rtol=1.e-5, atol=1.e-8):
    """Compare the coordinates of two sequences numerically.

    Returns:
        :class:`numpy.ndarray`: Boolean ``T * J * 3`` array.
    """
    if a.shape != b.shape:
        raise ShapeMismatch('Can only compare sequences of equal shape')
    return np.isclose(a.frames, b.frames, rtol=rtol, atol=atol)


def allclose(a, b, rtol=1.e-5, atol=1.e-8):
    """Compare the coordinates of two sequences numerically.

    Returns:
        bool:
    """
    return bool(np.all(isclose(a, b, rtol=rtol, atol=atol)))
