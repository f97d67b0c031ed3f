# -*- coding: utf-8 -*-
###############################################################################
# Reference data that does not change between runs.
# The default skeleton is the common 25 joint layout of depth-camera
# datasets. Joints are numbered from 0.
###############################################################################
import numpy as np

joint_names = (
    'spine_base', 'spine_mid', 'neck', 'head',
    'shoulder_left', 'elbow_left', 'wrist_left', 'hand_left',
    'shoulder_right', 'elbow_right', 'wrist_right', 'hand_right',
    'hip_left', 'knee_left', 'ankle_left', 'foot_left',
    'hip_right', 'knee_right', 'ankle_right', 'foot_right',
    'spine_shoulder', 'handtip_left', 'thumb_left',
    'handtip_right', 'thumb_right')

# (parent, child); joint 0 is the root
default_edges = (
    (0, 1), (1, 20), (20, 2), (2, 3),
    (20, 4), (4, 5), (5, 6), (6, 7), (7, 21), (7, 22),
    (20, 8), (8, 9), (9, 10), (10, 11), (11, 23), (11, 24),
    (0, 12), (12, 13), (13, 14), (14, 15),
    (0, 16), (16, 17), (17, 18), (18, 19))

# Binary containers, all little endian.
SKELETON_MAGIC = b'SKL1'
EMBEDDING_MAGIC = b'EMB1'
CHECKPOINT_MAGIC = b'HCK1'
CHECKPOINT_VERSION = 1

# Synthetic benchmark
SYNTH_AMPLITUDE = 0.5

# Finite difference checks
FD_EPSILON = 1e-4
FD_REL_FLOOR = 1e-3

positional_base = 10000.


def sinusoidal_table(length, width):
    """Fixed sinusoidal position encodings.

    Args:
        length (int):
        width (int):

    Returns:
        :class:`numpy.ndarray`: A ``(length, width)`` array.
    """
    position = np.arange(length, dtype='f8')[:, None]
    div = np.exp(np.arange(0, width, 2, dtype='f8')
                 * (-np.log(positional_base) / width))
    table = np.zeros((length, width))
    table[:, 0::2] = np.sin(position * div)
    table[:, 1::2] = np.cos(position * div)[:, :width // 2]
    return table
