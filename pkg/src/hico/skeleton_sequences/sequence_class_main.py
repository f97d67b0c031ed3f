# -*- coding: utf-8 -*-
from hico.skeleton_sequences._sequence_class_io import SequenceIO


class SkeletonSequence(SequenceIO):
    """The main class for a single skeleton action.

    A sequence holds ``T`` frames of ``J`` joints with three coordinates
    each, an optional integer class label and optional text metadata
    (e.g. ``{'subject': '3', 'view': '2'}``).
    Only one body per sequence is supported.

    **Reshapes**:

    The temporal branch of the encoder reads the sequence in the
    time-majored domain (:meth:`~SkeletonSequence.flatten_time`),
    the spatial branch in the space-majored domain
    (:meth:`~SkeletonSequence.flatten_space`).

    **Equality**:

    Two sequences are equal if their float32 coordinates are bytewise
    equal and label and meta coincide.
    Use :func:`hico.sequence_functions.allclose` for numerical comparison.
    """
