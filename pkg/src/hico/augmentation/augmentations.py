# -*- coding: utf-8 -*-
import numpy as np

from hico.skeleton_sequences.sequence_functions import resample_time


class AugmentConfig(object):
    """Magnitudes of the three stochastic augmentations.

    Args:
        shear_amplitude (float): Off diagonal entries of the shear matrix
            are drawn from ``[-shear_amplitude, shear_amplitude]``.
        jitter_joint_fraction (float): Fraction of joints that are jittered.
        jitter_magnitude (float): Jitter noise is drawn from
            ``[-jitter_magnitude, jitter_magnitude]``.
        crop_ratio_min (float): Smallest fraction of frames kept by the
            temporal crop.
        out_frames (int): Number of frames after resampling.
    """
    def __init__(self, shear_amplitude=0.5, jitter_joint_fraction=0.15,
                 jitter_magnitude=0.1, crop_ratio_min=0.5, out_frames=64):
        if not shear_amplitude >= 0:
            raise ValueError('shear_amplitude has to be non negative')
        if not 0 <= jitter_joint_fraction <= 1:
            raise ValueError('jitter_joint_fraction has to be in [0, 1]')
        if not jitter_magnitude >= 0:
            raise ValueError('jitter_magnitude has to be non negative')
        if not 0 < crop_ratio_min <= 1:
            raise ValueError('crop_ratio_min has to be in (0, 1]')
        if int(out_frames) < 1:
            raise ValueError('out_frames has to be positive')
        self.shear_amplitude = float(shear_amplitude)
        self.jitter_joint_fraction = float(jitter_joint_fraction)
        self.jitter_magnitude = float(jitter_magnitude)
        self.crop_ratio_min = float(crop_ratio_min)
        self.out_frames = int(out_frames)

    @classmethod
    def from_settings(cls, settings):
        """Build from the ``augment`` section of the settings dict."""
        return cls(**settings['augment'])

    def __repr__(self):
        return 'AugmentConfig({})'.format(', '.join(
            '{}={!r}'.format(k, v) for k, v in vars(self).items()))


def shear_matrix(amplitude, rng):
    """Sample ``I + E`` with a zero diagonal in ``E``."""
    E = rng.uniform(-amplitude, amplitude, size=(3, 3))
    np.fill_diagonal(E, 0.)
    return np.identity(3) + E


def shear(seq, amplitude, rng):
    """Apply one random shear matrix to every joint of every frame.

    Args:
        seq (SkeletonSequence):
        amplitude (float):
        rng (numpy.random.Generator):

    Returns:
        SkeletonSequence:
    """
    if amplitude < 0:
        raise ValueError('amplitude has to be non negative')
    S = shear_matrix(amplitude, rng)
    return seq._with_frames(seq.frames.astype('f8') @ S.T)


def jitter_selection(n_joints, fraction, rng):
    n_selected = int(round(fraction * n_joints))
    return np.sort(rng.choice(n_joints, size=n_selected, replace=False))


def joint_jitter(seq, cfg, rng):
    """Add uniform noise to a random subset of joints in every frame.

    The subset of ``round(cfg.jitter_joint_fraction * J)`` joints is
    drawn once per call. Every selected coordinate of every frame gets
    its own noise value.

    Args:
        seq (SkeletonSequence):
        cfg (AugmentConfig):
        rng (numpy.random.Generator):

    Returns:
        SkeletonSequence:
    """
    selected = jitter_selection(seq.n_joints, cfg.jitter_joint_fraction, rng)
    frames = seq.frames.astype('f8')
    m = cfg.jitter_magnitude
    frames[:, selected] += rng.uniform(
        -m, m, size=(seq.n_frames, len(selected), 3))
    return seq._with_frames(frames)


def crop_window(n_frames, crop_ratio_min, rng):
    """Draw ``(start, length)`` of a temporal crop."""
    ratio = rng.uniform(crop_ratio_min, 1.)
    length = max(1, int(round(ratio * n_frames)))
    start = int(rng.integers(0, n_frames - length + 1))
    return start, length


def temporal_crop_resample(seq, cfg, rng):
    """Cut a random window and resample it to ``cfg.out_frames`` frames.

    Args:
        seq (SkeletonSequence):
        cfg (AugmentConfig):
        rng (numpy.random.Generator):

    Returns:
        SkeletonSequence:
    """
    start, length = crop_window(seq.n_frames, cfg.crop_ratio_min, rng)
    crop = seq._with_frames(seq.frames[start:start + length])
    return resample_time(crop, cfg.out_frames)


def augment(seq, cfg, rng):
    """Crop, then jitter, then shear."""
    seq = temporal_crop_resample(seq, cfg, rng)
    seq = joint_jitter(seq, cfg, rng)
    return shear(seq, cfg.shear_amplitude, rng)


def make_views(seq, cfg, rng):
    """Two independent augmentations of the same sequence.

    Args:
        seq (SkeletonSequence):
        cfg (AugmentConfig):
        rng (numpy.random.Generator): The query view is drawn first.

    Returns:
        tuple: ``(query_view, key_view)``.
    """
    return augment(seq, cfg, rng), augment(seq, cfg, rng)
