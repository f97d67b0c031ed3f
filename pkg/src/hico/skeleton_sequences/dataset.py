# -*- coding: utf-8 -*-
import hashlib
import logging
import os

import numpy as np
import pandas as pd

from hico import constants
from hico.exceptions import FormatError
from hico.skeleton_sequences.sequence_class_main import SkeletonSequence

logger = logging.getLogger(__name__)

MANIFEST_NAME = 'manifest.tsv'


class DatasetManifest(object):
    """List of skeleton files with labels and a train/test tag.

    The items are stored in a :class:`pandas.DataFrame` with the columns
    ``['path', 'label', 'split']``. Paths are stored as written in the
    manifest file and resolved relative to ``root``.

    Args:
        items (pandas.DataFrame): Has to contain the three columns.
        root (str): Directory that relative paths are resolved against.
        validate (bool): Check that every path resolves and that the
            labels are dense integers starting at zero.
    """
    columns = ['path', 'label', 'split']

    def __init__(self, items, root='.', validate=True):
        missing = set(self.columns) - set(items.columns)
        if missing:
            raise FormatError('Manifest lacks the columns {}'.format(
                sorted(missing)))
        self.items = items.loc[:, self.columns].reset_index(drop=True).copy()
        self.items['label'] = self.items['label'].astype('i8')
        self.items['split'] = self.items['split'].astype(str)
        self.root = root
        if validate:
            self.check()

    def check(self):
        """Raise if a file is missing or labels are not ``0..K-1``."""
        for path in self.paths:
            if not os.path.isfile(path):
                raise FileNotFoundError(
                    'Manifest item does not exist: {}'.format(path))
        labels = np.unique(self.items['label'].values)
        if len(labels) and not np.array_equal(labels,
                                              np.arange(labels[-1] + 1)):
            raise FormatError(
                'Labels have to be dense integers starting at 0, '
                'got {}'.format(labels.tolist()))

    def __len__(self):
        return len(self.items)

    def __repr__(self):
        counts = self.items['split'].value_counts().sort_index()
        return 'DatasetManifest({}, root={!r})'.format(
            ', '.join('{}={}'.format(k, v) for k, v in counts.items()),
            self.root)

    @property
    def labels(self):
        return self.items['label'].values.copy()

    @property
    def n_classes(self):
        if len(self) == 0:
            return 0
        return int(self.items['label'].max()) + 1

    @property
    def paths(self):
        return [os.path.join(self.root, p) for p in self.items['path']]

    def subset(self, split):
        """Return the items tagged with ``split``.

        Args:
            split (str): E.g. ``'train'`` or ``'test'``.

        Returns:
            DatasetManifest:
        """
        selected = self.items[self.items['split'] == split]
        return self.__class__(selected, root=self.root, validate=False)

    def take(self, indices):
        """Return the items at the positional ``indices``."""
        return self.__class__(self.items.iloc[list(indices)],
                              root=self.root, validate=False)

    def load(self, i):
        """Load item ``i`` as :class:`~hico.SkeletonSequence`.

        The label of the manifest wins over the label in the file.
        """
        seq = SkeletonSequence.read_skl(self.paths[i])
        label = int(self.items['label'].iat[i])
        if seq.label != label:
            seq = SkeletonSequence(seq.frames, label=label, meta=seq.meta)
        return seq

    def __iter__(self):
        for i in range(len(self)):
            yield self.load(i)

    @classmethod
    def from_tsv(cls, buf, validate=True):
        """Read a manifest file.

        The file holds one ``path<TAB>label<TAB>split`` record per line
        and no header. Relative paths are resolved against the directory
        of the manifest.

        Args:
            buf (str): Path of the manifest.
            validate (bool):

        Returns:
            DatasetManifest:
        """
        try:
            items = pd.read_csv(
                buf, sep='\t', header=None, names=cls.columns,
                dtype={'path': str, 'label': 'i8', 'split': str},
                keep_default_na=False, encoding='utf-8')
        except (ValueError, pd.errors.ParserError) as e:
            raise FormatError(str(e), path=buf)
        return cls(items, root=os.path.dirname(os.path.abspath(buf)),
                   validate=validate)

    def to_tsv(self, buf):
        """Write the manifest with paths as stored."""
        self.items.to_csv(buf, sep='\t', header=False, index=False,
                          lineterminator='\n', encoding='utf-8')


def _hash_unit(joint, coord):
    digest = hashlib.blake2b('{},{}'.format(joint, coord).encode('utf-8'),
                             digest_size=8).digest()
    u = int.from_bytes(digest[:4], 'little') / 2.**32
    v = int.from_bytes(digest[4:], 'little') / 2.**32
    return u, v


def synth_phases(n_joints):
    """Deterministic phase and offset per joint coordinate.

    Returns:
        tuple: Two ``J * 3`` arrays, the phases in ``[0, 2 pi)`` and the
        offsets in ``[-1, 1]``.
    """
    phase = np.empty((n_joints, 3))
    base = np.empty((n_joints, 3))
    for j in range(n_joints):
        for c in range(3):
            u, v = _hash_unit(j, c)
            phase[j, c] = 2 * np.pi * u
            base[j, c] = 2 * v - 1
    return phase, base


def synth_clean(label, n_frames, n_joints):
    """The noise free trajectory of class ``label``."""
    phase, base = synth_phases(n_joints)
    t = np.arange(n_frames).reshape(-1, 1, 1)
    omega = 2 * np.pi * (label + 1) / n_frames
    return (constants.SYNTH_AMPLITUDE * np.sin(omega * t + phase[None])
            + base[None])


def synth_dataset(n_classes, n_per_class, n_frames, n_joints, seed,
                  out_dir, noise=0.1, n_test_per_class=0):
    """Write a deterministic synthetic dataset.

    Coordinate ``c`` of joint ``j`` at frame ``t`` of class ``k`` is
    ``A sin(2 pi (k + 1) t / T + phase(j, c)) + base(j, c) + noise``.
    Train items come first, class by class, then the test items.
    The Gaussian noise is drawn in item order from one generator seeded
    with ``seed``.

    Args:
        n_classes (int):
        n_per_class (int): Train items per class.
        n_frames (int):
        n_joints (int):
        seed (int):
        out_dir (str): Created if necessary.
        noise (float): Standard deviation of the noise.
        n_test_per_class (int): Test items per class.

    Returns:
        DatasetManifest:
    """
    for name, value in [('n_classes', n_classes),
                        ('n_per_class', n_per_class),
                        ('n_frames', n_frames), ('n_joints', n_joints)]:
        if value < 1:
            raise ValueError('{} has to be at least 1'.format(name))
    if noise < 0 or n_test_per_class < 0:
        raise ValueError('noise and n_test_per_class can not be negative')
    os.makedirs(out_dir, exist_ok=True)
    rng = np.random.default_rng(seed)
    clean = [synth_clean(k, n_frames, n_joints) for k in range(n_classes)]

    plan = [(k, 'train') for k in range(n_classes)
            for _ in range(n_per_class)]
    plan += [(k, 'test') for k in range(n_classes)
             for _ in range(n_test_per_class)]
    records = []
    for index, (label, split) in enumerate(plan):
        eps = noise * rng.standard_normal((n_frames, n_joints, 3))
        seq = SkeletonSequence(clean[label] + eps, label=label,
                               meta={'split': split})
        filename = 'seq_{:05d}.skl'.format(index)
        seq.to_skl(os.path.join(out_dir, filename))
        records.append((filename, label, split))
    manifest = DatasetManifest(
        pd.DataFrame(records, columns=DatasetManifest.columns),
        root=out_dir)
    manifest.to_tsv(os.path.join(out_dir, MANIFEST_NAME))
    logger.info('Wrote %d sequences to %s', len(records), out_dir)
    return manifest
