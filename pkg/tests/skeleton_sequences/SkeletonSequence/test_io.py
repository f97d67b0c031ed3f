import os
import struct

import numpy as np
import pytest

import hico
from hico.exceptions import FormatError, TruncatedPayload


def make_sequence(label=1, meta=None):
    rng = np.random.default_rng(0)
    return hico.SkeletonSequence(rng.standard_normal((5, 4, 3)),
                                 label=label, meta=meta)


@pytest.mark.parametrize('label, meta', [
    (1, {'subject': '3', 'view': '2'}),
    (None, None),
    (0, {'note': 'ümlaut'})])
def test_skl_round_trip(tmp_path, label, meta):
    seq = make_sequence(label, meta)
    path = os.path.join(str(tmp_path), 'a.skl')
    seq.to_skl(path)
    assert hico.SkeletonSequence.read_skl(path) == seq


def test_header_layout(tmp_path):
    seq = make_sequence(label=None, meta={'k': 'v'})
    data = seq.to_bytes()
    assert data[:4] == b'SKL1'
    assert struct.unpack('<IIiI', data[4:20]) == (5, 4, -1, 4)
    assert data[20:24] == b'k=v\n'
    assert len(data) == 24 + 5 * 4 * 3 * 4


def test_wrong_magic(tmp_path):
    path = os.path.join(str(tmp_path), 'a.skl')
    with open(path, 'wb') as f:
        f.write(b'XXXX' + make_sequence().to_bytes()[4:])
    with pytest.raises(FormatError):
        hico.SkeletonSequence.read_skl(path)


def test_truncated_file(tmp_path):
    path = os.path.join(str(tmp_path), 'a.skl')
    with open(path, 'wb') as f:
        f.write(make_sequence().to_bytes()[:-5])
    with pytest.raises(TruncatedPayload) as e:
        hico.SkeletonSequence.read_skl(path)
    assert e.value.expected == 5 * 4 * 3 * 4
    assert e.value.received == 5 * 4 * 3 * 4 - 5


def test_save_load_functions(tmp_path):
    seq = make_sequence()
    path = os.path.join(str(tmp_path), 'a.skl')
    hico.sequence_functions.save_sequence(seq, path)
    assert hico.sequence_functions.load_sequence(path) == seq


def test_many_random_round_trips(tmp_path):
    rng = np.random.default_rng(1)
    path = os.path.join(str(tmp_path), 'a.skl')
    for i in range(1000):
        T, J = rng.integers(1, 6, size=2)
        label = None if i % 3 == 0 else int(rng.integers(0, 60))
        meta = {'subject': str(rng.integers(0, 40))} if i % 2 else None
        seq = hico.SkeletonSequence(
            rng.standard_normal((T, J, 3)) * 10. ** rng.integers(-3, 4),
            label=label, meta=meta)
        seq.to_skl(path)
        assert hico.SkeletonSequence.read_skl(path) == seq
