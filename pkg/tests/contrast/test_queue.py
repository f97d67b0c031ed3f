import numpy as np
import pytest
import torch

from hico.contrast.queue import ContrastQueue
from hico.exceptions import ShapeMismatch


def rows(start, n, dim=2):
    values = torch.arange(start, start + n, dtype=torch.float32)
    return values[:, None].repeat(1, dim)


def test_fifo_oracle():
    queue = ContrastQueue(5, dim=2)
    oracle = []
    start = 0
    for n in [2, 2, 3, 1, 5, 4]:
        queue.enqueue(rows(start, n))
        oracle = (oracle + list(range(start, start + n)))[-5:]
        start += n
        assert len(queue) == len(oracle)
        assert queue.contents()[:, 0].tolist() == oracle
    assert sorted(queue.negatives()[:, 0].tolist()) == sorted(oracle)


def test_enqueue_errors():
    queue = ContrastQueue(3, dim=2)
    with pytest.raises(ShapeMismatch):
        queue.enqueue(rows(0, 4))
    with pytest.raises(ShapeMismatch):
        queue.enqueue(torch.zeros(2, 3))
    with pytest.raises(ShapeMismatch):
        ContrastQueue(0)


def test_random_fill():
    queue = ContrastQueue(7, dim=4)
    queue.fill_random_(torch.Generator().manual_seed(0))
    assert len(queue) == 7
    norms = queue.negatives().norm(dim=1)
    assert torch.allclose(norms, torch.ones(7))


def test_queue_is_in_state_dict():
    queue = ContrastQueue(3, dim=2)
    queue.enqueue(rows(1, 2))
    state = queue.state_dict()
    assert set(state) == {'entries', 'ptr', 'size'}
    other = ContrastQueue(3, dim=2)
    other.load_state_dict(state)
    assert torch.equal(other.contents(), queue.contents())


def test_negatives_is_a_copy():
    queue = ContrastQueue(3, dim=2)
    queue.enqueue(rows(1, 3))
    snapshot = queue.negatives()
    queue.enqueue(rows(9, 1))
    assert snapshot[:, 0].tolist() == [1., 2., 3.]


@pytest.mark.parametrize('batch, n_levels', [(2, 1), (3, 1), (2, 2)])
def test_random_entries_are_replaced(batch, n_levels):
    capacity = 16
    queue = ContrastQueue(capacity, dim=2)
    queue.fill_random_(torch.Generator().manual_seed(0))
    n_rows = batch * n_levels
    n_steps = -(-capacity // n_rows)
    start = 100
    for _ in range(n_steps):
        queue.enqueue(rows(start, n_rows))
        start += n_rows
    assert len(queue) == capacity
    assert queue.contents()[:, 0].tolist() == list(range(start - capacity,
                                                         start))


def test_random_operation_sequences():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        capacity = int(rng.integers(1, 9))
        queue = ContrastQueue(capacity, dim=1)
        oracle, start = [], 0
        for n in rng.integers(0, capacity + 1, size=int(rng.integers(1, 8))):
            n = int(n)
            queue.enqueue(torch.arange(start, start + n,
                                       dtype=torch.float32)[:, None])
            oracle = (oracle + list(range(start, start + n)))[-capacity:]
            start += n
        assert queue.contents()[:, 0].tolist() == oracle
