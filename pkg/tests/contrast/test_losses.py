import math

import numpy as np
import pytest
import torch

from hico.contrast.losses import domain_loss, info_nce_multi
from hico.contrast.queue import ContrastQueue
from hico.exceptions import ShapeMismatch


def basis(i, dim=8):
    e = torch.zeros(dim, dtype=torch.float64)
    e[i] = 1.
    return e


def orthogonal_negatives(K, dim=8):
    # every negative is orthogonal to basis(0)
    generator = torch.Generator().manual_seed(K)
    noise = torch.randn(K, dim, generator=generator, dtype=torch.float64)
    noise[:, 0] = 0.
    return noise / noise.norm(dim=1, keepdim=True)


@pytest.mark.parametrize('K', [16, 256, 2048])
@pytest.mark.parametrize('P', [1, 4])
@pytest.mark.parametrize('tau', [0.07, 0.2, 1.])
def test_equal_logits(K, P, tau):
    anchor = basis(0)
    # all logits vanish
    positives = [basis(1)] * P
    negatives = torch.stack([basis(2)] * K)
    loss = info_nce_multi(anchor, positives, negatives, tau)
    assert math.isclose(float(loss), math.log((P + K) / P), rel_tol=1e-12)
    if P == 1:
        assert math.isclose(float(loss), math.log(1 + K), rel_tol=1e-12)


def test_separated_logits():
    anchor = basis(0)
    loss = info_nce_multi(anchor, [anchor], orthogonal_negatives(2048), 0.1)
    assert math.isclose(float(loss), math.log(1 + 2048 * math.exp(-10)),
                        rel_tol=1e-9)


def test_loss_is_finite_for_small_tau():
    anchor = basis(0)
    loss = info_nce_multi(anchor, [anchor], -anchor[None], 0.01)
    assert torch.isfinite(loss)
    assert float(loss) >= 0.


def test_batched_and_unbatched_agree():
    generator = torch.Generator().manual_seed(0)
    a = torch.randn(3, 8, generator=generator, dtype=torch.float64)
    p = torch.randn(3, 2, 8, generator=generator, dtype=torch.float64)
    n = torch.randn(5, 8, generator=generator, dtype=torch.float64)
    batched = info_nce_multi(a, p, n, 0.5, reduction='none')
    for i in range(3):
        single = info_nce_multi(a[i], [p[i, 0], p[i, 1]], n, 0.5)
        assert torch.allclose(batched[i], single)
    assert torch.allclose(info_nce_multi(a, p, n, 0.5), batched.mean())


def test_queue_as_negatives():
    queue = ContrastQueue(4, dim=8).double()
    queue.enqueue(torch.stack([basis(1), basis(2)]))
    anchor = basis(0)
    from_queue = info_nce_multi(anchor, [anchor], queue, 1.)
    direct = info_nce_multi(anchor, [anchor], queue.negatives(), 1.)
    assert torch.equal(from_queue, direct)
    assert math.isclose(float(direct), math.log(1 + 2 * math.exp(-1)),
                        rel_tol=1e-12)


def test_errors():
    anchor = basis(0)
    with pytest.raises(ShapeMismatch):
        info_nce_multi(anchor, [], orthogonal_negatives(3), 0.2)
    with pytest.raises(ShapeMismatch):
        info_nce_multi(anchor, [anchor], torch.zeros(0, 8), 0.2)
    with pytest.raises(ShapeMismatch):
        info_nce_multi(anchor, [anchor], torch.zeros(3, 7), 0.2)


def test_domain_loss_is_symmetric_sum():
    generator = torch.Generator().manual_seed(1)

    def unit(*shape):
        x = torch.randn(*shape, generator=generator, dtype=torch.float64)
        return x / x.norm(dim=-1, keepdim=True)

    v_t, v_s, k_t, k_s = unit(2, 8), unit(2, 8), unit(2, 8), unit(2, 8)
    queue_t, queue_s = unit(6, 8), unit(6, 8)
    loss = domain_loss(v_t, v_s, k_t, k_s, queue_t, queue_s, 0.2)
    expected = (info_nce_multi(v_t, k_s, queue_s, 0.2)
                + info_nce_multi(v_s, k_t, queue_t, 0.2))
    assert torch.allclose(loss, expected)


def test_gradient_matches_closed_form():
    anchor = basis(0).requires_grad_()
    negatives = torch.stack([basis(1), basis(2)])
    positive = basis(3)
    tau = 0.5
    info_nce_multi(anchor, [positive], negatives, tau).backward()
    # all logits are zero, so every softmax weight is 1/3
    expected = (negatives.sum(0) + positive) / (3 * tau) - positive / tau
    assert np.allclose(anchor.grad.numpy(), expected.numpy())


def unit_rows(n, dim=8, seed=0):
    generator = torch.Generator().manual_seed(seed)
    rows = torch.randn(n, dim, generator=generator, dtype=torch.float64)
    return rows / rows.norm(dim=1, keepdim=True)


@pytest.mark.parametrize('seed', range(5))
def test_closer_negative_raises_loss(seed):
    anchor, positive = unit_rows(2, seed=seed)
    negatives = unit_rows(32, seed=seed + 100)
    before = float(info_nce_multi(anchor, [positive], negatives, 0.2))
    for j in (0, 7, 31):
        moved = negatives.clone()
        closer = moved[j] + 0.5 * anchor
        moved[j] = closer / closer.norm()
        assert float(anchor @ moved[j]) > float(anchor @ negatives[j])
        after = float(info_nce_multi(anchor, [positive], moved, 0.2))
        assert after > before


@pytest.mark.parametrize('seed', range(5))
def test_closer_positive_lowers_loss(seed):
    anchor, positive = unit_rows(2, seed=seed)
    negatives = unit_rows(32, seed=seed + 100)
    closer = positive + 0.5 * anchor
    closer = closer / closer.norm()
    before = float(info_nce_multi(anchor, [positive], negatives, 0.2))
    after = float(info_nce_multi(anchor, [closer], negatives, 0.2))
    assert after < before


def test_random_batches_are_finite_and_non_negative():
    for seed in range(100):
        rows = unit_rows(4 + 3 * 4 + 64, seed=seed)
        anchor, positives, negatives = rows[:4], rows[4:16], rows[16:]
        loss = info_nce_multi(anchor, positives.reshape(4, 3, 8), negatives,
                              0.07, reduction='none')
        assert torch.isfinite(loss).all() and (loss >= 0).all()
