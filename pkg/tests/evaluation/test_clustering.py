import math

import numpy as np
import pytest

from hico.evaluation.clustering import class_centroids, davies_bouldin
from hico.evaluation.embedding_table import EmbeddingTable
from hico.exceptions import IllegalArgumentCombination


def two_classes(scale=1.):
    matrix = np.array([[0., 0.], [2., 0.], [10., 0.], [10., 2.]]) * scale
    return EmbeddingTable(matrix, [0, 0, 1, 1])


def test_hand_computed():
    assert davies_bouldin(two_classes()) == pytest.approx(2. / math.sqrt(82.))


def test_centroids():
    table = two_classes()
    classes, centroids, scatter = class_centroids(table.matrix, table.labels)
    assert classes.tolist() == [0, 1]
    assert np.allclose(centroids, [[1., 0.], [10., 1.]])
    assert np.allclose(scatter, [1., 1.])


def test_scale_invariance():
    assert davies_bouldin(two_classes(37.)) == pytest.approx(
        davies_bouldin(two_classes()))


def test_array_input():
    table = two_classes()
    assert davies_bouldin(table.matrix, table.labels) == davies_bouldin(table)


def test_three_classes():
    matrix = np.array([[0., 0.], [0., 2.], [4., 0.], [4., 2.],
                       [20., 0.], [20., 4.]])
    labels = [0, 0, 1, 1, 2, 2]
    # scatters 1, 1, 2; centroids (0,1), (4,1), (20,2)
    d01, d02, d12 = 4., math.sqrt(401.), math.sqrt(257.)
    expected = (max(2. / d01, 3. / d02) + max(2. / d01, 3. / d12)
                + max(3. / d02, 3. / d12)) / 3.
    assert davies_bouldin(matrix, labels) == pytest.approx(expected)


def test_degenerate_cases():
    with pytest.raises(IllegalArgumentCombination):
        davies_bouldin(np.ones((3, 2)), [0, 0, 0])
    with pytest.warns(UserWarning):
        assert davies_bouldin(np.array([[1., 0.], [-1., 0.], [0., 1.],
                                        [0., -1.]]),
                              [0, 0, 1, 1]) == np.inf


def test_singleton_clusters():
    assert davies_bouldin(np.array([[0., 0.], [3., 4.], [-1., 7.]]),
                          [0, 1, 2]) == 0.


def test_two_clusters_at_distance_four():
    matrix = np.array([[-1., 0.], [1., 0.], [3., 0.], [5., 0.]])
    assert abs(davies_bouldin(matrix, [0, 0, 1, 1]) - 0.5) < 1e-9


@pytest.mark.parametrize('alpha', [0.1, 10.])
def test_scale_factors(alpha):
    rng = np.random.default_rng(0)
    matrix = rng.standard_normal((30, 4)) + np.repeat(np.eye(3, 4) * 3, 10,
                                                      axis=0)
    labels = np.repeat([0, 1, 2], 10)
    assert davies_bouldin(alpha * matrix, labels) == pytest.approx(
        davies_bouldin(matrix, labels), rel=1e-9)
