# -*- coding: utf-8 -*-
from warnings import warn

import numpy as np
from scipy.spatial.distance import cdist

from hico.exceptions import IllegalArgumentCombination


def class_centroids(matrix, labels):
    """Centroid and mean distance to it of every class.

    Returns:
        tuple: ``(classes, centroids, scatter)``
    """
    classes = np.unique(labels)
    centroids = np.empty((len(classes), matrix.shape[1]))
    scatter = np.empty(len(classes))
    for i, c in enumerate(classes):
        members = matrix[labels == c]
        centroids[i] = members.mean(axis=0)
        scatter[i] = np.linalg.norm(members - centroids[i], axis=1).mean()
    return classes, centroids, scatter


def davies_bouldin(table, labels=None):
    """Davies Bouldin index of the classes of an embedding table.

    ``1/k sum_i max_{j != i} (s_i + s_j) / |c_i - c_j|`` with the class
    centroids ``c_i`` and the mean Euclidean distances ``s_i`` of the
    members to their centroid. Lower is better.

    Args:
        table (EmbeddingTable): Or an ``N * D`` array if ``labels`` is
            given.
        labels (sequence):

    Returns:
        float: ``inf`` with a warning if two centroids coincide.
    """
    if labels is None:
        matrix, labels = table.matrix, table.labels
    else:
        matrix = table
    matrix = np.asarray(matrix, dtype='f8')
    labels = np.asarray(labels)
    classes, centroids, scatter = class_centroids(matrix, labels)
    if len(classes) < 2:
        raise IllegalArgumentCombination(
            'The Davies Bouldin index needs at least two classes')
    distance = cdist(centroids, centroids)
    off_diagonal = ~np.eye(len(classes), dtype=bool)
    if (distance[off_diagonal] == 0).any():
        warn('Two class centroids coincide')
        return np.inf
    np.fill_diagonal(distance, np.inf)
    ratio = (scatter[:, None] + scatter[None, :]) / distance
    return float(ratio.max(axis=1).mean())
