# -*- coding: utf-8 -*-
import numpy as np
from numba import jit

from hico import constants
from hico.exceptions import (ERR_CODE_InvalidTopology, ERR_CODE_OK,
                             InvalidTopology)


@jit(nopython=True, cache=True)
def _jit_parents(edges, n_joints):
    parents = np.full(n_joints, -1, dtype=np.int64)
    if edges.shape[0] != n_joints - 1:
        return (ERR_CODE_InvalidTopology, -1, parents)
    for e in range(edges.shape[0]):
        p, c = edges[e, 0], edges[e, 1]
        if p < 0 or p >= n_joints or c < 0 or c >= n_joints or p == c:
            return (ERR_CODE_InvalidTopology, c, parents)
        if parents[c] != -1:
            return (ERR_CODE_InvalidTopology, c, parents)
        parents[c] = p
    for j in range(n_joints):
        k = j
        steps = 0
        while parents[k] != -1:
            k = parents[k]
            steps += 1
            if steps > n_joints:
                return (ERR_CODE_InvalidTopology, j, parents)
    return (ERR_CODE_OK, -1, parents)


class SkeletonTopology(object):
    """Kinematic tree of a skeleton.

    Args:
        edges (sequence): ``(parent, child)`` pairs of joint indices.
            They have to form a tree over ``n_joints`` joints.
        n_joints (int): Number of joints. Defaults to ``len(edges) + 1``.
        joint_order (sequence): Permutation of ``0..J-1`` that puts
            anatomically nearby joints next to each other. This order
            defines which rows the spatial branch merges.
            Defaults to a depth-first traversal of the tree.
    """
    def __init__(self, edges, n_joints=None, joint_order=None):
        edges = np.array(edges, dtype='i8').reshape(-1, 2)
        if n_joints is None:
            n_joints = len(edges) + 1
        err, joint, parents = _jit_parents(edges, n_joints)
        if err == ERR_CODE_InvalidTopology:
            if joint == -1:
                message = ('{} joints need exactly {} edges, got {}'.format(
                    n_joints, n_joints - 1, len(edges)))
            else:
                message = 'Joint {} breaks the tree'.format(joint)
            raise InvalidTopology(message, joint=None if joint == -1
                                  else int(joint))
        self.edges = [tuple(int(x) for x in e) for e in edges]
        self.n_joints = int(n_joints)
        self.parents = parents
        if joint_order is None:
            joint_order = self._depth_first_order()
        joint_order = np.array(joint_order, dtype='i8')
        if not np.array_equal(np.sort(joint_order), np.arange(n_joints)):
            raise InvalidTopology('joint_order is not a permutation of '
                                  '0..{}'.format(n_joints - 1))
        self.joint_order = joint_order

    @property
    def root(self):
        return int(np.flatnonzero(self.parents == -1)[0])

    def children(self, joint):
        return [c for p, c in self.edges if p == joint]

    def _depth_first_order(self):
        order, stack = [], [self.root]
        while stack:
            joint = stack.pop()
            order.append(joint)
            stack.extend(reversed(self.children(joint)))
        return order

    @classmethod
    def default(cls):
        """The 25 joint layout of depth-camera datasets."""
        return cls(constants.default_edges, n_joints=25)

    @classmethod
    def chain(cls, n_joints):
        """A chain ``0 - 1 - ... - (n_joints - 1)``."""
        return cls([(j, j + 1) for j in range(n_joints - 1)],
                   n_joints=n_joints)

    @classmethod
    def for_joints(cls, n_joints):
        """The default layout for 25 joints and a chain otherwise."""
        if n_joints == 25:
            return cls.default()
        return cls.chain(n_joints)

    def __repr__(self):
        return 'SkeletonTopology(n_joints={}, root={})'.format(
            self.n_joints, self.root)
