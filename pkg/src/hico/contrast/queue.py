# -*- coding: utf-8 -*-
import torch
from torch import nn

from hico.exceptions import ShapeMismatch


class ContrastQueue(nn.Module):
    """First in first out dictionary of unit length key features.

    The entries live in a ring buffer, which is a module buffer so that
    it is part of the ``state_dict``.

    Args:
        capacity (int):
        dim (int):
    """
    def __init__(self, capacity, dim=128):
        super(ContrastQueue, self).__init__()
        if capacity < 1:
            raise ShapeMismatch('capacity has to be positive')
        self.capacity = capacity
        self.dim = dim
        self.register_buffer('entries', torch.zeros(capacity, dim))
        self.register_buffer('ptr', torch.zeros(1, dtype=torch.long))
        self.register_buffer('size', torch.zeros(1, dtype=torch.long))

    def __len__(self):
        return int(self.size)

    @torch.no_grad()
    def fill_random_(self, generator):
        """Fill the queue with random unit vectors."""
        noise = torch.randn(self.capacity, self.dim, generator=generator,
                            dtype=torch.float64)
        noise = noise / torch.linalg.vector_norm(noise, dim=1, keepdim=True)
        self.entries.copy_(noise.to(self.entries.dtype))
        self.ptr.zero_()
        self.size.fill_(self.capacity)

    @torch.no_grad()
    def enqueue(self, batch):
        """Append ``batch`` in order and evict the oldest entries.

        Args:
            batch (torch.Tensor): ``(n, dim)`` with ``n <= capacity``.
        """
        batch = batch.detach()
        n = batch.shape[0]
        if batch.dim() != 2 or batch.shape[1] != self.dim:
            raise ShapeMismatch('Expected a batch of shape (n, {})'.format(
                self.dim))
        if n > self.capacity:
            raise ShapeMismatch(
                'Batch of {} does not fit into a queue of {}'.format(
                    n, self.capacity))
        ptr = int(self.ptr)
        index = (ptr + torch.arange(n)) % self.capacity
        self.entries[index] = batch.to(self.entries.dtype)
        self.ptr.fill_((ptr + n) % self.capacity)
        self.size.fill_(min(int(self.size) + n, self.capacity))

    def negatives(self):
        """A copy of the stored entries, in storage order."""
        return self.entries[:len(self)].clone()

    def contents(self):
        """The stored entries, oldest first."""
        if len(self) < self.capacity:
            return self.entries[:len(self)].clone()
        ptr = int(self.ptr)
        return torch.cat([self.entries[ptr:], self.entries[:ptr]])

    def extra_repr(self):
        return 'capacity={}, dim={}, size={}'.format(
            self.capacity, self.dim, len(self))
