"""Pure-Python twin of the compiled merge-simulation kernel.

Computes the open-node profile of one random multi-node merge tree
directly over leaf spans, never materializing the tree: whenever a span
becomes child j of a new parent, every leaf inside it gains 1 + j.

Draw order (must match _kernels.pyx and generate.gen_multi_node):
per pass, all group sizes first (redrawn wholesale while no group has
two members), then one wrap coin per singleton group, left to right.
"""
from __future__ import annotations

import math

from .rng import SplitMix64

BACKEND = "python"


def multi_profile(n: int, stream_seed: int, min_children: int,
                  max_children: int) -> list[int]:
    """Open-node counts for one tree drawn from the given stream."""
    if n == 1:
        return [1]
    rng = SplitMix64(stream_seed)
    u = [0] * n
    starts = list(range(n))
    ends = list(range(1, n + 1))
    count = n
    while count > 1:
        while True:
            sizes = []
            remaining = count
            has_merge = False
            while remaining > 0:
                size = rng.randint(min_children, max_children)
                if size > remaining:
                    size = remaining
                sizes.append(size)
                remaining -= size
                if size >= 2:
                    has_merge = True
            if has_merge:
                break
        k = 0
        pos = 0
        for size in sizes:
            if size >= 2:
                for j in range(size):
                    node = pos + j
                    for leaf in range(starts[node], ends[node]):
                        u[leaf] += 1 + j
                starts[k] = starts[pos]
                ends[k] = ends[pos + size - 1]
            else:
                if rng.coin():
                    for leaf in range(starts[pos], ends[pos]):
                        u[leaf] += 1
                starts[k] = starts[pos]
                ends[k] = ends[pos]
            pos += size
            k += 1
        count = k
    return u


def multi_theta_entropy(n: int, stream_seed: int, min_children: int,
                        max_children: int) -> tuple[float, float]:
    """Mean count and count-distribution entropy (bits) for one tree."""
    u = multi_profile(n, stream_seed, min_children, max_children)
    theta = sum(u) / n
    freqs: dict[int, int] = {}
    for value in u:
        freqs[value] = freqs.get(value, 0) + 1
    h = 0.0
    for value in sorted(freqs):
        p = freqs[value] / n
        h -= p * math.log2(p)
    return theta, h
