"""Generators for the three structure families used in the simulations.

Mechanisms:

* linear       -- left-branching chain [[[s0,s1],s2],s3]...: each new word
                  attaches to everything accumulated so far.
* binary       -- balanced binary merge, built bottom-up by pairing
                  adjacent siblings left to right; an odd trailing node
                  is carried unpaired into the next pass.
* multi        -- loose random merge: each pass partitions the sibling
                  list left to right into consecutive groups whose sizes
                  are uniform on [min_children, max_children]; groups of
                  two or more become a parent, and a singleton group is
                  wrapped in a unary parent on a fair coin flip.  A pass
                  whose groups are all singletons is redrawn, which
                  guarantees termination.

The multi mechanism consumes its SplitMix64 stream in a pinned order
(all group sizes of a pass first, then one coin per singleton group,
left to right; rejected passes consume their size draws).  The compiled
kernel replays exactly the same draws, so tree-based and kernel-based
routes agree bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, EmptyInput
from .rng import GenSeed, SplitMix64
from .trees import SyntaxTree, wrap_root

LINEAR_ID = 0
BINARY_ID = 1
MULTI_ID = 2


@dataclass(frozen=True)
class Mechanism:
    """One structure-building mechanism, hashable and order-stable."""

    kind: str  # "linear" | "binary" | "multi"
    min_children: int = 0
    max_children: int = 0

    def __post_init__(self):
        if self.kind not in ("linear", "binary", "multi"):
            raise ConfigError(f"unknown mechanism kind {self.kind!r}")
        if self.kind == "multi":
            if not 1 <= self.min_children <= self.max_children:
                raise ConfigError(
                    f"need 1 <= min_children <= max_children, got "
                    f"({self.min_children}, {self.max_children})")
            if self.max_children < 2:
                raise ConfigError("multi merge needs max_children >= 2 to terminate")

    @property
    def name(self) -> str:
        if self.kind == "multi":
            return f"multi_{self.min_children}_{self.max_children}"
        return self.kind

    @property
    def mechanism_id(self) -> int:
        return {"linear": LINEAR_ID, "binary": BINARY_ID, "multi": MULTI_ID}[self.kind]

    @property
    def deterministic(self) -> bool:
        return self.kind != "multi"


LINEAR = Mechanism("linear")
BINARY = Mechanism("binary")


def multi_node(min_children: int = 1, max_children: int = 4) -> Mechanism:
    return Mechanism("multi", min_children, max_children)


def _symbols(n: int) -> list[str]:
    return [f"s{i}" for i in range(n)]


def gen_left_branching(n: int) -> SyntaxTree:
    """Chain each word onto the accumulated prefix."""
    if n < 1:
        raise EmptyInput("need at least one word")
    syms = _symbols(n)
    if n == 1:
        return wrap_root(syms)
    node = syms[0]
    for sym in syms[1:]:
        node = (node, sym)
    return SyntaxTree(node)


def gen_balanced_binary(n: int) -> SyntaxTree:
    """Pair adjacent siblings bottom-up until one node remains."""
    if n < 1:
        raise EmptyInput("need at least one word")
    if n == 1:
        return wrap_root(_symbols(1))
    nodes: list = _symbols(n)
    while len(nodes) > 1:
        paired = [tuple(nodes[i:i + 2]) for i in range(0, len(nodes) - 1, 2)]
        if len(nodes) % 2:
            paired.append(nodes[-1])
        nodes = paired
    return SyntaxTree(nodes[0])


def gen_multi_node(n: int, seed, min_children: int = 1,
                   max_children: int = 4) -> SyntaxTree:
    """Random bottom-up grouping, fully determined by the seed.

    seed may be an int, a GenSeed (token index 0), or a SplitMix64
    stream positioned at the start of this tree's draws.
    """
    mech = multi_node(min_children, max_children)
    if n < 1:
        raise EmptyInput("need at least one word")
    if isinstance(seed, SplitMix64):
        rng = seed
    elif isinstance(seed, GenSeed):
        rng = seed.stream(MULTI_ID, n, 0)
    else:
        rng = GenSeed(int(seed)).stream(MULTI_ID, n, 0)
    if n == 1:
        return wrap_root(_symbols(1))

    lo, hi = mech.min_children, mech.max_children
    nodes: list = _symbols(n)
    while len(nodes) > 1:
        while True:
            sizes = []
            remaining = len(nodes)
            while remaining > 0:
                size = min(rng.randint(lo, hi), remaining)
                sizes.append(size)
                remaining -= size
            if any(s >= 2 for s in sizes):
                break
        merged: list = []
        pos = 0
        for size in sizes:
            group = nodes[pos:pos + size]
            pos += size
            if size >= 2:
                merged.append(tuple(group))
            elif rng.coin():
                merged.append(tuple(group))  # unary parent
            else:
                merged.append(group[0])
        nodes = merged
    return SyntaxTree(nodes[0])


def generate(mechanism: Mechanism, n: int, seed=0) -> SyntaxTree:
    if mechanism.kind == "linear":
        return gen_left_branching(n)
    if mechanism.kind == "binary":
        return gen_balanced_binary(n)
    return gen_multi_node(n, seed, mechanism.min_children, mechanism.max_children)


def closed_form_theta(mechanism: Mechanism, n: int) -> float | None:
    """Analytic mean load where one exists; None otherwise.

    linear: 1 for n=1, else (n+4)(n-1)/(2n).
    binary: 3d/2 when n = 2**d, d >= 1 (the n=1 tree is a wrapped leaf
    with load 1, which the formula does not cover).
    """
    if n < 1:
        raise EmptyInput("need at least one word")
    if mechanism.kind == "linear":
        if n == 1:
            return 1.0
        return (n + 4) * (n - 1) / (2 * n)
    if mechanism.kind == "binary":
        if n >= 2 and n & (n - 1) == 0:
            return 1.5 * n.bit_length() - 1.5  # 3d/2 with d = log2(n)
        return None
    return None


def closed_form_entropy(mechanism: Mechanism, n: int) -> float | None:
    """Analytic entropy (bits) where one exists; None otherwise.

    linear: 0 for n=1, 1 for n=2, else log2(n) - 2/n (the count n-1
    occurs twice, every other value once).
    """
    if n < 1:
        raise EmptyInput("need at least one word")
    if mechanism.kind == "linear":
        if n == 1:
            return 0.0
        if n == 2:
            return 1.0
        return math.log2(n) - 2 / n
    return None
