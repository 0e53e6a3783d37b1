"""Synchronization analysis of road colorings by exhaustive image search.

Subsets of sites are encoded as bitmasks (bit ``x-1`` for site ``x``), and
all searches are breadth-first over the images reachable from a start
subset.  Every state keeps the shortest word reaching it and, among those,
the lexicographically smallest one written outermost letter first (the
usual ``s = (sigma_p, ..., sigma_1)`` notation).
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .errors import PreconditionError, UnsupportedError
from .graph import DirectedGraph
from .mapping import RoadColoring, Word, apply_word, decompose_colorings

__all__ = [
    "MAX_SITES",
    "max_sites",
    "SubsetKind",
    "SubsetClass",
    "SyncReport",
    "shortest_synchronizing_word",
    "min_image_rank",
    "reachable_images",
    "synchronizing_pairs",
    "is_synchronizing_subset",
    "classify_subset",
    "f_cliques",
    "partition_from_word",
    "satisfies_no_overlap",
    "pad_word",
    "find_synchronizing_coloring",
    "analyze_sync",
]

MAX_SITES = 20


def max_sites() -> int:
    """Site cap for subset searches; ``ROADCOLOR_MAX_SITES`` may only lower it."""
    raw = os.environ.get("ROADCOLOR_MAX_SITES")
    if raw:
        try:
            return max(1, min(MAX_SITES, int(raw)))
        except ValueError:
            pass
    return MAX_SITES


def _check_size(C: RoadColoring) -> None:
    cap = max_sites()
    if C.m > cap:
        raise UnsupportedError(f"{C.m} sites exceeds the subset-search cap of {cap}")


def _to_mask(subset: Iterable[int]) -> int:
    mask = 0
    for x in subset:
        mask |= 1 << (x - 1)
    return mask


def _from_mask(mask: int) -> frozenset[int]:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return frozenset(out)


class _ImageStepper:
    """Cached one-letter image maps on bitmasks."""

    def __init__(self, C: RoadColoring):
        _check_size(C)
        self.C = C
        self.images = [c.image for c in C.colors]
        self.cache: dict[tuple[int, int], int] = {}

    def step(self, color: int, mask: int) -> int:
        key = (color, mask)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        img = self.images[color]
        out = 0
        x = 0
        m = mask
        while m:
            if m & 1:
                out |= 1 << (img[x] - 1)
            m >>= 1
            x += 1
        self.cache[key] = out
        return out


def _bfs(C: RoadColoring, start: int, stepper: Optional[_ImageStepper] = None):
    """Layered BFS over images of ``start``.

    Returns the visit order and, per state, the colors of its chosen word
    outermost first.  Within a layer the word that is lexicographically
    smallest in that notation wins.
    """
    stepper = stepper or _ImageStepper(C)
    words: dict[int, tuple[int, ...]] = {start: ()}
    order = [start]
    layer = [start]
    while layer:
        found: dict[int, tuple[int, ...]] = {}
        for s in layer:
            key = words[s]
            for c in range(C.d):
                t = stepper.step(c, s)
                if t in words:
                    continue
                cand = (c + 1,) + key
                best = found.get(t)
                if best is None or cand < best:
                    found[t] = cand
        layer = sorted(found, key=found.__getitem__)
        words.update(found)
        order.extend(layer)
    return order, words


def _path(C: RoadColoring, words, target: int) -> Word:
    return C.word(words[target])


def _full(m: int) -> int:
    return (1 << m) - 1


def shortest_synchronizing_word(C: RoadColoring) -> Optional[Word]:
    """Shortest word collapsing every site to one, or ``None``."""
    order, parent = _bfs(C, _full(C.m))
    for s in order:
        if s & (s - 1) == 0:
            return _path(C, parent, s)
    return None


def min_image_rank(C: RoadColoring) -> tuple[int, Word]:
    """Minimal cardinality of an image of the full site set, with a shortest witness."""
    order, parent = _bfs(C, _full(C.m))
    best = min(bin(s).count("1") for s in order)
    for s in order:
        if bin(s).count("1") == best:
            return best, _path(C, parent, s)
    raise AssertionError("unreachable")


def reachable_images(C: RoadColoring, start: Optional[Iterable[int]] = None) -> list[frozenset[int]]:
    """All images of ``start`` (default: every site) under words, empty word included."""
    mask = _full(C.m) if start is None else _to_mask(start)
    order, _ = _bfs(C, mask)
    return [_from_mask(s) for s in order]


def synchronizing_pairs(C: RoadColoring) -> set[frozenset[int]]:
    """Unordered pairs ``{x, y}`` that some word merges.

    Backward search on the pair graph from the diagonal.
    """
    m = C.m
    preimages: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for x in range(1, m + 1):
        for y in range(x + 1, m + 1):
            for c in C.colors:
                a, b = c(x), c(y)
                key = (min(a, b), max(a, b))
                preimages.setdefault(key, []).append((x, y))
    done: set[tuple[int, int]] = set()
    queue = deque()
    for x in range(1, m + 1):
        for pair in preimages.get((x, x), []):
            if pair not in done:
                done.add(pair)
                queue.append(pair)
    while queue:
        pair = queue.popleft()
        for prev in preimages.get(pair, []):
            if prev not in done:
                done.add(prev)
                queue.append(prev)
    return {frozenset(p) for p in done}


def is_synchronizing_subset(C: RoadColoring, subset: Iterable[int]) -> bool:
    start = _to_mask(subset)
    if start == 0:
        return False
    order, _ = _bfs(C, start)
    return any(s & (s - 1) == 0 for s in order)


class SubsetKind(str, Enum):
    STABLE = "stable"
    SYNCHRONIZING_NON_STABLE = "synchronizing-but-non-stable"
    DEADLOCK = "deadlock"
    NON_SYNCHRONIZING = "non-synchronizing"


@dataclass(frozen=True)
class SubsetClass:
    synchronizing: bool
    deadlock: bool
    stable: bool

    @property
    def kind(self) -> SubsetKind:
        if self.stable:
            return SubsetKind.STABLE
        if self.synchronizing:
            return SubsetKind.SYNCHRONIZING_NON_STABLE
        if self.deadlock:
            return SubsetKind.DEADLOCK
        return SubsetKind.NON_SYNCHRONIZING


def _is_deadlock(subset: frozenset[int], sync_pairs: set[frozenset[int]]) -> bool:
    items = sorted(subset)
    return not any(
        frozenset((items[i], items[j])) in sync_pairs
        for i in range(len(items))
        for j in range(i + 1, len(items))
    )


def classify_subset(C: RoadColoring, subset: Iterable[int]) -> SubsetClass:
    """Synchronizing / deadlock / stable flags for a non-empty subset.

    Stability looks at every image of the subset (the subset itself
    included): each must reach a singleton.  The image graph is closed under
    further images, so a reverse sweep from the singleton images decides all
    of them at once.
    """
    subset = frozenset(subset)
    if not subset:
        raise PreconditionError("subset must be non-empty")
    stepper = _ImageStepper(C)
    start = _to_mask(subset)
    order, _ = _bfs(C, start, stepper)
    reverse: dict[int, list[int]] = {s: [] for s in order}
    for s in order:
        for c in range(C.d):
            reverse[stepper.step(c, s)].append(s)
    good = {s for s in order if s & (s - 1) == 0}
    queue = deque(good)
    while queue:
        t = queue.popleft()
        for s in reverse[t]:
            if s not in good:
                good.add(s)
                queue.append(s)
    synchronizing = start in good
    stable = len(good) == len(order)
    deadlock = _is_deadlock(subset, synchronizing_pairs(C))
    return SubsetClass(synchronizing=synchronizing, deadlock=deadlock, stable=stable)


def f_cliques(C: RoadColoring) -> set[frozenset[int]]:
    """All images of the full site set of minimal cardinality.

    Every such image is a deadlock; that is checked rather than assumed.
    """
    images = reachable_images(C)
    best = min(len(s) for s in images)
    pairs = synchronizing_pairs(C)
    out = set()
    for s in images:
        if len(s) == best:
            if not _is_deadlock(s, pairs):
                raise AssertionError(f"minimal image {sorted(s)} has a synchronizing pair")
            out.add(s)
    return out


def partition_from_word(
    C: RoadColoring, s: Word
) -> tuple[tuple[int, ...], tuple[frozenset[int], ...]]:
    """Anchors (the image of ``s``, increasing) and their preimage blocks."""
    m = C.m
    image = apply_word(s, range(1, m + 1))
    if not _is_deadlock(image, synchronizing_pairs(C)):
        raise PreconditionError(f"image {sorted(image)} of the word is not an F-clique")
    anchors = tuple(sorted(image))
    composed = s.mapping(m)
    blocks = tuple(frozenset(x for x in range(1, m + 1) if composed(x) == a) for a in anchors)
    return anchors, blocks


def satisfies_no_overlap(applied: tuple, r: int) -> bool:
    """Padding condition on a word given in application order.

    The word must be longer than ``r`` and have no border (a proper suffix
    equal to the prefix of the same length) of any length ``q`` with
    ``p - r <= q <= p - 1``.
    """
    p = len(applied)
    if p <= r:
        return False
    for q in range(max(p - r, 1), p):
        if applied[p - q:] == applied[:q]:
            return False
    return True


def pad_word(s: Word, C: RoadColoring, r: int) -> Word:
    """Append ``r`` copies of one color and then ``r`` of another.

    The original word still acts first, so the image of the padded word is
    again an image of an F-clique.  The two padding colors are the first two
    colors (in index order) carrying distinct mappings.
    """
    if r < 1:
        raise PreconditionError("padding length must be positive")
    distinct = C.distinct_colors()
    if len(distinct) < 2:
        raise UnsupportedError("padding needs at least two distinct colors")
    first, second = distinct[0], distinct[1]
    applied_colors = s.applied_colors
    if applied_colors is None:
        lookup = {c: i for i, c in reversed(list(enumerate(C.colors, 1)))}
        applied_colors = tuple(lookup[letter] for letter in s.applied)
    padded = C.word_applied(tuple(applied_colors) + (first,) * r + (second,) * r)
    if not satisfies_no_overlap(padded.applied, r):
        raise AssertionError("padded word violates the no-overlap condition")
    return padded


def find_synchronizing_coloring(g: DirectedGraph) -> Optional[RoadColoring]:
    """First synchronizing coloring of ``g`` in canonical order, by brute force."""
    for C in decompose_colorings(g):
        if shortest_synchronizing_word(C) is not None:
            return C
    return None


@dataclass(frozen=True)
class SyncReport:
    synchronizing: bool
    shortest_word: Optional[Word]
    min_rank: int
    witness_word: Word
    f_cliques: tuple[frozenset[int], ...]
    anchors: Optional[tuple[int, ...]]
    partition: Optional[tuple[frozenset[int], ...]]


def analyze_sync(C: RoadColoring) -> SyncReport:
    word = shortest_synchronizing_word(C)
    rank, witness = min_image_rank(C)
    cliques = tuple(sorted(f_cliques(C), key=lambda s: sorted(s)))
    anchors, partition = partition_from_word(C, witness)
    return SyncReport(
        synchronizing=word is not None,
        shortest_word=word,
        min_rank=rank,
        witness_word=witness,
        f_cliques=cliques,
        anchors=anchors,
        partition=partition,
    )
