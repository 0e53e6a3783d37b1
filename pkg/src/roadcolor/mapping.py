"""Self-maps of the site set, words over a coloring, and road colorings.

Composition direction is the usual one: ``compose(outer, inner)(x) ==
outer(inner(x))``.  A :class:`Word` stores its letters *outermost first*,
i.e. ``(sigma_p, ..., sigma_1)``, so the last stored letter is the one
applied first.  Use :attr:`Word.applied` to iterate in time order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InputError
from .graph import DirectedGraph, validate_outdegree

__all__ = [
    "Mapping",
    "Word",
    "RoadColoring",
    "compose",
    "identity",
    "constant",
    "apply_word",
    "constant_target",
    "decompose_colorings",
    "induced_graph",
    "count_ordered_colorings",
]


@dataclass(frozen=True, order=True)
class Mapping:
    """A total function ``{1..m} -> {1..m}``; ``image[x-1]`` is the image of ``x``."""

    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", img)
        m = len(img)
        if m < 1:
            raise InputError("a mapping needs at least one site")
        for v in img:
            if not 1 <= v <= m:
                raise InputError(f"mapping value {v} outside 1..{m}")

    @property
    def m(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x - 1]

    def __len__(self) -> int:
        return len(self.image)

    def apply(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.image[x - 1] for x in subset)

    def is_permutation(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def rank(self) -> int:
        return len(set(self.image))

    def matrix(self) -> list[list[int]]:
        """The 1-out 0/1 matrix, entry ``(y, x)`` equal to ``1`` iff ``y = sigma(x)``."""
        m = self.m
        out = [[0] * m for _ in range(m)]
        for x, y in enumerate(self.image):
            out[y - 1][x] = 1
        return out

    def __str__(self) -> str:
        return " ".join(map(str, self.image))


def identity(m: int) -> Mapping:
    return Mapping(tuple(range(1, m + 1)))


def constant(i: int, m: int) -> Mapping:
    return Mapping((i,) * m)


def compose(outer: Mapping, inner: Mapping) -> Mapping:
    if outer.m != inner.m:
        raise InputError(f"cannot compose mappings on {outer.m} and {inner.m} sites")
    img = outer.image
    return Mapping(tuple(img[y - 1] for y in inner.image))


def constant_target(sigma: Mapping) -> Optional[int]:
    first = sigma.image[0]
    return first if all(v == first for v in sigma.image) else None


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters, stored outermost first.

    ``colors`` optionally records which color index (1-based, in coloring
    order) produced each letter; it follows the same ordering as
    ``letters``.  The empty word is allowed and denotes the identity.
    """

    letters: tuple[Mapping, ...]
    colors: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.colors is not None:
            object.__setattr__(self, "colors", tuple(self.colors))
            if len(self.colors) != len(self.letters):
                raise InputError("color record does not match word length")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def applied(self) -> tuple[Mapping, ...]:
        """Letters in the order they act: ``(sigma_1, ..., sigma_p)``."""
        return self.letters[::-1]

    @property
    def applied_colors(self) -> Optional[tuple[int, ...]]:
        return None if self.colors is None else self.colors[::-1]

    def mapping(self, m: int) -> Mapping:
        out = identity(m)
        for letter in self.applied:
            out = compose(letter, out)
        return out

    def then(self, later: "Word") -> "Word":
        """Word applying ``self`` first and ``later`` afterwards."""
        colors = None
        if self.colors is not None and later.colors is not None:
            colors = later.colors + self.colors
        return Word(later.letters + self.letters, colors)


def apply_word(s: Word, subset: Iterable[int]) -> frozenset[int]:
    current = frozenset(subset)
    for letter in s.applied:
        current = letter.apply(current)
    return current


@dataclass(frozen=True)
class RoadColoring:
    """A sequence of ``d`` mappings on the same sites; repetition is allowed."""

    colors: tuple[Mapping, ...]

    def __post_init__(self):
        cols = tuple(c if isinstance(c, Mapping) else Mapping(tuple(c)) for c in self.colors)
        object.__setattr__(self, "colors", cols)
        if not cols:
            raise InputError("a road coloring needs at least one color")
        ms = {c.m for c in cols}
        if len(ms) != 1:
            raise InputError("all colors must act on the same number of sites")

    @classmethod
    def from_images(cls, *images: Sequence[int]) -> "RoadColoring":
        return cls(tuple(Mapping(tuple(img)) for img in images))

    @property
    def m(self) -> int:
        return self.colors[0].m

    @property
    def d(self) -> int:
        return len(self.colors)

    @property
    def graph(self) -> DirectedGraph:
        return induced_graph(self.colors)

    def color(self, c: int) -> Mapping:
        return self.colors[c - 1]

    def word(self, colors: Sequence[int]) -> Word:
        """Word from color indices listed outermost first."""
        return Word(tuple(self.color(c) for c in colors), tuple(colors))

    def word_applied(self, colors: Sequence[int]) -> Word:
        """Word from color indices listed in application order."""
        return self.word(tuple(colors)[::-1])

    def letter_ids(self) -> tuple[int, ...]:
        """For each color, the index of the first color with the same mapping.

        Noise values live in the semigroup, so two colors carrying the same
        mapping are the same letter.
        """
        first: dict[Mapping, int] = {}
        return tuple(first.setdefault(c, i) for i, c in enumerate(self.colors, 1))

    def distinct_colors(self) -> list[int]:
        ids = self.letter_ids()
        return [c for c in range(1, self.d + 1) if ids[c - 1] == c]

    def canonical(self) -> "RoadColoring":
        return RoadColoring(tuple(sorted(self.colors)))


def induced_graph(colors: Sequence[Mapping]) -> DirectedGraph:
    colors = list(colors)
    if not colors:
        raise InputError("need at least one mapping")
    m = colors[0].m
    if any(c.m != m for c in colors):
        raise InputError("all mappings must act on the same number of sites")
    adj = [[0] * m for _ in range(m)]
    for c in colors:
        for x, y in enumerate(c.image):
            adj[y - 1][x] += 1
    return DirectedGraph.from_matrix(adj)


def _distinct_arrangements(targets: list[int]) -> list[tuple[int, ...]]:
    return sorted(set(permutations(targets)))


def decompose_colorings(g: DirectedGraph) -> Iterator[RoadColoring]:
    """Every road coloring of ``g`` up to relabelling of the colors.

    Parallel roads are indistinguishable, so a site with ``k`` roads to the
    same target contributes one arrangement per distinct ordering of its
    target multiset.  Colorings come out in lexicographic order of their
    sorted image tuples, each with its colors sorted.
    """
    d = validate_outdegree(g)
    if d is None:
        raise InputError("graph is not of constant outdegree")
    m = g.m
    per_site = []
    for x in range(1, m + 1):
        targets = [y for y in range(1, m + 1) for _ in range(g.entry(y, x))]
        per_site.append(_distinct_arrangements(targets))
    seen = set()
    for choice in product(*per_site):
        key = tuple(sorted(tuple(choice[x][c] for x in range(m)) for c in range(d)))
        seen.add(key)
    for key in sorted(seen):
        yield RoadColoring(tuple(Mapping(img) for img in key))


def count_ordered_colorings(g: DirectedGraph) -> int:
    d = validate_outdegree(g)
    if d is None:
        raise InputError("graph is not of constant outdegree")
    total = 1
    for x in range(1, g.m + 1):
        targets = [y for y in range(1, g.m + 1) for _ in range(g.entry(y, x))]
        total *= len(_distinct_arrangements(targets))
    return total
