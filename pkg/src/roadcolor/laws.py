"""Exact probability laws on mappings and on sites.

All weights are :class:`fractions.Fraction`; floating point only appears in
:func:`pf_max_deviation`, the numeric power-iteration cross-check.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping as TMapping, Optional, Sequence

import numpy as np

from .errors import InputError, PreconditionError, StructureError, UnsupportedError
from .graph import DirectedGraph, check_assumption_A, cyclic_classes, is_strongly_connected, period
from .mapping import Mapping, RoadColoring, Word, compose, induced_graph
from .sync import shortest_synchronizing_word

__all__ = [
    "ProbabilityLawSigma",
    "ProbabilityLawV",
    "StochasticMatrix",
    "ColoredLaw",
    "transition_matrix",
    "stationary_law",
    "solve_stationary",
    "convolve_sigma",
    "convolve_sigma_v",
    "law_power",
    "check_uniformity",
    "pf_max_deviation",
    "CyclicDecomposition",
    "cyclic_parts",
    "PartVerdict",
    "periodic_strongness",
]

PERIODIC_MAX_SITES = 8


def _as_fraction(w) -> Fraction:
    if isinstance(w, float):
        raise InputError("probabilities must be exact rationals, not floats")
    return Fraction(w)


@dataclass(frozen=True)
class ProbabilityLawSigma:
    """A finitely supported law on self-maps; zero weights are dropped."""

    weights: tuple[tuple[Mapping, Fraction], ...]

    def __post_init__(self):
        merged: dict[Mapping, Fraction] = defaultdict(Fraction)
        for sigma, w in self.weights:
            merged[sigma] += _as_fraction(w)
        items = tuple(sorted((s, w) for s, w in merged.items() if w != 0))
        if not items:
            raise InputError("law has empty support")
        if any(w < 0 for _, w in items):
            raise InputError("negative probability")
        if sum(w for _, w in items) != 1:
            raise InputError("probabilities do not sum to 1")
        if len({s.m for s, _ in items}) != 1:
            raise InputError("support mappings act on different site counts")
        object.__setattr__(self, "weights", items)

    @classmethod
    def from_dict(cls, d: TMapping[Mapping, Fraction]) -> "ProbabilityLawSigma":
        return cls(tuple(d.items()))

    @classmethod
    def point_mass(cls, sigma: Mapping) -> "ProbabilityLawSigma":
        return cls(((sigma, Fraction(1)),))

    @property
    def m(self) -> int:
        return self.weights[0][0].m

    @property
    def support(self) -> tuple[Mapping, ...]:
        return tuple(s for s, _ in self.weights)

    def __getitem__(self, sigma: Mapping) -> Fraction:
        for s, w in self.weights:
            if s == sigma:
                return w
        return Fraction(0)

    def items(self):
        return iter(self.weights)

    def mass(self, predicate) -> Fraction:
        return sum((w for s, w in self.weights if predicate(s)), Fraction(0))

    def induced_graph(self) -> DirectedGraph:
        return induced_graph(self.support)


@dataclass(frozen=True)
class ProbabilityLawV:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(_as_fraction(w) for w in self.weights)
        if not ws:
            raise InputError("law on sites needs at least one site")
        if any(w < 0 for w in ws):
            raise InputError("negative probability")
        if sum(ws) != 1:
            raise InputError("site probabilities do not sum to 1")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def point_mass(cls, x: int, m: int) -> "ProbabilityLawV":
        return cls(tuple(Fraction(int(y == x)) for y in range(1, m + 1)))

    @classmethod
    def uniform(cls, m: int) -> "ProbabilityLawV":
        return cls((Fraction(1, m),) * m)

    @property
    def m(self) -> int:
        return len(self.weights)

    def __getitem__(self, x: int) -> Fraction:
        return self.weights[x - 1]

    def mass(self, subset: Iterable[int]) -> Fraction:
        return sum((self.weights[x - 1] for x in subset), Fraction(0))

    def __str__(self) -> str:
        return ",".join(str(w) for w in self.weights)


@dataclass(frozen=True)
class StochasticMatrix:
    """Column-stochastic: ``entries[y-1][x-1]`` is the chance of ``x -> y``."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        m = len(rows)
        if any(len(row) != m for row in rows):
            raise InputError("stochastic matrix must be square")
        for x in range(m):
            if sum(rows[y][x] for y in range(m)) != 1:
                raise InputError(f"column {x + 1} does not sum to 1")
        object.__setattr__(self, "entries", rows)

    @property
    def m(self) -> int:
        return len(self.entries)

    def __call__(self, y: int, x: int) -> Fraction:
        return self.entries[y - 1][x - 1]

    def apply(self, lam: ProbabilityLawV) -> ProbabilityLawV:
        m = self.m
        return ProbabilityLawV(
            tuple(sum(self.entries[y][x] * lam.weights[x] for x in range(m)) for y in range(m))
        )

    def as_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])


@dataclass(frozen=True)
class ColoredLaw:
    """A road coloring together with one positive weight per color.

    The walk engine samples color indices from this; the induced law on
    mappings (colors with equal mappings merged) is :attr:`mu`.
    """

    coloring: RoadColoring
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(_as_fraction(p) for p in self.probs)
        if len(probs) != self.coloring.d:
            raise InputError("weight count mismatch")
        if any(p <= 0 for p in probs):
            raise InputError("color weights must be positive")
        if sum(probs) != 1:
            raise InputError("color weights do not sum to 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def uniform(cls, coloring: RoadColoring) -> "ColoredLaw":
        return cls(coloring, (Fraction(1, coloring.d),) * coloring.d)

    @property
    def mu(self) -> ProbabilityLawSigma:
        return ProbabilityLawSigma(tuple(zip(self.coloring.colors, self.probs)))

    @property
    def m(self) -> int:
        return self.coloring.m


def transition_matrix(mu: ProbabilityLawSigma) -> StochasticMatrix:
    m = mu.m
    B = [[Fraction(0)] * m for _ in range(m)]
    for sigma, w in mu.items():
        for x, y in enumerate(sigma.image):
            B[y - 1][x] += w
    return StochasticMatrix(tuple(tuple(row) for row in B))


def solve_stationary(B: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    """Exact solution of ``B u = u``, ``sum(u) = 1`` by Gauss-Jordan.

    The last row of ``B - I`` is redundant for a column-stochastic matrix
    (rows of ``B - I`` sum to zero), so it is replaced by the normalisation.
    """
    m = len(B)
    aug = [[Fraction(B[y][x]) - (1 if x == y else 0) for x in range(m)] + [Fraction(0)] for y in range(m)]
    aug[m - 1] = [Fraction(1)] * m + [Fraction(1)]
    for col in range(m):
        pivot = next((row for row in range(col, m) if aug[row][col] != 0), None)
        if pivot is None:
            raise StructureError("stationary equation is singular; the law is not unique")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col][col]
        aug[col] = [v / lead for v in aug[col]]
        for row in range(m):
            if row != col and aug[row][col] != 0:
                f = aug[row][col]
                aug[row] = [a - f * b for a, b in zip(aug[row], aug[col])]
    return tuple(aug[y][m] for y in range(m))


def stationary_law(mu: ProbabilityLawSigma) -> ProbabilityLawV:
    """The unique law ``lam`` with ``mu * lam == lam``.

    Requires the graph induced by the support of ``mu`` to be of constant
    outdegree, strongly connected and aperiodic.
    """
    props = check_assumption_A(mu.induced_graph())
    if not props.assumption_A:
        raise StructureError(
            "induced graph is not strongly connected and aperiodic "
            f"(strongly_connected={props.strongly_connected}, period={props.period})"
        )
    B = transition_matrix(mu)
    lam = ProbabilityLawV(solve_stationary(B.entries))
    if B.apply(lam) != lam:
        raise AssertionError("exact stationary solve failed its fixed-point check")
    return lam


def convolve_sigma(mu1: ProbabilityLawSigma, mu2: ProbabilityLawSigma) -> ProbabilityLawSigma:
    """Law of ``s1 s2`` (``s2`` acting first) with ``s1 ~ mu1``, ``s2 ~ mu2`` independent."""
    if mu1.m != mu2.m:
        raise InputError("laws act on different site counts")
    out: dict[Mapping, Fraction] = defaultdict(Fraction)
    for s1, w1 in mu1.items():
        for s2, w2 in mu2.items():
            out[compose(s1, s2)] += w1 * w2
    return ProbabilityLawSigma.from_dict(out)


def convolve_sigma_v(mu: ProbabilityLawSigma, lam: ProbabilityLawV) -> ProbabilityLawV:
    if mu.m != lam.m:
        raise InputError("law on mappings and law on sites disagree on site count")
    out = [Fraction(0)] * mu.m
    for sigma, w in mu.items():
        for x, y in enumerate(sigma.image):
            out[y - 1] += w * lam.weights[x]
    return ProbabilityLawV(tuple(out))


def law_power(mu: ProbabilityLawSigma, n: int) -> ProbabilityLawSigma:
    if n < 1:
        raise InputError("convolution power must be at least 1")
    out = mu
    for _ in range(n - 1):
        out = convolve_sigma(out, mu)
    return out


def check_uniformity(
    lam: ProbabilityLawV, partition: Sequence[Iterable[int]]
) -> tuple[bool, tuple[Fraction, ...]]:
    """Whether every block carries mass exactly ``1 / len(partition)``."""
    blocks = [frozenset(b) for b in partition]
    covered = frozenset().union(*blocks)
    if covered != frozenset(range(1, lam.m + 1)) or sum(len(b) for b in blocks) != lam.m:
        raise PreconditionError("blocks must partition the sites")
    masses = tuple(lam.mass(b) for b in blocks)
    target = Fraction(1, len(blocks))
    return all(v == target for v in masses), masses


def pf_max_deviation(mu: ProbabilityLawSigma, lam: ProbabilityLawV, n: int = 512) -> float:
    """Largest ``|B^n(y, x) - lam(y)|`` in floating point."""
    B = transition_matrix(mu).as_float()
    Bn = np.linalg.matrix_power(B, n)
    target = np.array([float(w) for w in lam.weights])
    return float(np.max(np.abs(Bn - target[:, None])))


@dataclass(frozen=True)
class CyclicDecomposition:
    d: int
    parts: tuple[tuple[int, ...], ...]
    part_laws: tuple[ProbabilityLawV, ...]
    restricted_laws: tuple[ProbabilityLawSigma, ...]
    step_law: ProbabilityLawSigma


def _restrict(sigma: Mapping, part: Sequence[int]) -> Mapping:
    index = {x: i for i, x in enumerate(part, 1)}
    try:
        return Mapping(tuple(index[sigma(x)] for x in part))
    except KeyError:
        raise AssertionError("a d-step mapping left its cyclic part") from None


def cyclic_parts(g: Optional[DirectedGraph], mu: ProbabilityLawSigma) -> CyclicDecomposition:
    """Cyclic parts of a periodic walk, their laws, and the restricted d-step laws.

    Parts are numbered from the one containing site 1, following roads
    forward.  ``g`` may be ``None``; otherwise it must have the same road
    pattern as the graph induced by ``mu``.
    """
    induced = mu.induced_graph()
    if g is not None:
        same = all(
            (g.entry(y, x) > 0) == (induced.entry(y, x) > 0)
            for y in range(1, g.m + 1)
            for x in range(1, g.m + 1)
        ) and g.m == induced.m
        if not same:
            raise InputError("graph does not match the support of the law")
    if not is_strongly_connected(induced):
        raise StructureError("induced graph is not strongly connected")
    d = period(induced)
    if d < 2:
        raise PreconditionError("graph is aperiodic; use stationary_law instead")
    if mu.m > PERIODIC_MAX_SITES:
        raise UnsupportedError(f"periodic decomposition is limited to {PERIODIC_MAX_SITES} sites")
    parts = tuple(tuple(p) for p in cyclic_classes(induced))
    B = transition_matrix(mu)
    for i, part in enumerate(parts):
        nxt = set(parts[(i + 1) % d])
        for x in part:
            if sum(B(y, x) for y in nxt) != 1:
                raise AssertionError("transition mass escaped the next cyclic part")
    step = law_power(mu, d)
    part_laws = []
    restricted = []
    m = mu.m
    for part in parts:
        local = ProbabilityLawSigma(tuple((_restrict(s, part), w) for s, w in step.items()))
        restricted.append(local)
        u = solve_stationary(transition_matrix(local).entries)
        full = [Fraction(0)] * m
        for x, w in zip(part, u):
            full[x - 1] = w
        part_laws.append(ProbabilityLawV(tuple(full)))
    return CyclicDecomposition(
        d=d,
        parts=parts,
        part_laws=tuple(part_laws),
        restricted_laws=tuple(restricted),
        step_law=step,
    )


@dataclass(frozen=True)
class PartVerdict:
    part: tuple[int, ...]
    word: Optional[Word]

    @property
    def strong(self) -> bool:
        return self.word is not None


def periodic_strongness(mu: ProbabilityLawSigma, g: Optional[DirectedGraph] = None) -> list[PartVerdict]:
    """Per cyclic part: is the support of the restricted d-step law synchronizing?

    A walk living on that part is strong exactly when it is.  The word, if
    any, is over the restricted mappings and uses local site labels
    ``1..len(part)`` (sites of the part in increasing order).
    """
    dec = cyclic_parts(g, mu)
    out = []
    for part, local in zip(dec.parts, dec.restricted_laws):
        word = shortest_synchronizing_word(RoadColoring(local.support))
        out.append(PartVerdict(part=part, word=word))
    return out
