"""Seeded simulation of random walks driven by random colors.

Time runs forward over a finite window ``0..K``: ``X_0`` is drawn from the
exact stationary law, and ``X_k = N_k(X_{k-1})`` for ``k = 1..K`` with IID
colors ``N_k``.  Stationarity makes such a window distributed exactly like
the corresponding stretch of a two-sided stationary walk.

Randomness comes from numpy's counter-based Philox generator keyed by
``SeedSequence(seed, spawn_key=...)``.  Trials are processed in fixed
blocks of :data:`BLOCK` consecutive trial indices, each block with its own
stream, so results depend only on ``(seed, trials)``.  Colors and sites are
drawn by exact inversion of integer cumulative weights.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

import numpy as np
from numba import njit
from scipy import stats

from .errors import InputError, InsufficientDataError, PreconditionError
from .graph import DirectedGraph, is_strongly_connected, period
from .laws import ColoredLaw, ProbabilityLawV, stationary_law
from .mapping import Mapping, RoadColoring, Word, compose, constant_target, identity
from .sync import min_image_rank, partition_from_word, satisfies_no_overlap

__all__ = [
    "BLOCK",
    "WalkTrace",
    "InducedTrace",
    "EmpiricalLaw",
    "ConvergenceTable",
    "NonStrongReport",
    "make_rng",
    "simulate_walk",
    "export_trace",
    "read_trace",
    "reconstruct_strong",
    "reconstruct_all",
    "pattern_occurrences",
    "induced_permutation",
    "induced_process",
    "estimate_mu_hat",
    "mu_hat_convergence",
    "nonstrong_evidence",
]

BLOCK = 8192
SIGNIFICANCE = 1e-3

_STREAM_WALK = 0
_STREAM_MU_HAT = 1
_STREAM_EVIDENCE = 2


def make_rng(seed: int, *key: int) -> np.random.Generator:
    if not 0 <= seed < 2**64:
        raise InputError("seed must be an unsigned 64-bit integer")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


class _Sampler:
    """Exact inversion sampling from rational weights (0-based outcomes)."""

    def __init__(self, weights: Sequence[Fraction]):
        weights = [Fraction(w) for w in weights]
        self.denominator = lcm(*(w.denominator for w in weights))
        cum = []
        acc = 0
        for w in weights:
            acc += w.numerator * (self.denominator // w.denominator)
            cum.append(acc)
        assert acc == self.denominator
        self.big = self.denominator >= 2**62
        self.cum = cum if self.big else np.array(cum, dtype=np.int64)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if not self.big:
            u = rng.integers(0, self.denominator, size=size, dtype=np.int64)
            return np.searchsorted(self.cum, u, side="right")
        import bisect

        nbytes = (self.denominator.bit_length() + 7) // 8
        limit = (256**nbytes // self.denominator) * self.denominator
        out = np.empty(size, dtype=np.int64)
        for i in range(size):
            while True:
                u = int.from_bytes(rng.bytes(nbytes), "little")
                if u < limit:
                    break
            out[i] = bisect.bisect_right(self.cum, u % self.denominator)
        return out


def _kmp_table(pattern: Sequence[int], alphabet: int) -> np.ndarray:
    """Transition table of the string-matching automaton; state ``len`` = match."""
    L = len(pattern)
    delta = np.zeros((L + 1, alphabet), dtype=np.int64)
    delta[0, pattern[0]] = 1
    fallback = 0
    for j in range(1, L + 1):
        delta[j] = delta[fallback]
        if j < L:
            delta[j, pattern[j]] = j + 1
            fallback = delta[fallback, pattern[j]]
    return delta


def _word_symbols(C: RoadColoring, s: Word) -> list[int]:
    """Letter ids (0-based) of ``s`` in application order."""
    ids = C.letter_ids()
    lookup = {C.color(c): ids[c - 1] - 1 for c in range(1, C.d + 1)}
    try:
        return [lookup[letter] for letter in s.applied]
    except KeyError:
        raise InputError("word uses a mapping that is not a color of the coloring") from None


def _noise_symbols(C: RoadColoring, noise: Sequence[int]) -> list[int]:
    ids = C.letter_ids()
    return [ids[c - 1] - 1 for c in noise]


@dataclass(frozen=True)
class WalkTrace:
    """``noise[k-1]`` is the color index ``N_k``; ``states[k]`` is ``X_k``."""

    coloring: RoadColoring
    noise: tuple[int, ...]
    states: tuple[int, ...]
    seed: int
    law: ProbabilityLawV

    @property
    def window(self) -> tuple[int, int]:
        return 0, len(self.noise)

    def check(self) -> None:
        C = self.coloring
        for k, c in enumerate(self.noise, 1):
            if C.color(c)(self.states[k - 1]) != self.states[k]:
                raise AssertionError(f"trace breaks X_k = N_k(X_k-1) at k={k}")

    def frequencies(self) -> list[float]:
        counts = Counter(self.states[1:])
        n = len(self.states) - 1
        return [counts.get(x, 0) / n for x in range(1, self.coloring.m + 1)]


def simulate_walk(cl: ColoredLaw, steps: int, seed: int) -> WalkTrace:
    if steps < 1:
        raise InputError("steps must be at least 1")
    lam = stationary_law(cl.mu)
    rng = make_rng(seed, _STREAM_WALK)
    x0 = int(_Sampler(lam.weights).sample(rng, 1)[0]) + 1
    colors = _Sampler(cl.probs).sample(rng, steps) + 1
    images = [c.image for c in cl.coloring.colors]
    states = [x0]
    x = x0
    for c in colors.tolist():
        x = images[c - 1][x - 1]
        states.append(x)
    trace = WalkTrace(
        coloring=cl.coloring,
        noise=tuple(colors.tolist()),
        states=tuple(states),
        seed=seed,
        law=lam,
    )
    return trace


def export_trace(trace: WalkTrace) -> str:
    """Tab-separated ``k color site`` rows under a ``# seed=... law=...`` header.

    Row ``k = 0`` carries color ``0`` (no color acts at the window start).
    """
    lines = [f"# seed={trace.seed} law={trace.law}"]
    lines.append(f"0\t0\t{trace.states[0]}")
    for k, (c, x) in enumerate(zip(trace.noise, trace.states[1:]), 1):
        lines.append(f"{k}\t{c}\t{x}")
    return "\n".join(lines) + "\n"


def read_trace(text: str) -> tuple[int, tuple[Fraction, ...], tuple[int, ...], tuple[int, ...]]:
    """Inverse of :func:`export_trace`: ``(seed, law, noise, states)``."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise InputError("missing trace header", 1)
    fields = dict(part.split("=", 1) for part in lines[0][2:].split())
    seed = int(fields["seed"])
    law = tuple(Fraction(v) for v in fields["law"].split(","))
    noise, states = [], []
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip() or line.startswith("#"):
            continue
        k, c, x = (int(v) for v in line.split("\t"))
        if k != len(states):
            raise InputError(f"expected step {len(states)}, got {k}", lineno)
        if k > 0:
            noise.append(c)
        states.append(x)
    return seed, law, tuple(noise), tuple(states)


def _constant_word_target(C: RoadColoring, s: Word) -> int:
    target = constant_target(s.mapping(C.m))
    if target is None:
        raise PreconditionError("word does not collapse the sites to one")
    return target


def reconstruct_strong(noise: Sequence[int], C: RoadColoring, s: Word, k: int) -> Optional[int]:
    """``X_k`` recovered from colors alone, or ``None``.

    Looks for the latest occurrence of ``s`` (in application order) that ends
    at or before time ``k`` and pushes its constant target forward through
    the colors after it.  Occurrences must lie inside the window ``1..k``.
    """
    target = _constant_word_target(C, s)
    if not 0 <= k <= len(noise):
        raise InputError(f"time {k} outside the window 0..{len(noise)}")
    pattern = _word_symbols(C, s)
    symbols = _noise_symbols(C, noise[:k])
    p = len(pattern)
    for l in range(k - p, -1, -1):
        if symbols[l:l + p] == pattern:
            x = target
            for c in noise[l + p:k]:
                x = C.color(c)(x)
            return x
    return None


def reconstruct_all(noise: Sequence[int], C: RoadColoring, s: Word) -> list[Optional[int]]:
    """:func:`reconstruct_strong` for every ``k = 0..len(noise)`` in one pass."""
    target = _constant_word_target(C, s)
    pattern = _word_symbols(C, s)
    out: list[Optional[int]] = [None] * (len(noise) + 1)
    if not pattern:
        return [target] * (len(noise) + 1)
    delta = _kmp_table(pattern, C.d).tolist()
    ids = C.letter_ids()
    images = [c.image for c in C.colors]
    full = len(pattern)
    state = 0
    x = None
    for k, c in enumerate(noise, 1):
        if x is not None:
            x = images[c - 1][x - 1]
        state = delta[state][ids[c - 1] - 1]
        if state == full:
            x = target
        out[k] = x
    return out


def pattern_occurrences(noise: Sequence[int], C: RoadColoring, s: Word) -> list[int]:
    """Greedy non-overlapping occurrence times of ``s``, newest first.

    The search is anchored at the window end: the newest time ``T`` is the
    largest ``l`` with ``N_{l+1}, ..., N_{l+p}`` spelling ``s`` in
    application order and ``l + p <= K``; each older one must end at or
    before the start of the next.  Matches running past either window edge
    are ignored.
    """
    pattern = _word_symbols(C, s)
    if not pattern:
        raise PreconditionError("cannot search for the empty word")
    p = len(pattern)
    delta = _kmp_table(pattern[::-1], C.d).tolist()
    symbols = _noise_symbols(C, noise)
    out = []
    state = 0
    for j in range(len(symbols), 0, -1):
        state = delta[state][symbols[j - 1]]
        if state == p:
            out.append(j - 1)
            state = 0
    return out


def induced_permutation(
    sigma: Mapping, anchors: Sequence[int], partition: Sequence[frozenset[int]]
) -> tuple[int, ...]:
    """``pi`` with ``pi(i) = j`` iff ``sigma(anchors[i])`` lies in block ``j`` (1-based)."""
    block_of = {}
    for j, block in enumerate(partition, 1):
        for x in block:
            block_of[x] = j
    try:
        perm = tuple(block_of[sigma(a)] for a in anchors)
    except KeyError:
        raise RuntimeError("anchor image not covered by the partition") from None
    if sorted(perm) != list(range(1, len(anchors) + 1)):
        raise AssertionError(f"induced map {perm} is not a permutation")
    return perm


@dataclass(frozen=True)
class InducedTrace:
    """Observations at occurrence times, newest first.

    ``hat_states[i]`` is the block index of ``X`` at ``occurrence_times[i]``;
    ``hat_noise[i]`` is the permutation carrying ``hat_states[i + 1]`` to
    ``hat_states[i]``.
    """

    occurrence_times: tuple[int, ...]
    hat_states: tuple[int, ...]
    hat_noise: tuple[tuple[int, ...], ...]
    anchors: tuple[int, ...]
    partition: tuple[frozenset[int], ...]


def induced_process(trace: WalkTrace, C: RoadColoring, padded: Word, r: Optional[int] = None) -> InducedTrace:
    """Observe ``trace`` at the occurrence times of ``padded``.

    Between consecutive occurrences the colors of the gap are composed and
    pushed through :func:`induced_permutation`.  An empty gap composes to
    the identity mapping, whose induced permutation is the identity whenever
    the padded word fixes its own image pointwise.
    """
    if r is not None and not satisfies_no_overlap(padded.applied, r):
        raise PreconditionError("word does not satisfy the no-overlap padding condition")
    anchors, partition = partition_from_word(C, padded)
    times = pattern_occurrences(trace.noise, C, padded)
    if len(times) < 2:
        raise InsufficientDataError(f"found {len(times)} occurrence(s); need at least 2")
    p = len(padded)
    m = C.m
    block_of = {x: j for j, b in enumerate(partition, 1) for x in b}
    hat_states = tuple(block_of[trace.states[t]] for t in times)
    hat_noise = []
    for newer, older in zip(times, times[1:]):
        gap = identity(m)
        for c in trace.noise[older + p:newer]:
            gap = compose(C.color(c), gap)
        hat_noise.append(induced_permutation(gap, anchors, partition))
    for i, perm in enumerate(hat_noise):
        if perm[hat_states[i + 1] - 1] != hat_states[i]:
            raise AssertionError(f"induced walk update fails at occurrence {times[i]}")
    return InducedTrace(
        occurrence_times=tuple(times),
        hat_states=hat_states,
        hat_noise=tuple(hat_noise),
        anchors=anchors,
        partition=partition,
    )


@dataclass(frozen=True)
class EmpiricalLaw:
    counts: tuple[tuple[object, int], ...]
    total: int
    space: str

    @classmethod
    def from_counter(cls, counter: Counter, space: str) -> "EmpiricalLaw":
        items = tuple(sorted(counter.items()))
        return cls(items, sum(counter.values()), space)

    def __post_init__(self):
        if sum(c for _, c in self.counts) != self.total:
            raise AssertionError("counts do not sum to the total")

    def as_dict(self) -> dict:
        return dict(self.counts)

    def frequency(self, outcome) -> float:
        return self.as_dict().get(outcome, 0) / self.total if self.total else 0.0

    def tv_distance(self, other: "EmpiricalLaw") -> float:
        a, b = self.as_dict(), other.as_dict()
        keys = set(a) | set(b)
        return 0.5 * sum(abs(a.get(k, 0) / self.total - b.get(k, 0) / other.total) for k in keys)

    def exact(self) -> dict:
        return {k: Fraction(c, self.total) for k, c in self.counts if c}


@njit(cache=True)
def _scan_kernel(colors, symbol, delta, images, P, segments, max_len, t, n, gaps, first, ok):
    """Scan trials ``t, t+1, ...`` through ``colors``.

    Stops early when a trial runs off the end of the buffer and returns the
    trial index together with the buffer position it started at, so the
    caller can extend the buffer and resume with identical draws.
    """
    m = images.shape[1]
    record = first.shape[1]
    L = colors.shape[0]
    ring = np.empty(P, np.int64)
    G = np.empty(m, np.int64)
    tmp = np.empty(m, np.int64)
    pos = 0
    while t < n:
        p = pos
        state = 0
        count = 0
        seg = 0
        drawn = 0
        for x in range(m):
            G[x] = x
        finished = False
        while True:
            if drawn >= max_len:
                break
            if p >= L:
                return t, pos
            c = colors[p]
            p += 1
            if drawn < record:
                first[t, drawn] = c
            drawn += 1
            slot = count % P
            if count >= P:
                row = images[ring[slot]]
                for x in range(m):
                    tmp[x] = G[row[x]]
                for x in range(m):
                    G[x] = tmp[x]
            ring[slot] = c
            count += 1
            state = delta[state, symbol[c]]
            if state == P:
                for x in range(m):
                    gaps[t, seg, x] = G[x]
                seg += 1
                if seg == segments:
                    finished = True
                    break
                state = 0
                count = 0
                for x in range(m):
                    G[x] = x
        ok[t] = finished
        pos = p
        t += 1
    return t, pos


class _Scanner:
    """Backward scan for consecutive occurrences of a pattern.

    Each trial reads colors ``N_k, N_{k-1}, ...`` going back in time from a
    fresh start.  Segment ``j`` of a trial is the run of colors strictly
    between the ``j``-th found occurrence and the one before it (for
    ``j = 0``: between the start and the first occurrence); the scanner
    returns the composed mapping of each segment.  Matching restarts after
    every occurrence, which is exactly the greedy non-overlap rule.

    Trials of one call read a single color stream one after another.
    """

    CHUNK = 1 << 20

    def __init__(self, cl: ColoredLaw, padded: Word):
        C = cl.coloring
        self.m = C.m
        self.sampler = _Sampler(cl.probs)
        ids = C.letter_ids()
        self.symbol = np.array([ids[c] - 1 for c in range(C.d)], dtype=np.int64)
        pattern = _word_symbols(C, padded)
        self.P = len(pattern)
        self.delta = _kmp_table(pattern[::-1], C.d)
        self.images = np.array([[y - 1 for y in c.image] for c in C.colors], dtype=np.int64)

    def run(self, rng, n: int, segments: int, max_len: int, record: int = 0):
        gaps = np.zeros((n, segments, self.m), dtype=np.int64)
        first = np.zeros((n, record), dtype=np.int64)
        ok = np.zeros(n, dtype=bool)
        buf = self.sampler.sample(rng, self.CHUNK)
        t = 0
        while True:
            t, pos = _scan_kernel(
                buf, self.symbol, self.delta, self.images, self.P, segments, max_len, t, n, gaps, first, ok
            )
            if t == n:
                return gaps, first, ok
            buf = np.concatenate([buf[pos:], self.sampler.sample(rng, self.CHUNK)])


def _check_padded(C: RoadColoring, padded: Word):
    rank, _ = min_image_rank(C)
    anchors, partition = partition_from_word(C, padded)
    return rank, anchors, partition


def _blocks(trials: int):
    start = 0
    index = 0
    while start < trials:
        n = min(BLOCK, trials - start)
        yield index, n
        start += n
        index += 1


def estimate_mu_hat(
    cl: ColoredLaw, padded: Word, trials: int, seed: int, window: int = 10**6
) -> EmpiricalLaw:
    """Monte Carlo law of the induced permutation of one inter-occurrence gap.

    Trials whose gap does not close within ``window`` colors are dropped;
    the returned total counts only completed trials.
    """
    C = cl.coloring
    _, anchors, partition = _check_padded(C, padded)
    scanner = _Scanner(cl, padded)
    block_of = np.zeros(C.m, dtype=np.int64)
    for j, b in enumerate(partition):
        for x in b:
            block_of[x - 1] = j
    anchor_idx = np.array([a - 1 for a in anchors], dtype=np.int64)
    counter: Counter = Counter()
    for index, n in _blocks(trials):
        rng = make_rng(seed, _STREAM_MU_HAT, index)
        gaps, _, ok = scanner.run(rng, n, segments=1, max_len=window)
        perms = block_of[gaps[ok, 0][:, anchor_idx]] + 1
        for row in map(tuple, perms.tolist()):
            if sorted(row) != list(range(1, len(anchors) + 1)):
                raise AssertionError(f"gap induced non-bijection {row}")
            counter[row] += 1
    return EmpiricalLaw.from_counter(counter, "permutations")


def _compose_perm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[x - 1] for x in b)


def _convolve_perm_laws(a: dict, b: dict) -> dict:
    out: dict = {}
    for pa, wa in a.items():
        for pb, wb in b.items():
            key = _compose_perm(pa, pb)
            out[key] = out.get(key, 0) + wa * wb
    return out


@dataclass(frozen=True)
class ConvergenceTable:
    n: int
    marginals: tuple[tuple[Fraction, ...], ...]
    max_deviation: float
    irreducible: bool
    aperiodic: bool

    @property
    def converges(self) -> bool:
        return self.irreducible and self.aperiodic


def mu_hat_convergence(estimate: EmpiricalLaw, n: int) -> ConvergenceTable:
    """Exact ``n``-fold convolution of an estimated permutation law.

    ``marginals[i-1][j-1]`` is the mass of ``{pi : pi(i) = j}``.  The flags
    describe the one-step chain ``i -> pi(i)``; without both the marginals
    need not approach the uniform value.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    law = estimate.exact()
    if not law:
        raise InsufficientDataError("empty estimate")
    size = len(next(iter(law)))
    power = None
    base = law
    k = n
    while k:
        if k & 1:
            power = base if power is None else _convolve_perm_laws(power, base)
        k >>= 1
        if k:
            base = _convolve_perm_laws(base, base)
    marg = [[Fraction(0)] * size for _ in range(size)]
    for perm, w in power.items():
        for i, j in enumerate(perm):
            marg[i][j - 1] += w
    target = Fraction(1, size)
    dev = max(abs(float(v - target)) for row in marg for v in row)
    adj = [[0] * size for _ in range(size)]
    for perm in law:
        for i, j in enumerate(perm, 1):
            adj[j - 1][i - 1] = 1
    g = DirectedGraph.from_matrix(adj)
    irreducible = is_strongly_connected(g)
    aperiodic = irreducible and period(g) == 1
    return ConvergenceTable(
        n=n,
        marginals=tuple(tuple(row) for row in marg),
        max_deviation=dev,
        irreducible=irreducible,
        aperiodic=aperiodic,
    )


@dataclass(frozen=True)
class NonStrongReport:
    trials: int
    completed: int
    block_counts: tuple[int, ...]
    uniformity_statistic: float
    uniformity_pvalue: float
    history_length: int
    independence_statistic: float
    independence_pvalue: float
    independence_dof: int
    significance: float = SIGNIFICANCE

    @property
    def uniform(self) -> bool:
        return self.uniformity_pvalue > self.significance

    @property
    def independent(self) -> bool:
        return self.independence_pvalue > self.significance

    @property
    def passed(self) -> bool:
        return self.uniform and self.independent


def _pooled_contingency(table: np.ndarray, min_expected: float = 5.0) -> np.ndarray:
    """Merge sparse columns into one so every expected count is at least ``min_expected``."""
    table = table[:, table.sum(axis=0) > 0]
    row_frac = table.sum(axis=1) / table.sum()
    col_tot = table.sum(axis=0)
    sparse = col_tot * row_frac.min() < min_expected
    if sparse.any():
        pooled = table[:, sparse].sum(axis=1, keepdims=True)
        table = table[:, ~sparse]
        if pooled.sum() * row_frac.min() >= min_expected or table.shape[1] == 0:
            table = np.hstack([table, pooled])
        elif table.shape[1]:
            table[:, -1:] += pooled
    return table


def nonstrong_evidence(
    cl: ColoredLaw,
    padded: Word,
    trials: int,
    seed: int,
    r: int,
    window: int = 10**6,
    history: Optional[int] = None,
) -> NonStrongReport:
    """Statistical evidence that the block of ``X`` at the last occurrence is noise-free.

    Each trial scans colors backwards from a time ``k`` to the latest
    occurrence ``L`` of ``padded`` and then to the occurrence before it,
    ``T``.  ``X_T`` is drawn from the stationary law (it is independent of
    every color after ``T``), pushed through the padded word and the gap
    colors to give ``X_L``, and the block index of ``X_L`` is recorded
    together with the last ``history`` colors before ``k``.

    Two chi-square tests follow: block counts against the uniform law, and
    block index against the color history (sparse history columns pooled).
    ``history`` defaults to the length of the unpadded word plus ``r``.
    """
    C = cl.coloring
    rank, anchors, partition = _check_padded(C, padded)
    if rank < 2:
        raise PreconditionError("coloring is synchronizing; non-strong evidence does not apply")
    if not satisfies_no_overlap(padded.applied, r):
        raise PreconditionError("word does not satisfy the no-overlap padding condition")
    lam = stationary_law(cl.mu)
    w = len(padded) - 2 * r + r if history is None else history
    scanner = _Scanner(cl, padded)
    block_of = np.zeros(C.m, dtype=np.int64)
    for j, b in enumerate(partition):
        for x in b:
            block_of[x - 1] = j
    word_map = np.array([y - 1 for y in padded.mapping(C.m).image], dtype=np.int64)
    site_sampler = _Sampler(lam.weights)
    blocks_all, hist_all = [], []
    for index, n in _blocks(trials):
        rng = make_rng(seed, _STREAM_EVIDENCE, index)
        x_old = site_sampler.sample(rng, n)
        gaps, first, ok = scanner.run(rng, n, segments=2, max_len=window, record=w)
        gap = gaps[:, 1]
        x_last = gap[np.arange(n), word_map[x_old]]
        blocks_all.append(block_of[x_last][ok])
        code = np.zeros(n, dtype=np.int64)
        for i in range(w):
            code = code * C.d + first[:, i]
        hist_all.append(code[ok])
    blocks = np.concatenate(blocks_all)
    hist = np.concatenate(hist_all)
    completed = int(blocks.size)
    if completed == 0:
        raise InsufficientDataError("no trial found two occurrences inside the window")
    counts = np.bincount(blocks, minlength=rank)
    chi = stats.chisquare(counts)
    _, hist_codes = np.unique(hist, return_inverse=True)
    table = np.zeros((rank, int(hist_codes.max()) + 1), dtype=np.int64)
    np.add.at(table, (blocks, hist_codes), 1)
    table = _pooled_contingency(table)
    if table.shape[1] >= 2:
        ind = stats.chi2_contingency(table, correction=False)
        ind_stat, ind_p, ind_dof = float(ind.statistic), float(ind.pvalue), int(ind.dof)
    else:
        ind_stat, ind_p, ind_dof = 0.0, 1.0, 0
    return NonStrongReport(
        trials=trials,
        completed=completed,
        block_counts=tuple(int(c) for c in counts),
        uniformity_statistic=float(chi.statistic),
        uniformity_pvalue=float(chi.pvalue),
        history_length=w,
        independence_statistic=ind_stat,
        independence_pvalue=ind_p,
        independence_dof=ind_dof,
    )
