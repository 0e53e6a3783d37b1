"""Line-oriented colored-graph files.

Example::

    sites 5
    colors 2
    color 1 : 2 3 4 1 5        # image of sites 1..m
    color 2 : 2 5 5 2 4
    prob 1 : 1/2
    prob 2 : 1/2

A graph without a coloring uses ``matrix`` followed by ``m`` rows of ``m``
integers (row ``y``, column ``x`` = number of roads ``x -> y``).  Both
sections may appear together, in which case they must agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputError
from .graph import DirectedGraph
from .laws import ColoredLaw
from .mapping import Mapping, RoadColoring, induced_graph

__all__ = ["InputDocument", "parse_input", "print_document", "parse_rational"]

_RATIONAL = re.compile(r"^[+]?\d+(/\d+)?$")


def parse_rational(text: str, line: Optional[int] = None) -> Fraction:
    text = text.strip()
    if not _RATIONAL.match(text):
        if re.match(r"^[+-]?(\d+\.\d*|\.\d+|\d+[eE])", text):
            raise InputError(f"decimal probability {text!r} not accepted; write it as a fraction", line)
        raise InputError(f"not a non-negative rational: {text!r}", line)
    return Fraction(text)


@dataclass(frozen=True)
class InputDocument:
    graph: DirectedGraph
    coloring: Optional[RoadColoring] = None
    probs: Optional[tuple[Fraction, ...]] = None

    @property
    def m(self) -> int:
        return self.graph.m

    def colored_law(self) -> ColoredLaw:
        """Weighted coloring; equal weights when the file gives none."""
        if self.coloring is None:
            raise InputError("document has no coloring")
        if self.probs is None:
            return ColoredLaw.uniform(self.coloring)
        return ColoredLaw(self.coloring, self.probs)


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_input(text: str) -> InputDocument:
    sites = ncolors = None
    colors: dict[int, tuple[int, list[int]]] = {}
    probs: dict[int, tuple[int, Fraction]] = {}
    matrix: list[list[int]] = []
    matrix_line = None
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        lineno = i + 1
        line = lines[i].split("#", 1)[0].strip()
        i += 1
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "sites":
            if sites is not None:
                raise InputError("duplicate 'sites' line", lineno)
            vals = _ints(rest.split(), lineno)
            if len(vals) != 1 or vals[0] < 1:
                raise InputError("'sites' must be a positive integer", lineno)
            sites = vals[0]
        elif head == "colors":
            if ncolors is not None:
                raise InputError("duplicate 'colors' line", lineno)
            vals = _ints(rest.split(), lineno)
            if len(vals) != 1 or vals[0] < 1:
                raise InputError("'colors' must be a positive integer", lineno)
            ncolors = vals[0]
        elif head in ("color", "prob"):
            left, sep, right = rest.partition(":")
            if not sep:
                raise InputError(f"expected '{head} <index> : ...'", lineno)
            vals = _ints(left.split(), lineno)
            if len(vals) != 1 or vals[0] < 1:
                raise InputError("color index must be a positive integer", lineno)
            idx = vals[0]
            table = colors if head == "color" else probs
            if idx in table:
                raise InputError(f"duplicate {head} {idx}", lineno)
            if head == "color":
                colors[idx] = (lineno, _ints(right.split(), lineno))
            else:
                probs[idx] = (lineno, parse_rational(right, lineno))
        elif head == "matrix":
            if sites is None:
                raise InputError("'matrix' must come after 'sites'", lineno)
            if matrix_line is not None:
                raise InputError("duplicate 'matrix' section", lineno)
            matrix_line = lineno
            while len(matrix) < sites:
                if i >= len(lines):
                    raise InputError(f"matrix needs {sites} rows", lineno)
                row_text = lines[i].split("#", 1)[0].strip()
                i += 1
                if not row_text:
                    continue
                row = _ints(row_text.split(), i)
                if len(row) != sites:
                    raise InputError(f"matrix row has {len(row)} entries, expected {sites}", i)
                if any(v < 0 for v in row):
                    raise InputError("negative matrix entry", i)
                matrix.append(row)
        else:
            raise InputError(f"unknown directive {head!r}", lineno)

    if sites is None:
        raise InputError("missing 'sites' line")
    coloring = None
    if colors or ncolors is not None:
        if ncolors is None:
            raise InputError("color lines given without a 'colors' count")
        for idx, (lineno, _) in colors.items():
            if idx > ncolors:
                raise InputError(f"color {idx} exceeds declared count {ncolors}", lineno)
        missing = [c for c in range(1, ncolors + 1) if c not in colors]
        if missing:
            raise InputError(f"missing color line(s) {missing}")
        maps = []
        for idx in range(1, ncolors + 1):
            lineno, image = colors[idx]
            if len(image) != sites:
                raise InputError(f"color {idx} lists {len(image)} images, expected {sites}", lineno)
            try:
                maps.append(Mapping(tuple(image)))
            except InputError as exc:
                raise InputError(str(exc), lineno) from None
        coloring = RoadColoring(tuple(maps))

    prob_tuple = None
    if probs:
        if coloring is None:
            raise InputError("'prob' lines need a coloring")
        for idx, (lineno, _) in probs.items():
            if idx > coloring.d:
                raise InputError(f"weight count mismatch: prob {idx} but only {coloring.d} colors", lineno)
        if len(probs) != coloring.d:
            raise InputError(f"weight count mismatch: {len(probs)} weights for {coloring.d} colors")
        prob_tuple = tuple(probs[c][1] for c in range(1, coloring.d + 1))
        for c in range(1, coloring.d + 1):
            if prob_tuple[c - 1] <= 0:
                raise InputError(f"weight of color {c} must be positive", probs[c][0])
        if sum(prob_tuple) != 1:
            raise InputError(f"weights sum to {sum(prob_tuple)}, not 1")

    if matrix_line is not None:
        graph = DirectedGraph.from_matrix(matrix)
        if coloring is not None and induced_graph(coloring.colors) != graph:
            raise InputError("color sum does not match the adjacency matrix", matrix_line)
    elif coloring is not None:
        graph = induced_graph(coloring.colors)
    else:
        raise InputError("file has neither colors nor a matrix")
    return InputDocument(graph=graph, coloring=coloring, probs=prob_tuple)


def print_coloring(coloring: RoadColoring) -> list[str]:
    lines = [f"sites {coloring.m}", f"colors {coloring.d}"]
    for c, sigma in enumerate(coloring.colors, 1):
        lines.append(f"color {c} : {sigma}")
    return lines


def print_document(doc: InputDocument) -> str:
    if doc.coloring is not None:
        lines = print_coloring(doc.coloring)
        if doc.probs is not None:
            lines += [f"prob {c} : {p}" for c, p in enumerate(doc.probs, 1)]
    else:
        lines = [f"sites {doc.m}", "matrix"]
        lines += [" ".join(map(str, row)) for row in doc.graph.adjacency]
    return "\n".join(lines) + "\n"
