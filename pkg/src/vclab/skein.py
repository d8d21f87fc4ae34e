"""Planar-diagram parsing, Kauffman bracket and Jones polynomials.

PD format: whitespace-separated records ``X+[a,b,c,d]`` or ``X-[a,b,c,d]``.
The four arc labels go counterclockwise around the crossing starting from
the incoming under-strand, so the under-strand runs a -> c. The over-strand
joins b and d: at a positive crossing it runs d -> b, at a negative one
b -> d. Orientation is thus carried by the labels, and the parser checks
that every arc is entered at exactly one crossing slot and left at exactly
one.

Chirality: with this convention :data:`TREFOIL_PD` (all crossings positive)
is the right-handed trefoil, whose J2 is ``q^-1 + q^-3 - q^-4``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .laurent import LaurentPoly

DEFAULT_CROSSING_LIMIT = 24

TREFOIL_PD = "X+[1,5,2,4] X+[3,1,4,6] X+[5,3,6,2]"
FIGURE_EIGHT_PD = "X+[4,2,5,1] X+[8,6,1,5] X-[6,3,7,4] X-[2,7,3,8]"

_RECORD = re.compile(r"X([+-])\[\s*([^\[\]]*?)\s*\]")
_LABEL = re.compile(r"[A-Za-z0-9_]+")


class PDError(ValueError):
    """Malformed or inconsistent planar-diagram code."""


class CrossingLimitError(RuntimeError):
    """The state sum would exceed the configured crossing limit."""


@dataclass(frozen=True)
class Crossing:
    index: int
    sign: int
    arcs: tuple[str, str, str, str]

    @property
    def under(self) -> tuple[str, str]:
        return self.arcs[0], self.arcs[2]

    @property
    def over(self) -> tuple[str, str]:
        """Over-strand as (incoming, outgoing)."""
        i, j, k, l = self.arcs
        return (l, j) if self.sign > 0 else (j, l)

    def incoming(self) -> tuple[str, str]:
        return self.arcs[0], self.over[0]

    def outgoing(self) -> tuple[str, str]:
        return self.arcs[2], self.over[1]

    def mirrored(self) -> Crossing:
        # Swap over and under while keeping the strand directions.
        i, j, k, l = self.arcs
        if self.sign > 0:
            return Crossing(self.index, -1, (l, i, j, k))
        return Crossing(self.index, +1, (j, k, l, i))

    def record(self) -> str:
        return f"X{'+' if self.sign > 0 else '-'}[{','.join(self.arcs)}]"


@dataclass(frozen=True)
class SkeinState:
    choice: tuple[str, ...]
    loop_count: int


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]

    @property
    def arcs(self) -> frozenset[str]:
        return frozenset(a for c in self.crossings for a in c.arcs)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def orientation(self) -> dict[str, tuple[int, int]]:
        """Per arc: (crossing it leaves, crossing it enters)."""
        heads: dict[str, int] = {}
        tails: dict[str, int] = {}
        for c in self.crossings:
            for a in c.incoming():
                heads[a] = c.index
            for a in c.outgoing():
                tails[a] = c.index
        return {a: (tails[a], heads[a]) for a in heads}

    def components(self) -> int:
        if not self.crossings:
            return 1
        uf = _UnionFind(_label_index(self))
        for c in self.crossings:
            uf.union(*c.under)
            uf.union(*c.over)
        return uf.count

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def mirror(self) -> Diagram:
        return Diagram(tuple(c.mirrored() for c in self.crossings))

    def to_pd(self) -> str:
        return " ".join(c.record() for c in self.crossings)


def _label_index(d: Diagram) -> dict[str, int]:
    labels: dict[str, int] = {}
    for c in d.crossings:
        for a in c.arcs:
            labels.setdefault(a, len(labels))
    return labels


class _UnionFind:
    def __init__(self, labels: dict[str, int]):
        self.labels = labels
        self.parent = list(range(len(labels)))
        self.count = len(labels)

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(self.labels[a]), self.find(self.labels[b])
        if ra != rb:
            self.parent[ra] = rb
            self.count -= 1


def parse_pd(text: str) -> Diagram:
    """Parse and validate a PD code; the empty string is the round unknot."""
    stripped = text.strip()
    crossings: list[Crossing] = []
    pos = 0
    for match in _RECORD.finditer(stripped):
        gap = stripped[pos:match.start()]
        if gap.strip(" \t\n,;"):
            raise PDError(f"malformed token near {gap.strip()!r}")
        pos = match.end()
        labels = [s.strip() for s in match.group(2).split(",")]
        if len(labels) != 4 or not all(_LABEL.fullmatch(s) for s in labels):
            raise PDError(f"crossing record {match.group(0)!r} needs four arc labels")
        sign = 1 if match.group(1) == "+" else -1
        crossings.append(Crossing(len(crossings), sign, tuple(labels)))
    if stripped[pos:].strip(" \t\n,;"):
        raise PDError(f"malformed token near {stripped[pos:].strip()!r}")
    diagram = Diagram(tuple(crossings))
    validate(diagram)
    return diagram


def validate(d: Diagram) -> None:
    counts: dict[str, int] = {}
    heads: dict[str, int] = {}
    tails: dict[str, int] = {}
    for c in d.crossings:
        for a in c.arcs:
            counts[a] = counts.get(a, 0) + 1
        for a in c.incoming():
            heads[a] = heads.get(a, 0) + 1
        for a in c.outgoing():
            tails[a] = tails.get(a, 0) + 1
    bad = sorted(a for a, n in counts.items() if n != 2)
    if bad:
        raise PDError(f"arc labels must appear exactly twice: {', '.join(bad)}")
    clash = sorted(a for a in counts if heads.get(a, 0) != 1 or tails.get(a, 0) != 1)
    if clash:
        raise PDError(
            "crossing signs inconsistent with arc orientation at arcs " + ", ".join(clash)
        )


def writhe(d: Diagram) -> int:
    return d.writhe()


def _smoothing_pairs(d: Diagram) -> tuple[list[tuple[tuple[int, int], ...]], int]:
    labels = _label_index(d)
    pairs = []
    for c in d.crossings:
        i, j, k, l = (labels[a] for a in c.arcs)
        pairs.append((((i, j), (k, l)), ((i, l), (j, k))))
    return pairs, len(labels)


def _loops(choice: Sequence[int], pairs, n_arcs: int) -> int:
    parent = list(range(n_arcs))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    count = n_arcs
    for pick, options in zip(choice, pairs):
        for a, b in options[pick]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                count -= 1
    return count


def states(d: Diagram) -> Iterator[SkeinState]:
    """All 2^c smoothings with their loop counts (A-smoothing first)."""
    pairs, n_arcs = _smoothing_pairs(d)
    n = len(pairs)
    for index in range(1 << n):
        choice = [(index >> bit) & 1 for bit in range(n)]
        loops = _loops(choice, pairs, n_arcs) if n else 1
        yield SkeinState(tuple("AB"[p] for p in choice), loops)


def kauffman_bracket(d: Diagram, limit: int = DEFAULT_CROSSING_LIMIT) -> LaurentPoly:
    """State sum of A^(#A - #B) d^(loops - 1) with d = -A^2 - A^-2."""
    n = d.n_crossings
    if n > limit:
        raise CrossingLimitError(f"{n} crossings exceeds the state-sum limit of {limit}")
    if n == 0:
        return LaurentPoly.constant(1, "A")
    pairs, n_arcs = _smoothing_pairs(d)
    tally: dict[tuple[int, int], int] = {}
    for index in range(1 << n):
        choice = [(index >> bit) & 1 for bit in range(n)]
        n_b = sum(choice)
        key = (n - 2 * n_b, _loops(choice, pairs, n_arcs))
        tally[key] = tally.get(key, 0) + 1

    loop = LaurentPoly({8: -1, -8: -1}, "A")
    loop_powers = {1: LaurentPoly.constant(1, "A")}
    total = LaurentPoly({}, "A")
    for (a_power, loops), count in sorted(tally.items()):
        if loops not in loop_powers:
            loop_powers[loops] = loop ** (loops - 1)
        total = total + LaurentPoly.monomial(a_power, count, "A") * loop_powers[loops]
    return total


def jones_V(d: Diagram, limit: int = DEFAULT_CROSSING_LIMIT) -> LaurentPoly:
    """V(t) = (-A^3)^(-w) <D> evaluated at A = t^(-1/4)."""
    w = d.writhe()
    normalized = kauffman_bracket(d, limit) * LaurentPoly.monomial(-3 * w, (-1) ** w, "A")
    return normalized.substitute(Fraction(-1, 4), "t")


def jones_J2(d: Diagram, limit: int = DEFAULT_CROSSING_LIMIT) -> LaurentPoly:
    """J2(q) = (-1)^(c-1) V(t = q^-1), c the number of components.

    Normalized so that J2(unknot) = 1 and
    q J2(L+) - q^-1 J2(L-) = (q^1/2 - q^-1/2) J2(L0).
    """
    sign = -1 if d.components() % 2 == 0 else 1
    return jones_V(d, limit).substitute(-1, "q") * sign
