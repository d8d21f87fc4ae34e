"""Diagram corpus for invariance checks, built from closed braids.

Braid relations realize Reidemeister moves on the closure diagram:
``s s^-1 = 1`` is an R2 move, ``s1 s2 s1 = s2 s1 s2`` an R3 move, and
stabilization ``w -> w s_n^(+-1)`` an R1 move. Words are tuples of nonzero
ints, ``+i`` for the positive generator between strands i and i+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .skein import Diagram, parse_pd


def closure_pd(braid: tuple[int, ...], strands: int) -> str:
    """PD code of the closure of a braid drawn with strands running upward.

    Every strand must meet at least one crossing, otherwise the closure has a
    crossing-free circle that PD notation cannot record.
    """
    if any(s == 0 or abs(s) >= strands for s in braid):
        raise ValueError(f"braid letters must be in 1..{strands - 1} up to sign")
    touched = {abs(s) - 1 for s in braid} | {abs(s) for s in braid}
    if touched != set(range(strands)):
        raise ValueError("every strand must take part in a crossing")
    current = list(range(1, strands + 1))
    next_label = strands + 1
    records = []
    for s in braid:
        i = abs(s) - 1
        left, right = current[i], current[i + 1]
        top_left, top_right = next_label, next_label + 1
        next_label += 2
        if s > 0:
            # under strand bottom-right to top-left
            records.append(["+", right, top_right, top_left, left])
        else:
            # under strand bottom-left to top-right
            records.append(["-", left, right, top_right, top_left])
        current[i], current[i + 1] = top_left, top_right
    closing = {current[p]: p + 1 for p in range(strands)}
    text = []
    for sign, *labels in records:
        labels = [closing.get(a, a) for a in labels]
        text.append(f"X{sign}[{','.join(map(str, labels))}]")
    return " ".join(text)


def closure(braid: tuple[int, ...], strands: int) -> Diagram:
    return parse_pd(closure_pd(braid, strands))


@dataclass(frozen=True)
class MovePair:
    name: str
    move: str  # "R1", "R2" or "R3"
    before: tuple[tuple[int, ...], int]
    after: tuple[tuple[int, ...], int]

    def diagrams(self) -> tuple[Diagram, Diagram]:
        return closure(*self.before), closure(*self.after)


@dataclass(frozen=True)
class SkeinTriple:
    """Diagrams identical except at one crossing: positive, negative, smoothed."""

    name: str
    strands: int
    prefix: tuple[int, ...]
    generator: int
    suffix: tuple[int, ...]

    def diagrams(self) -> tuple[Diagram, Diagram, Diagram]:
        g = self.generator
        plus = self.prefix + (g,) + self.suffix
        minus = self.prefix + (-g,) + self.suffix
        zero = self.prefix + self.suffix
        return tuple(closure(w, self.strands) for w in (plus, minus, zero))


MOVE_CORPUS = (
    MovePair("trefoil R2", "R2", ((1, 1, 1), 2), ((1, 1, 1, 1, -1), 2)),
    MovePair("trefoil R2 mixed", "R2", ((1, 1, 1), 2), ((1, -1, 1, 1, 1), 2)),
    MovePair("fig8 R2", "R2", ((1, -2, 1, -2), 3), ((1, 2, -2, -2, 1, -2), 3)),
    MovePair("fig8 R2 inner", "R2", ((1, -2, 1, -2), 3), ((1, -2, -1, 1, 1, -2), 3)),
    MovePair("unknot R2", "R2", ((1, 2), 3), ((1, 1, -1, 2), 3)),
    MovePair("R3 positive", "R3", ((1, 2, 1, 2), 3), ((2, 1, 2, 2), 3)),
    MovePair("R3 mixed", "R3", ((1, 2, 1, -2, -2), 3), ((2, 1, 2, -2, -2), 3)),
    MovePair("R3 with tail", "R3", ((1, 2, 1, -1, 2, -1), 3), ((2, 1, 2, -1, 2, -1), 3)),
    MovePair("R3 negative", "R3", ((-1, -2, -1, 2), 3), ((-2, -1, -2, 2), 3)),
    MovePair("R3 four strands", "R3", ((1, 2, 1, 3, -2, 3), 4), ((2, 1, 2, 3, -2, 3), 4)),
    MovePair("trefoil R1 positive", "R1", ((1, 1, 1), 2), ((1, 1, 1, 2), 3)),
    MovePair("trefoil R1 negative", "R1", ((1, 1, 1), 2), ((1, 1, 1, -2), 3)),
    MovePair("fig8 R1", "R1", ((1, -2, 1, -2), 3), ((1, -2, 1, -2, 3), 4)),
    MovePair("unknot R1", "R1", ((1,), 2), ((1, -2), 3)),
)

SKEIN_CORPUS = (
    SkeinTriple("trefoil", 2, (1, 1), 1, ()),
    SkeinTriple("torus link T(2,4)", 2, (1,), 1, (1, 1)),
    SkeinTriple("fig8", 3, (1, -2), 1, (1, -2)),
    SkeinTriple("three strands", 3, (1, 2, 2), 1, (-2, 1)),
    SkeinTriple("four strands", 4, (1, 2, 3, 1), 2, (-3, 2)),
)
