"""Sliced diagrams of framed webs.

A Diagram is an input boundary word plus a stack of slices, read bottom to
top.  Each slice is a row of cells whose concatenated input words must equal
the word produced below it; validate() checks that chaining and returns the
boundary.  The two presentations differ only in which twist marks are legal:
half marks (hu/ho) in "ht", full marks (ft) in "ft".

Wire positions are implicit: the k-th wire of an interface is the k-th letter
of the word at that interface.  Helpers here compute per-cell wire offsets,
horizontal and vertical composition, and the whole-diagram mirror images that
the move catalogs need.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .cells import (
    Cell,
    Orientation,
    TwistKind,
    Word,
    flip_crossings,
    flip_time,
    flip_twist_kind,
    flip_twist_signs,
    ident,
    mirror_lr,
    reverse_orientations,
)
from .errors import ChainMismatch, IllegalTwistKind, PresentationMismatch


class Presentation(enum.Enum):
    HT = "ht"  # half-twist generators
    FT = "ft"  # full-twist generators

    def __repr__(self) -> str:
        return self.value


HT = Presentation.HT
FT = Presentation.FT


@dataclass(frozen=True)
class Slice:
    cells: tuple[Cell, ...]

    @property
    def in_word(self) -> Word:
        w: tuple[Orientation, ...] = ()
        for c in self.cells:
            w += c.in_word
        return w

    @property
    def out_word(self) -> Word:
        w: tuple[Orientation, ...] = ()
        for c in self.cells:
            w += c.out_word
        return w

    def in_offsets(self) -> list[int]:
        """Wire offset of each cell's first input at the interface below."""
        offs, n = [], 0
        for c in self.cells:
            offs.append(n)
            n += len(c.in_word)
        return offs

    def out_offsets(self) -> list[int]:
        offs, n = [], 0
        for c in self.cells:
            offs.append(n)
            n += len(c.out_word)
        return offs

    @property
    def all_id(self) -> bool:
        return all(c.is_id for c in self.cells)


def slice_of(*cells: Cell) -> Slice:
    return Slice(tuple(cells))


@dataclass(frozen=True)
class Diagram:
    presentation: Presentation
    input: Word
    slices: tuple[Slice, ...] = field(default_factory=tuple)

    @property
    def output(self) -> Word:
        return self.slices[-1].out_word if self.slices else self.input

    def validate(self) -> tuple[Word, Word]:
        """Check chaining and twist legality; return (input, output) words."""
        w = self.input
        for i, s in enumerate(self.slices):
            need = s.in_word
            if need != w:
                raise ChainMismatch(i, w, need)
            for j, c in enumerate(s.cells):
                if c.tag == "twist":
                    half = c.kind in (TwistKind.UNDER, TwistKind.OVER)
                    if half and self.presentation is not Presentation.HT:
                        raise IllegalTwistKind(i, j)
                    if not half and self.presentation is not Presentation.FT:
                        raise IllegalTwistKind(i, j)
            w = s.out_word
        return (self.input, w)

    @property
    def n_slices(self) -> int:
        return len(self.slices)

    def word_at(self, level: int) -> Word:
        """Interface word below slice `level` (so word_at(0) is the input and
        word_at(n_slices) the output)."""
        w = self.input
        for s in self.slices[:level]:
            w = s.out_word
        return w

    def replace_slices(self, new_slices) -> "Diagram":
        return Diagram(self.presentation, self.input, tuple(new_slices))


def diagram(presentation: Presentation, input_word: Word, rows) -> Diagram:
    """Build a diagram from an iterable of cell iterables."""
    return Diagram(
        presentation, tuple(input_word), tuple(Slice(tuple(r)) for r in rows)
    )


def empty_diagram(presentation: Presentation) -> Diagram:
    """The empty diagram: no wires, no slices.  Valid, and the unit for both
    compositions."""
    return Diagram(presentation, ())


def id_slice(word: Word) -> Slice:
    return Slice(tuple(ident(o) for o in word))


def vcompose(lower: Diagram, upper: Diagram) -> Diagram:
    """Stack upper on top of lower.  Boundary words must agree."""
    if lower.presentation is not upper.presentation:
        raise PresentationMismatch("vcompose across presentations")
    if lower.output != upper.input:
        raise ChainMismatch(lower.n_slices, lower.output, upper.input)
    return Diagram(lower.presentation, lower.input, lower.slices + upper.slices)


def hcompose(left: Diagram, right: Diagram) -> Diagram:
    """Place right beside left.  Mismatched heights are padded with identity
    slices on top."""
    if left.presentation is not right.presentation:
        raise PresentationMismatch("hcompose across presentations")
    n = max(left.n_slices, right.n_slices)
    ls = list(left.slices) + [id_slice(left.output)] * (n - left.n_slices)
    rs = list(right.slices) + [id_slice(right.output)] * (n - right.n_slices)
    rows = [ls[i].cells + rs[i].cells for i in range(n)]
    return diagram(left.presentation, left.input + right.input, rows)


# ---------------------------------------------------------------------------
# Whole-diagram images under the picture symmetries.

def diagram_mirror_lr(d: Diagram) -> Diagram:
    rows = [tuple(mirror_lr(c) for c in reversed(s.cells)) for s in d.slices]
    return Diagram(d.presentation, tuple(reversed(d.input)), tuple(Slice(r) for r in rows))


def diagram_flip_time(d: Diagram) -> Diagram:
    """Up-down mirror: reverse the slice stack and flip each cell."""
    rows = [tuple(flip_time(c) for c in s.cells) for s in reversed(d.slices)]
    new_input = tuple(o.flip() for o in d.output)
    return Diagram(d.presentation, new_input, tuple(Slice(r) for r in rows))


def diagram_map_cells(d: Diagram, f) -> Diagram:
    rows = [tuple(f(c) for c in s.cells) for s in d.slices]
    return Diagram(d.presentation, d.input, tuple(Slice(r) for r in rows))


def diagram_reverse_orientations(d: Diagram) -> Diagram:
    out = diagram_map_cells(d, reverse_orientations)
    return Diagram(d.presentation, tuple(o.flip() for o in d.input), out.slices)


def diagram_flip_crossings(d: Diagram) -> Diagram:
    return diagram_map_cells(d, flip_crossings)


def diagram_flip_twist_kind(d: Diagram) -> Diagram:
    return diagram_map_cells(d, flip_twist_kind)


def diagram_flip_twist_signs(d: Diagram) -> Diagram:
    return diagram_map_cells(d, flip_twist_signs)
