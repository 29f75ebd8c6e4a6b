"""Generating cells for sliced framed-web diagrams.

A diagram is read bottom to top as a vertical stack of slices, each slice a
horizontal row of cells.  Every cell consumes a word of oriented wires from
below and produces a word above.  The cell inventory:

    id(o)          o -> o            a plain wire
    hu(s,o)        o -> o            half-twist mark, framing passes under (s = +1/-1)
    ho(s,o)        o -> o            half-twist mark, framing passes over
    ft(s,o)        o -> o            full-twist mark
    x+(a,b)        a b -> b a        positive crossing (lower-left strand on top)
    x-(a,b)        a b -> b a        negative crossing
    mu             ^ ^ -> ^          merge of two upward strands
    su             ^ -> ^ ^          split of an upward strand
    md             v -> v v          merge of two downward strands (1 -> 2 on the page
                                     because the arrows point down)
    sd             v v -> v          split of a downward strand
    cap(o)         o !o -> (nothing) a turnback closing upward; o is the left leg
    cup(o)         (nothing) -> o !o a turnback opening upward

The trivalent vertices have ordered legs and the left/right order above is part
of the data, not a convention that may be flipped silently.  Half-twist marks
are only legal in the half-twist presentation, full-twist marks only in the
full-twist presentation; that check lives in diagram.validate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Orientation(enum.Enum):
    UP = "^"
    DOWN = "v"

    def flip(self) -> "Orientation":
        return Orientation.DOWN if self is Orientation.UP else Orientation.UP

    def __repr__(self) -> str:
        return self.value


UP = Orientation.UP
DOWN = Orientation.DOWN

# A boundary word: oriented wire endpoints left to right.
Word = tuple[Orientation, ...]


class TwistKind(enum.Enum):
    # Token values double as the text-format cell names.
    UNDER = "hu"   # half twist, framing curve passes under the strand
    OVER = "ho"    # half twist, framing curve passes over the strand
    FULL = "ft"    # full twist

    def __repr__(self) -> str:
        return self.value


HALF_KINDS = (TwistKind.UNDER, TwistKind.OVER)

# Declared tag order; used as the deterministic tie-break everywhere a cell
# order is needed.
CELL_TAGS = ("id", "twist", "cross", "mu", "su", "md", "sd", "cap", "cup")


@dataclass(frozen=True)
class Cell:
    """One generating cell.  Unused fields stay None.

    tag     one of CELL_TAGS
    orient  wire orientation for id/twist, left-leg orientation for cap/cup
    kind    twist kind, twists only
    sign    +1/-1: twist sign, or crossing sign
    left_in, right_in  crossing input orientations
    """

    tag: str
    orient: Orientation | None = None
    kind: TwistKind | None = None
    sign: int | None = None
    left_in: Orientation | None = None
    right_in: Orientation | None = None

    def __post_init__(self) -> None:
        assert self.tag in CELL_TAGS, self.tag
        if self.sign is not None:
            assert self.sign in (+1, -1), self.sign

    @property
    def in_word(self) -> Word:
        t = self.tag
        if t in ("id", "twist"):
            return (self.orient,)
        if t == "cross":
            return (self.left_in, self.right_in)
        if t == "mu":
            return (UP, UP)
        if t == "su":
            return (UP,)
        if t == "md":
            return (DOWN,)
        if t == "sd":
            return (DOWN, DOWN)
        if t == "cap":
            return (self.orient, self.orient.flip())
        return ()  # cup

    @property
    def out_word(self) -> Word:
        t = self.tag
        if t in ("id", "twist"):
            return (self.orient,)
        if t == "cross":
            return (self.right_in, self.left_in)
        if t == "mu":
            return (UP,)
        if t == "su":
            return (UP, UP)
        if t == "md":
            return (DOWN, DOWN)
        if t == "sd":
            return (DOWN,)
        if t == "cup":
            return (self.orient, self.orient.flip())
        return ()  # cap

    @property
    def is_id(self) -> bool:
        return self.tag == "id"

    @property
    def is_vertex(self) -> bool:
        return self.tag in ("mu", "su", "md", "sd")

    def sort_key(self) -> tuple:
        return (
            CELL_TAGS.index(self.tag),
            "" if self.orient is None else self.orient.value,
            "" if self.kind is None else self.kind.value,
            0 if self.sign is None else self.sign,
            "" if self.left_in is None else self.left_in.value,
            "" if self.right_in is None else self.right_in.value,
        )

    def __repr__(self) -> str:
        from .textio import cell_token  # local import, textio depends on us

        return f"Cell[{cell_token(self)}]"


def ident(o: Orientation) -> Cell:
    return Cell("id", orient=o)


def twist(kind: TwistKind, sign: int, o: Orientation) -> Cell:
    return Cell("twist", orient=o, kind=kind, sign=sign)


def crossing(sign: int, left_in: Orientation, right_in: Orientation) -> Cell:
    return Cell("cross", sign=sign, left_in=left_in, right_in=right_in)


def merge_up() -> Cell:
    return Cell("mu")


def split_up() -> Cell:
    return Cell("su")


def merge_down() -> Cell:
    return Cell("md")


def split_down() -> Cell:
    return Cell("sd")


def cap(left: Orientation) -> Cell:
    return Cell("cap", orient=left)


def cup(left: Orientation) -> Cell:
    return Cell("cup", orient=left)


def mirror_lr(c: Cell) -> Cell:
    """The cell as seen in a left-right mirror.

    A reflection reverses handedness, so every chirality-carrying sign flips:
    crossings swap strands and negate, and twist marks negate while keeping
    their kind (the under/over of the framing vector is normal to the page
    and untouched by an in-page mirror).
    """
    t = c.tag
    if t == "cross":
        return crossing(-c.sign, c.right_in, c.left_in)
    if t == "twist":
        return Cell(t, orient=c.orient, kind=c.kind, sign=-c.sign)
    if t == "cap" or t == "cup":
        return Cell(t, orient=c.orient.flip())
    # id cells are their own mirror; vertices swap left/right legs, which for
    # the up/down merge-split cells is again a cell of the same tag (the two
    # legs carry equal orientations).
    return c


def flip_time(c: Cell) -> Cell:
    """The cell as seen in an up-down mirror.

    Reflection across a horizontal axis reverses every arrow (orientations
    flip), turns merges into splits of the opposite-direction family, and
    reverses handedness, so crossing signs and twist signs flip.  The new
    input word is the old output word with flipped arrows, which keeps
    reversed slice stacks chained.
    """
    t = c.tag
    if t == "id":
        return Cell(t, orient=c.orient.flip())
    if t == "twist":
        return Cell(t, orient=c.orient.flip(), kind=c.kind, sign=-c.sign)
    if t == "cross":
        return crossing(-c.sign, c.right_in.flip(), c.left_in.flip())
    if t == "mu":
        return Cell("md")
    if t == "md":
        return Cell("mu")
    if t == "su":
        return Cell("sd")
    if t == "sd":
        return Cell("su")
    if t == "cap":
        # in (o, !o) upside down produces (!o, o), a cup whose left leg is !o.
        return Cell("cup", orient=c.orient.flip())
    if t == "cup":
        return Cell("cap", orient=c.orient.flip())
    raise AssertionError(t)


def reverse_orientations(c: Cell) -> Cell:
    """Reverse every strand arrow, keeping the page layout."""
    t = c.tag
    if t in ("id", "twist"):
        return Cell(t, orient=c.orient.flip(), kind=c.kind, sign=c.sign)
    if t == "cross":
        return crossing(c.sign, c.left_in.flip(), c.right_in.flip())
    if t == "mu":
        return Cell("sd")
    if t == "sd":
        return Cell("mu")
    if t == "su":
        return Cell("md")
    if t == "md":
        return Cell("su")
    if t in ("cap", "cup"):
        return Cell(t, orient=c.orient.flip())
    raise AssertionError(t)


def flip_crossings(c: Cell) -> Cell:
    if c.tag == "cross":
        return crossing(-c.sign, c.left_in, c.right_in)
    return c


def flip_twist_kind(c: Cell) -> Cell:
    if c.tag == "twist" and c.kind in HALF_KINDS:
        other = TwistKind.OVER if c.kind is TwistKind.UNDER else TwistKind.UNDER
        return twist(other, c.sign, c.orient)
    return c


def flip_twist_signs(c: Cell) -> Cell:
    if c.tag == "twist":
        return twist(c.kind, -c.sign, c.orient)
    return c
