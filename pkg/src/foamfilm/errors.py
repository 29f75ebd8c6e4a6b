"""Exception types shared across the package."""

from __future__ import annotations


class FoamfilmError(Exception):
    """Base class for semantic errors (CLI exit code 1)."""


class ChainMismatch(FoamfilmError):
    """Adjacent slices do not chain: output word of one slice differs from
    the input word of the next."""

    def __init__(self, slice_index: int, expected, found):
        self.slice_index = slice_index
        self.expected = expected
        self.found = found
        super().__init__(
            "slice %d consumes %s but the word below is %s"
            % (slice_index, _word(found), _word(expected))
        )


class IllegalTwistKind(FoamfilmError):
    """A twist mark of the wrong presentation (half marks in ft, full marks
    in ht)."""

    def __init__(self, slice_index: int, cell_index: int):
        self.slice_index = slice_index
        self.cell_index = cell_index
        super().__init__(
            "twist kind not allowed by the presentation at slice %d, cell %d"
            % (slice_index, cell_index)
        )


class PresentationMismatch(FoamfilmError):
    """An operation mixed ht and ft values."""


class SiteStale(FoamfilmError):
    """A match site no longer fits the diagram it is applied to."""


class SiteMismatch(FoamfilmError):
    """A movie event's site does not match the current frame."""

    def __init__(self, event_index: int, detail: str = ""):
        self.event_index = event_index
        suffix = (": " + detail) if detail else ""
        super().__init__("event %d does not fit its frame%s" % (event_index, suffix))


class UnpairedHalfTwist(FoamfilmError):
    """Half-twist marks that cannot be paired off during ht -> ft conversion."""

    def __init__(self, sites):
        self.sites = list(sites)  # (slice_index, cell_index) pairs
        super().__init__("unpaired half twists at %s" % (self.sites,))


class FinalFrameMismatch(FoamfilmError):
    """A movie's declared final frame disagrees with the computed one."""


class SpanMismatch(FoamfilmError):
    """An event span does not lie inside the movie."""


class UnknownFamily(FoamfilmError):
    """An event family name outside the catalog."""

    def __init__(self, name: str):
        self.name = name
        super().__init__("unknown event family %r" % (name,))


class UnknownId(FoamfilmError):
    """A catalog id that does not exist."""

    def __init__(self, ident: str):
        self.ident = ident
        super().__init__("unknown catalog id %r" % (ident,))


class ParseError(Exception):
    """Text that does not parse (CLI exit code 2).  Carries a source span."""

    def __init__(self, span, message: str):
        self.span = span
        super().__init__("%s: %s" % (span, message))


def _word(w) -> str:
    if not w:
        return "(empty)"
    return " ".join(o.value for o in w)
