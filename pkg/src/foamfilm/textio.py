"""The foamfilm text format.

Line oriented.  `#` starts a comment, blank lines are ignored, every other
line is `directive: payload`.  A diagram is

    foamfilm-format: 1
    presentation: ht
    in: ^ v
    slice: id(^) hu(+1,v)
    slice: x+(^,v)

read bottom slice first.  Orientations are `^` (up) and `v` (down).  The cell
vocabulary is id(o), hu(s,o), ho(s,o), ft(s,o), x+(a,b), x-(a,b), mu, su, md,
sd, cap(o), cup(o) with s in {+1,-1}.  A movie continues with event lines and
an optional declared final frame:

    event: saddle at s=1 c=0 o=^
    event: webmove at s=0 c=2 mirror=lr id=ht.r2.a dir=fwd
    final:
    in: ^ v
    slice: ...

Catalog exports reuse the same blocks inside record/end fences; see
export_web_catalog and friends at the bottom.

print_* and parse_* are mutually inverse: parsing canonical text gives back
the value, printing a parsed value gives back the text.  All parse failures
raise ParseError carrying a SourceSpan (1-based line and column).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cells import (
    Cell,
    Orientation,
    TwistKind,
    cap,
    crossing,
    cup,
    ident,
    merge_down,
    merge_up,
    split_down,
    split_up,
    twist,
)
from .diagram import Diagram, Presentation, Slice


@dataclass(frozen=True)
class SourceSpan:
    line: int    # 1-based
    col: int     # 1-based
    length: int

    def __str__(self) -> str:
        return "line %d, col %d" % (self.line, self.col)


def _fail(lineno: int, col: int, length: int, msg: str):
    from .errors import ParseError

    raise ParseError(SourceSpan(lineno, col, max(length, 1)), msg)


# ---------------------------------------------------------------------------
# Tokens

_CELL_RE = re.compile(r"^([a-z]+|x[+-])(?:\(([^()]*)\))?$")

_BARE = {"mu": merge_up, "su": split_up, "md": merge_down, "sd": split_down}


def _orient(tok: str, lineno: int, col: int) -> Orientation:
    if tok == "^":
        return Orientation.UP
    if tok == "v":
        return Orientation.DOWN
    _fail(lineno, col, len(tok), "expected orientation ^ or v, got %r" % tok)


def _sign(tok: str, lineno: int, col: int) -> int:
    if tok == "+1":
        return +1
    if tok == "-1":
        return -1
    _fail(lineno, col, len(tok), "expected sign +1 or -1, got %r" % tok)


def parse_cell(tok: str, lineno: int, col: int) -> Cell:
    m = _CELL_RE.match(tok)
    if not m:
        _fail(lineno, col, len(tok), "bad cell token %r" % tok)
    name, argstr = m.group(1), m.group(2)
    args = argstr.split(",") if argstr else []
    if name in _BARE:
        if argstr is not None:
            _fail(lineno, col, len(tok), "%s takes no arguments" % name)
        return _BARE[name]()
    if name == "id":
        if len(args) != 1:
            _fail(lineno, col, len(tok), "id takes one orientation")
        return ident(_orient(args[0], lineno, col))
    if name in ("hu", "ho", "ft"):
        if len(args) != 2:
            _fail(lineno, col, len(tok), "%s takes (sign,orientation)" % name)
        kind = TwistKind(name)
        return twist(kind, _sign(args[0], lineno, col), _orient(args[1], lineno, col))
    if name in ("x+", "x-"):
        if len(args) != 2:
            _fail(lineno, col, len(tok), "%s takes two orientations" % name)
        s = +1 if name == "x+" else -1
        return crossing(s, _orient(args[0], lineno, col), _orient(args[1], lineno, col))
    if name == "cap" or name == "cup":
        if len(args) != 1:
            _fail(lineno, col, len(tok), "%s takes one orientation" % name)
        o = _orient(args[0], lineno, col)
        return cap(o) if name == "cap" else cup(o)
    _fail(lineno, col, len(tok), "unknown cell %r" % name)


def cell_token(c: Cell) -> str:
    t = c.tag
    if t == "id":
        return "id(%s)" % c.orient.value
    if t == "twist":
        return "%s(%+d,%s)" % (c.kind.value, c.sign, c.orient.value)
    if t == "cross":
        return "x%s(%s,%s)" % (
            "+" if c.sign > 0 else "-",
            c.left_in.value,
            c.right_in.value,
        )
    if t in ("mu", "su", "md", "sd"):
        return t
    if t == "cap" or t == "cup":
        return "%s(%s)" % (t, c.orient.value)
    raise AssertionError(t)


# ---------------------------------------------------------------------------
# Line reader

class _Reader:
    def __init__(self, text: str):
        self.items: list[tuple[int, str]] = []
        for n, raw in enumerate(text.splitlines(), start=1):
            cut = raw.find("#")
            if cut >= 0:
                raw = raw[:cut]
            if raw.strip():
                self.items.append((n, raw))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self):
        item = self.peek()
        if item is not None:
            self.pos += 1
        return item

    def directive(self):
        """Split the next line at its first colon; None at end of input."""
        item = self.take()
        if item is None:
            return None
        lineno, raw = item
        stripped = raw.strip()
        indent = len(raw) - len(raw.lstrip())
        cut = stripped.find(":")
        if cut < 0:
            _fail(lineno, indent + 1, len(stripped), "expected 'directive: payload'")
        name = stripped[:cut].strip()
        payload_col = indent + cut + 2
        payload = stripped[cut + 1 :]
        return lineno, name, payload, payload_col


def _tokens(payload: str, lineno: int, base_col: int):
    for m in re.finditer(r"\S+", payload):
        yield m.group(0), lineno, base_col + m.start()


def _expect(reader: _Reader, want: str):
    d = reader.directive()
    if d is None:
        _fail(_last_line(reader), 1, 1, "unexpected end of input, wanted %r" % want)
    lineno, name, payload, col = d
    if name != want:
        _fail(lineno, 1, len(name), "expected %r, got %r" % (want, name))
    return lineno, payload, col


def _last_line(reader: _Reader) -> int:
    return reader.items[-1][0] + 1 if reader.items else 1


def _parse_header(reader: _Reader) -> None:
    lineno, payload, col = _expect(reader, "foamfilm-format")
    if payload.strip() != "1":
        _fail(lineno, col, len(payload.strip()), "unsupported format version")


def _parse_presentation(reader: _Reader) -> Presentation:
    lineno, payload, col = _expect(reader, "presentation")
    tok = payload.strip()
    if tok not in ("ht", "ft"):
        _fail(lineno, col, len(tok), "presentation must be ht or ft")
    return Presentation(tok)


def _parse_word(payload: str, lineno: int, col: int):
    return tuple(_orient(t, ln, c) for t, ln, c in _tokens(payload, lineno, col))


def _parse_body(reader: _Reader, presentation: Presentation) -> Diagram:
    """`in:` line plus following `slice:` lines."""
    lineno, payload, col = _expect(reader, "in")
    word = _parse_word(payload, lineno, col)
    rows = []
    while True:
        nxt = reader.peek()
        if nxt is None:
            break
        stripped = nxt[1].strip()
        if not stripped.startswith("slice:"):
            break
        lineno, _, payload, col = reader.directive()
        rows.append(
            tuple(parse_cell(t, ln, c) for t, ln, c in _tokens(payload, lineno, col))
        )
    return Diagram(presentation, word, tuple(Slice(r) for r in rows))


def parse_diagram(text: str) -> Diagram:
    reader = _Reader(text)
    _parse_header(reader)
    presentation = _parse_presentation(reader)
    d = _parse_body(reader, presentation)
    extra = reader.peek()
    if extra is not None:
        _fail(extra[0], 1, len(extra[1].strip()), "trailing content after diagram")
    return d


def print_word(word) -> str:
    return " ".join(o.value for o in word)


def _body_lines(d: Diagram) -> list[str]:
    lines = ["in:" + ((" " + print_word(d.input)) if d.input else "")]
    for s in d.slices:
        cells = " ".join(cell_token(c) for c in s.cells)
        lines.append("slice:" + ((" " + cells) if cells else ""))
    return lines


def print_diagram(d: Diagram) -> str:
    lines = ["foamfilm-format: 1", "presentation: " + d.presentation.value]
    lines += _body_lines(d)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Movies

def _parse_event(lineno: int, payload: str, col: int):
    from .movies import FAMILY_TOKENS, MovieEvent

    toks = list(_tokens(payload, lineno, col))
    if len(toks) < 4:
        _fail(lineno, col, len(payload.strip()), "event needs: family at s=N c=N")
    (fam, fl, fc), (at, al, ac) = toks[0], toks[1]
    if fam not in FAMILY_TOKENS:
        _fail(fl, fc, len(fam), "unknown event family %r" % fam)
    if at != "at":
        _fail(al, ac, len(at), "expected 'at'")
    fields = []
    for tok, ln, c in toks[2:]:
        if "=" not in tok:
            _fail(ln, c, len(tok), "expected key=value, got %r" % tok)
        k, v = tok.split("=", 1)
        fields.append((k, v, ln, c, len(tok)))
    if len(fields) < 2 or fields[0][0] != "s" or fields[1][0] != "c":
        _fail(lineno, col, len(payload.strip()), "event needs s= and c= first")

    def _int(f):
        k, v, ln, c, w = f
        if not re.fullmatch(r"-?\d+", v):
            _fail(ln, c, w, "%s= wants an integer" % k)
        return int(v)

    s, cpos = _int(fields[0]), _int(fields[1])
    mirror: frozenset[str] = frozenset()
    params = []
    for f in fields[2:]:
        k, v, ln, c, w = f
        if k == "mirror":
            parts = v.split("+")
            if not all(p in ("lr", "td") for p in parts) or len(set(parts)) != len(parts):
                _fail(ln, c, w, "mirror wants lr, td or lr+td")
            mirror = frozenset(parts)
        else:
            params.append((k, v))
    return MovieEvent(FAMILY_TOKENS[fam], (s, cpos), mirror, tuple(params))


def event_line(ev) -> str:
    from .movies import family_token

    parts = [
        "event: %s at s=%d c=%d" % (family_token(ev.family), ev.site[0], ev.site[1])
    ]
    if ev.mirror:
        parts.append("mirror=" + "+".join(sorted(ev.mirror)))
    for k, v in ev.params:
        parts.append("%s=%s" % (k, v))
    return " ".join(parts)


def parse_movie(text: str):
    from .movies import Movie

    reader = _Reader(text)
    _parse_header(reader)
    presentation = _parse_presentation(reader)
    initial = _parse_body(reader, presentation)
    events = []
    declared_final = None
    while True:
        d = reader.directive()
        if d is None:
            break
        lineno, name, payload, col = d
        if name == "event":
            events.append(_parse_event(lineno, payload, col))
        elif name == "final":
            if payload.strip():
                _fail(lineno, col, len(payload.strip()), "final: takes no payload")
            declared_final = _parse_body(reader, presentation)
            extra = reader.peek()
            if extra is not None:
                _fail(extra[0], 1, len(extra[1].strip()), "trailing content after final frame")
            break
        else:
            _fail(lineno, 1, len(name), "expected event or final, got %r" % name)
    return Movie(initial, tuple(events), declared_final)


def print_movie(m) -> str:
    lines = [
        "foamfilm-format: 1",
        "presentation: " + m.initial.presentation.value,
    ]
    lines += _body_lines(m.initial)
    for ev in m.events:
        lines.append(event_line(ev))
    if m.declared_final is not None:
        lines.append("final:")
        lines += _body_lines(m.declared_final)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Catalog exports.  Deterministic: records sorted by id.

def export_web_catalog(moves, presentation: Presentation) -> str:
    lines = [
        "foamfilm-format: 1",
        "catalog: web-moves " + presentation.value,
    ]
    for mv in sorted(moves, key=lambda m: m.ident):
        lines.append("record: " + mv.ident)
        lines.append("family: " + mv.family)
        lines.append("note: " + mv.source_note)
        lines.append("lhs:")
        lines += _body_lines(mv.lhs)
        lines.append("rhs:")
        lines += _body_lines(mv.rhs)
        lines.append("end: " + mv.ident)
    return "\n".join(lines) + "\n"


def parse_web_catalog(text: str):
    from .webmoves import WebMove

    reader = _Reader(text)
    _parse_header(reader)
    lineno, payload, col = _expect(reader, "catalog")
    parts = payload.split()
    if len(parts) != 2 or parts[0] != "web-moves" or parts[1] not in ("ht", "ft"):
        _fail(lineno, col, len(payload.strip()), "expected 'web-moves ht|ft'")
    presentation = Presentation(parts[1])
    moves = []
    while reader.peek() is not None:
        _, ident_, _ = _expect(reader, "record")
        _, family, _ = _expect(reader, "family")
        _, note, _ = _expect(reader, "note")
        _expect(reader, "lhs")
        lhs = _parse_body(reader, presentation)
        _expect(reader, "rhs")
        rhs = _parse_body(reader, presentation)
        endline, endpayload, endcol = _expect(reader, "end")
        if endpayload.strip() != ident_.strip():
            _fail(endline, endcol, len(endpayload.strip()), "end does not match record")
        moves.append(
            WebMove(ident_.strip(), family.strip(), lhs, rhs, note.strip())
        )
    return moves


def export_movie_catalog(moves, presentation: Presentation) -> str:
    lines = [
        "foamfilm-format: 1",
        "catalog: movie-moves " + presentation.value,
    ]
    for mv in sorted(moves, key=lambda m: m.ident):
        lines.append("record: " + mv.ident)
        lines.append("group: " + mv.group.value)
        lines.append("note: " + mv.source_note)
        lines.append("initial:")
        lines += _body_lines(mv.shared_initial)
        lines.append("lhs-events:")
        lines += [event_line(ev) for ev in mv.lhs_events]
        lines.append("rhs-events:")
        lines += [event_line(ev) for ev in mv.rhs_events]
        lines.append("end: " + mv.ident)
    return "\n".join(lines) + "\n"


def parse_movie_catalog(text: str):
    from .moviemoves import MoveGroup, MovieMove

    reader = _Reader(text)
    _parse_header(reader)
    lineno, payload, col = _expect(reader, "catalog")
    parts = payload.split()
    if len(parts) != 2 or parts[0] != "movie-moves" or parts[1] not in ("ht", "ft"):
        _fail(lineno, col, len(payload.strip()), "expected 'movie-moves ht|ft'")
    presentation = Presentation(parts[1])
    moves = []
    while reader.peek() is not None:
        _, ident_, _ = _expect(reader, "record")
        gline, group, gcol = _expect(reader, "group")
        try:
            grp = MoveGroup(group.strip())
        except ValueError:
            _fail(gline, gcol, len(group.strip()), "unknown move group %r" % group.strip())
        _, note, _ = _expect(reader, "note")
        _expect(reader, "initial")
        initial = _parse_body(reader, presentation)

        def _events(section: str):
            _expect(reader, section)
            evs = []
            while True:
                nxt = reader.peek()
                if nxt is None or not nxt[1].strip().startswith("event:"):
                    return tuple(evs)
                lineno2, _, payload2, col2 = reader.directive()
                evs.append(_parse_event(lineno2, payload2, col2))

        lhs_events = _events("lhs-events")
        rhs_events = _events("rhs-events")
        endline, endpayload, endcol = _expect(reader, "end")
        if endpayload.strip() != ident_.strip():
            _fail(endline, endcol, len(endpayload.strip()), "end does not match record")
        moves.append(
            MovieMove(ident_.strip(), grp, initial, lhs_events, rhs_events, note.strip())
        )
    return moves
