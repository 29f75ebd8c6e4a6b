"""Elementary movie events: the steps that connect consecutive frames.

A movie presents a surface-with-singularities as a stack of web frames read
bottom to top.  Consecutive frames differ by exactly one event: a Morse move
of the underlying surface (birth, death, saddle), a singular move at a
vertex (zip, digon, exchange), a Reidemeister move carried out over time, a
framing event trading marks against curls, a catalog web move, or a plain
re-slicing of the same frame.

Every event family except the last two determines a small before/after patch
pair with equal boundary words; applying the event splices the after patch
over a window match of the before patch.  As everywhere else in the package,
matching happens on the normal form of the frame, so sites are coordinates
into ``normal_form(frame)``.  This is what lets a movie stay short: the
circle left by a merging saddle is snake-sliced as written but round in
normal form, so a death can follow a saddle directly.  Web-move events defer
to ``apply_web_move`` and reslice events replace the frame by its normal
form.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .cells import (
    DOWN,
    UP,
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
from .diagram import (
    Diagram,
    Presentation,
    diagram,
    diagram_reverse_orientations,
)
from .errors import (
    FinalFrameMismatch,
    SiteMismatch,
    SiteStale,
    UnknownFamily,
)
from .invariants import chi_delta
from .normal import equal_up_to_sliding, normal_form
from .webmoves import (
    MatchSite,
    Patch,
    _mirrored,
    apply_web_move,
    layout_anchors,
    layout_apply,
    web_move_by_id,
)

BIRTH = "Birth"
DEATH = "Death"
SADDLE = "Saddle"
ZIP_BUBBLE = "ZipBubble"
UNZIP_BUBBLE = "UnzipBubble"
DIGON_CREATE = "DigonCreate"
DIGON_ANNIHILATE = "DigonAnnihilate"
VERTEX_EXCHANGE = "VertexExchange"
R2_DO = "R2Do"
R2_UNDO = "R2Undo"
R3 = "R3"
FORK_THROUGH_STRAND = "ForkThroughStrand"
VERTEX_PAST_STRAND = "VertexPastStrand"
KINK_TWIST = "KinkTwist"
TWIST_PAST_CROSSING = "TwistPastCrossing"
TWIST_PAST_VERTEX = "TwistPastVertex"
TWIST_PAIR_CREATE = "TwistPairCreate"
TWIST_PAIR_ANNIHILATE = "TwistPairAnnihilate"
WEBMOVE_EVENT = "WebMoveEvent"
PLANAR_RESLICE = "PlanarReslice"

FAMILIES = (
    BIRTH,
    DEATH,
    SADDLE,
    ZIP_BUBBLE,
    UNZIP_BUBBLE,
    DIGON_CREATE,
    DIGON_ANNIHILATE,
    VERTEX_EXCHANGE,
    R2_DO,
    R2_UNDO,
    R3,
    FORK_THROUGH_STRAND,
    VERTEX_PAST_STRAND,
    KINK_TWIST,
    TWIST_PAST_CROSSING,
    TWIST_PAST_VERTEX,
    TWIST_PAIR_CREATE,
    TWIST_PAIR_ANNIHILATE,
    WEBMOVE_EVENT,
    PLANAR_RESLICE,
)

# Text-format token -> family name.  Tokens are what event lines carry.
FAMILY_TOKENS = {
    "birth": BIRTH,
    "death": DEATH,
    "saddle": SADDLE,
    "zip-bubble": ZIP_BUBBLE,
    "unzip-bubble": UNZIP_BUBBLE,
    "digon-create": DIGON_CREATE,
    "digon-annihilate": DIGON_ANNIHILATE,
    "vertex-exchange": VERTEX_EXCHANGE,
    "r2-do": R2_DO,
    "r2-undo": R2_UNDO,
    "r3": R3,
    "fork-through-strand": FORK_THROUGH_STRAND,
    "vertex-past-strand": VERTEX_PAST_STRAND,
    "kink-twist": KINK_TWIST,
    "twist-past-crossing": TWIST_PAST_CROSSING,
    "twist-past-vertex": TWIST_PAST_VERTEX,
    "twist-pair-create": TWIST_PAIR_CREATE,
    "twist-pair-annihilate": TWIST_PAIR_ANNIHILATE,
    "webmove": WEBMOVE_EVENT,
    "planar-reslice": PLANAR_RESLICE,
}
_TOKEN_OF = {fam: tok for tok, fam in FAMILY_TOKENS.items()}


def family_token(family: str) -> str:
    try:
        return _TOKEN_OF[family]
    except KeyError:
        raise UnknownFamily(family) from None


@dataclass(frozen=True)
class MovieEvent:
    """One step of a movie.

    ``site`` anchors the before patch: (row, cell index) of its first cell,
    or (level, wire position) for zero-row patches.  ``mirror`` is a subset
    of {"lr", "td"} applied to both patches before matching.  ``params`` are
    ordered key=value string pairs; ``dir=rev`` swaps the patches, every
    other key is family-specific (orientations, signs, twist kinds, shapes,
    or the web move id).
    """

    family: str
    site: tuple[int, int]
    mirror: frozenset = frozenset()
    params: tuple[tuple[str, str], ...] = ()

    def param(self, key: str, default: str | None = None) -> str | None:
        for k, v in self.params:
            if k == key:
                return v
        return default


def event(family: str, si: int, ci: int, mirror=(), **params) -> MovieEvent:
    """Convenience constructor; parameter values are stringified."""
    return MovieEvent(
        family, (si, ci), frozenset(mirror), tuple((k, str(v)) for k, v in params.items())
    )


@dataclass(frozen=True)
class Movie:
    initial: Diagram
    events: tuple[MovieEvent, ...] = ()
    declared_final: Diagram | None = None

    @property
    def presentation(self) -> Presentation:
        return self.initial.presentation


@dataclass(frozen=True)
class MovieGenerator:
    """A catalog template: one event family with its default patch pair."""

    ident: str
    family: str
    params: tuple[tuple[str, str], ...]
    before: Diagram
    after: Diagram
    source_note: str


@dataclass(frozen=True)
class FoamStats:
    counts: dict
    chi_delta_sum: int


# ---------------------------------------------------------------------------
# Patch builders.  Each takes (presentation, params-dict, event index) and
# returns (before, after).  Parameter problems raise SiteMismatch so a bad
# event line fails with its index attached.

_ORIENTS = {"u": UP, "d": DOWN}
_SIGNS = {"+": 1, "-": -1}
_HALF = {"hu": TwistKind.UNDER, "ho": TwistKind.OVER}


def _take(q, key, default, table, i):
    raw = q.get(key, default)
    if raw not in table:
        raise SiteMismatch(i, "bad %s=%r" % (key, raw))
    return table[raw]


def _kind(p, q, i, default="hu"):
    if p is Presentation.FT:
        if q.get("k", "ft") != "ft":
            raise SiteMismatch(i, "ft frames only carry k=ft marks")
        return TwistKind.FULL
    return _take(q, "k", default, _HALF, i)


def _join_split(o: Orientation):
    """The 2-in-1-out and 1-in-2-out vertex cells for a parallel pair."""
    if o is UP:
        return merge_up(), split_up()
    return split_down(), merge_down()


def _px_birth(p, q, i):
    o = _take(q, "o", "d", _ORIENTS, i)
    return diagram(p, (), []), diagram(p, (), [[cup(o)], [cap(o)]])


def _px_death(p, q, i):
    b, a = _px_birth(p, q, i)
    return a, b


def _px_saddle(p, q, i):
    o = _take(q, "o", "u", _ORIENTS, i)
    flat = diagram(p, (o, o.flip()), [])
    pinched = diagram(p, (o, o.flip()), [[cap(o)], [cup(o)]])
    return flat, pinched


def _px_zip(p, q, i):
    o = _take(q, "o", "u", _ORIENTS, i)
    join, split = _join_split(o)
    shape = q.get("shape", "pinch")
    if shape == "pinch":
        return (
            diagram(p, (o, o), []),
            diagram(p, (o, o), [[join], [split]]),
        )
    if shape == "turnback":
        # The fused pair read at a turnback: a free circle beside the strand
        # pinches onto it.  The reverse direction is how a lens sliced as
        # split-then-join unzips without re-slicing the whole frame.
        beside = diagram(p, (o,), [[ident(o), cup(o)], [ident(o), cap(o)]])
        lens = diagram(p, (o,), [[split], [join]])
        return beside, lens
    raise SiteMismatch(i, "zip shape wants pinch or turnback")


def _px_unzip(p, q, i):
    b, a = _px_zip(p, q, i)
    return a, b


def _px_digon_create(p, q, i):
    o = _take(q, "o", "u", _ORIENTS, i)
    join, split = _join_split(o)
    return (
        diagram(p, (o,), []),
        diagram(p, (o,), [[split], [join]]),
    )


def _px_digon_annihilate(p, q, i):
    b, a = _px_digon_create(p, q, i)
    return a, b


def _px_vertex_exchange(p, q, i):
    o = _take(q, "o", "u", _ORIENTS, i)
    _join, split = _join_split(o)
    right = diagram(p, (o,), [[split], [ident(o), split]])
    left = diagram(p, (o,), [[split], [split, ident(o)]])
    return right, left


def _px_r2_do(p, q, i):
    shape = q.get("shape", "wave")
    if shape == "wave":
        s = _take(q, "s", "+", _SIGNS, i)
        a = _take(q, "a", "u", _ORIENTS, i)
        b = _take(q, "b", "u", _ORIENTS, i)
        return (
            diagram(p, (a, b), []),
            diagram(p, (a, b), [[crossing(s, a, b)], [crossing(-s, b, a)]]),
        )
    if shape == "turnback":
        # A strand threading the two legs of a cap, over both or under both.
        # The strand is the right crossing input in both rows, so "over"
        # means two negative sign data.
        o = _take(q, "o", "d", _ORIENTS, i)
        t = _take(q, "t", "u", _ORIENTS, i)
        over = q.get("over", "y")
        if over not in ("y", "n"):
            raise SiteMismatch(i, "over wants y or n")
        c = -1 if over == "y" else +1
        plain = diagram(p, (o, o.flip(), t), [[cap(o), ident(t)]])
        threaded = diagram(
            p,
            (o, o.flip(), t),
            [
                [ident(o), crossing(c, o.flip(), t)],
                [crossing(c, o, t), ident(o.flip())],
                [ident(t), cap(o)],
            ],
        )
        return plain, threaded
    raise SiteMismatch(i, "r2 shape wants wave or turnback")


def _px_r2_undo(p, q, i):
    b, a = _px_r2_do(p, q, i)
    return a, b


# Sign triples whose over-strand relations are cyclic: no strand is on top,
# so no slide across the middle crossing exists.
_R3_CYCLIC = {(1, -1, 1), (-1, 1, -1)}


def _px_r3(p, q, i):
    s1 = _take(q, "s1", "+", _SIGNS, i)
    s2 = _take(q, "s2", "+", _SIGNS, i)
    s3 = _take(q, "s3", "+", _SIGNS, i)
    if (s1, s2, s3) in _R3_CYCLIC:
        raise SiteMismatch(i, "crossing signs admit no over-strand order")
    a = _take(q, "a", "u", _ORIENTS, i)
    b = _take(q, "b", "u", _ORIENTS, i)
    c = _take(q, "c", "u", _ORIENTS, i)
    before = diagram(
        p,
        (a, b, c),
        [
            [crossing(s1, a, b), ident(c)],
            [ident(b), crossing(s2, a, c)],
            [crossing(s3, b, c), ident(a)],
        ],
    )
    after = diagram(
        p,
        (a, b, c),
        [
            [ident(a), crossing(s3, b, c)],
            [crossing(s2, a, c), ident(b)],
            [ident(c), crossing(s1, a, b)],
        ],
    )
    return before, after


def _slide_patches(p, q, i, csign):
    s = _take(q, "s", "u", _ORIENTS, i)
    t = _take(q, "t", "u", _ORIENTS, i)
    vx = split_up() if t is UP else merge_down()
    near = diagram(p, (s, t), [[crossing(csign, s, t)], [vx, ident(s)]])
    far = diagram(
        p,
        (s, t),
        [
            [ident(s), vx],
            [crossing(csign, s, t), ident(t)],
            [ident(t), crossing(csign, s, t)],
        ],
    )
    return near, far


def _px_fork_through_strand(p, q, i):
    return _slide_patches(p, q, i, +1)


def _px_vertex_past_strand(p, q, i):
    return _slide_patches(p, q, i, -1)


def _kink_trade(p, q, i):
    """Flat-side mark, loop mark and curl sign for the framed first move.

    Half-twist frames trade a flat (k, s) mark for a curl of sign s whose
    loop carries the opposite kind with sign -s; full-twist frames trade a
    flat (ft, s) mark for a bare curl of sign s, and a plain strand for a
    curl of sign c with an (ft, -c) loop mark.
    """
    if p is Presentation.FT:
        raw = q.get("s", "0")
        if raw == "0":
            c = _take(q, "c", "+", _SIGNS, i)
            return None, twist(TwistKind.FULL, -c, DOWN), c
        if raw not in _SIGNS:
            raise SiteMismatch(i, "s wants +, - or 0")
        s = _SIGNS[raw]
        return twist(TwistKind.FULL, s, UP), None, s
    k = _kind(p, q, i)
    s = _take(q, "s", "+", _SIGNS, i)
    other = TwistKind.OVER if k is TwistKind.UNDER else TwistKind.UNDER
    return twist(k, s, UP), twist(other, -s, DOWN), s


def _px_kink_twist(p, q, i):
    flat_mark, loop_mark, c = _kink_trade(p, q, i)
    shape = q.get("shape", "through")
    if shape == "through":
        flat = diagram(p, (UP,), [] if flat_mark is None else [[flat_mark]])
        kinked = diagram(
            p,
            (UP,),
            [
                [cup(DOWN), ident(UP)],
                [loop_mark or ident(DOWN), crossing(c, UP, UP)],
                [cap(DOWN), ident(UP)],
            ],
        )
    elif shape == "capcurl":
        l = _take(q, "l", "u", _ORIENTS, i)
        mark_rows = [] if flat_mark is None else [[_reorient(flat_mark, l), ident(l.flip())]]
        flat = diagram(p, (l, l.flip()), mark_rows + [[cap(l)]])
        loop_rows = [] if loop_mark is None else [[_reorient(loop_mark, l), ident(l.flip())]]
        kinked = diagram(
            p,
            (l, l.flip()),
            loop_rows + [[crossing(c, l, l.flip())], [cap(l.flip())]],
        )
    elif shape == "cupcurl":
        l = _take(q, "l", "u", _ORIENTS, i)
        mark_rows = [] if flat_mark is None else [[_reorient(flat_mark, l), ident(l.flip())]]
        flat = diagram(p, (), [[cup(l)]] + mark_rows)
        loop_rows = [] if loop_mark is None else [[_reorient(loop_mark, l), ident(l.flip())]]
        kinked = diagram(
            p,
            (),
            [[cup(l.flip())], [crossing(c, l.flip(), l)]] + loop_rows,
        )
    else:
        raise SiteMismatch(i, "kink shape wants through, capcurl or cupcurl")
    if shape == "through" and _take(q, "o", "u", _ORIENTS, i) is DOWN:
        flat = diagram_reverse_orientations(flat)
        kinked = diagram_reverse_orientations(kinked)
    return flat, kinked


def _reorient(mark, o):
    return twist(mark.kind, mark.sign, o)


def _px_twist_past_crossing(p, q, i):
    k = _kind(p, q, i)
    s = _take(q, "s", "+", _SIGNS, i)
    c = _take(q, "c", "+", _SIGNS, i)
    a = _take(q, "a", "u", _ORIENTS, i)
    b = _take(q, "b", "u", _ORIENTS, i)
    below = diagram(p, (a, b), [[twist(k, s, a), ident(b)], [crossing(c, a, b)]])
    above = diagram(p, (a, b), [[crossing(c, a, b)], [ident(b), twist(k, s, a)]])
    return below, above


# Legal (kind, sign) pairs on each vertex side of a half-twist frame; the
# mirrors of an event reach the sign-flipped versions.
_HT_VERTEX_SIDES = {
    ("s", TwistKind.UNDER, 1),
    ("s", TwistKind.OVER, -1),
    ("m", TwistKind.OVER, 1),
    ("m", TwistKind.UNDER, -1),
}


def _px_twist_past_vertex(p, q, i):
    v = q.get("v", "s")
    if v not in ("s", "m"):
        raise SiteMismatch(i, "v wants s (split) or m (merge)")
    s = _take(q, "s", "+", _SIGNS, i)
    o = _take(q, "o", "u", _ORIENTS, i)
    if p is Presentation.FT:
        mk = twist(TwistKind.FULL, s, UP)
        if v == "s":
            trunk = diagram(p, (UP,), [[mk], [split_up()]])
            legs = diagram(
                p,
                (UP,),
                [[split_up()], [crossing(s, UP, UP)], [crossing(s, UP, UP)], [mk, mk]],
            )
        else:
            trunk = diagram(p, (UP, UP), [[merge_up()], [mk]])
            legs = diagram(
                p,
                (UP, UP),
                [[mk, mk], [crossing(s, UP, UP)], [crossing(s, UP, UP)], [merge_up()]],
            )
        if o is DOWN:
            trunk = diagram_reverse_orientations(trunk)
            legs = diagram_reverse_orientations(legs)
        return trunk, legs
    k = _kind(p, q, i, default="hu" if (v, s) != ("m", 1) else "ho")
    if (v, k, s) not in _HT_VERTEX_SIDES:
        raise SiteMismatch(i, "no such mark-through-vertex trade; mirror one that exists")
    mk = twist(k, s, UP)
    if v == "s":
        trunk = diagram(p, (UP,), [[mk], [split_up()]])
        legs = diagram(p, (UP,), [[split_up()], [mk, mk], [crossing(s, UP, UP)]])
    else:
        trunk = diagram(p, (UP, UP), [[merge_up()], [mk]])
        legs = diagram(p, (UP, UP), [[crossing(s, UP, UP)], [mk, mk], [merge_up()]])
    if o is DOWN:
        trunk = diagram_reverse_orientations(trunk)
        legs = diagram_reverse_orientations(legs)
    return trunk, legs


def _px_twist_pair_create(p, q, i):
    k = _kind(p, q, i)
    e = _take(q, "e", "+", _SIGNS, i)
    o = _take(q, "o", "u", _ORIENTS, i)
    return (
        diagram(p, (o,), []),
        diagram(p, (o,), [[twist(k, e, o)], [twist(k, -e, o)]]),
    )


def _px_twist_pair_annihilate(p, q, i):
    b, a = _px_twist_pair_create(p, q, i)
    return a, b


_PATCH_BUILDERS = {
    BIRTH: _px_birth,
    DEATH: _px_death,
    SADDLE: _px_saddle,
    ZIP_BUBBLE: _px_zip,
    UNZIP_BUBBLE: _px_unzip,
    DIGON_CREATE: _px_digon_create,
    DIGON_ANNIHILATE: _px_digon_annihilate,
    VERTEX_EXCHANGE: _px_vertex_exchange,
    R2_DO: _px_r2_do,
    R2_UNDO: _px_r2_undo,
    R3: _px_r3,
    FORK_THROUGH_STRAND: _px_fork_through_strand,
    VERTEX_PAST_STRAND: _px_vertex_past_strand,
    KINK_TWIST: _px_kink_twist,
    TWIST_PAST_CROSSING: _px_twist_past_crossing,
    TWIST_PAST_VERTEX: _px_twist_past_vertex,
    TWIST_PAIR_CREATE: _px_twist_pair_create,
    TWIST_PAIR_ANNIHILATE: _px_twist_pair_annihilate,
}


def event_patches(p: Presentation, e: MovieEvent, index: int = 0):
    """The mirrored, direction-resolved (before, after) pair of an event."""
    try:
        build = _PATCH_BUILDERS[e.family]
    except KeyError:
        raise UnknownFamily(e.family) from None
    q = dict(e.params)
    rev = q.pop("dir", None)
    if rev not in (None, "rev"):
        raise SiteMismatch(index, "dir only takes rev")
    before, after = build(p, q, index)
    if rev:
        before, after = after, before
    if e.mirror:
        before = _mirrored(before, e.mirror)
        after = _mirrored(after, e.mirror)
    return before, after


def apply_event(frame: Diagram, e: MovieEvent, index: int = 0) -> Diagram:
    p = frame.presentation
    if e.family == PLANAR_RESLICE:
        return normal_form(frame)
    if e.family == WEBMOVE_EVENT:
        ident_ = e.param("move")
        if ident_ is None:
            raise SiteMismatch(index, "webmove event needs move=<id>")
        mv = web_move_by_id(p, ident_)
        direction = "reverse" if e.param("dir") == "rev" else "forward"
        site = MatchSite(Patch(*e.site), e.mirror)
        try:
            return apply_web_move(frame, mv, site, direction)
        except SiteStale:
            raise SiteMismatch(index, "web move window is stale") from None
    before, after = event_patches(p, e, index)
    nf = normal_form(frame)
    patch = Patch(*e.site)
    out = layout_apply(nf, before, patch, after)
    if out is None:
        raise SiteMismatch(
            index,
            "%s patch not found at s=%d c=%d"
            % (family_token(e.family), e.site[0], e.site[1]),
        )
    return out


def event_sites(frame: Diagram, e: MovieEvent) -> list[tuple[int, int]]:
    """All sites in normal_form(frame) where the event's before patch fits."""
    if e.family in (WEBMOVE_EVENT, PLANAR_RESLICE):
        raise UnknownFamily(e.family + " events carry no before patch")
    before, _after = event_patches(frame.presentation, e)
    nf = normal_form(frame)
    return [(p.slice_index, p.cell_index) for p in layout_anchors(nf, before)]


def movie_frames(m: Movie) -> list[Diagram]:
    """All frames, initial first; raises on the first event that fails."""
    frames = [m.initial]
    for idx, e in enumerate(m.events):
        frames.append(apply_event(frames[-1], e, idx))
    return frames


def validate_movie(m: Movie) -> Diagram:
    m.initial.validate()
    final = movie_frames(m)[-1]
    if m.declared_final is not None and not equal_up_to_sliding(
        final, m.declared_final
    ):
        raise FinalFrameMismatch(
            "computed final frame is not the declared one up to sliding"
        )
    return final


def foam_stats(m: Movie) -> FoamStats:
    validate_movie(m)
    counts = Counter(e.family for e in m.events)
    total = sum(chi_delta(fam) * n for fam, n in counts.items())
    return FoamStats(dict(counts), total)


# ---------------------------------------------------------------------------
# Generator catalog: one template per family with its default parameters.

def _defaults(p: Presentation, family: str) -> tuple[tuple[str, str], ...]:
    if p is Presentation.FT:
        if family in (TWIST_PAST_CROSSING, TWIST_PAIR_CREATE, TWIST_PAIR_ANNIHILATE):
            return (("k", "ft"),)
        if family == KINK_TWIST:
            return (("s", "0"),)
    return ()


_GENERATOR_NOTES = {
    BIRTH: "free circle appears",
    DEATH: "free circle disappears",
    SADDLE: "two antiparallel strands reconnect",
    ZIP_BUBBLE: "parallel pair pinches into a joined lens",
    UNZIP_BUBBLE: "joined lens separates into a parallel pair",
    DIGON_CREATE: "strand grows a two-sided face",
    DIGON_ANNIHILATE: "two-sided face collapses back to a strand",
    VERTEX_EXCHANGE: "nested splits re-associate",
    R2_DO: "wave pair of opposite crossings appears",
    R2_UNDO: "wave pair of opposite crossings cancels",
    R3: "strand slides across a crossing",
    FORK_THROUGH_STRAND: "vertex passes a strand on the under side",
    VERTEX_PAST_STRAND: "vertex passes a strand on the over side",
    KINK_TWIST: "flat mark traded for a curl with loop mark",
    TWIST_PAST_CROSSING: "mark rides through a crossing",
    TWIST_PAST_VERTEX: "trunk mark pushed onto both legs",
    TWIST_PAIR_CREATE: "cancelling mark pair appears",
    TWIST_PAIR_ANNIHILATE: "cancelling mark pair disappears",
}


def generator_catalog(p: Presentation) -> tuple[MovieGenerator, ...]:
    out = []
    for family in FAMILIES:
        if family in (WEBMOVE_EVENT, PLANAR_RESLICE):
            continue
        params = _defaults(p, family)
        e = MovieEvent(family, (0, 0), frozenset(), params)
        before, after = event_patches(p, e)
        out.append(
            MovieGenerator(
                "gen." + family_token(family),
                family,
                params,
                before,
                after,
                _GENERATOR_NOTES[family],
            )
        )
    return tuple(out)
