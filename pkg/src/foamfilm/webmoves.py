"""Planar rewrite rules for framed webs.

The two theorem catalogs (half-twist and full-twist presentation) live here
as WebMove values: a pair of small diagrams with equal boundary words.  Each
source picture is transcribed once under a stable base id; the remaining
orientation, sign, kind, crossing and mirror variants are generated by the
symmetry operators and filtered mechanically (validation plus local framing
conservation on vertex-free components), then deduplicated.  Generated
entries get .vN suffixes in enumeration order.

Matching is corridor-window matching: an occurrence of a pattern in a
diagram is a run of rows in which each row either equals the next pattern
row (consuming the corridor wire interval exactly) or lets the corridor pass
through id cells untouched.  Flanking cells act on disjoint wires, so
replacement reassembles three columns (left flank, replacement, right flank)
padded with id rows to a common height.  Zero-row patterns (a bare strand
side, as in the full-twist kink moves) anchor at a (level, wire) position
instead of a (row, cell) one.

Matching and rewriting operate on normal_form(d), widened to its
interchange-equivalent relayouts: normal form compacts cells downward, which
can glue a pattern row to unrelated neighbours, so the matcher also probes
alternative slicings of the same diagram (see _layouts).  Reported sites are
always coordinates in the first layout that fits, with normal form ordered
first, so site tuples stay stable for anything normal form alone can match.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cells import (
    Cell,
    DOWN,
    TwistKind,
    UP,
    cap,
    crossing,
    cup,
    ident,
    merge_down,
    merge_up,
    split_up,
    twist,
)
from .diagram import (
    Diagram,
    Presentation,
    Slice,
    diagram,
    diagram_flip_crossings,
    diagram_flip_time,
    diagram_flip_twist_kind,
    diagram_flip_twist_signs,
    diagram_mirror_lr,
    diagram_reverse_orientations,
)
from .errors import PresentationMismatch, SiteStale, UnknownId, UnpairedHalfTwist
from .invariants import check_framing_conservation
from .normal import normal_form
from .wires import twist_segments


@dataclass(frozen=True)
class Patch:
    """Anchor of a window: (row, cell index) of the first pattern cell.

    For zero-row patterns the anchor is (level, wire position) instead: the
    replacement rows are spliced in at that height.
    """

    slice_index: int
    cell_index: int


@dataclass(frozen=True)
class MatchSite:
    patch: Patch
    mirror_flags: frozenset  # subset of {"lr", "td"}


@dataclass(frozen=True)
class WebMove:
    ident: str
    family: str
    lhs: Diagram
    rhs: Diagram
    source_note: str

    def __post_init__(self):
        li, lo = self.lhs.validate()
        ri, ro = self.rhs.validate()
        assert self.lhs.presentation is self.rhs.presentation
        assert (li, lo) == (ri, ro), "boundary mismatch in %s" % self.ident

    @property
    def presentation(self) -> Presentation:
        return self.lhs.presentation


# ---------------------------------------------------------------------------
# Corridor matching

def _offsets(cells):
    """Per-cell (in_offset, out_offset) prefix sums plus the row totals."""
    spans = []
    i = o = 0
    for c in cells:
        spans.append((i, o))
        i += len(c.in_word)
        o += len(c.out_word)
    return spans, i, o


def _consume_options(cells, pos, pattern_cells):
    """Starts where pattern_cells sit at corridor position pos, exactly."""
    spans, _ti, _to = _offsets(cells)
    out = []
    n = len(pattern_cells)
    for a, (i_off, o_off) in enumerate(spans):
        if i_off == pos and tuple(cells[a : a + n]) == tuple(pattern_cells):
            out.append((a, o_off))
    return out


def _skip_options(cells, pos, width):
    """Ways the corridor [pos, pos+width) can pass through this row.

    Positive width: the corridor must be covered by id cells exactly; cells
    of zero input arity sitting at the boundary belong to the flanks.  Zero
    width: the corridor is a point and may pass on either side of any
    zero-arity cells anchored there.  Returns (a, b, out_pos) with [a, b)
    the corridor id-cell run (empty when width is 0).
    """
    spans, total_in, total_out = _offsets(cells)
    if width == 0:
        opts = []
        for a, (i_off, o_off) in enumerate(spans):
            if i_off == pos:
                opts.append((a, a, o_off))
            elif i_off > pos:
                break
        if pos == total_in:
            opts.append((len(cells), len(cells), total_out))
        # dedupe identical out positions (mixed zero/nonzero arity cells)
        seen, out = set(), []
        for a, b, op in opts:
            if (a, op) not in seen:
                seen.add((a, op))
                out.append((a, b, op))
        return out
    a = None
    for idx, (i_off, _o_off) in enumerate(spans):
        if i_off == pos and len(cells[idx].in_word) > 0:
            a = idx
            break
    if a is None:
        return []
    b, covered = a, 0
    while covered < width:
        if b >= len(cells) or not cells[b].is_id:
            return []
        covered += 1
        b += 1
    return [(a, b, spans[a][1])]


def _match_rows(slices, r, j, pos, pattern_rows, plan):
    """Depth-first corridor search; returns the completed plan or None."""
    if j == len(pattern_rows):
        return plan
    if r >= len(slices):
        return None
    cells = slices[r].cells
    prow = pattern_rows[j]
    width = sum(len(c.in_word) for c in prow)
    for a, out_pos in _consume_options(cells, pos, prow):
        res = _match_rows(
            slices, r + 1, j + 1, out_pos, pattern_rows, plan + [("consume", r, a, len(prow))]
        )
        if res is not None:
            return res
    for a, b, out_pos in _skip_options(cells, pos, width):
        res = _match_rows(
            slices, r + 1, j, out_pos, pattern_rows, plan + [("skip", r, a, b)]
        )
        if res is not None:
            return res
    return None


def _match_at(d: Diagram, pattern: Diagram, patch: Patch):
    """Verify/extend a match anchored at patch; returns a plan or None.

    The plan is a list of ("consume", row, start, n) / ("skip", row, a, b)
    entries; for zero-row patterns it is [] and the patch is (level, wire).
    """
    rows = [s.cells for s in pattern.slices]
    if not rows:
        level, wpos = patch.slice_index, patch.cell_index
        if not (0 <= level <= d.n_slices) or wpos < 0:
            return None
        word = d.word_at(level)
        if word[wpos : wpos + len(pattern.input)] != pattern.input:
            return None
        return []
    r0, c0 = patch.slice_index, patch.cell_index
    if not (0 <= r0 < d.n_slices):
        return None
    cells = d.slices[r0].cells
    n = len(rows[0])
    if tuple(cells[c0 : c0 + n]) != tuple(rows[0]):
        return None
    spans, _i, _o = _offsets(cells)
    if c0 >= len(spans):
        return None
    out_pos = spans[c0][1]
    return _match_rows(d.slices, r0 + 1, 1, out_pos, rows, [("consume", r0, c0, n)])


def _anchors(d: Diagram, pattern: Diagram):
    rows = [s.cells for s in pattern.slices]
    found = []
    if not rows:
        w = len(pattern.input)
        for level in range(d.n_slices + 1):
            word = d.word_at(level)
            for pos in range(len(word) - w + 1):
                if word[pos : pos + w] == pattern.input:
                    found.append(Patch(level, pos))
        return found
    n = len(rows[0])
    for r0 in range(d.n_slices):
        cells = d.slices[r0].cells
        for c0 in range(len(cells) - n + 1):
            if tuple(cells[c0 : c0 + n]) == tuple(rows[0]):
                if _match_at(d, pattern, Patch(r0, c0)) is not None:
                    found.append(Patch(r0, c0))
    return found


def _splice(d: Diagram, pattern: Diagram, patch: Patch, plan, replacement: Diagram) -> Diagram:
    """Replace the matched corridor content with the replacement rows."""
    rep_rows = [list(s.cells) for s in replacement.slices]
    if not pattern.slices:
        level, wpos = patch.slice_index, patch.cell_index
        word = d.word_at(level)
        lword, rword = word[:wpos], word[wpos + len(pattern.input) :]
        new_rows = [
            tuple(ident(o) for o in lword) + tuple(row) + tuple(ident(o) for o in rword)
            for row in rep_rows
        ]
        lo, hi = level, level
    else:
        lo = plan[0][1]
        hi = plan[-1][1] + 1
        lefts, rights = [], []
        for entry in plan:
            kind, r, a, bn = entry
            cells = d.slices[r].cells
            if kind == "consume":
                lefts.append(list(cells[:a]))
                rights.append(list(cells[a + bn :]))
            else:
                lefts.append(list(cells[:a]))
                rights.append(list(cells[bn:]))
        m = max(len(plan), len(rep_rows))

        def _pad(col, top_word):
            while len(col) < m:
                col.append([ident(o) for o in top_word])
            return col

        def _top(col, fallback):
            if not col or not col[-1]:
                return fallback
            return sum((list(c.out_word) for c in col[-1]), [])

        lword = _top(lefts, [])
        rword = _top(rights, [])
        _pad(lefts, lword)
        _pad(rights, rword)
        mid = rep_rows + [
            [ident(o) for o in replacement.output] for _ in range(m - len(rep_rows))
        ]
        new_rows = [tuple(lefts[i]) + tuple(mid[i]) + tuple(rights[i]) for i in range(m)]
    kept = [Slice(row) for row in new_rows if row and not Slice(row).all_id]
    kept = [s for s in kept if s.cells]
    out = Diagram(
        d.presentation, d.input, d.slices[:lo] + tuple(kept) + d.slices[hi:]
    )
    out.validate()
    return out


# ---------------------------------------------------------------------------
# Layout search.
#
# normal_form compacts aggressively, which can glue an unrelated cell into a
# row the pattern needs clean (a mark pulled down beside a cup blocks the
# whole curl window).  Matching therefore searches the compacted layout plus
# diagrams reachable from it by single-cell relayout moves: factoring one
# cell out of its slice, or merging one cell into a neighbouring slice when
# its wires pass straight through.  Sites stay plain (row, cell) pairs; a
# site is interpreted against the first layout in search order where the
# pattern fits, so anything matchable in the compacted layout keeps the
# coordinates it always had.

_LAYOUT_CAP = 96
_LAYOUTS_CACHE: dict = {}


def _layout_key(d: Diagram):
    return (d.input, tuple(s.cells for s in d.slices))


def _split_variants(d: Diagram):
    out = []
    for k, s in enumerate(d.slices):
        nonid = [i for i, c in enumerate(s.cells) if not c.is_id]
        if len(nonid) < 2:
            continue
        for i in nonid:
            for keep_low in (True, False):
                low, high = [], []
                for j, c in enumerate(s.cells):
                    stays = (j == i) if keep_low else (j != i)
                    if stays:
                        low.append(c)
                        high.extend(ident(o) for o in c.out_word)
                    else:
                        low.extend(ident(o) for o in c.in_word)
                        high.append(c)
                if not low or not high:
                    continue
                rows = d.slices[:k] + (Slice(tuple(low)), Slice(tuple(high))) + d.slices[k + 1 :]
                out.append(Diagram(d.presentation, d.input, rows))
    return out


def _merge_down_variants(d: Diagram):
    out = []
    slices = d.slices
    for k in range(1, len(slices)):
        lower, upper = slices[k - 1], slices[k]
        lo = lower.cells
        lo_out = lower.out_offsets()
        prod: dict[int, int] = {}
        for j, c in enumerate(lo):
            for t in range(len(c.out_word)):
                prod[lo_out[j] + t] = j
        up_in = upper.in_offsets()
        for i, c in enumerate(upper.cells):
            if c.is_id:
                continue
            a = up_in[i]
            b = a + len(c.in_word)
            if b > a:
                js = [prod[p] for p in range(a, b)]
                j0, j1 = js[0], js[-1] + 1
                if not all(lo[j].is_id for j in range(j0, j1)):
                    continue
                new_lower = lo[:j0] + (c,) + lo[j1:]
            else:
                if any(
                    lo_out[j] < a < lo_out[j] + len(cc.out_word)
                    for j, cc in enumerate(lo)
                ):
                    continue
                j0 = next((j for j, _ in enumerate(lo) if lo_out[j] >= a), len(lo))
                new_lower = lo[:j0] + (c,) + lo[j0:]
            new_upper = (
                upper.cells[:i]
                + tuple(ident(o) for o in c.out_word)
                + upper.cells[i + 1 :]
            )
            rows = [list(s.cells) for s in slices]
            rows[k - 1] = list(new_lower)
            rows[k] = list(new_upper)
            kept = tuple(Slice(tuple(r)) for r in rows if not Slice(tuple(r)).all_id)
            out.append(Diagram(d.presentation, d.input, kept))
    return out


def _layout_neighbors(d: Diagram):
    return _split_variants(d) + _merge_down_variants(d)


def _layouts(nf: Diagram):
    key = _layout_key(nf)
    hit = _LAYOUTS_CACHE.get(key)
    if hit is not None:
        return hit
    seen = {key}
    queue = [nf]
    pos = 0
    while pos < len(queue) and len(queue) < _LAYOUT_CAP:
        cur = queue[pos]
        pos += 1
        for nxt in _layout_neighbors(cur):
            k = _layout_key(nxt)
            if k not in seen:
                seen.add(k)
                queue.append(nxt)
    if len(_LAYOUTS_CACHE) > 256:
        _LAYOUTS_CACHE.clear()
    _LAYOUTS_CACHE[key] = queue
    return queue


def layout_anchors(nf: Diagram, pattern: Diagram) -> list[Patch]:
    """Anchors of the pattern across relayouts, deduped by coordinates."""
    found, seen = [], set()
    for lay in _layouts(nf):
        for p in _anchors(lay, pattern):
            k = (p.slice_index, p.cell_index)
            if k not in seen:
                seen.add(k)
                found.append(p)
    return found


def layout_apply(nf: Diagram, pattern: Diagram, patch: Patch, replacement: Diagram):
    """Splice at patch in the first layout that matches there, or None."""
    for lay in _layouts(nf):
        plan = _match_at(lay, pattern, patch)
        if plan is not None:
            return _splice(lay, pattern, patch, plan, replacement)
    return None


# ---------------------------------------------------------------------------
# Public matching API

_MIRROR_ORDER = (
    frozenset(),
    frozenset({"lr"}),
    frozenset({"td"}),
    frozenset({"lr", "td"}),
)


def _mirrored(dg: Diagram, flags: frozenset) -> Diagram:
    out = dg
    if "lr" in flags:
        out = diagram_mirror_lr(out)
    if "td" in flags:
        out = diagram_flip_time(out)
    return out


def _sides(m: WebMove, direction: str):
    if direction == "forward":
        return m.lhs, m.rhs
    if direction == "reverse":
        return m.rhs, m.lhs
    raise ValueError("direction must be forward or reverse, got %r" % direction)


def find_matches(d: Diagram, m: WebMove, direction: str = "forward"):
    if d.presentation is not m.presentation:
        raise PresentationMismatch(
            "diagram is %s but move %s is %s"
            % (d.presentation.value, m.ident, m.presentation.value)
        )
    d.validate()
    nf = normal_form(d)
    pattern, _rep = _sides(m, direction)
    sites = []
    for rank, flags in enumerate(_MIRROR_ORDER):
        for patch in layout_anchors(nf, _mirrored(pattern, flags)):
            sites.append((patch.slice_index, patch.cell_index, rank, MatchSite(patch, flags)))
    sites.sort(key=lambda t: t[:3])
    return [s[-1] for s in sites]


def apply_web_move(d: Diagram, m: WebMove, site: MatchSite, direction: str = "forward") -> Diagram:
    if d.presentation is not m.presentation:
        raise PresentationMismatch(
            "diagram is %s but move %s is %s"
            % (d.presentation.value, m.ident, m.presentation.value)
        )
    nf = normal_form(d)
    pattern, rep = _sides(m, direction)
    pattern = _mirrored(pattern, site.mirror_flags)
    rep = _mirrored(rep, site.mirror_flags)
    out = layout_apply(nf, pattern, site.patch, rep)
    if out is None:
        raise SiteStale(
            "move %s (%s) no longer matches at slice %d, cell %d"
            % (m.ident, direction, site.patch.slice_index, site.patch.cell_index)
        )
    return out


# ---------------------------------------------------------------------------
# Catalog transcription.
#
# Base entries are written out concretely (canonical orientation: everything
# up); per-strand orientation choices for unoriented pictures are listed as
# extra seed pairs under the same base id.

def _d(p, word, rows):
    return diagram(p, tuple(word), [list(r) for r in rows])


def _r2_seeds(p):
    out = []
    for a in (UP, DOWN):
        for b in (UP, DOWN):
            flat = _d(p, (a, b), [])
            wave_a = _d(p, (a, b), [[crossing(+1, a, b)], [crossing(-1, b, a)]])
            wave_b = _d(p, (a, b), [[crossing(-1, a, b)], [crossing(+1, b, a)]])
            out.append((flat, wave_a, wave_b))
    return out


def _r3_seeds(p):
    out = []
    for a in (UP, DOWN):
        for b in (UP, DOWN):
            for c in (UP, DOWN):
                lhs = _d(
                    p,
                    (a, b, c),
                    [
                        [crossing(+1, a, b), ident(c)],
                        [ident(b), crossing(+1, a, c)],
                        [crossing(+1, b, c), ident(a)],
                    ],
                )
                rhs = _d(
                    p,
                    (a, b, c),
                    [
                        [ident(a), crossing(+1, b, c)],
                        [crossing(+1, a, c), ident(b)],
                        [ident(c), crossing(+1, a, b)],
                    ],
                )
                out.append((lhs, rhs))
    return out


def _slide_seeds(p, csign):
    """A strand sliding past a vertex, crossing the trunk vs both legs."""
    out = []
    for s in (UP, DOWN):
        for vx, t in ((split_up(), UP), (merge_down(), DOWN)):
            leg = t
            lhs = _d(
                p,
                (s, t),
                [[crossing(csign, s, t)], [vx, ident(s)]],
            )
            rhs = _d(
                p,
                (s, t),
                [
                    [ident(s), vx],
                    [crossing(csign, s, leg), ident(leg)],
                    [ident(leg), crossing(csign, s, leg)],
                ],
            )
            out.append((lhs, rhs))
    return out


def _kink(p, mark: Cell | None, csign: int) -> Diagram:
    """Left-side curl on an up strand, optionally decorated on the loop."""
    loopcell = mark if mark is not None else ident(DOWN)
    return _d(
        p,
        (UP,),
        [
            [cup(DOWN), ident(UP)],
            [loopcell, crossing(csign, UP, UP)],
            [cap(DOWN), ident(UP)],
        ],
    )


def _strand(p, o=UP):
    return _d(p, (o,), [])


def _marked(p, *marks):
    return _d(p, (UP,), [[m] for m in marks])


def _ht_bases():
    p = Presentation.HT
    hu = lambda s, o=UP: twist(TwistKind.UNDER, s, o)
    ho = lambda s, o=UP: twist(TwistKind.OVER, s, o)
    bases = []
    bases.append(
        ("ht.r2.a", "r2", "wave pair beside the parallel strands, first layering",
         [(f, wa) for f, wa, _wb in _r2_seeds(p)])
    )
    bases.append(
        ("ht.r2.b", "r2", "wave pair beside the parallel strands, second layering",
         [(f, wb) for f, _wa, wb in _r2_seeds(p)])
    )
    bases.append(("ht.r3", "r3", "strand slid across a crossing, all-over layering", _r3_seeds(p)))
    bases.append(("ht.slide.a", "slide", "strand passing a vertex on the under side", _slide_seeds(p, -1)))
    bases.append(("ht.slide.b", "slide", "strand passing a vertex on the over side", _slide_seeds(p, +1)))
    bases.append(("ht.r1.a", "r1", "under-mark +1 traded for a positive curl with over-mark -1",
                  [(_marked(p, hu(+1)), _kink(p, ho(-1, DOWN), +1))]))
    bases.append(("ht.r1.b", "r1", "over-mark -1 traded for a negative curl with under-mark +1",
                  [(_marked(p, ho(-1)), _kink(p, hu(+1, DOWN), -1))]))
    bases.append(("ht.r1.c", "r1", "over-mark +1 traded for a positive curl with under-mark -1",
                  [(_marked(p, ho(+1)), _kink(p, hu(-1, DOWN), +1))]))
    bases.append(("ht.r1.d", "r1", "under-mark -1 traded for a negative curl with over-mark +1",
                  [(_marked(p, hu(-1)), _kink(p, ho(+1, DOWN), -1))]))
    bases.append(("ht.cancel.a", "cancel", "under-marks +1 then -1 cancel",
                  [(_marked(p, hu(+1), hu(-1)), _strand(p))]))
    bases.append(("ht.cancel.b", "cancel", "under-marks -1 then +1 cancel",
                  [(_marked(p, hu(-1), hu(+1)), _strand(p))]))
    bases.append(("ht.cancel.c", "cancel", "over-marks -1 then +1 cancel",
                  [(_marked(p, ho(-1), ho(+1)), _strand(p))]))
    bases.append(("ht.cancel.d", "cancel", "over-marks +1 then -1 cancel",
                  [(_marked(p, ho(+1), ho(-1)), _strand(p))]))
    bases.append(("ht.twist-vertex", "twist-vertex",
                  "under-mark +1 on the trunk pushed onto both split legs with a leg crossing",
                  [(
                      _d(p, (UP,), [[hu(+1)], [split_up()]]),
                      _d(p, (UP,), [[split_up()], [hu(+1), hu(+1)], [crossing(+1, UP, UP)]]),
                  )]))
    bases.append(("ht.twist-vertex.b", "twist-vertex",
                  "over-mark +1 on the trunk above a merge, legs crossing below",
                  [(
                      _d(p, (UP, UP), [[merge_up()], [ho(+1)]]),
                      _d(p, (UP, UP), [[crossing(+1, UP, UP)], [ho(+1), ho(+1)], [merge_up()]]),
                  )]))
    bases.append(("ht.twist-vertex.c", "twist-vertex",
                  "over-mark -1 on the trunk pushed onto both split legs",
                  [(
                      _d(p, (UP,), [[ho(-1)], [split_up()]]),
                      _d(p, (UP,), [[split_up()], [ho(-1), ho(-1)], [crossing(-1, UP, UP)]]),
                  )]))
    bases.append(("ht.twist-vertex.d", "twist-vertex",
                  "under-mark -1 on the trunk above a merge",
                  [(
                      _d(p, (UP, UP), [[merge_up()], [hu(-1)]]),
                      _d(p, (UP, UP), [[crossing(-1, UP, UP)], [hu(-1), hu(-1)], [merge_up()]]),
                  )]))
    return bases


def _ft_bases():
    p = Presentation.FT
    ft = lambda s, o=UP: twist(TwistKind.FULL, s, o)
    bases = []
    bases.append(
        ("ft.r2.a", "r2", "wave pair beside the parallel strands, first layering",
         [(f, wa) for f, wa, _wb in _r2_seeds(p)])
    )
    bases.append(
        ("ft.r2.b", "r2", "wave pair beside the parallel strands, second layering",
         [(f, wb) for f, _wa, wb in _r2_seeds(p)])
    )
    bases.append(("ft.r3", "r3", "strand slid across a crossing, all-over layering", _r3_seeds(p)))
    bases.append(("ft.slide.a", "slide", "strand passing a vertex on the under side", _slide_seeds(p, -1)))
    bases.append(("ft.slide.b", "slide", "strand passing a vertex on the over side", _slide_seeds(p, +1)))

    kink_a = (_strand(p), _kink(p, ft(-1, DOWN), +1))
    kink_e = (_marked(p, ft(+1)), _kink(p, None, +1))
    bases.append(("ft.r1.a", "r1", "plain strand traded for a positive curl with full-mark -1", [kink_a]))
    bases.append(("ft.r1.b", "r1", "time-flipped curl creation", [_pair_op(kink_a, diagram_flip_time)]))
    bases.append(("ft.r1.c", "r1", "mirrored curl creation", [_pair_op(kink_a, diagram_mirror_lr)]))
    bases.append(("ft.r1.d", "r1", "half-turned curl creation",
                  [_pair_op(_pair_op(kink_a, diagram_flip_time), diagram_mirror_lr)]))
    bases.append(("ft.r1.e", "r1", "full-mark +1 traded for a bare positive curl", [kink_e]))
    bases.append(("ft.r1.f", "r1", "time-flipped bare curl", [_pair_op(kink_e, diagram_flip_time)]))
    bases.append(("ft.r1.g", "r1", "mirrored bare curl", [_pair_op(kink_e, diagram_mirror_lr)]))
    bases.append(("ft.r1.h", "r1", "half-turned bare curl",
                  [_pair_op(_pair_op(kink_e, diagram_flip_time), diagram_mirror_lr)]))
    bases.append(("ft.twist-cancel", "cancel", "full-marks -1 then +1 cancel",
                  [(_marked(p, ft(-1), ft(+1)), _strand(p))]))
    bases.append(("ft.twist-cancel.b", "cancel", "full-marks +1 then -1 cancel",
                  [(_marked(p, ft(+1), ft(-1)), _strand(p))]))
    bases.append(("ft.twist-vertex", "twist-vertex",
                  "full-mark +1 on the trunk pushed onto both split legs, legs crossing twice",
                  [(
                      _d(p, (UP,), [[ft(+1)], [split_up()]]),
                      _d(p, (UP,), [
                          [split_up()],
                          [crossing(+1, UP, UP)],
                          [crossing(+1, UP, UP)],
                          [ft(+1), ft(+1)],
                      ]),
                  )]))
    bases.append(("ft.twist-vertex.b", "twist-vertex",
                  "full-mark -1 on the trunk above a merge, legs crossing twice below",
                  [(
                      _d(p, (UP, UP), [[merge_up()], [ft(-1)]]),
                      _d(p, (UP, UP), [
                          [ft(-1), ft(-1)],
                          [crossing(-1, UP, UP)],
                          [crossing(-1, UP, UP)],
                          [merge_up()],
                      ]),
                  )]))
    bases.append(("ft.twist-vertex.c", "twist-vertex",
                  "full-mark +1 on the trunk above a merge (pictured twice in the source)",
                  [(
                      _d(p, (UP, UP), [[merge_up()], [ft(+1)]]),
                      _d(p, (UP, UP), [
                          [ft(+1), ft(+1)],
                          [crossing(+1, UP, UP)],
                          [crossing(+1, UP, UP)],
                          [merge_up()],
                      ]),
                  )]))
    return bases


def _pair_op(pair, op):
    return (op(pair[0]), op(pair[1]))


_OPS = (
    diagram_mirror_lr,
    diagram_flip_time,
    diagram_reverse_orientations,
    diagram_flip_crossings,
    diagram_flip_twist_signs,
    diagram_flip_twist_kind,
)


def _expand(p: Presentation, bases):
    from .textio import print_diagram

    def norm_pair(lhs, rhs, combo):
        for bit, op in enumerate(_OPS):
            if combo & (1 << bit):
                lhs, rhs = op(lhs), op(rhs)
        return normal_form(lhs), normal_form(rhs)

    def key_of(lhs, rhs):
        return frozenset({print_diagram(lhs), print_diagram(rhs)})

    moves = []
    seen = set()
    counts = {}
    # Pictured entries register first: a transcribed base must keep its id
    # even when it also lies in the symmetry orbit of an earlier base.
    for ident_, family, note, seeds in bases:
        l0, r0 = norm_pair(*seeds[0], 0)
        assert not check_framing_conservation(l0, r0), (
            "base entry %s fails framing conservation" % ident_
        )
        key = key_of(l0, r0)
        assert key not in seen, "pictured entries collide at %s" % ident_
        seen.add(key)
        moves.append(WebMove(ident_, family, l0, r0, note))
        counts[ident_] = 1
    for ident_, family, note, seeds in bases:
        for lhs, rhs in seeds:
            for combo in range(1 << len(_OPS)):
                if p is Presentation.FT and combo & (1 << 5):
                    continue  # kind flip only distinguishes half marks
                l2, r2 = norm_pair(lhs, rhs, combo)
                if check_framing_conservation(l2, r2):
                    continue
                key = key_of(l2, r2)
                if key in seen:
                    continue
                seen.add(key)
                vid = "%s.v%d" % (ident_, counts[ident_])
                counts[ident_] += 1
                moves.append(WebMove(vid, family, l2, r2, "%s (generated variant)" % note))
    return tuple(moves)


@lru_cache(maxsize=None)
def web_move_catalog(p: Presentation):
    if p is Presentation.HT:
        return _expand(p, _ht_bases())
    return _expand(p, _ft_bases())


def web_move_by_id(p: Presentation, ident_: str) -> WebMove:
    for m in web_move_catalog(p):
        if m.ident == ident_:
            return m
    raise UnknownId(ident_)


# ---------------------------------------------------------------------------
# Presentation conversion

def ht_to_ft(d: Diagram) -> Diagram:
    """Pair up half-twist marks along each straight run and merge them.

    Marks slide along their wire by interchange only; they never pass a
    crossing, a vertex or a turnback, so the pairing scope is the maximal
    id/twist run.  Each adjacent under/over pair of equal sign becomes one
    full mark at the first slot; the other slot turns into an id cell.
    Leftover marks are an error, not silently dropped.
    """
    if d.presentation is not Presentation.HT:
        raise PresentationMismatch("ht_to_ft wants a half-twist diagram")
    d.validate()
    replace: dict[tuple[int, int], Cell | None] = {}
    unpaired = []
    for seg in twist_segments(d):
        i = 0
        while i < len(seg):
            merged = False
            if i + 1 < len(seg):
                c1 = d.slices[seg[i][0]].cells[seg[i][1]]
                c2 = d.slices[seg[i + 1][0]].cells[seg[i + 1][1]]
                if {c1.kind, c2.kind} == {TwistKind.UNDER, TwistKind.OVER} and c1.sign == c2.sign:
                    assert c1.orient is c2.orient
                    replace[seg[i]] = twist(TwistKind.FULL, c1.sign, c1.orient)
                    replace[seg[i + 1]] = None
                    i += 2
                    merged = True
            if not merged:
                unpaired.append(seg[i])
                i += 1
    if unpaired:
        raise UnpairedHalfTwist(tuple(sorted(unpaired)))
    rows = []
    for si, s in enumerate(d.slices):
        touched = False
        cells = []
        for ci, c in enumerate(s.cells):
            if (si, ci) in replace:
                touched = True
                r = replace[(si, ci)]
                cells.append(r if r is not None else ident(c.orient))
            else:
                cells.append(c)
        row = Slice(tuple(cells))
        if touched and row.all_id:
            continue
        rows.append(row)
    out = Diagram(Presentation.FT, d.input, tuple(rows))
    out.validate()
    return out


def ft_to_ht(d: Diagram) -> Diagram:
    """Split each full mark into an under mark with an over mark just above."""
    if d.presentation is not Presentation.FT:
        raise PresentationMismatch("ft_to_ht wants a full-twist diagram")
    d.validate()
    rows = []
    for s in d.slices:
        if not any(c.kind is TwistKind.FULL for c in s.cells if c.tag == "twist"):
            rows.append(s)
            continue
        lower, upper = [], []
        for c in s.cells:
            if c.tag == "twist" and c.kind is TwistKind.FULL:
                lower.append(twist(TwistKind.UNDER, c.sign, c.orient))
                upper.append(twist(TwistKind.OVER, c.sign, c.orient))
            else:
                lower.append(c)
                upper.extend(ident(o) for o in c.out_word)
        rows.append(Slice(tuple(lower)))
        rows.append(Slice(tuple(upper)))
    out = Diagram(Presentation.HT, d.input, tuple(rows))
    out.validate()
    return out
