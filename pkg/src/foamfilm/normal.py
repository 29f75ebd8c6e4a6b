"""Canonical forms under wire sliding.

normal_form quotients a sliced diagram by two families of moves:

  * interchange: a cell commutes past the slice below it whenever the wires
    it consumes pass straight through that slice;
  * snake removal: a cup and a cap joined along exactly one wire cancel and
    the strand straightens (a cup/cap pair sharing both wires is a closed
    circle and stays).

The algorithm iterates three deterministic passes to a fixpoint: compaction
(every cell moves to its earliest slice), sinking (the mirror pass, every
cell to its latest slice), and cancellation of cup/cap pairs that have become
slice-adjacent.  Sinking exists because a zigzag can be held apart in the
compacted layout, for instance by a mark on the strand entering the cap; in
the sunk layout the pair meets and cancels.  The result ends in compacted
form with all-identity slices dropped.

Floating closed components that sit to the left of everything else are pulled
out and reattached in a canonical order, so stacks of disjoint circles compare
equal however they were interleaved.  Closed pieces nested inside pockets are
left where compaction puts them; only their in-place layout is canonical.

This is deliberately weaker than planar isotopy: marks never slide around
turnbacks and nothing passes through a strand.
"""

from __future__ import annotations

from .cells import ident
from .diagram import Diagram, Slice, hcompose
from .errors import PresentationMismatch
from .wires import cell_components


def _drop_id_slices(slices: tuple[Slice, ...]) -> tuple[Slice, ...]:
    return tuple(s for s in slices if not s.all_id)


def _bubble_once(slices: tuple[Slice, ...]):
    """Perform one earliest-slice move, lowest slice first; None if stable."""
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
                # the whole index range, not just the producers: a cap
                # between them has no outputs and would vanish silently
                if not all(lo[j].is_id for j in range(j0, j1)):
                    continue
                new_lower = lo[:j0] + (c,) + lo[j1:]
            else:
                # A cup drops into the gap at position a unless a lower cell's
                # output interval straddles it.
                if any(
                    lo_out[j] < a < lo_out[j] + len(cc.out_word)
                    for j, cc in enumerate(lo)
                ):
                    continue
                j0 = next(
                    (j for j, _ in enumerate(lo) if lo_out[j] >= a), len(lo)
                )
                new_lower = lo[:j0] + (c,) + lo[j0:]
            new_upper = (
                upper.cells[:i]
                + tuple(ident(o) for o in c.out_word)
                + upper.cells[i + 1 :]
            )
            out = list(slices)
            out[k - 1] = Slice(new_lower)
            out[k] = Slice(new_upper)
            return tuple(out)
    return None


def _sink_once(slices: tuple[Slice, ...]):
    """Mirror pass: one latest-slice move, highest slice first."""
    for k in range(len(slices) - 2, -1, -1):
        lower, upper = slices[k], slices[k + 1]
        up = upper.cells
        up_in = upper.in_offsets()
        cons: dict[int, int] = {}
        for j, c in enumerate(up):
            for t in range(len(c.in_word)):
                cons[up_in[j] + t] = j
        lo_out = lower.out_offsets()
        for i, c in enumerate(lower.cells):
            if c.is_id:
                continue
            a = lo_out[i]
            b = a + len(c.out_word)
            if b > a:
                js = [cons[p] for p in range(a, b)]
                j0, j1 = js[0], js[-1] + 1
                # mirror of the bubble guard: a cup between the consumers
                # has no inputs and would vanish silently
                if not all(up[j].is_id for j in range(j0, j1)):
                    continue
                new_upper = up[:j0] + (c,) + up[j1:]
            else:
                # caps rise through the gap unless a consumer straddles it
                if any(
                    up_in[j] < a < up_in[j] + len(cc.in_word)
                    for j, cc in enumerate(up)
                ):
                    continue
                j0 = next((j for j, _ in enumerate(up) if up_in[j] >= a), len(up))
                new_upper = up[:j0] + (c,) + up[j0:]
            new_lower = (
                lower.cells[:i]
                + tuple(ident(o) for o in c.in_word)
                + lower.cells[i + 1 :]
            )
            out = list(slices)
            out[k] = Slice(new_lower)
            out[k + 1] = Slice(new_upper)
            return tuple(out)
    return None


def _fix(step, slices):
    while True:
        nxt = step(slices)
        if nxt is None:
            return slices
        slices = nxt


def _cancel_once(slices: tuple[Slice, ...]):
    """Delete one slice-adjacent cup/cap pair sharing exactly one wire."""
    for k in range(len(slices) - 1):
        lower, upper = slices[k], slices[k + 1]
        lo_out = lower.out_offsets()
        up_in = upper.in_offsets()
        for jc, cc in enumerate(lower.cells):
            if cc.tag != "cup":
                continue
            p = lo_out[jc]
            for ic, ca in enumerate(upper.cells):
                if ca.tag != "cap":
                    continue
                q = up_in[ic]
                if abs(p - q) != 1:
                    continue  # shares both wires (circle) or none
                out = list(slices)
                out[k] = Slice(lower.cells[:jc] + lower.cells[jc + 1 :])
                out[k + 1] = Slice(upper.cells[:ic] + upper.cells[ic + 1 :])
                return tuple(out)
    return None


def _cancel_all(slices):
    changed = False
    while True:
        nxt = _cancel_once(slices)
        if nxt is None:
            return slices, changed
        slices, changed = nxt, True


def _float_prefix_components(d: Diagram):
    """Closed components whose cells form a prefix run of every slice they
    occupy.  Those can slide to the far left by interchange alone."""
    comp_of, anchored = cell_components(d)
    comps: dict = {}
    for addr, root in comp_of.items():
        comps.setdefault(root, set()).add(addr)
    out = []
    for root, addrs in comps.items():
        if root in anchored:
            continue
        ok = True
        for s, sl in enumerate(d.slices):
            run = sorted(j for (si, j) in addrs if si == s)
            if run and run != list(range(len(run))):
                ok = False
                break
        if ok:
            out.append(addrs)
    return out


def _split_off(d: Diagram, addrs) -> tuple[Diagram, Diagram]:
    """Remove the cells at addrs (a closed prefix component); return
    (component as its own diagram, remainder)."""
    comp_rows, rest_rows = [], []
    for s, sl in enumerate(d.slices):
        comp = tuple(c for j, c in enumerate(sl.cells) if (s, j) in addrs)
        rest = tuple(c for j, c in enumerate(sl.cells) if (s, j) not in addrs)
        if comp:
            comp_rows.append(comp)
        rest_rows.append(rest)
    comp_d = Diagram(d.presentation, (), tuple(Slice(r) for r in comp_rows))
    rest_d = Diagram(d.presentation, d.input, tuple(Slice(r) for r in rest_rows))
    return comp_d, rest_d


def _reorder_floats(d: Diagram) -> Diagram:
    from .textio import print_diagram  # canonical sort key

    floats = []
    while True:
        pieces = _float_prefix_components(d)
        if not pieces:
            break
        comp_d, d = _split_off(d, pieces[0])
        floats.append(comp_d)
    if not floats:
        return d
    floats.sort(key=print_diagram)
    for f in reversed(floats):
        d = hcompose(f, d)
    return d


def normal_form(d: Diagram) -> Diagram:
    """Canonical representative of d under interchange and snake removal.

    Idempotent; preserves the boundary words and the presentation.
    """
    d.validate()
    slices = d.slices
    while True:
        slices = _drop_id_slices(_fix(_bubble_once, slices))
        slices, changed = _cancel_all(slices)
        if changed:
            continue
        sunk = _fix(_sink_once, slices)
        sunk, changed = _cancel_all(sunk)
        if changed:
            slices = sunk
            continue
        break
    out = _reorder_floats(Diagram(d.presentation, d.input, slices))
    out = out.replace_slices(_drop_id_slices(_fix(_bubble_once, out.slices)))
    out.validate()
    return out


def equal_up_to_sliding(d1: Diagram, d2: Diagram) -> bool:
    if d1.presentation is not d2.presentation:
        raise PresentationMismatch(
            "cannot compare %s and %s diagrams"
            % (d1.presentation.value, d2.presentation.value)
        )
    return normal_form(d1) == normal_form(d2)
