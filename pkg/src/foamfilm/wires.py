"""Wire-level structure of a sliced diagram.

Nodes are interface positions (level, pos) where level counts interfaces
bottom to top (level 0 is the input word, level n_slices the output word).
Cells connect nodes: plain wires and twists pass straight through, a crossing
swaps its two wires, caps and cups link two nodes of the same interface
(turnbacks), and the trivalent vertices terminate strands.

Three views are derived here:

  * strand_traces: maximal strands, each a chain of nodes running through
    wires, twists, crossings and turnbacks, ending at the global boundary or
    at a vertex leg (or closed).
  * twist_segments: maximal monotone wire runs crossing only id and twist
    cells.  These are the runs along which twist marks may slide by
    interchange alone, so they are the pairing scope of the half-to-full
    conversion.
  * cell_components: connected components of the cell graph, used by the
    normal form to spot floating closed pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram

Node = tuple[int, int]  # (interface level, wire position)


@dataclass
class CellRef:
    slice_index: int
    cell_index: int
    in_nodes: tuple[Node, ...]
    out_nodes: tuple[Node, ...]
    cell: object

    @property
    def addr(self) -> tuple[int, int]:
        return (self.slice_index, self.cell_index)


def cell_refs(d: Diagram) -> list[CellRef]:
    refs = []
    for s, sl in enumerate(d.slices):
        ins = sl.in_offsets()
        outs = sl.out_offsets()
        for j, c in enumerate(sl.cells):
            a, b = ins[j], ins[j] + len(c.in_word)
            a2, b2 = outs[j], outs[j] + len(c.out_word)
            refs.append(
                CellRef(
                    s,
                    j,
                    tuple((s, p) for p in range(a, b)),
                    tuple((s + 1, p) for p in range(a2, b2)),
                    c,
                )
            )
    return refs


@dataclass
class StrandTrace:
    """One maximal strand.

    nodes        visited interface nodes in order along the strand
    twists       twist cells on the strand, as (slice, cell) addresses
    endpoints    two descriptors for an open strand, () for a closed one;
                 each is ("boundary", level, pos) or ("vertex", slice, cell, leg)
    """

    index: int
    nodes: list[Node] = field(default_factory=list)
    twists: list[tuple[int, int]] = field(default_factory=list)
    endpoints: tuple = ()

    @property
    def closed(self) -> bool:
        return not self.endpoints

    @property
    def touches_vertex(self) -> bool:
        return any(e[0] == "vertex" for e in self.endpoints)

    @property
    def boundary_ends(self) -> list:
        return [e for e in self.endpoints if e[0] == "boundary"]


@dataclass
class TraceSet:
    traces: list[StrandTrace]
    node_trace: dict[Node, int]       # node -> trace index
    crossings: list[tuple[tuple[int, int], int, int, int]]
    # (addr, sign, trace of left input, trace of right input)


def _links(d: Diagram):
    """Adjacency along strands plus terminal descriptors.

    Returns (adj, terminal) where adj maps a node to the set of neighbour
    nodes along the strand and terminal maps a node to an endpoint
    descriptor when the strand stops there.
    """
    n = d.n_slices
    adj: dict[Node, list[Node]] = {}
    terminal: dict[Node, tuple] = {}

    def link(x: Node, y: Node) -> None:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)

    for ref in cell_refs(d):
        c = ref.cell
        t = c.tag
        if t in ("id", "twist"):
            link(ref.in_nodes[0], ref.out_nodes[0])
        elif t == "cross":
            link(ref.in_nodes[0], ref.out_nodes[1])
            link(ref.in_nodes[1], ref.out_nodes[0])
        elif t == "cap":
            link(ref.in_nodes[0], ref.in_nodes[1])
        elif t == "cup":
            link(ref.out_nodes[0], ref.out_nodes[1])
        else:  # vertex: every leg terminates a strand
            for leg, node in enumerate(ref.in_nodes + ref.out_nodes):
                terminal[node] = ("vertex", ref.slice_index, ref.cell_index, leg)
                adj.setdefault(node, [])
    for p in range(len(d.input)):
        terminal[(0, p)] = ("boundary", 0, p)
        adj.setdefault((0, p), [])
    for p in range(len(d.output)):
        terminal[(n, p)] = ("boundary", n, p)
        adj.setdefault((n, p), [])
    return adj, terminal


def strand_traces(d: Diagram) -> TraceSet:
    adj, terminal = _links(d)
    seen: set[Node] = set()
    traces: list[StrandTrace] = []
    node_trace: dict[Node, int] = {}

    def walk(start: Node) -> list[Node]:
        path = [start]
        seen.add(start)
        prev = None
        cur = start
        while True:
            nxt = [x for x in adj[cur] if x != prev or adj[cur].count(x) > 1]
            nxt = [x for x in nxt if x not in seen or (x == start and len(path) > 2)]
            if not nxt:
                return path
            prev, cur = cur, nxt[0]
            if cur == start:
                return path  # closed loop
            seen.add(cur)
            path.append(cur)

    # Open strands first: start from every terminal node.
    for node in sorted(terminal):
        if node in seen:
            continue
        path = walk(node)
        tr = StrandTrace(len(traces), nodes=path)
        end_a = terminal[path[0]]
        end_b = terminal.get(path[-1])
        assert end_b is not None, "open strand must stop at a terminal"
        tr.endpoints = (end_a, end_b)
        traces.append(tr)
    # Remaining cycles.
    for node in sorted(adj):
        if node in seen:
            continue
        path = walk(node)
        traces.append(StrandTrace(len(traces), nodes=path))

    for tr in traces:
        for nd in tr.nodes:
            node_trace[nd] = tr.index

    crossings = []
    for ref in cell_refs(d):
        c = ref.cell
        if c.tag == "twist":
            traces[node_trace[ref.in_nodes[0]]].twists.append(ref.addr)
        elif c.tag == "cross":
            crossings.append(
                (
                    ref.addr,
                    c.sign,
                    node_trace[ref.in_nodes[0]],
                    node_trace[ref.in_nodes[1]],
                )
            )
    return TraceSet(traces, node_trace, crossings)


def twist_segments(d: Diagram) -> list[list[tuple[int, int]]]:
    """Maximal id/twist wire runs, each as the ordered list of twist-cell
    addresses on it (runs without twists are dropped)."""
    # consumer of a node within slice `level`, producer within slice level-1
    consumer: dict[Node, object] = {}
    producer: dict[Node, object] = {}
    for ref in cell_refs(d):
        for nd in ref.in_nodes:
            consumer[nd] = ref
        for nd in ref.out_nodes:
            producer[nd] = ref

    def passes(ref) -> bool:
        return ref is not None and ref.cell.tag in ("id", "twist")

    segments = []
    for s in range(d.n_slices + 1):
        for p in range(len(d.word_at(s))):
            node = (s, p)
            below = producer.get(node)
            if passes(below):
                continue  # not the start of a run
            run: list[tuple[int, int]] = []
            cur = node
            while True:
                above = consumer.get(cur)
                if not passes(above):
                    break
                if above.cell.tag == "twist":
                    run.append(above.addr)
                cur = above.out_nodes[0]
            if run:
                segments.append(run)
    return segments


def cell_components(d: Diagram):
    """Union cells sharing a wire; returns (comp_of_addr, anchored_comps).

    comp_of_addr maps (slice, cell) to a component root; anchored_comps is the
    set of roots whose component touches the global boundary.
    """
    refs = cell_refs(d)
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    BOUNDARY = ("boundary",)
    parent[BOUNDARY] = BOUNDARY
    for ref in refs:
        parent.setdefault(ref.addr, ref.addr)
    producer: dict[Node, tuple] = {}
    for ref in refs:
        for nd in ref.out_nodes:
            producer[nd] = ref.addr
    for p in range(len(d.input)):
        producer[(0, p)] = BOUNDARY
    for ref in refs:
        for nd in ref.in_nodes:
            union(ref.addr, producer[nd])
    for p in range(len(d.output)):
        union(BOUNDARY, producer[(d.n_slices, p)])

    comp_of = {ref.addr: find(ref.addr) for ref in refs}
    anchored = {find(BOUNDARY)}
    return comp_of, anchored
