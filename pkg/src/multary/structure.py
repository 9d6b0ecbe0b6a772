"""Structure of factorization graphs and quasigroup decomposition.

A factorization graph is theta-complete (the two degree-3 nodes of any
theta subgraph are adjacent) and therefore splits uniquely into maximal
cliques and maximal chordless circles glued along shared edges, the
attachments forming a tree.  Mirroring that split on the quasigroup side
decomposes any multary quasigroup into iterated-group components and
irreducible components, and the decomposition recomposes to the original
table exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import MultaryQuasigroup
from .errors import InternalInconsistency, MalformedTree, NotThetaComplete
from .factorization import (
    FactorizationGraph,
    Segment,
    compose,
    factorization_graph,
    reducible_at,
)
from .groups import GroupWitness, extract_group, quadrangle_criterion

CLIQUE = "clique"
CIRCLE = "circle"


# ---------------------------------------------------------------------------
# Theta-completeness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaReport:
    """`complete` is True iff no witness exists; otherwise `witness` is
    (u, v, paths): three internally disjoint u-v paths between
    non-adjacent nodes."""

    complete: bool
    witness: tuple | None

    def __post_init__(self):
        assert self.complete == (self.witness is None)


def _adjacency(graph: FactorizationGraph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {u: set() for u in range(graph.node_count)}
    for a, b in graph.edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _disjoint_paths(
    adj: dict[int, set[int]], source: int, sink: int, limit: int
) -> list[list[int]]:
    """Up to `limit` internally node-disjoint source-sink paths.

    Unit-capacity max flow on the split digraph (node w becomes w_in,
    w_out); BFS augmentation with sorted neighbor order keeps the result
    deterministic.
    """
    # Encode w_in = 2w, w_out = 2w + 1.
    cap: dict[tuple[int, int], int] = {}
    for w in adj:
        if w not in (source, sink):
            cap[(2 * w, 2 * w + 1)] = 1
    for a in adj:
        for b in adj[a]:
            cap[(2 * a + 1, 2 * b)] = 1
    nodes = sorted(set(x for key in cap for x in key))
    s, t = 2 * source + 1, 2 * sink
    flow: dict[tuple[int, int], int] = {}

    def residual(u: int, v: int) -> int:
        return cap.get((u, v), 0) - flow.get((u, v), 0) + flow.get((v, u), 0)

    def bfs() -> list[int] | None:
        prev = {s: -1}
        queue = [s]
        while queue:
            u = queue.pop(0)
            if u == t:
                path = [t]
                while path[-1] != s:
                    path.append(prev[path[-1]])
                return path[::-1]
            for v in nodes:
                if v not in prev and residual(u, v) > 0:
                    prev[v] = u
                    queue.append(v)
        return None

    value = 0
    while value < limit:
        path = bfs()
        if path is None:
            break
        for u, v in zip(path, path[1:]):
            back = flow.get((v, u), 0)
            if back > 0:
                flow[(v, u)] = back - 1
            else:
                flow[(u, v)] = flow.get((u, v), 0) + 1
        value += 1

    paths = []
    for _ in range(value):
        node_path = [source]
        u = s
        while u != t:
            nxt = next(v for v in nodes if flow.get((u, v), 0) > 0)
            flow[(u, nxt)] -= 1
            u = nxt
            if u % 2 == 0:
                node_path.append(u // 2)
        paths.append(node_path)
    return paths


def is_theta_complete(graph: FactorizationGraph) -> ThetaReport:
    """Exhaustive disjoint-path search over all non-adjacent node pairs."""
    adj = _adjacency(graph)
    for u in range(graph.node_count):
        for v in range(u + 1, graph.node_count):
            if v in adj[u]:
                continue
            paths = _disjoint_paths(adj, u, v, 3)
            if len(paths) >= 3:
                return ThetaReport(False, (u, v, tuple(tuple(p) for p in paths[:3])))
    return ThetaReport(True, None)


# ---------------------------------------------------------------------------
# Block decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """A maximal clique (nodes sorted) or maximal chordless circle (nodes
    in cycle order, canonical rotation)."""

    kind: str
    nodes: tuple[int, ...]

    def node_set(self) -> frozenset[int]:
        return frozenset(self.nodes)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        if self.kind == CLIQUE:
            return frozenset(
                (a, b) for a, b in itertools.combinations(sorted(self.nodes), 2)
            )
        ring = list(self.nodes) + [self.nodes[0]]
        return frozenset(
            (min(a, b), max(a, b)) for a, b in zip(ring, ring[1:])
        )

    def sort_key(self):
        return (min(self.nodes), len(self.nodes), tuple(sorted(self.nodes)), self.kind)


@dataclass(frozen=True)
class BlockTree:
    """Unique maximal blocks of a theta-complete graph plus the attachment
    tree along shared edges."""

    node_count: int
    blocks: tuple[Block, ...]
    attachments: tuple[tuple[int, int, tuple[int, int]], ...]

    def to_dot(self, name: str = "blocks") -> str:
        lines = [f"graph {name} {{"]
        for idx, b in enumerate(self.blocks):
            label = f"{b.kind} {{{', '.join(f'v{n}' for n in b.nodes)}}}"
            lines.append(f'  b{idx} [label="{label}"];')
        for a, b, (u, v) in self.attachments:
            lines.append(f'  b{a} -- b{b} [label="{{v{u},v{v}}}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _maximal_cliques(adj: dict[int, set[int]]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def expand(clique: list[int], candidates: set[int], excluded: set[int]):
        if not candidates and not excluded:
            out.append(tuple(sorted(clique)))
            return
        pivot_pool = candidates | excluded
        pivot = max(pivot_pool, key=lambda w: len(adj[w] & candidates))
        for v in sorted(candidates - adj[pivot]):
            expand(clique + [v], candidates & adj[v], excluded & adj[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    expand([], set(adj), set())
    return sorted(c for c in out if len(c) >= 3)


def _chordless_circles(adj: dict[int, set[int]]) -> list[tuple[int, ...]]:
    """Induced cycles of length >= 4, each reported once in canonical
    rotation (smallest node first, smaller second endpoint direction)."""
    cycles = []
    nodes = sorted(adj)
    for s in nodes:
        stack = [[s, u] for u in sorted(adj[s]) if u > s]
        while stack:
            path = stack.pop()
            last = path[-1]
            for w in sorted(adj[last]):
                if w <= s or w in path:
                    continue
                # Chordlessness: w may touch the path only at `last`
                # (plus s when closing).
                mid_contact = any(w in adj[p] for p in path[1:-1])
                if mid_contact:
                    continue
                if w in adj[s]:
                    if len(path) >= 3 and path[1] < w:
                        cycles.append(tuple(path + [w]))
                else:
                    stack.append(path + [w])
    return sorted(cycles)


def block_decomposition(graph: FactorizationGraph) -> BlockTree:
    """Maximal cliques (>= 3 nodes) and maximal chordless circles (>= 4),
    attached along shared edges; the attachment graph must be a tree."""
    report = is_theta_complete(graph)
    if not report.complete:
        raise NotThetaComplete(report.witness)
    adj = _adjacency(graph)
    blocks = [Block(CLIQUE, c) for c in _maximal_cliques(adj)]
    blocks += [Block(CIRCLE, c) for c in _chordless_circles(adj)]
    blocks.sort(key=Block.sort_key)

    covered: set[tuple[int, int]] = set()
    for b in blocks:
        covered |= set(b.edge_set())
    missing = set(graph.edges) - covered
    if missing:
        raise InternalInconsistency(f"edges in no block: {sorted(missing)}")

    attachments = []
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            shared = sorted(blocks[i].edge_set() & blocks[j].edge_set())
            if not shared:
                continue
            if len(shared) > 1:
                raise InternalInconsistency(
                    f"blocks {i} and {j} share several edges: {shared}"
                )
            attachments.append((i, j, shared[0]))

    if len(blocks) > 1:
        if len(attachments) != len(blocks) - 1:
            raise InternalInconsistency(
                f"{len(blocks)} blocks but {len(attachments)} attachments"
            )
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for a, b, _ in attachments:
                for y in ((b,) if a == x else (a,) if b == x else ()):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        if len(seen) != len(blocks):
            raise InternalInconsistency("attachment graph is disconnected")

    return BlockTree(graph.node_count, tuple(blocks), tuple(attachments))


# ---------------------------------------------------------------------------
# Quasigroup decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    """One block's share of the operation.

    `quasigroup` is the exact factor used for recomposition.  Cliques of
    four or more nodes, and triangles passing the quadrangle criterion,
    also carry a GroupWitness; chordless-circle blocks and nongroup
    triangles carry only the irreducible factor.
    """

    block: Block
    quasigroup: MultaryQuasigroup
    witness: GroupWitness | None

    @property
    def is_group(self) -> bool:
        return self.witness is not None

    def input_slots(self) -> list[tuple[int, int]]:
        ns = sorted(self.block.nodes)
        return [(a, b) for a, b in zip(ns, ns[1:])]

    def output_edge(self) -> tuple[int, int]:
        ns = sorted(self.block.nodes)
        return (ns[0], ns[-1])


@dataclass(frozen=True)
class DecompositionTree:
    """Block tree of Delta(Q) with one component per block."""

    arity: int
    order: int
    components: tuple[Component, ...]
    attachments: tuple[tuple[int, int, tuple[int, int]], ...]
    root: int

    @property
    def blocks(self) -> tuple[Block, ...]:
        return tuple(c.block for c in self.components)

    def to_json(self) -> dict:
        comps = []
        for c in self.components:
            entry = {
                "kind": c.block.kind,
                "nodes": list(c.block.nodes),
                "arity": c.quasigroup.arity,
                "table": list(c.quasigroup.table),
            }
            if c.witness is not None:
                entry["group"] = c.witness.to_json()["group"]
                entry["isotopy"] = c.witness.to_json()["isotopy"]
            comps.append(entry)
        return {
            "arity": self.arity,
            "order": self.order,
            "root": self.root,
            "components": comps,
            "attachments": [
                {"blocks": [a, b], "edge": list(e)}
                for a, b, e in self.attachments
            ],
        }

    def to_dot(self, name: str = "decomposition") -> str:
        return BlockTree(
            self.arity + 1, self.blocks, self.attachments
        ).to_dot(name)


def _classify(q: MultaryQuasigroup, block: Block) -> Component:
    if block.kind == CIRCLE:
        graph = factorization_graph(q)
        if graph.chords:
            raise InternalInconsistency(
                f"circle component has chords: {graph.chord_line()}"
            )
        return Component(block, q, None)
    if q.arity == 2:
        ok, _ = quadrangle_criterion(q)
        witness = extract_group(q) if ok else None
        return Component(block, q, witness)
    return Component(block, q, extract_group(q))


def decompose_quasigroup(q: MultaryQuasigroup) -> DecompositionTree:
    """Peel leaf blocks off the factorization graph, extracting the factor
    of each block; recompose() rebuilds the exact table."""
    graph = factorization_graph(q)
    tree = block_decomposition(graph)

    pieces: dict[Block, MultaryQuasigroup] = {}

    def peel(cur: MultaryQuasigroup, orig: tuple[int, ...]):
        bt = block_decomposition(factorization_graph(cur))
        if len(bt.blocks) == 1:
            b = bt.blocks[0]
            mapped = _map_block(b, orig)
            pieces[mapped] = cur
            return
        degree = {i: 0 for i in range(len(bt.blocks))}
        for a, b, _ in bt.attachments:
            degree[a] += 1
            degree[b] += 1
        wrap = (0, cur.arity)
        root_idx = next(
            i
            for i, blk in enumerate(bt.blocks)
            if wrap in blk.edge_set()
        )
        leaf_idx = min(
            i for i in range(len(bt.blocks)) if degree[i] <= 1 and i != root_idx
        )
        leaf = bt.blocks[leaf_idx]
        a, b = min(leaf.nodes), max(leaf.nodes)
        pair = reducible_at(cur, Segment(a, b))
        if pair is None:
            raise InternalInconsistency(
                f"block edge ({a}, {b}) is not a reducible segment"
            )
        pieces[_map_block(leaf, orig)] = pair.inner
        peel(pair.outer, orig[: a + 1] + orig[b:])

    peel(q, tuple(range(q.arity + 1)))

    if set(pieces) != set(tree.blocks):
        raise InternalInconsistency(
            "peeled blocks disagree with the block decomposition"
        )
    components = tuple(_classify(pieces[b], b) for b in tree.blocks)
    wrap = (0, q.arity)
    root = next(
        i for i, b in enumerate(tree.blocks) if wrap in b.edge_set()
    )
    return DecompositionTree(
        q.arity, q.order, components, tree.attachments, root
    )


def _map_block(block: Block, orig: tuple[int, ...]) -> Block:
    return Block(block.kind, tuple(orig[n] for n in block.nodes))


def recompose(
    tree: DecompositionTree, order: tuple[int, ...] | None = None
) -> MultaryQuasigroup:
    """Substitute each component into the slot its block boundary edge
    occupies.  Any merge order of the non-root components produces the
    same table.
    """
    comps = tree.components
    if order is None:
        order = tuple(i for i in range(len(comps)) if i != tree.root)
    else:
        order = tuple(order)
        if sorted(order) != sorted(
            i for i in range(len(comps)) if i != tree.root
        ):
            raise MalformedTree(
                f"order must list every non-root component once, got {order}"
            )

    exprs: dict[int, tuple[MultaryQuasigroup, list[tuple[int, int]]]] = {
        i: (c.quasigroup, c.input_slots()) for i, c in enumerate(comps)
    }
    for idx in order:
        target = comps[idx].output_edge()
        table, slots = exprs.pop(idx)
        owner = None
        for j, (_, s) in exprs.items():
            if target in s:
                owner = j
                break
        if owner is None:
            raise MalformedTree(f"no open slot for edge {target}")
        otable, oslots = exprs[owner]
        pos = oslots.index(target) + 1
        merged = compose(otable, table, pos)
        exprs[owner] = (merged, oslots[: pos - 1] + slots + oslots[pos:])

    (table, slots), = exprs.values()
    expected = [(i, i + 1) for i in range(tree.arity)]
    if slots != expected:
        raise MalformedTree(f"final slots {slots} != cycle sides {expected}")
    return table
