"""Streaming enumeration of the maximal acyclic vertex sets of a tournament.

The complements of these sets are exactly the minimal feedback vertex sets,
so the same traversal drives minimal-FVS listing, counting, and the exact
minimum-FVS solver.

The traversal walks an implicit tree whose nodes at level j are the maximal
acyclic vertex sets of the prefix tournament T_j = T[{v_1..v_j}], built on
the fly.  A node J at level j either extends to the single child
J + {v_{j+1}} (when that stays acyclic) or spawns: an unchanged copy of J,
plus every set obtained by splicing v_{j+1} into J's beating order at some
position and discarding the vertices that no longer fit.  A spliced set is
kept only when it is maximal in T_{j+1} and when the greedy
lexicographically-smallest completion of its level-j part reproduces J;
the second rule picks a unique parent for a set reachable from several
nodes, which is what makes every maximal acyclic set of T appear on
exactly one leaf.

Everything streams: memory holds one root-to-leaf path plus the children
of the nodes on it, so space stays quadratic in the vertex count and the
work between consecutive outputs stays polynomial.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import prod
from typing import Iterator

from .core import (
    Tournament,
    VertexSet,
    is_acyclic_subset,
    strong_factorization,
)

__all__ = [
    "EnumNode",
    "TraversalStats",
    "DelayProfile",
    "lex_smaller",
    "lex_smallest_extension",
    "children",
    "enumerate_maximal_acyclic",
    "iter_maximal_acyclic_chains",
    "enumerate_minimal_fvs",
    "count_minimal_fvs",
    "min_fvs",
    "brute_force_maximal_acyclic",
    "delay_profile",
]


@dataclass(frozen=True)
class EnumNode:
    """A node of the enumeration tree: a maximal acyclic vertex set of the
    level-j prefix tournament together with its beating order."""

    level: int
    members: VertexSet
    chain: tuple[int, ...]


@dataclass
class TraversalStats:
    """Counters filled in by an instrumented traversal."""

    nodes_visited: int = 0
    edge_traversals: int = 0
    emitted: int = 0
    max_gap_traversals: int = 0
    peak_stored_labels: int = 0
    max_children: int = 0
    max_insert_children: int = 0
    _gap_start: int = field(default=0, repr=False)

    def note_emit(self) -> None:
        gap = self.edge_traversals - self._gap_start
        if gap > self.max_gap_traversals:
            self.max_gap_traversals = gap
        self._gap_start = self.edge_traversals
        self.emitted += 1


@dataclass(frozen=True)
class DelayProfile:
    """Delay/space measurements of one full enumeration run."""

    n: int
    outputs: int
    total_traversals: int
    max_gap_traversals: int
    peak_stored_labels: int
    max_children: int
    wall_seconds: float
    max_output_gap_seconds: float

    def lines(self) -> list[str]:
        return [
            f"n={self.n}",
            f"outputs={self.outputs}",
            f"total_traversals={self.total_traversals}",
            f"max_gap_traversals={self.max_gap_traversals}",
            f"peak_stored_labels={self.peak_stored_labels}",
            f"max_children={self.max_children}",
            f"wall_seconds={self.wall_seconds:.6f}",
            f"max_output_gap_seconds={self.max_output_gap_seconds:.6f}",
        ]


# ---------------------------------------------------------------------------
# chain primitives (0-based vertex indices, bitmask sets)


def _fit_position(rows, chain: list[int], v: int) -> int:
    """Where v slots into a transitive chain, or -1 if it cannot.

    The chain lists vertices in beating order.  v fits iff the vertices
    beating v form a prefix of the chain; the returned index is the first
    chain position v beats.
    """
    z = len(chain)
    lost = False  # v has beaten some chain vertex already
    for i, c in enumerate(chain):
        if (rows[c] >> v) & 1:
            if lost:
                return -1
        else:
            if not lost:
                z = i
            lost = True
    return z


def _greedy_extension(rows, j: int, mask: int, chain: list[int]) -> tuple[int, list[int]]:
    """The lexicographically smallest maximal acyclic superset of
    (mask, chain) within the first j vertices: sweep v_1..v_j and take every
    vertex that keeps the set acyclic."""
    m = mask
    ch = list(chain)
    for v in range(j):
        if (m >> v) & 1:
            continue
        z = _fit_position(rows, ch, v)
        if z >= 0:
            ch.insert(z, v)
            m |= 1 << v
    return m, ch


def _is_maximal_prefix(rows, j: int, mask: int, chain: list[int]) -> bool:
    for u in range(j):
        if (mask >> u) & 1:
            continue
        if _fit_position(rows, chain, u) >= 0:
            return False
    return True


def _children_raw(
    rows,
    j: int,
    mask: int,
    chain: list[int],
    prune_positions: bool,
    debug_parent_check: bool,
) -> list[tuple[int, list[int]]]:
    """Children of a level-j node, as (mask, chain) pairs.

    Order is deterministic: the copy child first, then splice children by
    ascending insertion position.
    """
    v = j  # v_{j+1} has 0-based index j
    z = _fit_position(rows, chain, v)
    if z >= 0:
        ch = list(chain)
        ch.insert(z, v)
        return [(mask | (1 << v), ch)]

    kids: list[tuple[int, list[int]]] = [(mask, list(chain))]
    seen = {mask}
    if prune_positions:
        positions = _sensible_positions(rows, chain, v)
    else:
        positions = range(len(chain) + 1)
    for zz in positions:
        nm = 1 << v
        pre: list[int] = []
        suf: list[int] = []
        for i, c in enumerate(chain):
            if i < zz:
                if (rows[c] >> v) & 1:
                    pre.append(c)
                    nm |= 1 << c
            elif (rows[v] >> c) & 1:
                suf.append(c)
                nm |= 1 << c
        if nm in seen:
            continue
        nch = pre + [v] + suf
        if not _is_maximal_prefix(rows, j + 1, nm, nch):
            continue
        pm = nm & ~(1 << v)
        hm, _ = _greedy_extension(rows, j, pm, pre + suf)
        if hm != mask:
            continue
        if debug_parent_check:
            _assert_parent_rule(rows, j, mask, nm, nch)
        seen.add(nm)
        kids.append((nm, nch))
    return kids


def _assert_parent_rule(rows, j: int, parent_mask: int, nm: int, nch: list[int]) -> None:
    """Debug re-verification of an accepted splice child, through a chain
    rebuilt from scratch instead of the maintained one."""
    order = sorted(
        (i for i in range(len(rows)) if (nm >> i) & 1),
        key=lambda u: -(rows[u] & nm).bit_count(),
    )
    if order != nch:
        raise AssertionError(f"maintained chain drifted for child {nm:#x}")
    v = j
    pm = nm & ~(1 << v)
    part = [u for u in order if u != v]
    hm, _ = _greedy_extension(rows, j, pm, part)
    if hm != parent_mask:
        raise AssertionError(f"parent rule violated at level {j} for child {nm:#x}")


def _sensible_positions(rows, chain: list[int], v: int) -> list[int]:
    """Insertion positions that can produce maximal sets: ahead of a chain
    head v beats, between a vertex beating v and one beaten by v, or behind
    a chain tail that beats v.  Other positions always leave a discarded
    vertex re-insertable."""
    if not chain:
        return [0]
    beats_v = [(rows[c] >> v) & 1 for c in chain]
    out = []
    if not beats_v[0]:
        out.append(0)
    out.extend(
        i + 1
        for i in range(len(chain) - 1)
        if beats_v[i] and not beats_v[i + 1]
    )
    if beats_v[-1]:
        out.append(len(chain))
    return out


def _dfs(
    rows,
    n: int,
    prune_positions: bool = False,
    debug_parent_check: bool = False,
    stats: TraversalStats | None = None,
) -> Iterator[tuple[int, list[int]]]:
    """Depth-first traversal; yields (mask, chain) for each leaf at level n.

    The explicit stack holds, per level, the remaining children of the node
    on the current path, which is the entire memory footprint.
    """
    track = stats is not None
    root = (1, [0])
    if track:
        stats.nodes_visited += 1
    if n == 1:
        if track:
            stats.note_emit()
        yield root
        return
    # frame: (level, children list, next child index)
    frames: list[list] = [[1, _children_raw(rows, 1, 1, [0], prune_positions, debug_parent_check), 0]]
    if track:
        kids = frames[0][1]
        stats.max_children = max(stats.max_children, len(kids))
        if len(kids) > 1:
            stats.max_insert_children = max(stats.max_insert_children, len(kids) - 1)
        stats.peak_stored_labels = max(stats.peak_stored_labels, 1 + len(kids))
    while frames:
        level, kids, idx = frames[-1]
        if idx >= len(kids):
            frames.pop()
            if track and frames:
                stats.edge_traversals += 1  # ascend
            continue
        frames[-1][2] += 1
        cmask, cchain = kids[idx]
        if track:
            stats.edge_traversals += 1  # descend
            stats.nodes_visited += 1
        if level + 1 == n:
            if track:
                stats.note_emit()
            yield cmask, cchain
            if track:
                stats.edge_traversals += 1  # ascend back from the leaf
            continue
        ckids = _children_raw(
            rows, level + 1, cmask, cchain, prune_positions, debug_parent_check
        )
        frames.append([level + 1, ckids, 0])
        if track:
            stats.max_children = max(stats.max_children, len(ckids))
            if len(ckids) > 1:
                stats.max_insert_children = max(
                    stats.max_insert_children, len(ckids) - 1
                )
            stored = sum(1 + len(f[1]) for f in frames)
            stats.peak_stored_labels = max(stats.peak_stored_labels, stored)


# ---------------------------------------------------------------------------
# public surface (1-based labels)


def lex_smaller(X: VertexSet, Y: VertexSet) -> bool:
    """Lexicographic order on vertex sets: X comes first iff the smallest
    label on which they differ belongs to X."""
    diff = X.mask ^ Y.mask
    if diff == 0:
        return False
    return X.mask & (diff & -diff) != 0


def lex_smallest_extension(T: Tournament, j: int, X: VertexSet) -> VertexSet:
    """Greedy completion of an acyclic set X to the lexicographically
    smallest maximal acyclic vertex set of the prefix tournament T_j."""
    if not 1 <= j <= T.n:
        raise ValueError(f"level {j} outside 1..{T.n}")
    if X.mask >> j:
        raise ValueError(f"set contains vertices beyond the first {j}")
    if not is_acyclic_subset(T, X):
        raise ValueError("cannot extend a non-acyclic set")
    chain = sorted(X, key=lambda v: -(T.rows[v - 1] & X.mask).bit_count())
    m, _ = _greedy_extension(
        T.rows, j, X.mask, [v - 1 for v in chain]
    )
    return VertexSet.from_mask(T.n, m)


def children(T: Tournament, node: EnumNode) -> list[EnumNode]:
    """The enumeration-tree children of a node, in traversal order."""
    if node.level >= T.n:
        raise ValueError(f"level {node.level} node has no children in T_{T.n}")
    raw = _children_raw(
        T.rows,
        node.level,
        node.members.mask,
        [v - 1 for v in node.chain],
        prune_positions=False,
        debug_parent_check=False,
    )
    return [
        EnumNode(
            node.level + 1,
            VertexSet.from_mask(T.n, m),
            tuple(v + 1 for v in ch),
        )
        for m, ch in raw
    ]


def iter_maximal_acyclic_chains(
    T: Tournament,
    *,
    relabel_by_score: bool = False,
    prune_positions: bool = False,
    debug_parent_check: bool = False,
    stats: TraversalStats | None = None,
) -> Iterator[tuple[VertexSet, tuple[int, ...]]]:
    """Stream every maximal acyclic vertex set with its beating order.

    ``relabel_by_score`` processes vertices by ascending score instead of
    by label; the emitted collection of sets is identical, only the
    traversal (and hence the emission order) changes.
    """
    if relabel_by_score:
        order = sorted(range(T.n), key=lambda v: (T.rows[v].bit_count(), v))
        pos = {v: i for i, v in enumerate(order)}
        rows = [0] * T.n
        for v in range(T.n):
            r = T.rows[v]
            nr = 0
            while r:
                b = r & -r
                nr |= 1 << pos[b.bit_length() - 1]
                r ^= b
            rows[pos[v]] = nr
        for mask, chain in _dfs(rows, T.n, prune_positions, debug_parent_check, stats):
            back = 0
            m = mask
            while m:
                b = m & -m
                back |= 1 << order[b.bit_length() - 1]
                m ^= b
            yield (
                VertexSet.from_mask(T.n, back),
                tuple(order[c] + 1 for c in chain),
            )
    else:
        for mask, chain in _dfs(T.rows, T.n, prune_positions, debug_parent_check, stats):
            yield VertexSet.from_mask(T.n, mask), tuple(c + 1 for c in chain)


def enumerate_maximal_acyclic(T: Tournament, **kwargs) -> Iterator[VertexSet]:
    """Stream every maximal acyclic vertex set of T exactly once."""
    for members, _ in iter_maximal_acyclic_chains(T, **kwargs):
        yield members


def enumerate_minimal_fvs(T: Tournament, **kwargs) -> Iterator[VertexSet]:
    """Stream every minimal feedback vertex set of T exactly once, as the
    complements of the maximal acyclic sets, in the same order."""
    for members, _ in iter_maximal_acyclic_chains(T, **kwargs):
        yield members.complement()


def count_minimal_fvs(T: Tournament) -> int:
    """The number of minimal feedback vertex sets.

    Counts factor by factor: the minimal FVSs of a tournament are exactly
    the unions of one minimal FVS per strong factor, so the count is the
    product of the per-factor stream counts.
    """
    return prod(
        sum(1 for _ in _dfs(T.induced(f).rows, len(f)))
        for f in strong_factorization(T)
    )


def min_fvs(T: Tournament) -> VertexSet:
    """A minimum-cardinality feedback vertex set.

    Streams each strong factor and keeps the first largest maximal acyclic
    set seen there; the union of the per-factor complements is a global
    minimum because cycles never cross factors.
    """
    keep = 0
    for f in strong_factorization(T):
        sub = T.induced(f)
        labels = sorted(f)
        best_mask = -1
        best_size = -1
        for mask, _ in _dfs(sub.rows, sub.n):
            size = mask.bit_count()
            if size > best_size:
                best_size = size
                best_mask = mask
        m = best_mask
        while m:
            b = m & -m
            keep |= 1 << (labels[b.bit_length() - 1] - 1)
            m ^= b
    result = VertexSet.from_mask(T.n, ((1 << T.n) - 1) ^ keep)
    if not is_acyclic_subset(T, result.complement()):
        raise RuntimeError("minimum FVS failed its acyclic-complement check")
    return result


def brute_force_maximal_acyclic(T: Tournament) -> set[VertexSet]:
    """Independent oracle: scan all 2**n subsets for maximal acyclicity.

    Acyclicity is computed by a subset DP over 3-cycles, entirely separate
    from the traversal machinery.  Guarded to n <= 20.
    """
    n = T.n
    if n > 20:
        raise ValueError(f"brute force oracle is guarded to n <= 20, got {n}")
    rows = T.rows
    acyclic = bytearray(1 << n)
    acyclic[0] = 1
    for S in range(1, 1 << n):
        low = S & -S
        rest = S ^ low
        if not acyclic[rest]:
            continue
        v = low.bit_length() - 1
        ok = 1
        inside_in = rest & ~rows[v]
        out = rows[v] & rest
        while out:
            b = out & -out
            if rows[b.bit_length() - 1] & inside_in:
                ok = 0
                break
            out ^= b
        acyclic[S] = ok
    full = (1 << n) - 1
    found = set()
    for S in range(1 << n):
        if not acyclic[S]:
            continue
        rem = full ^ S
        maximal = True
        while rem:
            b = rem & -rem
            if acyclic[S | b]:
                maximal = False
                break
            rem ^= b
        if maximal:
            found.add(VertexSet.from_mask(n, S))
    return found


def delay_profile(T: Tournament) -> DelayProfile:
    """Run an instrumented enumeration and report delay/space counters."""
    stats = TraversalStats()
    start = time.perf_counter()
    last = start
    max_gap_s = 0.0
    outputs = 0
    for _ in _dfs(T.rows, T.n, stats=stats):
        now = time.perf_counter()
        max_gap_s = max(max_gap_s, now - last)
        last = now
        outputs += 1
    wall = time.perf_counter() - start
    return DelayProfile(
        n=T.n,
        outputs=outputs,
        total_traversals=stats.edge_traversals,
        max_gap_traversals=stats.max_gap_traversals,
        peak_stored_labels=stats.peak_stored_labels,
        max_children=stats.max_children,
        wall_seconds=wall,
        max_output_gap_seconds=max_gap_s,
    )
