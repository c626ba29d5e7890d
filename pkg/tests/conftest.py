"""Shared corpus builders and independent test oracles.

The oracles here deliberately avoid the package's own primitives: acyclicity
is decided by explicit 3-cycle search over vertex triples, and maximal sets
by scanning subsets with that test.  They exist to check the package's fast
paths from a second direction.
"""

from itertools import combinations

import pytest

from tournament_fvs import (
    Tournament,
    VertexSet,
    circular,
    disjoint_sum,
    pq,
    random_tournament,
    rt5,
    st6,
    st7,
    transitive,
    u_family,
)


def oracle_is_transitive(T: Tournament, labels) -> bool:
    """3-cycle search: a tournament is acyclic iff no vertex triple cycles."""
    ls = sorted(labels)
    for a, b, c in combinations(ls, 3):
        ab, bc, ac = T.beats(a, b), T.beats(b, c), T.beats(a, c)
        if (ab and bc and not ac) or (not ab and not bc and ac):
            return False
    return True


def oracle_maximal_sets(T: Tournament) -> set[VertexSet]:
    """All maximal acyclic vertex sets by direct subset scan."""
    n = T.n
    out = set()
    verts = range(1, n + 1)
    for r in range(n + 1):
        for S in combinations(verts, r):
            if not oracle_is_transitive(T, S):
                continue
            if all(
                not oracle_is_transitive(T, S + (v,))
                for v in verts
                if v not in S
            ):
                out.add(VertexSet(n, S))
    return out


def oracle_min_fvs_size(T: Tournament) -> int:
    """Minimum FVS size: grow the removal set until the rest is acyclic."""
    n = T.n
    verts = range(1, n + 1)
    for r in range(n + 1):
        for F in combinations(verts, r):
            keep = [v for v in verts if v not in F]
            if oracle_is_transitive(T, keep):
                return r
    raise AssertionError("unreachable: removing everything is always acyclic")


def feasible_score_sequences(n: int):
    """All sorted sequences realizable by some n-vertex tournament: entries
    in 0..n-1, prefix sums at least the all-play-all count, total C(n, 2)."""
    from math import comb

    total = comb(n, 2)

    def rec(prefix, lo, acc):
        k = len(prefix)
        if k == n:
            if acc == total:
                yield tuple(prefix)
            return
        rem = n - k - 1
        for v in range(lo, n):
            na = acc + v
            if na < comb(k + 1, 2):
                continue
            if na + rem * (n - 1) < total or na > total:
                continue
            yield from rec(prefix + [v], v, na)

    yield from rec([], 0, 0)


def generator_corpus(max_n: int = 12) -> list[tuple[str, Tournament]]:
    """Every named construction of the library, capped at max_n vertices."""
    items: list[tuple[str, Tournament]] = []
    for n in range(1, max_n + 1):
        items.append((f"transitive({n})", transitive(n)))
    items.append(("c3", circular(3, {1})))
    items.append(("rt5", rt5()))
    items.append(("st6", st6()))
    items.append(("st7", st7()))
    if max_n >= 9:
        items.append(("circular(9,{1,2,3,4})", circular(9, {1, 2, 3, 4})))
    if max_n >= 11:
        items.append(("circular(11,{1,2,3,4,5})", circular(11, {1, 2, 3, 4, 5})))
    if max_n >= 13:
        items.append(("circular(13,1..6)", circular(13, set(range(1, 7)))))
    if max_n >= 15:
        items.append(("circular(15,1..7)", circular(15, set(range(1, 8)))))
    items.append(("circular(7,{3,5,6})", circular(7, {3, 5, 6})))
    for n in range(3, max_n + 1):
        items.append((f"u_family({n})", u_family(n)))
    inners = [
        ("c3", circular(3, {1})),
        ("rt5", rt5()),
        ("st6", st6()),
        ("st7", st7()),
        ("transitive(5)", transitive(5)),
        ("pq(c3)", pq(circular(3, {1}))),
    ]
    for name, inner in inners:
        if inner.n + 2 <= max_n:
            items.append((f"pq({name})", pq(inner)))
    sums = [
        ("c3+c3", disjoint_sum(circular(3, {1}), circular(3, {1}))),
        ("tt3+c3", disjoint_sum(transitive(3), circular(3, {1}))),
        ("c3+st7", disjoint_sum(circular(3, {1}), st7())),
        ("st7+rt5", disjoint_sum(st7(), rt5())),
        ("st7+st7", disjoint_sum(st7(), st7())),
    ]
    for name, T in sums:
        if T.n <= max_n:
            items.append((name, T))
    return items


def random_corpus(
    per_n: int, max_n: int = 12, min_n: int = 1, seed0: int = 1000
) -> list[tuple[str, Tournament]]:
    """Deterministic random instances: per_n tournaments for each order."""
    items = []
    for n in range(min_n, max_n + 1):
        for i in range(per_n):
            seed = seed0 + 1000 * n + i
            items.append((f"random({n},{seed})", random_tournament(n, seed)))
    return items


@pytest.fixture(scope="session")
def small_corpus():
    """Generators plus a light random sprinkle, for module-level tests."""
    return generator_corpus(12) + random_corpus(6, max_n=10)
