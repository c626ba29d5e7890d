"""Core types, structural queries, score machinery, and generators."""

from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tournament_fvs import (
    ScoreSequence,
    Tournament,
    TournParseError,
    VertexSet,
    arc_bits,
    banks_winners,
    circular,
    disjoint_sum,
    format_tourn,
    from_arc_bits,
    hamiltonian_path,
    is_acyclic_subset,
    is_maximal_acyclic,
    is_strong,
    landau_feasible,
    parse_tourn,
    pq,
    random_tournament,
    realize_score_sequence,
    reverse,
    rt5,
    score_sequence,
    st6,
    st7,
    strong_factorization,
    topological_order,
    transitive,
    u_family,
)

from conftest import oracle_is_transitive

C3 = circular(3, {1})


def all_tournaments(n):
    for bits in range(1 << comb(n, 2)):
        yield from_arc_bits(n, bits)


def subsets(T):
    for r in range(T.n + 1):
        for S in combinations(range(1, T.n + 1), r):
            yield VertexSet(T.n, S)


# ---------------------------------------------------------------------------
# types


class TestVertexSet:
    def test_ascending_iteration(self):
        s = VertexSet(9, [7, 2, 5])
        assert list(s) == [2, 5, 7]
        assert s.labels == (2, 5, 7)
        assert len(s) == 3

    def test_membership_and_complement(self):
        s = VertexSet(4, [1, 3])
        assert 1 in s and 3 in s and 2 not in s and 5 not in s
        assert s.complement().labels == (2, 4)

    def test_set_algebra(self):
        a, b = VertexSet(5, [1, 2]), VertexSet(5, [2, 3])
        assert (a | b).labels == (1, 2, 3)
        assert (a & b).labels == (2,)
        assert (a - b).labels == (1,)
        assert a <= (a | b)

    def test_label_bounds(self):
        with pytest.raises(ValueError):
            VertexSet(3, [4])
        with pytest.raises(ValueError):
            VertexSet(3, [0])

    def test_immutable(self):
        s = VertexSet(3, [1])
        with pytest.raises(AttributeError):
            s.mask = 7


class TestScoreSequence:
    def test_valid(self):
        s = ScoreSequence((0, 1, 2, 3))
        assert tuple(s) == (0, 1, 2, 3)
        assert s == (0, 1, 2, 3)

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            ScoreSequence((2, 1, 3))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ScoreSequence((0, 1, 3))  # 3 > n-1 = 2


class TestTournament:
    def test_validates_orientation(self):
        with pytest.raises(ValueError, match=r"pair \(1, 2\)"):
            Tournament(2, [0b10, 0b01])  # both arcs
        with pytest.raises(ValueError, match=r"pair \(1, 2\)"):
            Tournament(2, [0, 0])  # no arc
        with pytest.raises(ValueError, match="beats itself"):
            Tournament(2, [0b11, 0])

    def test_queries(self):
        T = C3
        assert T.beats(1, 2) and T.beats(2, 3) and T.beats(3, 1)
        assert not T.beats(2, 1)
        assert T.score(1) == 1
        assert T.out_neighbors(1).labels == (2,)
        assert T.in_neighbors(1).labels == (3,)

    def test_induced_relabels(self):
        sub = st7().induced([2, 3, 5])
        assert sub.n == 3
        # arcs follow the original: 2->3 (diff 1), 3->5 (diff 2), 2->... 5-2=3 not a residue, so 5->2
        assert sub.beats(1, 2) and sub.beats(2, 3) and sub.beats(3, 1)


# ---------------------------------------------------------------------------
# acyclicity and orders


class TestAcyclicity:
    def test_c3_whole_set_cycles(self):
        assert not is_acyclic_subset(C3, VertexSet(3, [1, 2, 3]))

    def test_empty_set(self):
        assert is_acyclic_subset(C3, VertexSet(3, []))

    def test_st7_has_no_transitive_4_subset(self):
        T = st7()
        for S in combinations(range(1, 8), 4):
            assert not is_acyclic_subset(T, VertexSet(7, S))

    def test_agrees_with_triangle_search_exhaustively(self):
        # every tournament on up to 5 vertices, every subset
        for n in range(1, 6):
            for T in all_tournaments(n):
                for S in subsets(T):
                    assert is_acyclic_subset(T, S) == oracle_is_transitive(T, S)

    def test_agrees_with_triangle_search_on_corpus(self, small_corpus):
        for name, T in small_corpus:
            if not 6 <= T.n <= 7:
                continue
            for S in subsets(T):
                assert is_acyclic_subset(T, S) == oracle_is_transitive(T, S), name


class TestTopologicalOrder:
    def test_transitive_whole(self):
        assert topological_order(transitive(4), VertexSet(4, [1, 2, 3, 4])) == (1, 2, 3, 4)

    def test_two_vertices(self):
        assert topological_order(C3, VertexSet(3, [1, 2])) == (1, 2)
        assert topological_order(C3, VertexSet(3, [1, 3])) == (3, 1)

    def test_rejects_cycles(self):
        with pytest.raises(ValueError):
            topological_order(C3, VertexSet(3, [1, 2, 3]))

    def test_order_property_everywhere(self, small_corpus):
        for name, T in small_corpus:
            if T.n > 8:
                continue
            for S in subsets(T):
                if not is_acyclic_subset(T, S):
                    continue
                order = topological_order(T, S)
                for i, u in enumerate(order):
                    for v in order[i + 1 :]:
                        assert T.beats(u, v), name


class TestMaximalAcyclic:
    def test_st7_triangles(self):
        T = st7()
        assert is_maximal_acyclic(T, VertexSet(7, [1, 2, 3]))

    def test_transitive_whole(self):
        T = transitive(6)
        assert is_maximal_acyclic(T, VertexSet(6, range(1, 7)))

    def test_c3_singleton_extends(self):
        assert not is_maximal_acyclic(C3, VertexSet(3, [1]))


# ---------------------------------------------------------------------------
# scores


class TestScoreSequenceOps:
    def test_st7_regular(self):
        assert tuple(score_sequence(st7())) == (3,) * 7

    def test_transitive(self):
        assert tuple(score_sequence(transitive(5))) == (0, 1, 2, 3, 4)

    def test_u6_matches_construction(self):
        # u_family(6): transitive top beats 3, next beat 2..0 plus both extras,
        # extras beat vertex 1 (and u1 beats u2)
        assert tuple(score_sequence(u_family(6))) == (1, 2, 2, 3, 3, 4)

    def test_sum_conservation(self, small_corpus):
        for name, T in small_corpus:
            assert sum(score_sequence(T)) == comb(T.n, 2), name

    def test_landau_strong_examples(self):
        assert landau_feasible(ScoreSequence((3,) * 7), strong=True)
        assert not landau_feasible(ScoreSequence((0, 1, 2, 3)), strong=True)
        assert landau_feasible(
            ScoreSequence((3, 3, 3, 3, 3, 5, 7, 7, 7, 7, 7)), strong=True
        )

    def test_landau_nonstrict(self):
        assert landau_feasible(ScoreSequence((0, 1, 2)))
        assert landau_feasible(ScoreSequence((1, 1, 1)))
        assert not landau_feasible(ScoreSequence((0, 0, 2)))

    def test_strong_tournaments_pass_strong_landau(self, small_corpus):
        for name, T in small_corpus:
            if T.n >= 3 and is_strong(T):
                assert landau_feasible(score_sequence(T), strong=True), name


class TestRealize:
    def test_transitive_scores(self):
        T = realize_score_sequence(ScoreSequence((0, 1, 2, 3, 4)))
        assert tuple(score_sequence(T)) == (0, 1, 2, 3, 4)

    def test_regular_triangle(self):
        T = realize_score_sequence(ScoreSequence((1, 1, 1)))
        assert tuple(score_sequence(T)) == (1, 1, 1)

    def test_sigma12_realizes(self):
        s = ScoreSequence((3, 3, 3, 3, 3, 3, 8, 8, 8, 8, 8, 8))
        assert score_sequence(realize_score_sequence(s)) == s

    def test_rejects_with_prefix_diagnostic(self):
        with pytest.raises(ValueError, match="k=2"):
            realize_score_sequence(ScoreSequence((0, 0, 3, 3)))

    def test_round_trip_all_feasible_up_to_7(self):
        from conftest import feasible_score_sequences

        for n in range(1, 8):
            for seq in feasible_score_sequences(n):
                s = ScoreSequence(seq)
                assert score_sequence(realize_score_sequence(s)) == s


# ---------------------------------------------------------------------------
# factorization, reversal, paths


class TestFactorization:
    def test_transitive_all_singletons(self):
        f = strong_factorization(transitive(5))
        assert [x.labels for x in f] == [(1,), (2,), (3,), (4,), (5,)]

    def test_st7_single_factor(self):
        f = strong_factorization(st7())
        assert len(f) == 1 and len(f.factors[0]) == 7

    def test_double_st7(self):
        f = strong_factorization(disjoint_sum(st7(), st7()))
        assert [len(x) for x in f] == [7, 7]
        assert f.factors[0].labels == tuple(range(1, 8))

    def test_invariants_on_corpus(self, small_corpus):
        for name, T in small_corpus:
            f = strong_factorization(T)
            seen = VertexSet(T.n, [])
            for part in f:
                assert (seen & part).mask == 0, name
                seen = seen | part
                assert is_strong(T.induced(part)), name
            assert seen == T.vertices, name
            # earlier factor beats later factor, vertex by vertex
            parts = list(f)
            for i in range(len(parts)):
                for j in range(i + 1, len(parts)):
                    for u in parts[i]:
                        for v in parts[j]:
                            assert T.beats(u, v), name

    def test_is_strong_examples(self):
        assert is_strong(C3)
        assert not is_strong(transitive(3))
        assert is_strong(u_family(9))


class TestReverse:
    def test_scores_flip(self, small_corpus):
        for name, T in small_corpus:
            exp = sorted(T.n - 1 - s for s in score_sequence(T))
            assert list(score_sequence(reverse(T))) == exp, name

    def test_involution(self):
        T = random_tournament(9, 5)
        assert reverse(reverse(T)) == T

    def test_st7_reverse_regular(self):
        assert tuple(score_sequence(reverse(st7()))) == (3,) * 7


class TestHamiltonianPath:
    def test_transitive(self):
        assert hamiltonian_path(transitive(6)) == (1, 2, 3, 4, 5, 6)

    def test_c3_is_rotation(self):
        p = hamiltonian_path(C3)
        assert p in {(1, 2, 3), (2, 3, 1), (3, 1, 2)}

    @given(st.integers(1, 12), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_consecutive_arcs(self, n, seed):
        T = random_tournament(n, seed)
        p = hamiltonian_path(T)
        assert sorted(p) == list(range(1, n + 1))
        for u, v in zip(p, p[1:]):
            assert T.beats(u, v)


# ---------------------------------------------------------------------------
# generators


class TestGenerators:
    def test_circular_validation(self):
        with pytest.raises(ValueError):
            circular(4, {1, 2})  # even order
        with pytest.raises(ValueError):
            circular(5, {1, 4})  # both of a +/- pair
        with pytest.raises(ValueError):
            circular(5, {1})  # missing a pair

    def test_st6_is_st7_without_vertex_1(self):
        small, big = st6(), st7()
        for u in range(1, 7):
            for v in range(1, 7):
                if u != v:
                    assert small.beats(u, v) == big.beats(u + 1, v + 1)

    def test_rt5_regular(self):
        assert tuple(score_sequence(rt5())) == (2,) * 5

    def test_pq_arcs(self):
        T = pq(C3)
        assert T.n == 5
        p, q = 4, 5
        assert T.beats(q, p)
        for t in (1, 2, 3):
            assert T.beats(p, t) and T.beats(t, q)

    def test_u_family_guard(self):
        with pytest.raises(ValueError):
            u_family(2)

    def test_u_family_is_strong(self):
        for n in range(3, 15):
            assert is_strong(u_family(n))

    def test_disjoint_sum_structure(self):
        T = disjoint_sum(C3, transitive(2))
        for u in (1, 2, 3):
            for v in (4, 5):
                assert T.beats(u, v)

    def test_random_deterministic(self):
        assert random_tournament(10, 42) == random_tournament(10, 42)
        assert random_tournament(10, 42) != random_tournament(10, 43)

    @given(st.integers(1, 10), st.integers(0, 2**63))
    @settings(max_examples=50, deadline=None)
    def test_random_is_valid_tournament(self, n, seed):
        T = random_tournament(n, seed)  # constructor validates orientation
        assert sum(score_sequence(T)) == comb(n, 2)

    def test_arc_bits_round_trip(self):
        for name_seed in range(20):
            T = random_tournament(8, name_seed)
            assert from_arc_bits(8, arc_bits(T)) == T


class TestBanksWinners:
    def test_transitive_source_only(self):
        assert banks_winners(transitive(7)).labels == (1,)

    def test_c3_everyone(self):
        assert banks_winners(C3).labels == (1, 2, 3)

    def test_st7_everyone(self):
        assert banks_winners(st7()).labels == tuple(range(1, 8))

    def test_matches_oracle_sources(self, small_corpus):
        from conftest import oracle_maximal_sets

        for name, T in small_corpus:
            if T.n > 8:
                continue
            expected = set()
            for s in oracle_maximal_sets(T):
                for v in s:
                    if all(T.beats(v, u) for u in s if u != v):
                        expected.add(v)
            assert set(banks_winners(T)) == expected, name


# ---------------------------------------------------------------------------
# TOURN text format


class TestTournFormat:
    def test_round_trip(self, small_corpus):
        for name, T in small_corpus[:40]:
            assert parse_tourn(format_tourn(T)) == T, name

    def test_rejects_bad_character(self):
        with pytest.raises(TournParseError) as e:
            parse_tourn("2\n0x\n10\n")
        assert e.value.line == 2 and e.value.column == 2

    def test_rejects_self_beat(self):
        with pytest.raises(TournParseError, match="beats itself"):
            parse_tourn("2\n11\n00\n")

    def test_rejects_double_arc_with_pair(self):
        with pytest.raises(TournParseError, match=r"\(1, 2\)"):
            parse_tourn("2\n01\n10\n")

    def test_rejects_missing_arc_with_pair(self):
        with pytest.raises(TournParseError, match=r"\(1, 2\)"):
            parse_tourn("2\n00\n00\n")

    def test_rejects_bad_count(self):
        with pytest.raises(TournParseError):
            parse_tourn("x\n")
        with pytest.raises(TournParseError):
            parse_tourn("3\n010\n001\n")

    def test_rejects_short_row(self):
        with pytest.raises(TournParseError) as e:
            parse_tourn("3\n01\n001\n100\n")
        assert e.value.line == 2
