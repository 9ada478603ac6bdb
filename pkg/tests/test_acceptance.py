"""Acceptance suite: one test per criterion, each at its stated tolerance and time budget.

The terminal summary prints a ``[PASS]``/``[FAIL]`` line per criterion.
"""

import time
from itertools import permutations, product

import pytest

from abelian_words.complexity import abelian_count, complexity_profile, factor_count, oracle_abelian_count
from abelian_words.search import P1, P2, P3, P4, P5, SearchConfig, orbit_count_check, search, verify_candidate
from abelian_words.structure import (
    Verdict,
    build_factor_graph,
    check_degree_lemmas,
    check_lemma_one,
    check_lemma_two,
    unique_cycle,
)
from abelian_words.words import Alphabet, FiniteWord, GeneratorSpec, generate_prefix, word

from conftest import check_structure_invariants, fib, periodic, random_words

# first-run values of the quaternary search, kept as regression constants
N4_EXHAUSTION_DEPTH = 41
N4_NODES_EXPANDED = 5939
N4_NODES_PRUNED = {P1: 14834, P2: 2624, P3: 95, P4: 0, P5: 265}


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


@pytest.mark.criterion(1, "Fibonacci prefix: f(m) = m+1 and f_ab(m) = 2 for m <= 100, < 2 s")
def test_sturmian_fixture():
    def run():
        w = fib(10_000)
        return complexity_profile(w, 100)

    prof, elapsed = _timed(run)
    assert prof.f == tuple(m + 1 for m in range(1, 101))
    assert prof.f_abelian == (2,) * 100
    assert elapsed < 2.0, elapsed


@pytest.mark.criterion(2, "1234 then 4 x 1996: f_ab(m) = 4 for m <= 500, < 1 s")
def test_trivial_n_letter_fixture():
    def run():
        w = word("1234" + "4" * 1996, 4)
        return [abelian_count(w, m) for m in range(1, 501)]

    counts, elapsed = _timed(run)
    assert counts == [4] * 500
    assert elapsed < 1.0, elapsed


@pytest.mark.criterion(3, "(1234) periodic prefix: f_ab(4) = 1, unique 4-cycle, lemma one passes, < 1 s")
def test_periodic_collapse_fixture():
    def run():
        w = periodic("1234", 2000)
        g = build_factor_graph(w)
        return abelian_count(w, 4), g, unique_cycle(g), check_lemma_one(w, 4)

    (fa4, g, cycle, diag), elapsed = _timed(run)
    assert fa4 == 1
    assert g.edge_count == 4 and not g.loops
    assert g.edges == {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert cycle.kind == "m_cycle" and cycle.size == 4
    assert diag.verdict is Verdict.PASS
    assert elapsed < 1.0, elapsed


@pytest.mark.criterion(4, "sliding window equals oracle on all short binary and 200 random words, < 30 s")
def test_oracle_equivalence():
    def run():
        mismatches = 0
        checked = 0
        binary = (
            FiniteWord(Alphabet(2), s) for L in range(1, 13) for s in product(range(2), repeat=L)
        )
        randoms = random_words(220, 300, 5, seed=2024)
        for w in [*binary, *randoms]:
            for m in range(1, len(w) + 1):
                checked += 1
                if abelian_count(w, m) != oracle_abelian_count(w, m):
                    mismatches += 1
        return mismatches, checked

    (mismatches, checked), elapsed = _timed(run)
    assert mismatches == 0
    assert checked > 8000
    assert elapsed < 30.0, elapsed


@pytest.mark.criterion(5, "structural invariants on fixtures and random words")
def test_structural_invariants():
    fixtures = [
        fib(2000),
        word("1234" + "4" * 1996, 4),
        periodic("1234", 2000),
        periodic("123", 500),
        word("121121"),
        word("2131415121314151213141512"),
        generate_prefix(GeneratorSpec.standard([2, 1, 3]), 1000),
        generate_prefix(GeneratorSpec.morphic({"1": "1231", "2": "3", "3": "21"}, "1"), 1000),
    ]
    for w in fixtures + random_words(400, 120, 6, seed=77, min_len=2):
        check_structure_invariants(w)


@pytest.mark.criterion(6, "search n=3 depth 120 W=40 D=8 B=15 finds a verified survivor, < 5 min")
def test_existence_at_three_letters():
    cfg = SearchConfig(n=3, max_depth=120, r=3, gap=40, deadline=8, letters_by=15)
    rep, elapsed = _timed(lambda: search(cfg))
    assert elapsed < 300.0, elapsed
    assert len(rep.survivors) >= 1, f"no survivors; tree exhausted at depth {rep.exhaustion_depth}"
    for s in rep.survivors:
        w = word(s, 3)
        assert verify_candidate(w, cfg).passed
        assert check_lemma_one(w, 3).verdict is Verdict.PASS


@pytest.mark.criterion(7, "search n=4 depth 400 W=40 D=8 B=20 exhausts reproducibly at the pinned depth, < 30 min")
def test_nonexistence_at_four_letters():
    cfg = SearchConfig(n=4, max_depth=400, r=3, gap=40, deadline=8, letters_by=20)
    first, elapsed = _timed(lambda: search(cfg))
    assert elapsed < 1800.0, elapsed
    assert first.survivors == []
    assert first.exhaustion_depth is not None and first.exhaustion_depth < cfg.max_depth
    second = search(cfg)
    assert second.exhaustion_depth == first.exhaustion_depth
    assert second.nodes_expanded == first.nodes_expanded
    assert second.nodes_pruned == first.nodes_pruned
    assert first.exhaustion_depth == N4_EXHAUSTION_DEPTH
    assert first.nodes_expanded == N4_NODES_EXPANDED
    assert first.nodes_pruned == N4_NODES_PRUNED


def _verdicts(w):
    k = len(w.letters)
    one = check_lemma_one(w, k).verdict if len(w) >= 2 else None
    return one, check_lemma_two(w).verdict, check_degree_lemmas(w).verdict


def _profile(w):
    L = len(w)
    return tuple((factor_count(w, m), abelian_count(w, m)) for m in range(1, L + 1))


@pytest.mark.criterion(8, "profiles and lemma verdicts invariant under letter permutations; orbit counts hold")
def test_symmetry():
    violations = 0
    for n in range(1, 5):
        for w in random_words(40, 50, n, seed=100 + n, min_len=3):
            w = FiniteWord(Alphabet(n), w.symbols)
            base = (_profile(w), _verdicts(w))
            for perm in permutations(range(n)):
                v = w.relabel(perm)
                if (_profile(v), _verdicts(v)) != base:
                    violations += 1
    for w in [fib(50), periodic("1234", 50), word("1234" + "4" * 46, 4)]:
        base = (_profile(w), _verdicts(w))
        for perm in permutations(range(w.alphabet.size)):
            v = w.relabel(perm)
            violations += (_profile(v), _verdicts(v)) != base
    assert violations == 0
    for n in range(1, 4):
        for depth in range(1, 9):
            assert orbit_count_check(n, depth), (n, depth)
