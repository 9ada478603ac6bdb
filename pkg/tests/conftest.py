import random

import pytest

from abelian_words.complexity import abelian_count
from abelian_words.structure import build_factor_graph, triple_map
from abelian_words.words import LABELS, Alphabet, FiniteWord, GeneratorSpec, generate_prefix, parikh

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        state = "PASS" if rep.outcome == "passed" else "FAIL"
        _criteria[number] = (state, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        state, title = _criteria[number]
        terminalreporter.write_line(f"[{state}] criterion {number}: {title}")


def fib(length: int) -> FiniteWord:
    return generate_prefix(GeneratorSpec.morphic({"1": "12", "2": "1"}, "1"), length)


def periodic(pattern: str, length: int) -> FiniteWord:
    return generate_prefix(GeneratorSpec.periodic(pattern), length)


def random_words(count: int, max_len: int, max_n: int, seed: int, min_len: int = 1):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        L = rng.randint(min_len, max_len)
        out.append(FiniteWord(Alphabet(n), tuple(rng.randrange(n) for _ in range(L))))
    return out


@pytest.fixture
def fib_word():
    return fib


def brute_degree(w, a):
    s = str(w)
    lab = LABELS[a]
    nbrs = {y for x, y in zip(s, s[1:]) if x == lab and y != lab}
    nbrs |= {x for x, y in zip(s, s[1:]) if y == lab and x != lab}
    loop = lab * 2 in s
    return len(nbrs) + int(loop), lab not in nbrs


def check_structure_invariants(w):
    g = build_factor_graph(w)
    assert g.edge_count == abelian_count(w, 2)
    assert g.is_connected()
    for a in w.letters:
        deg, not_self = brute_degree(w, a)
        assert g.degree(a) == deg and not_self
        assert a not in g.neighbours(a)
    if len(w) >= 3:
        t = triple_map(w)
        assert len(t.union()) == abelian_count(w, 3)
        for (b, cls), pos in t.positions.items():
            assert parikh(w[pos : pos + 3]) == cls and w[pos + 1] == b
