"""Factor graph, triple sets and checks of the structural lemmas on finite words.

The factor graph has the letters as vertices and an edge ``{i, j}`` whenever
``ij`` or ``ji`` is a factor; ``ii`` gives a loop. A letter is never its own
neighbour, but a loop adds 1 to its degree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

from .words import LABELS, Alphabet, FiniteWord, ParikhVector


@dataclass(frozen=True)
class FactorGraph:
    alphabet: Alphabet
    edges: frozenset[tuple[int, int]]  # (i, j) with i < j
    loops: frozenset[int]
    present: frozenset[int]  # letters occurring in the source word

    def neighbours(self, a: int) -> list[int]:
        out = [j if i == a else i for i, j in self.edges if a in (i, j)]
        return sorted(out)

    def degree(self, a: int) -> int:
        return len(self.neighbours(a)) + (1 if a in self.loops else 0)

    @property
    def edge_count(self) -> int:
        return len(self.edges) + len(self.loops)

    def is_connected(self) -> bool:
        """Connectivity of the subgraph induced on occurring letters."""
        if not self.present:
            return True
        start = min(self.present)
        seen = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in self.neighbours(a):
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen == set(self.present)

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Edges and loops (as ``(i, i)``) in lexicographic order."""
        return sorted(list(self.edges) + [(a, a) for a in self.loops])

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for a in sorted(self.present):
            lines.append(f'  "{LABELS[a]}";')
        for i, j in self.sorted_edges():
            lines.append(f'  "{LABELS[i]}" -- "{LABELS[j]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_factor_graph(word: FiniteWord) -> FactorGraph:
    if len(word) < 2:
        raise ValueError("factor graph needs a word of length >= 2")
    s = word.symbols
    edges = set()
    loops = set()
    for x, y in zip(s, s[1:]):
        if x == y:
            loops.add(x)
        else:
            edges.add((min(x, y), max(x, y)))
    return FactorGraph(word.alphabet, frozenset(edges), frozenset(loops), word.letters)


# -- unique cycle ------------------------------------------------------------

class NoCycleError(ValueError):
    """The factor graph is a tree."""


class MultipleCyclesError(ValueError):
    """The factor graph has more edges than a unicyclic graph."""


@dataclass(frozen=True)
class CycleInfo:
    kind: str  # "loop", "triangle" or "m_cycle"
    vertices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)


def unique_cycle(graph: FactorGraph) -> CycleInfo:
    """Return the single cycle of a connected unicyclic graph (a loop counts)."""
    if not graph.is_connected():
        raise ValueError("factor graph is not connected on its occurring letters")
    v = len(graph.present)
    if graph.edge_count < v:
        raise NoCycleError("factor graph is a tree")
    if graph.edge_count > v:
        raise MultipleCyclesError(f"{graph.edge_count} edges on {v} vertices")

    # peel leaves; a loop keeps its vertex alive
    adj = {a: set(graph.neighbours(a)) for a in graph.present}
    deg = {a: len(adj[a]) + 2 * (a in graph.loops) for a in adj}
    leaves = [a for a in adj if deg[a] <= 1]
    alive = set(adj)
    while leaves:
        a = leaves.pop()
        alive.discard(a)
        for b in adj[a]:
            if b in alive:
                deg[b] -= 1
                if deg[b] == 1:
                    leaves.append(b)
    if len(alive) == 1:
        (a,) = alive
        return CycleInfo("loop", (a,))
    start = min(alive)
    order = [start]
    prev, cur = None, start
    while True:
        nxt = min(b for b in adj[cur] if b in alive and b != prev)
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return CycleInfo("triangle" if len(order) == 3 else "m_cycle", tuple(order))


# -- triples -----------------------------------------------------------------

@dataclass(frozen=True)
class TripleMap:
    """``classes[b]`` holds the Parikh vectors of length-3 factors with middle letter ``b``.

    ``positions[(b, pv)]`` is the first start of a factor realizing that entry.
    """

    alphabet: Alphabet
    classes: dict[int, frozenset[ParikhVector]]
    positions: dict[tuple[int, ParikhVector], int] = field(repr=False)

    def __getitem__(self, b: int) -> frozenset[ParikhVector]:
        return self.classes.get(b, frozenset())

    def union(self) -> frozenset[ParikhVector]:
        return frozenset().union(*self.classes.values())

    def to_json_obj(self) -> dict[str, list[str]]:
        return {
            LABELS[b]: sorted(class_label(pv) for pv in self.classes[b])
            for b in sorted(self.classes)
        }


def class_label(pv: ParikhVector) -> str:
    """Sorted representative of an abelian class, e.g. ``(1, 1, 1) -> "123"``."""
    return "".join(LABELS[i] * c for i, c in enumerate(pv))


def triple_map(word: FiniteWord) -> TripleMap:
    if len(word) < 3:
        raise ValueError("triples need a word of length >= 3")
    n = word.alphabet.size
    s = word.symbols
    classes: dict[int, set] = {}
    positions: dict[tuple[int, ParikhVector], int] = {}
    for i in range(len(s) - 2):
        counts = [0] * n
        for x in s[i : i + 3]:
            counts[x] += 1
        pv = tuple(counts)
        b = s[i + 1]
        classes.setdefault(b, set()).add(pv)
        positions.setdefault((b, pv), i)
    frozen = {b: frozenset(v) for b, v in classes.items()}
    return TripleMap(word.alphabet, frozen, positions)


# -- diagnoses ---------------------------------------------------------------

class Verdict(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


class Finding(NamedTuple):
    code: str
    detail: str


@dataclass(frozen=True)
class Diagnosis:
    """Outcome of a check.

    ``witnesses`` are ``(factor, start)`` pairs; each satisfies
    ``str(word[start:start + len(factor)]) == factor``.
    """

    verdict: Verdict
    findings: tuple[Finding, ...] = ()
    witnesses: tuple[tuple[str, int], ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(f.code for f in self.findings)

    def summary(self) -> str:
        if not self.findings:
            return self.verdict.value
        return f"{self.verdict.value} " + "; ".join(f"{f.code}: {f.detail}" for f in self.findings)


def _pair_witness(word: FiniteWord, x: int, y: int) -> tuple[str, int]:
    s = word.symbols
    for i in range(len(s) - 1):
        if {s[i], s[i + 1]} == {x, y} and (x != y or s[i] == s[i + 1] == x):
            return str(word[i : i + 2]), i
    raise LookupError("edge not attested")


def check_lemma_one(word: FiniteWord, n: int) -> Diagnosis:
    """Factor graph connected with exactly ``n`` edges, loops included."""
    if len(word.letters) != n:
        raise ValueError(f"word uses {len(word.letters)} letters, expected {n}")
    g = build_factor_graph(word)
    witnesses = tuple(_pair_witness(word, i, j) for i, j in g.sorted_edges())
    findings = []
    if not g.is_connected():
        findings.append(Finding("Disconnected", "factor graph is not connected"))
    if g.edge_count != n:
        findings.append(Finding("EdgeCount", f"{g.edge_count} != {n}"))
    verdict = Verdict.FAIL if findings else Verdict.PASS
    return Diagnosis(verdict, tuple(findings), witnesses)


def _remove(pv: ParikhVector, *letters: int) -> list[int]:
    rest = list(pv)
    for a in letters:
        rest[a] -= 1
    return rest


def check_lemma_two(word: FiniteWord) -> Diagnosis:
    """A triple shared by two distinct middle letters forces a triangle or a loop."""
    g = build_factor_graph(word)
    t = triple_map(word)
    findings = []
    witnesses = []

    def has_edge(x: int, y: int) -> bool:
        return x in g.loops if x == y else (min(x, y), max(x, y)) in g.edges

    for a, b in combinations(sorted(t.classes), 2):
        for pv in sorted(t[a] & t[b]):
            (c,) = [i for i, k in enumerate(_remove(pv, a, b)) if k == 1]
            witnesses.append((_factor_at(word, t.positions[(a, pv)]), t.positions[(a, pv)]))
            witnesses.append((_factor_at(word, t.positions[(b, pv)]), t.positions[(b, pv)]))
            triangle = c not in (a, b) and has_edge(a, b) and has_edge(b, c) and has_edge(c, a)
            loop_a = c == a and a in g.loops
            loop_b = c == b and b in g.loops
            if triangle + loop_a + loop_b != 1:
                findings.append(
                    Finding("SharedTriple", f"[{class_label(pv)}] in T({LABELS[a]}) and T({LABELS[b]})")
                )
    verdict = Verdict.FAIL if findings else Verdict.PASS
    return Diagnosis(verdict, tuple(findings), tuple(witnesses))


def _factor_at(word: FiniteWord, i: int) -> str:
    return str(word[i : i + 3])


def _interior_neighbours(word: FiniteWord, a: int) -> set[int]:
    """Neighbours ``b`` of ``a`` attested by an ``ab``/``ba`` with ``a`` not at either end."""
    s = word.symbols
    out = set()
    for i in range(1, len(s) - 1):
        if s[i] == a:
            for b in (s[i - 1], s[i + 1]):
                if b != a:
                    out.add(b)
    return out


def check_degree_lemmas(word: FiniteWord) -> Diagnosis:
    """Three neighbours force two triples; two neighbours ``b, c`` force ``[bac]`` or two triples.

    Both implications need every edge at ``a`` to extend to a length-3
    factor centred on ``a``. When that only fails because an edge is seen
    solely at the word's ends, the verdict is INCONCLUSIVE, not FAIL.
    """
    g = build_factor_graph(word)
    t = triple_map(word)
    n = word.alphabet.size
    findings = []
    boundary = []
    for a in sorted(word.letters):
        nb = g.neighbours(a)
        ta = t[a]
        inner = _interior_neighbours(word, a)
        if len(nb) >= 3 and len(ta) < 2:
            detail = f"{LABELS[a]} has {len(nb)} neighbours but |T| = {len(ta)}"
            if len(inner) >= 3:
                findings.append(Finding("DegreeThree", detail))
            else:
                boundary.append(Finding("BoundaryEffect", detail))
        for b, c in combinations(nb, 2):
            counts = [0] * n
            for x in (b, a, c):
                counts[x] += 1
            if tuple(counts) in ta or len(ta) >= 2:
                continue
            detail = f"{LABELS[a]} with neighbours {LABELS[b]},{LABELS[c]}: [{LABELS[b]}{LABELS[a]}{LABELS[c]}] not in T and |T| = {len(ta)}"
            if {b, c} <= inner:
                findings.append(Finding("DegreeTwo", detail))
            else:
                boundary.append(Finding("BoundaryEffect", detail))
    if findings:
        return Diagnosis(Verdict.FAIL, tuple(findings + boundary))
    if boundary:
        return Diagnosis(Verdict.INCONCLUSIVE, tuple(boundary))
    return Diagnosis(Verdict.PASS)
