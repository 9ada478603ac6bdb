"""Pruned depth-first search for words with abelian complexity exactly ``n``.

Words are enumerated in canonical form (letter ``k + 1`` only after ``1..k``
have appeared), children in ascending order. A prefix is cut as soon as it
breaks one of these rules, each of which stays broken under extension:

P1_ComplexityCap
    some length ``m`` has more than ``n`` abelian classes.
P2_AttainmentDeadline
    the prefix of length ``m + D`` has fewer than ``n`` classes of length
    ``m`` (lengths where ``n`` classes cannot exist are exempt).
P3_RecurrenceGap
    a factor of length ``<= r`` has consecutive starts more than ``W``
    apart, or cannot reappear within ``W`` of its last start.
P4_LetterDeadline
    the prefix of length ``B`` misses a letter.
P5_Canonicity
    the child is not canonical (counted, never generated).

Bounded gaps are a finite-checkable strengthening of recurrence, so an
empty frontier says nothing about words that recur with unbounded gaps.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import permutations, product

from .complexity import abelian_count, complexity_profile, gap_report
from .structure import Diagnosis, Finding, Verdict
from .words import LABELS, Alphabet, FiniteWord

P1 = "P1_ComplexityCap"
P2 = "P2_AttainmentDeadline"
P3 = "P3_RecurrenceGap"
P4 = "P4_LetterDeadline"
P5 = "P5_Canonicity"
RULES = (P1, P2, P3, P4, P5)

SHARD_DEPTH = 8


@dataclass(frozen=True)
class SearchConfig:
    n: int
    max_depth: int
    r: int
    gap: int
    deadline: int | None = None  # D, default 2n
    letters_by: int | None = None  # B, default 5n
    parallel_shards: int = 1

    def __post_init__(self) -> None:
        if self.deadline is None:
            object.__setattr__(self, "deadline", 2 * self.n)
        if self.letters_by is None:
            object.__setattr__(self, "letters_by", 5 * self.n)
        problems = []
        if not 1 <= self.n <= len(LABELS):
            problems.append(f"n={self.n} outside [1, {len(LABELS)}]")
        if self.max_depth < 0:
            problems.append("max_depth must be >= 0")
        if not 1 <= self.r <= max(self.max_depth, 1):
            problems.append(f"r={self.r} must be in [1, max_depth]")
        if self.gap < self.n:
            problems.append(f"gap W={self.gap} must be >= n")
        if self.letters_by < self.n:
            problems.append(f"letters_by B={self.letters_by} must be >= n")
        if self.deadline < 0:
            problems.append("deadline D must be >= 0")
        if self.parallel_shards < 1:
            problems.append("parallel_shards must be >= 1")
        if problems:
            raise ValueError("invalid search config: " + "; ".join(problems))

    def echo(self) -> dict:
        """Parameters that determine the result (shard count does not)."""
        d = asdict(self)
        d.pop("parallel_shards")
        return d


def deadline_exempt(m: int, n: int, deadline: int) -> bool:
    """True when no word can show ``n`` classes of length ``m`` within ``m + deadline`` letters.

    There are ``C(m + n - 1, n - 1)`` classes of length ``m`` and only
    ``deadline + 1`` windows of that length in the first ``m + deadline`` letters.
    """
    return math.comb(m + n - 1, n - 1) < n or deadline + 1 < n


@dataclass
class SearchReport:
    config: SearchConfig
    survivors: list[str]
    exhaustion_depth: int | None
    nodes_expanded: int
    nodes_pruned: dict[str, int]
    pruned_sample: list[tuple[str, str]] = field(default_factory=list, repr=False)

    def to_json_obj(self) -> dict:
        return {
            "config": self.config.echo(),
            "exhaustion_depth": self.exhaustion_depth,
            "nodes_expanded": self.nodes_expanded,
            "nodes_pruned": {tag: self.nodes_pruned.get(tag, 0) for tag in RULES},
            "survivors": sorted(self.survivors),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"


class _Engine:
    """Incremental rule state for one growing prefix, with undo."""

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.n = cfg.n
        base = cfg.max_depth + 1
        self.weight = [base**i for i in range(cfg.n)]
        self.w: list[int] = []
        self.pk = [0]  # packed Parikh vector of each prefix
        self.classes: list[list[int]] = [[] for _ in range(cfg.max_depth + 1)]
        self.last: list[dict[tuple[int, ...], int]] = [{} for _ in range(cfg.r + 1)]
        self.nletters = 0
        self.exempt = [deadline_exempt(m, cfg.n, cfg.deadline) for m in range(cfg.max_depth + 1)]
        self._undo: list[tuple[list[int], list[tuple[int, tuple[int, ...], int | None]], int]] = []

    def push(self, x: int) -> str | None:
        """Append ``x``; on a rule violation return its tag and leave the state untouched."""
        cfg = self.cfg
        n = self.n
        w = self.w
        pk = self.pk
        classes = self.classes
        L = len(w) + 1
        new = pk[-1] + self.weight[x]

        added: list[int] = []
        m = 0
        for old in reversed(pk):
            m += 1
            key = new - old
            cl = classes[m]
            if key not in cl:
                if len(cl) >= n:
                    return P1
                added.append(m)

        m = L - cfg.deadline
        if m >= 1 and not self.exempt[m]:
            have = len(classes[m]) + (1 if m in added else 0)
            if have < n:
                return P2

        W = cfg.gap
        tail = w[-(cfg.r - 1):] + [x] if cfg.r > 1 else [x]
        renew = []
        for ell in range(1, min(cfg.r, L) + 1):
            key = tuple(tail[-ell:])
            s = L - ell
            prev = self.last[ell].get(key)
            if prev is not None and s - prev > W:
                return P3
            # the factor starting at q can no longer recur within W of q
            q = L - ell - W
            if q >= 0:
                old_key = tuple(w[q : q + ell])  # q + ell = L - W < L
                if old_key != key and self.last[ell].get(old_key) == q:
                    return P3
            renew.append((ell, key, prev))

        nletters = max(self.nletters, x + 1)
        if L == cfg.letters_by and nletters < n:
            return P4

        # commit
        w.append(x)
        pk.append(new)
        for m in added:
            classes[m].append(new - pk[L - m])
        for ell, key, _ in renew:
            self.last[ell][key] = L - ell
        self._undo.append((added, renew, self.nletters))
        self.nletters = nletters
        return None

    def pop(self) -> None:
        added, renew, nletters = self._undo.pop()
        for m in added:
            self.classes[m].pop()
        for ell, key, prev in renew:
            if prev is None:
                del self.last[ell][key]
            else:
                self.last[ell][key] = prev
        self.w.pop()
        self.pk.pop()
        self.nletters = nletters


def _explore(cfg: SearchConfig, prefix: tuple[int, ...], stop: int, sample: int) -> dict:
    """DFS below ``prefix`` down to length ``stop``; nodes at ``stop`` are collected."""
    eng = _Engine(cfg)
    for x in prefix:
        if eng.push(x) is not None:
            raise AssertionError("replayed prefix violates a rule")
    n = cfg.n
    pruned = dict.fromkeys(RULES, 0)
    leaves: list[tuple[int, ...]] = []
    sampled: list[tuple[str, str]] = []
    base = len(prefix)
    deepest = base
    expanded = 0

    if base == stop:
        return {"leaves": [prefix], "expanded": 0, "pruned": pruned, "deepest": base, "sample": []}

    expanded += 1
    pruned[P5] += n - min(eng.nletters + 1, n)
    stack = [0]
    while stack:
        x = stack[-1]
        if x >= min(eng.nletters + 1, n):
            stack.pop()
            if len(eng.w) > base:
                eng.pop()
            continue
        stack[-1] = x + 1
        tag = eng.push(x)
        if tag is not None:
            pruned[tag] += 1
            if len(sampled) < sample:
                sampled.append(("".join(LABELS[s] for s in eng.w) + LABELS[x], tag))
            continue
        L = len(eng.w)
        if L > deepest:
            deepest = L
        if L == stop:
            leaves.append(tuple(eng.w))
            eng.pop()
            continue
        expanded += 1
        pruned[P5] += n - min(eng.nletters + 1, n)
        stack.append(0)
    return {"leaves": leaves, "expanded": expanded, "pruned": pruned, "deepest": deepest, "sample": sampled}


def _shard_task(args: tuple[SearchConfig, tuple[int, ...], int]) -> dict:
    cfg, prefix, sample = args
    return _explore(cfg, prefix, cfg.max_depth, sample)


def search(config: SearchConfig, prune_sample: int = 0) -> SearchReport:
    """Run the search; the report does not depend on ``parallel_shards``.

    The tree is cut at a fixed shallow depth and each subtree is explored
    independently; partial results are merged in prefix order.
    ``prune_sample`` keeps the first pruned prefixes (with their rule) for
    auditing; they are not part of the JSON report.
    """
    cfg = config
    top = _explore(cfg, (), min(SHARD_DEPTH, cfg.max_depth), prune_sample)
    parts = [top]
    if cfg.max_depth > SHARD_DEPTH:
        frontier = top["leaves"]
        tasks = [(cfg, p, prune_sample) for p in frontier]
        if cfg.parallel_shards > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=cfg.parallel_shards) as pool:
                parts += list(pool.map(_shard_task, tasks))
        else:
            parts += [_shard_task(t) for t in tasks]
        survivors_parts = parts[1:]
    else:
        survivors_parts = [top]

    pruned = dict.fromkeys(RULES, 0)
    sample: list[tuple[str, str]] = []
    for p in parts:
        for tag, k in p["pruned"].items():
            pruned[tag] += k
        sample.extend(p["sample"])
    survivors = sorted(
        "".join(LABELS[s] for s in leaf) for part in survivors_parts for leaf in part["leaves"]
    )
    expanded = sum(p["expanded"] for p in parts)
    deepest = max(p["deepest"] for p in parts)
    return SearchReport(
        config=cfg,
        survivors=survivors,
        exhaustion_depth=None if survivors else deepest,
        nodes_expanded=expanded,
        nodes_pruned=pruned,
        pruned_sample=sample[:prune_sample] if prune_sample else [],
    )


# -- certificate check -------------------------------------------------------

def verify_candidate(word: FiniteWord, config: SearchConfig) -> Diagnosis:
    """Recheck P1-P4 on a whole word from scratch (no search state)."""
    cfg = config
    L = len(word)
    if L > cfg.max_depth:
        raise ValueError(f"word length {L} exceeds max_depth {cfg.max_depth}")
    n = cfg.n
    findings: list[Finding] = []
    witnesses: list[tuple[str, int]] = []

    if L >= 1:
        prof = complexity_profile(word, L)
        over = [m for m in range(1, L + 1) if prof.f_abelian[m - 1] > n]
        if over:
            m = over[0]
            findings.append(Finding(P1, f"m={m} has {prof.f_abelian[m - 1]} > {n} classes"))

    for m in range(1, L - cfg.deadline + 1):
        if deadline_exempt(m, n, cfg.deadline):
            continue
        k = abelian_count(word[: m + cfg.deadline], m)
        if k < n:
            findings.append(Finding(P2, f"m={m} has {k} < {n} classes by length {m + cfg.deadline}"))
            break

    if L >= 1:
        rep = gap_report(word, min(cfg.r, L))
        for ell in range(1, rep.r + 1):
            g, tail = rep.max_gap[ell - 1], rep.max_tail[ell - 1]
            if (g != math.inf and g > cfg.gap) or tail > cfg.gap:
                factor, start = rep.worst[ell - 1]
                what = f"gap {g}" if g != math.inf and g > cfg.gap else f"{factor!r} unrepeated since {start}"
                findings.append(Finding(P3, f"length {ell}: {what} exceeds W={cfg.gap}"))
                witnesses.append((factor, start))
                break

    if L >= cfg.letters_by:
        k = len(word[: cfg.letters_by].letters)
        if k < n:
            findings.append(Finding(P4, f"only {k} letters by position {cfg.letters_by}"))

    return Diagnosis(Verdict.FAIL if findings else Verdict.PASS, tuple(findings), tuple(witnesses))


# -- canonicity oracle -------------------------------------------------------

def canonical_words(n: int, depth: int):
    """All canonical words of the given length, in ascending order (no other pruning)."""
    def rec(prefix: list[int], k: int):
        if len(prefix) == depth:
            yield tuple(prefix)
            return
        for x in range(min(k + 1, n)):
            prefix.append(x)
            yield from rec(prefix, max(k, x + 1))
            prefix.pop()

    yield from rec([], 0)


def orbit_count_check(n: int, depth: int) -> bool:
    """Brute force: canonical words are exactly one per letter-permutation orbit."""
    if depth > 8 or n > 6 or n**depth > 10**6:
        raise ValueError("orbit check is limited to depth <= 8 and n**depth <= 10**6")
    perms = list(permutations(range(n)))
    orbit_of = {}
    for w in product(range(n), repeat=depth):
        orbit_of[w] = min(tuple(p[s] for s in w) for p in perms)
    orbits = set(orbit_of.values())
    canon = list(canonical_words(n, depth))
    hit = [orbit_of[w] for w in canon]
    return len(hit) == len(set(hit)) == len(orbits)

