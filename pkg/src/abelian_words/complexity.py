"""Subword and abelian complexity, periods and recurrence gaps of finite words."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .words import FiniteWord


@dataclass(frozen=True)
class ComplexityProfile:
    """Counts for ``m = 1..m_max``; ``f[m - 1]`` is the value at ``m``.

    ``f(0) = f_abelian(0) = 1`` (the empty factor) by convention.
    """

    length: int
    f: tuple[int, ...]
    f_abelian: tuple[int, ...]

    @property
    def m_max(self) -> int:
        return len(self.f)

    def at(self, m: int) -> tuple[int, int]:
        if m == 0:
            return 1, 1
        return self.f[m - 1], self.f_abelian[m - 1]

    def rows(self) -> list[tuple[int, int, int]]:
        return [(m, self.f[m - 1], self.f_abelian[m - 1]) for m in range(1, self.m_max + 1)]

    def to_csv(self) -> str:
        lines = ["m,f,f_abelian"]
        lines += [f"{m},{f},{fa}" for m, f, fa in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "length": self.length,
            "profile": [{"m": m, "f": f, "f_abelian": fa} for m, f, fa in self.rows()],
        }


def _check_m(word: FiniteWord, m: int) -> None:
    if not 1 <= m <= len(word):
        raise ValueError(f"factor length {m} outside [1, {len(word)}]")


def _packing(word: FiniteWord) -> list[int]:
    # count vectors packed into one int: digit i (base L+1) holds the count of letter i
    base = len(word) + 1
    return [base**i for i in range(word.alphabet.size)]


def abelian_count(word: FiniteWord, m: int) -> int:
    """Number of abelian classes among length-``m`` factors, by one sliding window."""
    _check_m(word, m)
    weight = _packing(word)
    s = word.symbols
    key = sum(weight[x] for x in s[:m])
    seen = {key}
    for i in range(m, len(s)):
        key += weight[s[i]] - weight[s[i - m]]
        seen.add(key)
    return len(seen)


def factor_count(word: FiniteWord, m: int) -> int:
    """Number of distinct length-``m`` factors (exact keys)."""
    _check_m(word, m)
    raw = bytes(word.symbols)
    return len({raw[i : i + m] for i in range(len(raw) - m + 1)})


def complexity_profile(word: FiniteWord, m_max: int) -> ComplexityProfile:
    if not 1 <= m_max <= len(word):
        raise ValueError(f"m_max must be in [1, {len(word)}], got {m_max}")
    f = tuple(factor_count(word, m) for m in range(1, m_max + 1))
    fa = tuple(abelian_count(word, m) for m in range(1, m_max + 1))
    return ComplexityProfile(len(word), f, fa)


def oracle_abelian_count(word: FiniteWord, m: int) -> int:
    """Brute force: Parikh vector of every factor from scratch. Cross-checking only."""
    _check_m(word, m)
    s = word.symbols
    letters = range(word.alphabet.size)
    classes = set()
    for i in range(len(s) - m + 1):
        seg = s[i : i + m]
        classes.add(tuple(seg.count(a) for a in letters))
    return len(classes)


# -- periods -----------------------------------------------------------------

@dataclass(frozen=True)
class PeriodReport:
    """Smallest period ``period`` and an optional ultimate period.

    ``ultimate`` is ``(c, p)`` with ``w[i] == w[i + p]`` for all ``i >= c``,
    minimal by ``(p, c)`` among pairs whose periodic tail covers at least
    half of the word and at least two periods; ``None`` if there is none.
    """

    length: int
    period: int
    aperiodic_at_scale: bool
    ultimate: tuple[int, int] | None


def _has_period(s: tuple[int, ...], p: int, start: int = 0) -> bool:
    return all(s[i] == s[i + p] for i in range(start, len(s) - p))


def period_report(word: FiniteWord) -> PeriodReport:
    L = len(word)
    if L < 1:
        raise ValueError("period of the empty word is undefined")
    s = word.symbols
    p = next(q for q in range(1, L + 1) if _has_period(s, q))
    ultimate = None
    for q in range(1, L // 2 + 1):
        # least c with period q on s[c:]: scan backwards for the last mismatch
        c = 0
        for i in range(L - q - 1, -1, -1):
            if s[i] != s[i + q]:
                c = i + 1
                break
        tail = L - c
        if tail >= 2 * q and 2 * tail >= L:
            ultimate = (c, q)
            break
    return PeriodReport(L, p, p > L / 2, ultimate)


# -- recurrence gaps ---------------------------------------------------------

@dataclass(frozen=True)
class GapReport:
    """Occurrence gaps for factor lengths ``1..r``, measured between start positions.

    ``max_gap[l - 1]`` is the largest distance between consecutive starts of
    any length-``l`` factor, ``math.inf`` if some factor occurs only once.
    ``max_tail[l - 1]`` is the largest ``L - l + 1 - s`` over factors whose
    last start is ``s``: the smallest gap the next occurrence could have.
    """

    length: int
    r: int
    max_gap: tuple[float, ...]
    max_tail: tuple[int, ...]
    worst: tuple[tuple[str, int], ...]  # per length: (factor, start) realizing max_tail


def gap_report(word: FiniteWord, r: int) -> GapReport:
    L = len(word)
    if not 1 <= r <= L:
        raise ValueError(f"r must be in [1, {L}], got {r}")
    s = word.symbols
    gaps: list[float] = []
    tails: list[int] = []
    worst = []
    for ell in range(1, r + 1):
        last: dict[tuple[int, ...], int] = {}
        count: dict[tuple[int, ...], int] = {}
        g: float = 0
        for i in range(L - ell + 1):
            key = s[i : i + ell]
            if key in last:
                g = max(g, i - last[key])
            last[key] = i
            count[key] = count.get(key, 0) + 1
        if any(c == 1 for c in count.values()):
            g = math.inf
        gaps.append(g)
        key, start = min(last.items(), key=lambda kv: (kv[1], kv[0]))
        tails.append(L - ell + 1 - start)
        worst.append((str(word[start : start + ell]), start))
    return GapReport(L, r, tuple(gaps), tuple(tails), tuple(worst))
