"""Alphabets, finite words, Parikh vectors and prefix generators.

Letters are stored as indices ``0..n-1`` and printed with the fixed labels
``"123456789ABC..."`` so that letter ``0`` reads as ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import cycle
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence, Union, overload

LABELS = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"
MAX_LETTERS = len(LABELS)

ParikhVector = tuple  # tuple[int, ...] of per-letter counts


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self) -> None:
        if not 1 <= self.size <= MAX_LETTERS:
            raise ValueError(f"alphabet size must be in [1, {MAX_LETTERS}], got {self.size}")

    @property
    def labels(self) -> str:
        return LABELS[: self.size]

    def label(self, index: int) -> str:
        return LABELS[index]

    def index(self, label: str) -> int:
        i = LABELS.find(label)
        if i < 0 or i >= self.size or len(label) != 1:
            raise ValueError(f"{label!r} is not a letter of alphabet {self.labels!r}")
        return i

    @classmethod
    def from_labels(cls, labels: str) -> Alphabet:
        if not labels or labels != LABELS[: len(labels)]:
            raise ValueError(f"alphabet labels must be a prefix of {LABELS!r}, got {labels!r}")
        return cls(len(labels))


@dataclass(frozen=True)
class FiniteWord:
    alphabet: Alphabet
    symbols: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        n = self.alphabet.size
        for s in self.symbols:
            if not 0 <= s < n:
                raise ValueError(f"symbol {s} outside alphabet of size {n}")

    @classmethod
    def from_string(cls, text: str, alphabet: Alphabet | None = None) -> FiniteWord:
        """Parse label characters; without an alphabet, use the smallest one that fits."""
        if alphabet is None:
            idx = [LABELS.find(ch) for ch in text]
            if any(i < 0 for i in idx):
                bad = next(ch for ch, i in zip(text, idx) if i < 0)
                raise ValueError(f"unknown letter {bad!r}")
            alphabet = Alphabet(max(idx, default=0) + 1)
            return cls(alphabet, tuple(idx))
        return cls(alphabet, tuple(alphabet.index(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(LABELS[s] for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    @overload
    def __getitem__(self, key: int) -> int: ...

    @overload
    def __getitem__(self, key: slice) -> FiniteWord: ...

    def __getitem__(self, key: Union[int, slice]):
        if isinstance(key, slice):
            return self._trusted(self.symbols[key])
        return self.symbols[key]

    def _trusted(self, symbols: tuple[int, ...]) -> FiniteWord:
        # symbols already known to be valid for this alphabet
        out = object.__new__(FiniteWord)
        object.__setattr__(out, "alphabet", self.alphabet)
        object.__setattr__(out, "symbols", symbols)
        return out

    def __add__(self, other: FiniteWord) -> FiniteWord:
        if other.alphabet != self.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return FiniteWord(self.alphabet, self.symbols + other.symbols)

    @property
    def letters(self) -> frozenset[int]:
        return frozenset(self.symbols)

    def relabel(self, mapping: Sequence[int]) -> FiniteWord:
        """Apply the letter bijection ``i -> mapping[i]``."""
        return FiniteWord(self.alphabet, tuple(mapping[s] for s in self.symbols))


def word(text: str, n: int | None = None) -> FiniteWord:
    """Shorthand for ``FiniteWord.from_string`` with an optional alphabet size."""
    return FiniteWord.from_string(text, Alphabet(n) if n is not None else None)


def parikh(w: FiniteWord) -> ParikhVector:
    counts = [0] * w.alphabet.size
    for s in w.symbols:
        counts[s] += 1
    return tuple(counts)


def abelian_equivalent(u: FiniteWord, v: FiniteWord) -> bool:
    if u.alphabet != v.alphabet:
        raise ValueError("abelian equivalence needs words over the same alphabet")
    return parikh(u) == parikh(v)


def canonical_relabel(w: FiniteWord) -> FiniteWord:
    """Rename letters so that first occurrences appear as 1, 2, 3, ..."""
    mapping: dict[int, int] = {}
    out = []
    for s in w.symbols:
        if s not in mapping:
            mapping[s] = len(mapping)
        out.append(mapping[s])
    return FiniteWord(w.alphabet, tuple(out))


# -- generators --------------------------------------------------------------

KINDS = ("morphic", "periodic", "literal", "standard")


@dataclass(frozen=True)
class GeneratorSpec:
    """Description of an infinite word; see the ``morphic``/``periodic``/... constructors."""

    kind: str
    alphabet: Alphabet
    morphism: tuple[tuple[int, ...], ...] = ()
    seed: int = 0
    pattern: tuple[int, ...] = ()
    pad: int | None = None
    directives: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "morphic":
            if len(self.morphism) != self.alphabet.size:
                raise ValueError("morphism must give an image for every letter")
            if any(len(img) == 0 for img in self.morphism):
                raise ValueError("morphism images must be nonempty")
            img = self.morphism[self.seed]
            if len(img) < 2 or img[0] != self.seed:
                raise ValueError(
                    f"morphism is not prolongable on {LABELS[self.seed]}: "
                    "its image must start with it and have length >= 2"
                )
        elif self.kind == "periodic":
            if not self.pattern:
                raise ValueError("periodic pattern must be nonempty")
        elif self.kind == "standard":
            if self.alphabet.size != 2:
                raise ValueError("standard sequences are binary")
            if not self.directives or any(d < 1 for d in self.directives):
                raise ValueError("directive sequence must be nonempty positive integers")

    @classmethod
    def morphic(cls, images: Mapping[str, str], seed: str) -> GeneratorSpec:
        letters = set(images) | {seed} | {ch for img in images.values() for ch in img}
        alphabet = FiniteWord.from_string("".join(sorted(letters))).alphabet
        table = []
        for i in range(alphabet.size):
            lab = LABELS[i]
            table.append(tuple(alphabet.index(ch) for ch in images.get(lab, "")))
        return cls("morphic", alphabet, morphism=tuple(table), seed=alphabet.index(seed))

    @classmethod
    def periodic(cls, pattern: str) -> GeneratorSpec:
        if not pattern:
            raise ValueError("periodic pattern must be nonempty")
        w = FiniteWord.from_string(pattern)
        return cls("periodic", w.alphabet, pattern=w.symbols)

    @classmethod
    def literal(cls, text: str, pad: str | None = None) -> GeneratorSpec:
        w = FiniteWord.from_string(text + (pad or ""))
        body = w.symbols[: len(text)]
        return cls("literal", w.alphabet, pattern=body, pad=w.symbols[-1] if pad else None)

    @classmethod
    def standard(cls, directives: Iterable[int] = (1,)) -> GeneratorSpec:
        return cls("standard", Alphabet(2), directives=tuple(directives))


def generate_prefix(spec: GeneratorSpec, length: int) -> FiniteWord:
    """The length-``length`` prefix of the infinite word described by ``spec``."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    if spec.kind == "morphic":
        out = _morphic_prefix(spec.morphism, spec.seed, length)
    elif spec.kind == "periodic":
        p = spec.pattern
        out = (p * (length // len(p) + 1))[:length]
    elif spec.kind == "literal":
        if length > len(spec.pattern) and spec.pad is None:
            raise ValueError(f"literal word has length {len(spec.pattern)} and no pad letter")
        out = (spec.pattern + (spec.pad,) * max(0, length - len(spec.pattern)))[:length]
    else:
        out = _standard_prefix(spec.directives, length)
    return FiniteWord(spec.alphabet, tuple(out))


def _morphic_prefix(images: Sequence[tuple[int, ...]], seed: int, length: int) -> list[int]:
    w = [seed]
    while len(w) < length:
        nxt: list[int] = []
        for s in w:
            nxt.extend(images[s])
            if len(nxt) >= length:
                break
        w = nxt
    return w[:length]


def _standard_prefix(directives: Sequence[int], length: int) -> list[int]:
    # s_{-1} = 2, s_0 = 1, s_{k+1} = s_k^{d_{k+1}} s_{k-1}; directives repeat cyclically.
    prev, cur = [1], [0]
    steps = cycle(directives)
    while len(cur) < length:
        d = next(steps)
        prev, cur = cur, cur * d + prev
    return cur[:length]


def parse_generator(kind: str, params: str) -> GeneratorSpec:
    """Parse the CLI parameter mini-grammar.

    morphic   ``"1>12,2>1;seed=1"``
    periodic  ``"123"``
    literal   ``"1234;pad=4"`` (pad optional)
    standard  ``"1,2,1"`` directive sequence, repeated cyclically (default ``"1"``)
    """
    params = params.strip()
    if kind == "morphic":
        body, _, opts = params.partition(";")
        opt = _parse_opts(opts)
        images = {}
        for rule in body.split(","):
            src, sep, dst = rule.strip().partition(">")
            if not sep or len(src) != 1:
                raise ValueError(f"bad morphism rule {rule!r}")
            images[src] = dst
        seed = opt.get("seed") or next(iter(images))
        return GeneratorSpec.morphic(images, seed)
    if kind == "periodic":
        return GeneratorSpec.periodic(params)
    if kind == "literal":
        body, _, opts = params.partition(";")
        return GeneratorSpec.literal(body, _parse_opts(opts).get("pad"))
    if kind == "standard":
        if not params:
            return GeneratorSpec.standard()
        return GeneratorSpec.standard(int(x) for x in params.split(","))
    raise ValueError(f"unknown generator kind {kind!r}")


def _parse_opts(text: str) -> dict[str, str]:
    opts = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        key, sep, val = part.partition("=")
        if not sep:
            raise ValueError(f"bad option {part!r}")
        opts[key.strip()] = val.strip()
    return opts


# -- word files --------------------------------------------------------------

def format_word_file(w: FiniteWord) -> str:
    return f"# alphabet={w.alphabet.labels}\n{w}\n"


def parse_word_file(text: str) -> FiniteWord:
    lines = text.splitlines()
    alphabet = None
    if lines and lines[0].startswith("#"):
        key, sep, labels = lines[0][1:].strip().partition("=")
        if key.strip() != "alphabet" or not sep:
            raise ValueError(f"bad header line {lines[0]!r}")
        alphabet = Alphabet.from_labels(labels.strip())
        lines = lines[1:]
    body = [ln.strip() for ln in lines if ln.strip()]
    if len(body) > 1:
        raise ValueError("word file must hold a single word line")
    return FiniteWord.from_string(body[0] if body else "", alphabet)


def read_word(path: str | Path) -> FiniteWord:
    return parse_word_file(Path(path).read_text(encoding="ascii"))


def write_word(path: str | Path, w: FiniteWord) -> None:
    Path(path).write_text(format_word_file(w), encoding="ascii", newline="\n")
