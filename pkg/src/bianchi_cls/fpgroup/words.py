"""Words, presentations and the presentation text grammar.

Grammar::

    presentation := "gens:" name* ";" "rels:" [word ("," word)*]
    word         := factor ("*" factor)*
    factor       := atom ["^" integer]
    atom         := name | "1" | "(" word ")" | "[" word "," word "]"

``[x, y]`` is the commutator x^-1 y^-1 x y.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}" + (f": {text[pos:pos + 20]!r}" if text else ""))


def _reduce(syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for g, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out[-1][1]
            out.pop()
            if e:
                out.append((g, e))
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word stored as (generator index, exponent) syllables."""

    syllables: tuple[tuple[int, int], ...] = ()

    def __init__(self, syllables: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "syllables", _reduce((int(g), int(e)) for g, e in syllables))

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        """Letters are signed 1-based generator numbers: 2 is g1, -2 is g1^-1."""
        return cls((abs(x) - 1, 1 if x > 0 else -1) for x in letters)

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return cls([(g, e)])

    def letters(self) -> list[int]:
        out = []
        for g, e in self.syllables:
            out.extend([g + 1 if e > 0 else -(g + 1)] * abs(e))
        return out

    def columns(self) -> list[int]:
        """Coset-table column of each letter: 2g for g, 2g+1 for g^-1."""
        out = []
        for g, e in self.syllables:
            out.extend([2 * g if e > 0 else 2 * g + 1] * abs(e))
        return out

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.syllables * n)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.syllables))

    def cyclically_reduced(self) -> "Word":
        s = list(self.syllables)
        while len(s) >= 2 and s[0][0] == s[-1][0]:
            g, e = s[0][0], s[0][1] + s[-1][1]
            s = s[1:-1]
            if e:
                s = [(g, e)] + s
            s = list(_reduce(s))
        return Word(s)

    def exponent_sums(self, ngens: int) -> list[int]:
        v = [0] * ngens
        for g, e in self.syllables:
            v[g] += e
        return v

    def generators(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def format(self, names: Sequence[str]) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __init__(self, generators: Sequence[str], relators: Iterable[Word] = ()):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator names")
        rels = []
        for r in relators:
            for g in r.generators():
                if not 0 <= g < len(gens):
                    raise ValueError(f"generator index {g} out of range")
            r = r.cyclically_reduced()
            if r:
                rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index_of(self, name: str) -> int:
        return self.generators.index(name)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def __str__(self):
        rels = ", ".join(r.format(self.generators) for r in self.relators)
        return f"gens: {' '.join(self.generators)} ; rels: {rels}"

    def format_word(self, w: Word) -> str:
        return w.format(self.generators)


def add_relators(pres: Presentation, words: Iterable[Word]) -> Presentation:
    """Quotient presentation: the old relators plus the new words."""
    extra = [w for w in (Word(w.syllables) for w in words) if w.cyclically_reduced()]
    return Presentation(pres.generators, list(pres.relators) + extra)


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(-?\d+)|(.))")


class _Parser:
    def __init__(self, text: str, names: Sequence[str], offset: int = 0):
        self.text = text
        self.names = list(names)
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.end() == pos or not m.group(0).strip():
                break
            kind = "name" if m.group(1) else "int" if m.group(2) else "sym"
            start = m.start(m.lastindex)
            self.tokens.append((kind, m.group(m.lastindex), start + offset))
            pos = m.end()
        self.i = 0
        self.offset = offset

    def error(self, msg):
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text) + self.offset
        raise PresentationSyntaxError(msg, self.text, pos - self.offset)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            self.error(f"expected {value!r}" if value else "unexpected end of input")
        self.i += 1
        return tok

    def word(self) -> Word:
        w = self.factor()
        while self.peek()[1] == "*":
            self.take("*")
            w = w * self.factor()
        return w

    def factor(self) -> Word:
        w = self.atom()
        while self.peek()[1] == "^":
            self.take("^")
            kind, val, _ = self.peek()
            if kind == "sym" and val == "-":
                self.take()
                kind, val, _ = self.peek()
                if kind != "int":
                    self.error("expected integer exponent")
                self.take()
                w = w ** (-int(val))
            elif kind == "int":
                self.take()
                w = w ** int(val)
            else:
                self.error("expected integer exponent")
        return w

    def atom(self) -> Word:
        kind, val, pos = self.peek()
        if kind == "name":
            self.take()
            if val not in self.names:
                self.error(f"unknown generator {val!r}")
            return Word.gen(self.names.index(val))
        if kind == "int" and val == "1":
            self.take()
            return Word()
        if val == "(":
            self.take("(")
            w = self.word()
            self.take(")")
            return w
        if val == "[":
            self.take("[")
            x = self.word()
            self.take(",")
            y = self.word()
            self.take("]")
            return x.inverse() * y.inverse() * x * y
        self.error("expected generator, '1', '(' or '['")

    def word_list(self, sep: str) -> list[Word]:
        out = []
        if self.peek()[0] is None:
            return out
        out.append(self.word())
        while self.peek()[1] == sep:
            self.take(sep)
            out.append(self.word())
        if self.peek()[0] is not None:
            self.error("unexpected token")
        return out


def parse_word(text: str, names: Sequence[str]) -> Word:
    p = _Parser(text, names)
    if p.peek()[0] is None:
        return Word()
    w = p.word()
    if p.peek()[0] is not None:
        p.error("unexpected token")
    return w


def parse_words(text: str, names: Sequence[str], sep: str = ";") -> list[Word]:
    """Parse a separator-delimited list of words (slopes, subgroup generators)."""
    return _Parser(text, names).word_list(sep)


def parse_presentation(text: str) -> Presentation:
    m = re.fullmatch(r"\s*gens\s*:(.*?);\s*rels\s*:(.*?)\s*;?\s*", text, re.S)
    if not m:
        pos = 0 if not text.lstrip().startswith("gens") else text.find(";") + 1
        raise PresentationSyntaxError("expected 'gens: ... ; rels: ...'", text, max(pos, 0))
    gens_text = m.group(1)
    names = gens_text.split()
    for n in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
            raise PresentationSyntaxError(f"bad generator name {n!r}", text, m.start(1) + gens_text.find(n))
    parser = _Parser(m.group(2), names, offset=m.start(2))
    try:
        rels = parser.word_list(",")
    except PresentationSyntaxError as exc:
        raise PresentationSyntaxError(str(exc).split(" at position")[0], text, exc.pos + m.start(2)) from None
    return Presentation(names, rels)
