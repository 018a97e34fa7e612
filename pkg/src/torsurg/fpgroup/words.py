"""Freely reduced words over named generators, and the word DSL.

A letter is a pair ``(name, sign)`` with ``sign`` in ``{1, -1}``.  Words are
immutable and always stored freely reduced.

DSL grammar::

    word   := term ( '*'? term )*
    term   := atom ( '^' integer )*
    atom   := ident | '1' | '(' word ')' | '[' word ',' word ']'
    ident  := [a-z][a-z0-9']*

``[u,v]`` expands to ``u v u^-1 v^-1``.  The canonical printed form joins
letters with ``*`` and writes the identity as ``1``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

Letter = tuple[str, int]

IDENT_RE = re.compile(r"[a-z][a-z0-9']*")


class WordParseError(ValueError):
    """Malformed word text.  ``column`` is 1-based."""

    def __init__(self, message: str, text: str, column: int):
        self.text = text
        self.column = column
        super().__init__(f"{message} at column {column}: {text!r}")


def free_reduce(letters: Iterable[Letter], alphabet: Iterable[str] | None = None) -> Word:
    """Cancel adjacent inverse pairs; reject names outside ``alphabet`` if given."""
    allowed = None if alphabet is None else set(alphabet)
    stack: list[Letter] = []
    for name, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {sign}")
        if allowed is not None and name not in allowed:
            raise ValueError(f"undeclared generator {name!r}")
        if stack and stack[-1] == (name, -sign):
            stack.pop()
        else:
            stack.append((name, sign))
    return Word._raw(tuple(stack))


class Word:
    __slots__ = ("letters",)

    letters: tuple[Letter, ...]

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", free_reduce(letters).letters)

    @classmethod
    def _raw(cls, letters: tuple[Letter, ...]) -> Word:
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    @classmethod
    def gen(cls, name: str, sign: int = 1) -> Word:
        return cls._raw(((name, sign),))

    @classmethod
    def parse(cls, text: str) -> Word:
        return parse_word(text)

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: Word) -> bool:
        return self.letters < other.letters

    def __mul__(self, other: Word) -> Word:
        return free_reduce(self.letters + other.letters)

    def __invert__(self) -> Word:
        return Word._raw(tuple((n, -s) for n, s in reversed(self.letters)))

    inverse = __invert__

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return (~self) ** (-n)
        return free_reduce(self.letters * n)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(n if s == 1 else f"{n}^-1" for n, s in self.letters)

    def generators(self) -> set[str]:
        return {n for n, _ in self.letters}

    def exponent_sum(self, name: str) -> int:
        return sum(s for n, s in self.letters if n == name)

    def substitute(self, images: dict[str, Word]) -> Word:
        """Replace each generator by its image; unmapped generators stay."""
        out: list[Letter] = []
        for n, s in self.letters:
            img = images.get(n)
            if img is None:
                out.append((n, s))
            else:
                out.extend(img.letters if s == 1 else (~img).letters)
        return free_reduce(out)

    def cyclic_reduce(self) -> Word:
        lt = self.letters
        i, j = 0, len(lt) - 1
        while i < j and lt[i] == (lt[j][0], -lt[j][1]):
            i += 1
            j -= 1
        return Word._raw(lt[i : j + 1])

    def rotations(self) -> Iterator[Word]:
        lt = self.letters
        for k in range(len(lt)):
            yield Word._raw(lt[k:] + lt[:k])


IDENTITY = Word()


def commutator(u: Word, v: Word) -> Word:
    return u * v * ~u * ~v


def cyclic_key(w: Word) -> tuple[Letter, ...]:
    """Canonical representative of ``w`` up to cyclic rotation and inversion."""
    c = w.cyclic_reduce()
    if not c:
        return ()
    cands = [r.letters for r in c.rotations()] + [r.letters for r in (~c).rotations()]
    return min(cands)


def cyclically_equal(u: Word, v: Word) -> bool:
    return cyclic_key(u) == cyclic_key(v)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> WordParseError:
        return WordParseError(message, self.text, (self.pos if pos is None else pos) + 1)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def word(self) -> Word:
        out = IDENTITY
        first = True
        while True:
            c = self.peek()
            if c == "*" and not first:
                self.pos += 1
                c = self.peek()
                if not self._starts_atom(c):
                    raise self.error("expected a term after '*'")
            if not self._starts_atom(c):
                if first:
                    raise self.error("expected a generator, '1', '(' or '['")
                return out
            out = out * self.term()
            first = False

    @staticmethod
    def _starts_atom(c: str) -> bool:
        return bool(c) and (c in "([1" or ("a" <= c <= "z"))

    def term(self) -> Word:
        base = self.atom()
        while self.peek() == "^":
            self.pos += 1
            self.skip()
            m = re.compile(r"[+-]?\d+").match(self.text, self.pos)
            if not m:
                raise self.error("expected an integer exponent")
            self.pos = m.end()
            base = base ** int(m.group())
        return base

    def atom(self) -> Word:
        c = self.peek()
        if c == "(":
            self.pos += 1
            w = self.word()
            self.expect(")")
            return w
        if c == "[":
            self.pos += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return commutator(u, v)
        if c == "1":
            self.pos += 1
            return IDENTITY
        m = IDENT_RE.match(self.text, self.pos)
        if not m:
            raise self.error("expected a generator name")
        self.pos = m.end()
        return Word.gen(m.group())


def parse_word(text: str) -> Word:
    """Parse DSL text into a freely reduced word.  Empty text is the identity."""
    p = _Parser(text)
    if not p.peek():
        return IDENTITY
    w = p.word()
    if p.peek():
        raise p.error(f"unexpected character {p.peek()!r}")
    return w


def format_word(w: Word) -> str:
    return str(w)


def word_from_exponents(pairs: Sequence[tuple[str, int]]) -> Word:
    """Build a word from (generator, exponent) syllables, e.g. ``[("x", 2), ("y", -1)]``."""
    out: list[Letter] = []
    for name, e in pairs:
        s = 1 if e > 0 else -1
        out.extend([(name, s)] * abs(e))
    return free_reduce(out)
