"""Finitely presented groups, free reduction and Fox calculus.

Words are kept in syllable form ``((generator_index, exponent), ...)`` and
are freely reduced on construction.  The textual word grammar is::

    word   := '1' | factor ('*' factor)*
    factor := ident ('^' int)?
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Cusp",
    "GroupRingElement",
    "Presentation",
    "RelatorError",
    "UndeclaredGeneratorError",
    "Word",
    "WordSyntaxError",
    "check_relators",
    "eval_ring",
    "eval_word",
    "fox_derivative",
    "group_ring_image",
    "parse_group_ring",
    "parse_presentation",
    "parse_word",
]


class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.position = position


class UndeclaredGeneratorError(WordSyntaxError):
    pass


class RelatorError(ValueError):
    """A relator does not evaluate to the identity under a representation."""


def _reduce(syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for g, n in syllables:
        if n == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += n
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, n])
    return tuple((g, n) for g, n in out)


class Word:
    """A freely reduced word in the free group on numbered generators."""

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[tuple[int, int]] = ()):
        self.syllables = _reduce(syllables)

    @classmethod
    def letter(cls, g: int, n: int = 1) -> Word:
        return cls(((g, n),))

    def __mul__(self, other: Word) -> Word:
        return Word(self.syllables + other.syllables)

    def inverse(self) -> Word:
        return Word((g, -n) for g, n in reversed(self.syllables))

    def __invert__(self) -> Word:
        return self.inverse()

    def __pow__(self, k: int) -> Word:
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.syllables * k)

    def letters(self) -> list[tuple[int, int]]:
        """Expansion into letters of exponent +1 or -1."""
        out = []
        for g, n in self.syllables:
            s = 1 if n > 0 else -1
            out.extend([(g, s)] * abs(n))
        return out

    def generators(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def __len__(self):
        return sum(abs(n) for _, n in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.syllables == other.syllables

    def __lt__(self, other: Word):
        return (len(self), self.syllables) < (len(other), other.syllables)

    def __hash__(self):
        return hash(self.syllables)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.syllables)

    def __repr__(self):
        return f"Word({list(self.syllables)})"

    def render(self, names: Sequence[str]) -> str:
        if not self.syllables:
            return "1"
        return "*".join(names[g] if n == 1 else f"{names[g]}^{n}" for g, n in self.syllables)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[+-]?\d+")


def parse_word(text: str, generators: Sequence[str]) -> Word:
    index = {name: i for i, name in enumerate(generators)}
    pos = 0
    n = len(text)

    def skip(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip(pos)
    if pos == n:
        raise WordSyntaxError("empty word (use '1' for the identity)", text, pos)
    if text[pos] == "1" and skip(pos + 1) == n:
        return Word()
    syllables = []
    while True:
        pos = skip(pos)
        m = _IDENT.match(text, pos)
        if m is None:
            raise WordSyntaxError("expected a generator name", text, pos)
        name = m.group()
        if name not in index:
            raise UndeclaredGeneratorError(f"undeclared generator {name!r}", text, pos)
        pos = skip(m.end())
        exp = 1
        if pos < n and text[pos] == "^":
            pos = skip(pos + 1)
            mi = _INT.match(text, pos)
            if mi is None:
                raise WordSyntaxError("expected an integer exponent", text, pos)
            exp = int(mi.group())
            pos = skip(mi.end())
        syllables.append((index[name], exp))
        if pos == n:
            break
        if text[pos] != "*":
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        pos += 1
    return Word(syllables)


@dataclass(frozen=True)
class Cusp:
    meridian: Word
    longitude: Word


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    cusps: tuple[Cusp, ...] = field(default=())

    def __post_init__(self):
        names = self.generators
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"invalid generator name {name!r}")
        ngen = len(names)
        words = list(self.relators)
        for c in self.cusps:
            words += [c.meridian, c.longitude]
        for w in words:
            if any(g >= ngen or g < 0 for g in w.generators()):
                raise ValueError(f"word {w!r} uses an undeclared generator")

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def render(self, w: Word) -> str:
        return w.render(self.generators)

    def generator(self, name: str) -> Word:
        return Word.letter(self.generators.index(name))

    @property
    def num_cusps(self) -> int:
        return len(self.cusps)

    def __str__(self):
        rels = ", ".join(self.render(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


_PRES = re.compile(r"^\s*<(?P<gens>[^|>]*)\|(?P<rels>[^>]*)>\s*$")


def parse_presentation(source, cusps: Sequence[Mapping[str, str]] = ()) -> Presentation:
    """Build a presentation from ``"< x, y | r1, r2 >"`` or a mapping.

    A mapping needs ``generators`` and ``relators`` (word strings) and may
    carry ``cusps`` as a list of ``{"meridian": ..., "longitude": ...}``.
    """
    if isinstance(source, str):
        m = _PRES.match(source)
        if m is None:
            raise WordSyntaxError("expected '< generators | relators >'", source, 0)
        gens = [g.strip() for g in m.group("gens").split(",") if g.strip()]
        rels = [r for r in m.group("rels").split(",") if r.strip()]
    else:
        gens = list(source["generators"])
        rels = list(source["relators"])
        cusps = source.get("cusps", cusps)
    relators = tuple(parse_word(r, gens) for r in rels)
    cusp_list = tuple(
        Cusp(parse_word(c["meridian"], gens), parse_word(c["longitude"], gens))
        for c in cusps)
    return Presentation(tuple(gens), relators, cusp_list)


class GroupRingElement:
    """A finite integral combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[int, Word]] = ()):
        acc: dict[Word, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((w, c) for c, w in terms)
        for w, c in items:
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: c for w, c in sorted(acc.items(), key=lambda t: t[0]) if c}

    @classmethod
    def one(cls) -> GroupRingElement:
        return cls({Word(): 1})

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + c
        return GroupRingElement(acc)

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        return self + (-other)

    def left_mul(self, w: Word) -> GroupRingElement:
        return GroupRingElement({w * u: c for u, c in self.terms.items()})

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __repr__(self):
        return f"GroupRingElement({[(c, w) for w, c in self.terms.items()]})"

    def render(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        out = []
        for w, c in self.terms.items():
            body = w.render(names)
            mag = abs(c)
            piece = body if mag == 1 else (f"{mag}" if not w else f"{mag}*{body}")
            if mag == 1 and not w:
                piece = "1"
            sign = "-" if c < 0 else "+"
            out.append((sign, piece))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, piece in out[1:]:
            text += f" {sign} {piece}"
        return text


def parse_group_ring(text: str, generators: Sequence[str]) -> GroupRingElement:
    """Parse sums such as ``1 - x*y^-1 + 2*y`` into a group ring element."""
    pieces = re.split(r"(?<!\^)([+-])", text.replace(" ", ""))
    terms = []
    sign = 1
    for piece in pieces:
        if piece in ("+", "-"):
            sign = -1 if piece == "-" else 1
            continue
        if not piece:
            continue
        cm = re.match(r"(\d+)(?:\*(.+))?$", piece)
        if cm:
            coeff = int(cm.group(1))
            word = parse_word(cm.group(2), generators) if cm.group(2) else Word()
        else:
            coeff, word = 1, parse_word(piece, generators)
        terms.append((sign * coeff, word))
        sign = 1
    return GroupRingElement(terms)


def fox_derivative(w: Word, g: int) -> GroupRingElement:
    """Free derivative of ``w`` with respect to generator ``g``.

    Powers are expanded telescopically:
    d(x^n)/dx = 1 + x + ... + x^(n-1) and d(x^-n)/dx = -(x^-1 + ... + x^-n).
    """
    terms: dict[Word, int] = {}
    prefix = Word()
    for h, n in w:
        if h == g:
            if n > 0:
                for k in range(n):
                    u = prefix * Word.letter(g, k)
                    terms[u] = terms.get(u, 0) + 1
            else:
                for k in range(1, -n + 1):
                    u = prefix * Word.letter(g, -k)
                    terms[u] = terms.get(u, 0) - 1
        prefix = prefix * Word.letter(h, n)
    return GroupRingElement(terms)


def eval_word(rep, w: Word):
    """Matrix of ``w`` under ``rep`` (the product of generator images)."""
    return rep.word_matrix(w)


def eval_ring(rep, r: GroupRingElement, module):
    """Integer combination of the adjoint matrices of the words of ``r``."""
    from .linalg import Matrix

    n = module.dim
    acc = Matrix.zeros(n, n, rep.d)
    for w, c in r:
        acc = acc + rep.adjoint_word(w, module).scale(c)
    return acc


def group_ring_image(rep, r: GroupRingElement) -> dict:
    """Push ``r`` into the group ring of the image group: matrix -> coefficient.

    For a faithful ``rep`` two elements of the integral group ring of the
    presented group are equal iff their images agree.
    """
    acc: dict = {}
    for w, c in r:
        m = rep.word_matrix(w)
        acc[m] = acc.get(m, 0) + c
    return {m: c for m, c in acc.items() if c}


def check_relators(pres: Presentation, rep) -> None:
    from .linalg import Matrix

    ident = Matrix.identity(4, rep.d)
    for r in pres.relators:
        if rep.word_matrix(r) != ident:
            raise RelatorError(
                f"relator {pres.render(r)} does not evaluate to the identity")
