"""Circuit signatures as words over a polarized alphabet.

A token is a base symbol ``s`` (the component reads wire ``s``) or its dual
``s+`` (the component drives wire ``s``).  Gluing two words cancels outputs
of the first word against inputs of the second, one occurrence at a time,
then concatenates what is left.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class Token:
    symbol: str
    dual: bool = False

    def __str__(self):
        return self.symbol + ("+" if self.dual else "")


@dataclass(frozen=True)
class PolarizedWord:
    tokens: tuple[Token, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "PolarizedWord":
        """Whitespace separated tokens; a trailing ``+`` marks the dual (output) symbol."""
        toks = []
        for raw in text.split():
            dual = raw.endswith("+")
            sym = raw[:-1] if dual else raw
            if not sym or "+" in sym:
                raise ValueError(f"bad polarized token {raw!r}")
            toks.append(Token(sym, dual))
        return cls(tuple(toks))

    @classmethod
    def of(cls, inputs: Iterable[str] = (), outputs: Iterable[str] = ()) -> "PolarizedWord":
        return cls(tuple(Token(s) for s in inputs) + tuple(Token(s, True) for s in outputs))

    def __str__(self):
        return " ".join(map(str, self.tokens))

    def __len__(self):
        return len(self.tokens)

    @property
    def inputs(self) -> frozenset[str]:
        return frozenset(t.symbol for t in self.tokens if not t.dual)

    @property
    def outputs(self) -> frozenset[str]:
        return frozenset(t.symbol for t in self.tokens if t.dual)


def io_sets(w: PolarizedWord) -> tuple[frozenset[str], frozenset[str]]:
    return w.inputs, w.outputs


def glue(w: PolarizedWord, w2: PolarizedWord) -> PolarizedWord:
    """Glue ``w`` then ``w2``.

    While some output token ``s+`` of the left word has a matching input ``s``
    in the right word, delete the first such ``s+`` (scanning the left word
    from the start) and the first ``s`` of the right word.  Then concatenate.
    """
    left, right = list(w.tokens), list(w2.tokens)
    while True:
        plain = {t.symbol for t in right if not t.dual}
        hit = next((i for i, t in enumerate(left) if t.dual and t.symbol in plain), None)
        if hit is None:
            break
        sym = left.pop(hit).symbol
        right.pop(next(j for j, t in enumerate(right) if not t.dual and t.symbol == sym))
    return PolarizedWord(tuple(left + right))


class Library(dict):
    """Component id -> signature word."""

    def __init__(self, components: Mapping[str, PolarizedWord | str] = ()):
        super().__init__()
        for k, v in dict(components).items():
            self[k] = v if isinstance(v, PolarizedWord) else PolarizedWord.parse(v)


def circuit_signature(lib: Mapping[str, PolarizedWord], circuit: Sequence[str]) -> PolarizedWord:
    """Left fold of :func:`glue` over the component signatures; the empty circuit has the empty word."""
    for c in circuit:
        if c not in lib:
            raise KeyError(f"unknown component {c!r}")
    return reduce(glue, (lib[c] for c in circuit), PolarizedWord())


def relation_word(source_names: Iterable[str], target_names: Iterable[str]) -> PolarizedWord:
    """Signature of a relation: sources as inputs, targets as outputs."""
    return PolarizedWord.of(source_names, target_names)
