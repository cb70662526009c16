"""Word-statistics string compression: tokenization, dictionary selection,
and segmentation of strings into constant and dictionary sub-strings.

A word is a maximal run matching ``[a-zA-Z0-9_.\\-]+``; everything else is a
separator run. Words repeated at least twice with at least three characters
go into the dictionary, most frequent first (ties broken by first appearance
in the corpus). Matching is case-sensitive and whole-token only.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

WORD_RE = re.compile(r"[a-zA-Z0-9_.\-]+")

MIN_WORD_LENGTH = 3
MIN_OCCURRENCES = 2


class Coding(enum.Enum):
    """Character coding of one string: 7 bits per character, or UTF-8 bytes."""

    ASCII7 = "ascii-7"
    UTF8 = "utf-8"


def choose_coding(text: str) -> Coding:
    return Coding.ASCII7 if all(ord(c) < 128 for c in text) else Coding.UTF8


@dataclass(frozen=True)
class Entry:
    word: str
    count: int


@dataclass(frozen=True)
class Dictionary:
    """Ordered word list; keys are the 0-based entry indices on n_bits bits."""

    entries: tuple[Entry, ...]

    @property
    def n_words(self) -> int:
        return len(self.entries)

    @property
    def n_bits(self) -> int:
        # ceil(log2(n_words)), floored at 1 so a single entry stays decodable
        return max(1, (self.n_words - 1).bit_length())

    @cached_property
    def _keys(self) -> dict[str, int]:
        return {entry.word: key for key, entry in enumerate(self.entries)}

    def key_of(self, word: str) -> int | None:
        return self._keys.get(word)

    def word_at(self, key: int) -> str:
        return self.entries[key].word


EMPTY_DICTIONARY = Dictionary(())


@dataclass(frozen=True)
class Constant:
    """A literal sub-string; never empty."""

    text: str


@dataclass(frozen=True)
class DictRef:
    """A reference to dictionary entry `key`."""

    key: int


Segment = Union[Constant, DictRef]


@dataclass(frozen=True)
class SegmentedString:
    coding: Coding
    segments: tuple[Segment, ...]

    def reassemble(self, dictionary: Dictionary) -> str:
        return "".join(
            seg.text if isinstance(seg, Constant) else dictionary.word_at(seg.key)
            for seg in self.segments
        )


def tokenize(text: str) -> list[tuple[str, bool]]:
    """Alternating maximal (token, is_word) runs whose concatenation is `text`."""
    out: list[tuple[str, bool]] = []
    pos = 0
    for match in WORD_RE.finditer(text):
        if match.start() > pos:
            out.append((text[pos : match.start()], False))
        out.append((match.group(), True))
        pos = match.end()
    if pos < len(text):
        out.append((text[pos:], False))
    return out


def build_dictionary(corpus: Iterable[str], *, gain_filter: bool = False) -> Dictionary:
    """Count word tokens across the corpus and keep the repeated long ones.

    With `gain_filter`, entries whose header cost exceeds the framing bits
    they actually save are greedily dropped (off by default; the plain
    selection rule is the reference behaviour).
    """
    corpus = list(corpus)
    counts: dict[str, int] = {}
    for text in corpus:
        for token, is_word in tokenize(text):
            if is_word and len(token) >= MIN_WORD_LENGTH:
                counts[token] = counts.get(token, 0) + 1
    selected = [
        Entry(word, count) for word, count in counts.items() if count >= MIN_OCCURRENCES
    ]
    # dict preserves insertion order, so sorting by -count alone keeps
    # first-appearance order within equal counts
    selected.sort(key=lambda entry: -entry.count)
    dictionary = Dictionary(tuple(selected))
    if gain_filter:
        dictionary = _apply_gain_filter(corpus, dictionary)
    elif dictionary.n_words and corpus_bits(corpus, dictionary) > corpus_bits(
        corpus, EMPTY_DICTIONARY
    ):
        # a dictionary that cannot pay for its own header is dropped whole,
        # keeping corpus-level size monotone against the plain encoding
        dictionary = EMPTY_DICTIONARY
    return dictionary


# -- size accounting -------------------------------------------------------
# Mirrors the binary layout arithmetically so dictionary selection can weigh
# real costs without pulling in the serializer.


def _exp_bits(value: int) -> int:
    magnitude = abs(value)
    return 4 * ((magnitude.bit_length() + 3) // 3)


def _unit_bits(coding: Coding) -> int:
    return 7 if coding is Coding.ASCII7 else 8


def string_bits_plain(text: str) -> int:
    coding = choose_coding(text)
    units = len(text) if coding is Coding.ASCII7 else len(text.encode("utf-8"))
    return 2 + _unit_bits(coding) * (units + 1)


def string_bits_compressed(text: str, dictionary: Dictionary) -> int:
    seg = segment(text, dictionary)
    unit = _unit_bits(seg.coding)
    bits = 2 + unit  # coding flags and the terminator
    for piece in seg.segments:
        if isinstance(piece, Constant):
            units = (
                len(piece.text)
                if seg.coding is Coding.ASCII7
                else len(piece.text.encode("utf-8"))
            )
            bits += 1 + unit * units
        else:
            bits += 1 + dictionary.n_bits
    if seg.segments:
        bits += unit * (len(seg.segments) - 1)  # separators
    return bits


def dictionary_bits(dictionary: Dictionary) -> int:
    if dictionary.n_words == 0:
        return 0
    return (
        6
        + _exp_bits(dictionary.n_words)
        + sum(string_bits_plain(entry.word) for entry in dictionary.entries)
    )


def corpus_bits(corpus: Iterable[str], dictionary: Dictionary) -> int:
    """Total string section size: dictionary header plus every string."""
    if dictionary.n_words == 0:
        return sum(string_bits_plain(text) for text in corpus)
    return dictionary_bits(dictionary) + sum(
        string_bits_compressed(text, dictionary) for text in corpus
    )


def _apply_gain_filter(corpus: list[str], dictionary: Dictionary) -> Dictionary:
    entries = list(dictionary.entries)
    best = corpus_bits(corpus, Dictionary(tuple(entries)))
    improved = True
    while improved and entries:
        improved = False
        for index in range(len(entries) - 1, -1, -1):
            candidate = Dictionary(tuple(entries[:index] + entries[index + 1 :]))
            size = corpus_bits(corpus, candidate)
            if size < best:
                best = size
                del entries[index]
                improved = True
    if best > corpus_bits(corpus, EMPTY_DICTIONARY):
        return EMPTY_DICTIONARY
    return Dictionary(tuple(entries))


def segment(text: str, dictionary: Dictionary) -> SegmentedString:
    """Split `text` into dictionary references and maximal constant runs."""
    segments: list[Segment] = []
    pending = ""
    for token, is_word in tokenize(text):
        key = dictionary.key_of(token) if is_word else None
        if key is None:
            pending += token
        else:
            if pending:
                segments.append(Constant(pending))
                pending = ""
            segments.append(DictRef(key))
    if pending:
        segments.append(Constant(pending))
    return SegmentedString(choose_coding(text), tuple(segments))
