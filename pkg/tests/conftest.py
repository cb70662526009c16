from __future__ import annotations

import random
from pathlib import Path

import pytest

from eqr import frontend, ir, textcomp

REPO_ROOT = Path(__file__).resolve().parent.parent
WIFI_SOURCE_PATH = REPO_ROOT / "programs" / "wifi-ap.txt"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

# Vocabulary for generated strings: enough repeats to exercise the
# dictionary, plus separators and multi-byte content for UTF-8 paths.
_WORDS = [
    "alpha", "beta", "gamma", "delta", "status", "link", "mode", "Wi-Fi",
    "speed", "power", "amber", "green", "blue", "update", "client", "radio",
    "802.11ax", "2.5", "my_net", "x", "no", "off",
]
_UNICODE_WORDS = ["café", "über", "λόγος", "日本語"]
_SEPARATORS = [" ", "  ", " / ", ": ", ", ", "? ", "! ", " (", ") "]


def gen_text(rng: random.Random, *, unicode_ok: bool = True, max_words: int = 6) -> str:
    words = _WORDS + (_UNICODE_WORDS if unicode_ok else [])
    parts = []
    for _ in range(rng.randint(0, max_words)):
        if parts or rng.random() < 0.3:
            parts.append(rng.choice(_SEPARATORS))
        parts.append(rng.choice(words))
    if rng.random() < 0.1:
        parts.append(rng.choice(_SEPARATORS))
    return "".join(parts)


def gen_tree(rng: random.Random, depth: int = 0, *, unicode_ok: bool = True) -> ir.Node:
    roll = rng.random()
    if depth >= 4 or roll < 0.25:
        return ir.Exit()
    if roll < 0.55:
        return ir.Print(gen_text(rng, unicode_ok=unicode_ok), gen_tree(rng, depth + 1, unicode_ok=unicode_ok))
    if roll < 0.85:
        matches: list[str] = []
        while len(matches) < rng.randint(1, 4):
            match = gen_text(rng, unicode_ok=unicode_ok, max_words=3)
            if match not in matches:
                matches.append(match)
        branches = tuple(
            ir.Branch(match, gen_tree(rng, depth + 1, unicode_ok=unicode_ok))
            for match in matches
        )
        return ir.Ask(gen_text(rng, unicode_ok=unicode_ok, max_words=3), branches)
    limits = sorted(rng.sample(range(-5000, 12000), rng.randint(1, 4)), reverse=True)
    thresholds = tuple(
        ir.Threshold(limit, gen_tree(rng, depth + 1, unicode_ok=unicode_ok))
        for limit in limits
    )
    otherwise = gen_tree(rng, depth + 1, unicode_ok=unicode_ok) if rng.random() < 0.6 else None
    return ir.AskNumeric(gen_text(rng, unicode_ok=unicode_ok, max_words=3), thresholds, otherwise)


def gen_program(rng: random.Random, *, unicode_ok: bool = True) -> ir.Program:
    return ir.Program.from_root(gen_tree(rng, unicode_ok=unicode_ok))


@pytest.fixture(scope="session")
def wifi_source() -> str:
    return WIFI_SOURCE_PATH.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def wifi_program(wifi_source) -> ir.Program:
    return frontend.parse(wifi_source)


@pytest.fixture(scope="session")
def wifi_dictionary(wifi_program) -> textcomp.Dictionary:
    return textcomp.build_dictionary(wifi_program.strings)
