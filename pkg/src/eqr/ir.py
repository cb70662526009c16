"""Decision-tree intermediate representation.

Four node kinds cover the whole dialect: a terminal, a text emission chained
to a successor, a string-matched question, and a numeric question routed
through a strictly decreasing threshold cascade. Trees are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from eqr.errors import InvalidProgramError

# Control characters reserved by the binary string framing.
NUL = "\x00"
ETX = "\x03"


@dataclass(frozen=True)
class Exit:
    """Terminates execution."""


@dataclass(frozen=True)
class Print:
    """Emits `text`, then continues with `next`."""

    text: str
    next: Node


@dataclass(frozen=True)
class Branch:
    match: str
    child: Node


@dataclass(frozen=True)
class Ask:
    """String question: the answer is matched exactly against the branches."""

    prompt: str
    branches: tuple[Branch, ...]


@dataclass(frozen=True)
class Threshold:
    limit: int
    child: Node


@dataclass(frozen=True)
class AskNumeric:
    """Numeric question: the first threshold with answer > limit wins;
    `otherwise` (when present) catches everything else."""

    prompt: str
    thresholds: tuple[Threshold, ...]
    otherwise: Node | None = None


Node = Union[Exit, Print, Ask, AskNumeric]


@dataclass(frozen=True)
class Program:
    """A validated tree plus the pre-order inventory of its string literals.

    `strings` keeps one entry per occurrence; duplicates are not merged.
    """

    root: Node
    strings: tuple[str, ...]

    @classmethod
    def from_root(cls, root: Node) -> Program:
        validate(root)
        return cls(root, tuple(collect_strings(root)))


def _check_text(text: str, what: str) -> None:
    if NUL in text or ETX in text:
        raise InvalidProgramError(f"{what} contains a reserved control character")


def validate(node: Node) -> None:
    """Raise InvalidProgramError unless `node` satisfies every tree invariant."""
    if isinstance(node, Exit):
        return
    if isinstance(node, Print):
        _check_text(node.text, "print text")
        validate(node.next)
        return
    if isinstance(node, Ask):
        _check_text(node.prompt, "prompt")
        if not node.branches:
            raise InvalidProgramError("question has no branches")
        seen = set()
        for branch in node.branches:
            _check_text(branch.match, "branch match")
            if branch.match in seen:
                raise InvalidProgramError(f"duplicate branch match {branch.match!r}")
            seen.add(branch.match)
            validate(branch.child)
        return
    if isinstance(node, AskNumeric):
        _check_text(node.prompt, "prompt")
        if not node.thresholds:
            raise InvalidProgramError("numeric question has no thresholds")
        for previous, current in zip(node.thresholds, node.thresholds[1:]):
            if current.limit >= previous.limit:
                raise InvalidProgramError(
                    f"thresholds must be strictly decreasing "
                    f"({previous.limit} then {current.limit})"
                )
        for threshold in node.thresholds:
            validate(threshold.child)
        if node.otherwise is not None:
            validate(node.otherwise)
        return
    raise InvalidProgramError(f"unknown node type {type(node).__name__}")


def collect_strings(root: Node) -> list[str]:
    """Every string literal occurrence in deterministic pre-order.

    Node order: prompt first, then branches as listed; a Print's text comes
    before anything in its successor.
    """
    out: list[str] = []

    def walk(node: Node) -> None:
        if isinstance(node, Exit):
            return
        if isinstance(node, Print):
            out.append(node.text)
            walk(node.next)
        elif isinstance(node, Ask):
            out.append(node.prompt)
            for branch in node.branches:
                out.append(branch.match)
                walk(branch.child)
        elif isinstance(node, AskNumeric):
            out.append(node.prompt)
            for threshold in node.thresholds:
                walk(threshold.child)
            if node.otherwise is not None:
                walk(node.otherwise)

    walk(root)
    return out
