"""Interactive execution of decoded programs.

Sessions are immutable values: each answer produces a new Session, so callers
can keep earlier snapshots for back-navigation. Print nodes never surface as
a waiting state; they are drained into the output log until the session
reaches a question or terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from eqr import ir
from eqr.errors import EqrError


class VmError(EqrError):
    """A session was stepped in a state that does not accept that step."""


@dataclass(frozen=True)
class AwaitingChoice:
    prompt: str
    options: tuple[str, ...]


@dataclass(frozen=True)
class AwaitingNumber:
    prompt: str


@dataclass(frozen=True)
class Finished:
    pass


@dataclass(frozen=True)
class Failed:
    reason: str


State = Union[AwaitingChoice, AwaitingNumber, Finished, Failed]


@dataclass(frozen=True)
class Session:
    current: ir.Node | None
    output_log: tuple[str, ...]
    state: State


def _settle(node: ir.Node, log: tuple[str, ...]) -> Session:
    """Drain prints, then derive the waiting state from the landing node."""
    while isinstance(node, ir.Print):
        log = log + (node.text,)
        node = node.next
    if isinstance(node, ir.Exit):
        return Session(None, log, Finished())
    if isinstance(node, ir.Ask):
        options = tuple(branch.match for branch in node.branches)
        return Session(node, log, AwaitingChoice(node.prompt, options))
    return Session(node, log, AwaitingNumber(node.prompt))


def start(program: ir.Program) -> Session:
    return _settle(program.root, ())


def answer_choice(session: Session, choice: str) -> Session:
    """Select the branch whose match equals the whitespace-trimmed answer."""
    if not isinstance(session.state, AwaitingChoice):
        raise VmError("session is not awaiting a choice")
    assert isinstance(session.current, ir.Ask)
    answer = choice.strip()
    for branch in session.current.branches:
        if branch.match == answer:
            return _settle(branch.child, session.output_log)
    return Session(None, session.output_log, Failed("unmatched answer"))


def answer_number(session: Session, value: int) -> Session:
    """Route through the first threshold with value strictly above its limit."""
    if not isinstance(session.state, AwaitingNumber):
        raise VmError("session is not awaiting a number")
    assert isinstance(session.current, ir.AskNumeric)
    for threshold in session.current.thresholds:
        if value > threshold.limit:
            return _settle(threshold.child, session.output_log)
    if session.current.otherwise is not None:
        return _settle(session.current.otherwise, session.output_log)
    return Session(None, session.output_log, Failed("no matching branch"))
