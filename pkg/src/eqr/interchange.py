"""Portable program documents: a JSON tree mirroring the IR node kinds.

Schema (stable field names, versioned with the payload format):

    {"format": "eqr-program", "version": 1, "root": <node>}

    <node> = {"kind": "exit"}
           | {"kind": "print", "text": str, "next": <node>}
           | {"kind": "ask", "prompt": str,
              "branches": [{"match": str, "node": <node>}, ...]}
           | {"kind": "ask_numeric", "prompt": str,
              "thresholds": [{"limit": int, "node": <node>}, ...],
              "otherwise": <node> | null}
"""

from __future__ import annotations

import json
from typing import Any

from eqr import ir
from eqr.codec import PAYLOAD_VERSION
from eqr.errors import InterchangeError, InvalidProgramError

FORMAT_NAME = "eqr-program"


def _node_to_obj(node: ir.Node) -> dict[str, Any]:
    if isinstance(node, ir.Exit):
        return {"kind": "exit"}
    if isinstance(node, ir.Print):
        return {"kind": "print", "text": node.text, "next": _node_to_obj(node.next)}
    if isinstance(node, ir.Ask):
        return {
            "kind": "ask",
            "prompt": node.prompt,
            "branches": [
                {"match": branch.match, "node": _node_to_obj(branch.child)}
                for branch in node.branches
            ],
        }
    return {
        "kind": "ask_numeric",
        "prompt": node.prompt,
        "thresholds": [
            {"limit": threshold.limit, "node": _node_to_obj(threshold.child)}
            for threshold in node.thresholds
        ],
        "otherwise": None if node.otherwise is None else _node_to_obj(node.otherwise),
    }


def dump(program: ir.Program) -> str:
    document = {
        "format": FORMAT_NAME,
        "version": PAYLOAD_VERSION,
        "root": _node_to_obj(program.root),
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InterchangeError(message)


def _node_from_obj(obj: Any) -> ir.Node:
    _require(isinstance(obj, dict), "node must be an object")
    kind = obj.get("kind")
    if kind == "exit":
        return ir.Exit()
    if kind == "print":
        _require(isinstance(obj.get("text"), str), "print node needs a text string")
        return ir.Print(obj["text"], _node_from_obj(obj.get("next")))
    if kind == "ask":
        _require(isinstance(obj.get("prompt"), str), "ask node needs a prompt string")
        branches = obj.get("branches")
        _require(isinstance(branches, list) and branches, "ask node needs branches")
        parsed = []
        for branch in branches:
            _require(isinstance(branch, dict), "branch must be an object")
            _require(isinstance(branch.get("match"), str), "branch needs a match string")
            parsed.append(ir.Branch(branch["match"], _node_from_obj(branch.get("node"))))
        return ir.Ask(obj["prompt"], tuple(parsed))
    if kind == "ask_numeric":
        _require(isinstance(obj.get("prompt"), str), "ask_numeric node needs a prompt")
        thresholds = obj.get("thresholds")
        _require(
            isinstance(thresholds, list) and thresholds,
            "ask_numeric node needs thresholds",
        )
        parsed_thresholds = []
        for threshold in thresholds:
            _require(isinstance(threshold, dict), "threshold must be an object")
            limit = threshold.get("limit")
            _require(
                isinstance(limit, int) and not isinstance(limit, bool),
                "threshold needs an integer limit",
            )
            parsed_thresholds.append(
                ir.Threshold(limit, _node_from_obj(threshold.get("node")))
            )
        otherwise = obj.get("otherwise")
        return ir.AskNumeric(
            obj["prompt"],
            tuple(parsed_thresholds),
            None if otherwise is None else _node_from_obj(otherwise),
        )
    raise InterchangeError(f"unknown node kind {kind!r}")


def load(text: str) -> ir.Program:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InterchangeError(f"invalid JSON: {exc}")
    _require(isinstance(document, dict), "document must be an object")
    _require(document.get("format") == FORMAT_NAME, "not a program document")
    _require(document.get("version") == PAYLOAD_VERSION, "unsupported document version")
    try:
        return ir.Program.from_root(_node_from_obj(document.get("root")))
    except InvalidProgramError as exc:
        raise InterchangeError(f"document violates a tree invariant: {exc}")
