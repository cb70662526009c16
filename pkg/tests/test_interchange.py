from __future__ import annotations

import json
import random

import pytest

from eqr import interchange, ir
from eqr.errors import InterchangeError
from tests.conftest import gen_program


def test_exit_only_document():
    document = interchange.dump(ir.Program.from_root(ir.Exit()))
    parsed = json.loads(document)
    assert parsed == {"format": "eqr-program", "version": 1, "root": {"kind": "exit"}}
    assert interchange.load(document).root == ir.Exit()


def test_wifi_round_trip(wifi_program):
    assert interchange.load(interchange.dump(wifi_program)) == wifi_program


def test_generated_round_trip():
    rng = random.Random(50)
    for _ in range(200):
        program = gen_program(rng)
        assert interchange.load(interchange.dump(program)) == program


def test_document_shape(wifi_program):
    root = json.loads(interchange.dump(wifi_program))["root"]
    assert root["kind"] == "ask"
    assert root["prompt"] == "Operation?"
    assert [b["match"] for b in root["branches"]] == [
        "Check status",
        "Configuration",
        "Generic information",
    ]
    numeric = root["branches"][2]["node"]["branches"][0]["node"]
    assert numeric["kind"] == "ask_numeric"
    assert [t["limit"] for t in numeric["thresholds"]] == [9600, 3500, 600, 54]
    assert numeric["otherwise"]["kind"] == "print"


@pytest.mark.parametrize(
    "mutate,message",
    [
        (lambda d: d.update(format="other"), "not a program document"),
        (lambda d: d.update(version=99), "unsupported document version"),
        (lambda d: d.update(root={"kind": "loop"}), "unknown node kind"),
        (lambda d: d.update(root={"kind": "print"}), "text"),
        (lambda d: d.update(root={"kind": "ask", "prompt": "p", "branches": []}), "branches"),
        (
            lambda d: d.update(
                root={
                    "kind": "ask_numeric",
                    "prompt": "p",
                    "thresholds": [{"limit": True, "node": {"kind": "exit"}}],
                }
            ),
            "integer limit",
        ),
    ],
)
def test_schema_violations(mutate, message):
    document = json.loads(interchange.dump(ir.Program.from_root(ir.Exit())))
    mutate(document)
    with pytest.raises(InterchangeError, match=message):
        interchange.load(json.dumps(document))


def test_invalid_json():
    with pytest.raises(InterchangeError, match="invalid JSON"):
        interchange.load("{not json")


def test_tree_invariants_enforced():
    document = {
        "format": "eqr-program",
        "version": 1,
        "root": {
            "kind": "ask_numeric",
            "prompt": "n",
            "thresholds": [
                {"limit": 5, "node": {"kind": "exit"}},
                {"limit": 9, "node": {"kind": "exit"}},
            ],
            "otherwise": None,
        },
    }
    with pytest.raises(InterchangeError, match="invariant"):
        interchange.load(json.dumps(document))
