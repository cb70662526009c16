"""Parser and formatter for the high-level decision-tree language.

The grammar is line oriented and indentation structured:

    input "<prompt>"          string question, answered by an if-chain
    if "<match>":             first alternative (children indented deeper)
    else if "<match>":        further alternatives
    inputs "<prompt>"         numeric question, consumed by an ifc-cascade
    ifc > <int>:              threshold guard (strictly decreasing)
    else ifc > <int>:         further guards
    else:                     cascade fallback
    print "<text>"            emit text, continue with the next statement
    print "<text>" exit       emit text, then terminate
    exit                      terminate

Keywords are lowercase and case-sensitive. String literals must open and
close on the same line and cannot contain a double quote.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from eqr import ir
from eqr.errors import FormatError, ParseError

INDENT = "   "  # canonical indentation step emitted by format()

_INT_RE = re.compile(r"-?\d+$")


@dataclass(frozen=True)
class _Line:
    number: int
    indent: int
    text: str


def _scan(source: str) -> list[_Line]:
    lines = []
    for number, raw in enumerate(source.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        leading = raw[: len(raw) - len(raw.lstrip())]
        if "\t" in leading:
            raise ParseError("tabs are not allowed in indentation", number)
        lines.append(_Line(number, len(leading), stripped))
    return lines


def _take_literal(line: _Line, keyword: str) -> tuple[str, str]:
    """Split `<keyword> "<literal>"<rest>`; returns (literal, rest)."""
    text = line.text
    prefix = keyword + ' "'
    if not text.startswith(prefix):
        raise ParseError(f"expected a string literal after '{keyword}'", line.number)
    closing = text.find('"', len(prefix))
    if closing < 0:
        raise ParseError(
            "unterminated string literal (literals must close on the same line)",
            line.number,
        )
    literal = text[len(prefix) : closing]
    if ir.NUL in literal or ir.ETX in literal:
        raise ParseError("string literal contains a reserved control character", line.number)
    return literal, text[closing + 1 :]


class _Parser:
    def __init__(self, lines: list[_Line]):
        self.lines = lines
        self.pos = 0

    def peek(self) -> _Line | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def error(self, message: str, line: _Line | None = None) -> ParseError:
        if line is None:
            line = self.lines[-1] if self.lines else _Line(1, 0, "")
        return ParseError(message, line.number)

    def parse_program(self) -> ir.Node:
        if not self.lines:
            raise ParseError("empty program", 1)
        if self.lines[0].indent != 0:
            raise self.error("unexpected indentation", self.lines[0])
        root = self.parse_chain(0)
        leftover = self.peek()
        if leftover is not None:
            raise self.error("unreachable statement after the block ended", leftover)
        return root

    def parse_chain(self, indent: int) -> ir.Node:
        """One statement chain at `indent`: prints followed by a terminator."""
        line = self.peek()
        if line is None:
            raise self.error("unexpected end of input, expected a statement")
        if line.indent != indent:
            raise self.error("inconsistent indentation", line)
        word = line.text.split(None, 1)[0].rstrip(":")
        if line.text == "exit":
            self.pos += 1
            return ir.Exit()
        if word == "print":
            text, rest = _take_literal(line, "print")
            self.pos += 1
            if rest == " exit":
                return ir.Print(text, ir.Exit())
            if rest:
                raise self.error(f"unexpected trailing text {rest.strip()!r}", line)
            following = self.peek()
            if following is None or following.indent < indent:
                raise self.error("expected a statement after 'print'", line)
            return ir.Print(text, self.parse_chain(indent))
        if word == "input":
            prompt, rest = _take_literal(line, "input")
            if rest:
                raise self.error(f"unexpected trailing text {rest.strip()!r}", line)
            self.pos += 1
            return ir.Ask(prompt, self.parse_if_chain(indent))
        if word == "inputs":
            prompt, rest = _take_literal(line, "inputs")
            if rest:
                raise self.error(f"unexpected trailing text {rest.strip()!r}", line)
            self.pos += 1
            thresholds, otherwise = self.parse_ifc_chain(indent)
            return ir.AskNumeric(prompt, thresholds, otherwise)
        if word in ("if", "else", "elseif", "ifc"):
            raise self.error(f"'{line.text.split(':')[0]}' without a preceding question", line)
        raise self.error(f"unknown keyword {word!r}", line)

    def parse_child(self, parent_indent: int, header: _Line) -> ir.Node:
        line = self.peek()
        if line is None:
            raise self.error(f"missing body for {header.text!r}", header)
        if line.indent <= parent_indent:
            raise self.error(f"missing body for {header.text!r}", line)
        child_indent = line.indent
        node = self.parse_chain(child_indent)
        following = self.peek()
        if following is not None and following.indent > parent_indent:
            if following.indent == child_indent:
                raise self.error("unreachable statement after the block ended", following)
            raise self.error("inconsistent indentation", following)
        return node

    def parse_if_chain(self, indent: int) -> tuple[ir.Branch, ...]:
        line = self.peek()
        if line is None or line.indent != indent or not line.text.startswith('if "'):
            raise self.error("expected 'if' after 'input'", line or self.lines[-1])
        branches: list[ir.Branch] = []
        matches: set[str] = set()
        first = True
        while True:
            line = self.peek()
            if line is None or line.indent != indent:
                break
            keyword = "if" if first else "else if"
            if not line.text.startswith(keyword + ' "'):
                if not first and line.text.startswith('if "'):
                    raise self.error("expected 'else if', not a second 'if'", line)
                if not first and line.text.startswith("else"):
                    raise self.error("malformed 'else if' clause", line)
                break
            match, rest = _take_literal(line, keyword)
            if rest != ":":
                raise self.error("expected ':' after the match string", line)
            if match in matches:
                raise self.error(f"duplicate branch match {match!r}", line)
            matches.add(match)
            self.pos += 1
            branches.append(ir.Branch(match, self.parse_child(indent, line)))
            first = False
        if not branches:
            raise self.error("expected 'if' after 'input'")
        return tuple(branches)

    def parse_ifc_chain(self, indent: int) -> tuple[tuple[ir.Threshold, ...], ir.Node | None]:
        line = self.peek()
        if line is None or line.indent != indent or not line.text.startswith("ifc >"):
            raise self.error("expected 'ifc >' after 'inputs'", line or self.lines[-1])
        thresholds: list[ir.Threshold] = []
        otherwise: ir.Node | None = None
        first = True
        while True:
            line = self.peek()
            if line is None or line.indent != indent:
                break
            if line.text == "else:":
                if first:
                    raise self.error("'else:' without a preceding 'ifc'", line)
                self.pos += 1
                otherwise = self.parse_child(indent, line)
                break
            keyword = "ifc >" if first else "else ifc >"
            if not line.text.startswith(keyword):
                if not first and line.text.startswith("else"):
                    raise self.error("malformed 'else ifc' clause", line)
                break
            body = line.text[len(keyword) :].strip()
            if not body.endswith(":"):
                raise self.error("expected ':' after the threshold", line)
            number = body[:-1].strip()
            if not _INT_RE.match(number):
                raise self.error(f"expected an integer threshold, got {number!r}", line)
            limit = int(number)
            if thresholds and limit >= thresholds[-1].limit:
                raise self.error(
                    f"thresholds must be strictly decreasing "
                    f"({thresholds[-1].limit} then {limit})",
                    line,
                )
            self.pos += 1
            thresholds.append(ir.Threshold(limit, self.parse_child(indent, line)))
            first = False
        if not thresholds:
            raise self.error("expected 'ifc >' after 'inputs'")
        return tuple(thresholds), otherwise


def parse(source: str) -> ir.Program:
    """Parse source text into a validated Program."""
    return ir.Program.from_root(_Parser(_scan(source)).parse_program())


def _check_representable(text: str) -> None:
    if '"' in text:
        raise FormatError(f"string {text!r} contains a double quote")
    if "\n" in text or "\r" in text:
        raise FormatError(f"string {text!r} spans multiple lines")


def format(program: ir.Program) -> str:  # noqa: A001 - mirrors parse()
    """Render a Program as canonical source; parse(format(p)) equals p."""
    out: list[str] = []

    def emit(node: ir.Node, depth: int) -> None:
        pad = INDENT * depth
        if isinstance(node, ir.Exit):
            out.append(pad + "exit")
        elif isinstance(node, ir.Print):
            _check_representable(node.text)
            if isinstance(node.next, ir.Exit):
                out.append(f'{pad}print "{node.text}" exit')
            else:
                out.append(f'{pad}print "{node.text}"')
                emit(node.next, depth)
        elif isinstance(node, ir.Ask):
            _check_representable(node.prompt)
            out.append(f'{pad}input "{node.prompt}"')
            for index, branch in enumerate(node.branches):
                _check_representable(branch.match)
                keyword = "if" if index == 0 else "else if"
                out.append(f'{pad}{keyword} "{branch.match}":')
                emit(branch.child, depth + 1)
        elif isinstance(node, ir.AskNumeric):
            _check_representable(node.prompt)
            out.append(f'{pad}inputs "{node.prompt}"')
            for index, threshold in enumerate(node.thresholds):
                keyword = "ifc >" if index == 0 else "else ifc >"
                out.append(f"{pad}{keyword} {threshold.limit}:")
                emit(threshold.child, depth + 1)
            if node.otherwise is not None:
                out.append(f"{pad}else:")
                emit(node.otherwise, depth + 1)
        else:
            raise FormatError(f"unknown node type {type(node).__name__}")

    emit(program.root, 0)
    return "\n".join(out) + "\n"
