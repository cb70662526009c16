"""Command-line entry point wiring the generation and execution chains.

Exit codes: 0 success, 1 usage or I/O problem, 2 parse/decode error,
3 capacity exceeded, 4 session ended in a failure state.

`run` keeps the two output channels apart: prompts and menus go to stderr,
program output lines go to stdout, so a scripted invocation's stdout equals
the session's output log.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from eqr import codec, frontend, interchange, qrio, textcomp, vm
from eqr.errors import (
    CapacityError,
    DecodeError,
    EqrError,
    InterchangeError,
    ParseError,
    QrReadError,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONTENT = 2
EXIT_CAPACITY = 3
EXIT_SESSION_FAILED = 4


@dataclass(frozen=True)
class CompilationReport:
    """Bit accounting for one compiled program (percentages of the
    uncompressed whole, one decimal)."""

    total_bits: int
    string_bits: int
    dictionary_bits: int
    compressed_string_bits: int  # includes the dictionary block

    @property
    def compressed_total_bits(self) -> int:
        return self.total_bits - self.string_bits + self.compressed_string_bits

    @property
    def ratio_percent(self) -> float:
        return round(100 * self.compressed_total_bits / self.total_bits, 1)


def build_report(
    program, dictionary: textcomp.Dictionary | None
) -> CompilationReport:
    string_bits = sum(
        codec.encode_string_plain(text).bit_length for text in program.strings
    )
    total_bits = codec.encode_program(program, None).bit_length
    if dictionary is None or dictionary.n_words == 0:
        return CompilationReport(total_bits, string_bits, 0, string_bits)
    dictionary_bits = codec.encode_dictionary(dictionary).bit_length
    compressed = dictionary_bits + sum(
        codec.encode_string_compressed(
            textcomp.segment(text, dictionary), dictionary
        ).bit_length
        for text in program.strings
    )
    return CompilationReport(total_bits, string_bits, dictionary_bits, compressed)


def _pct(bits: int, whole: int) -> str:
    return f"{100 * bits / whole:.1f}%"


def print_report(report: CompilationReport, *, compressed: bool) -> None:
    whole = report.total_bits
    rows = [
        ("Whole payload", f"{whole} bits (100.0%)"),
        ("Strings", f"{report.string_bits} bits ({_pct(report.string_bits, whole)})"),
    ]
    if compressed:
        rows += [
            ("Dictionary", f"{report.dictionary_bits} bits"),
            (
                "Compressed strings (including dictionary)",
                f"{report.compressed_string_bits} bits "
                f"({_pct(report.compressed_string_bits, whole)})",
            ),
            (
                "Whole payload (with compressed strings)",
                f"{report.compressed_total_bits} bits ({report.ratio_percent}%)",
            ),
        ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc}", EXIT_USAGE))


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc}", EXIT_USAGE))


def _write_bytes(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise SystemExit(_fail(f"cannot write {path}: {exc}", EXIT_USAGE))


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise SystemExit(_fail(f"cannot write {path}: {exc}", EXIT_USAGE))


def _fail(message: str, code: int) -> int:
    print(f"eqr: {message}", file=sys.stderr)
    return code


def _load_program(payload_path: str):
    stream = qrio.unpack(_read_bytes(payload_path))
    return codec.decode_payload(stream)


def cmd_compile(args) -> int:
    program = frontend.parse(_read_text(args.source))
    dictionary = (
        textcomp.build_dictionary(program.strings, gain_filter=args.gain_filter)
        if args.compress
        else None
    )
    payload = codec.encode_program(program, dictionary)
    data = qrio.pack(payload)
    _write_bytes(args.output, data)
    if args.stats:
        report = build_report(program, dictionary)
        print_report(report, compressed=args.compress)
    return EXIT_OK


def cmd_decompile(args) -> int:
    program, _ = _load_program(args.payload)
    sys.stdout.write(frontend.format(program))
    return EXIT_OK


def cmd_run(args) -> int:
    program, _ = _load_program(args.payload)
    session = vm.start(program)
    printed = 0

    def flush_output(session: vm.Session) -> int:
        nonlocal printed
        for line in session.output_log[printed:]:
            print(line)
        printed = len(session.output_log)
        return printed

    while True:
        flush_output(session)
        state = session.state
        if isinstance(state, vm.Finished):
            return EXIT_OK
        if isinstance(state, vm.Failed):
            return _fail(f"session failed: {state.reason}", EXIT_SESSION_FAILED)
        if isinstance(state, vm.AwaitingChoice):
            print(state.prompt, file=sys.stderr)
            for index, option in enumerate(state.options, start=1):
                print(f"  {index}) {option}", file=sys.stderr)
            while True:
                answer = _read_answer()
                if answer is None:
                    return _fail("input ended before the session finished", EXIT_SESSION_FAILED)
                try:
                    index = int(answer)
                except ValueError:
                    index = 0
                if 1 <= index <= len(state.options):
                    session = vm.answer_choice(session, state.options[index - 1])
                    break
                print("enter an option number", file=sys.stderr)
        else:
            print(state.prompt, file=sys.stderr)
            while True:
                answer = _read_answer()
                if answer is None:
                    return _fail("input ended before the session finished", EXIT_SESSION_FAILED)
                try:
                    value = int(answer)
                except ValueError:
                    print("enter an integer", file=sys.stderr)
                    continue
                session = vm.answer_number(session, value)
                break


def _read_answer() -> str | None:
    print("> ", end="", file=sys.stderr, flush=True)
    line = sys.stdin.readline()
    if not line:
        return None
    return line.strip()


def cmd_export(args) -> int:
    program, _ = _load_program(args.payload)
    document = interchange.dump(program)
    if args.output == "-":
        sys.stdout.write(document)
    else:
        _write_text(args.output, document)
    return EXIT_OK


def cmd_qr(args) -> int:
    data = _read_bytes(args.payload)
    if not data:
        return _fail("payload file is empty", EXIT_CONTENT)
    qrio.emit_qr(data, args.image, error_correction=args.error_correction)
    return EXIT_OK


def cmd_scan(args) -> int:
    data = qrio.read_qr(args.image)
    _write_bytes(args.output, data)
    return EXIT_OK


def cmd_stats(args) -> int:
    program = frontend.parse(_read_text(args.source))
    dictionary = textcomp.build_dictionary(program.strings, gain_filter=args.gain_filter)
    report = build_report(program, dictionary)
    plain_sizes = [
        codec.encode_string_plain(text).bit_length for text in program.strings
    ]
    if dictionary.n_words:
        compressed_sizes = [
            codec.encode_string_compressed(
                textcomp.segment(text, dictionary), dictionary
            ).bit_length
            for text in program.strings
        ]
    else:
        compressed_sizes = plain_sizes

    if args.kv:
        print(f"n_words={dictionary.n_words}")
        print(f"key_bits={dictionary.n_bits if dictionary.n_words else 0}")
        for key, entry in enumerate(dictionary.entries):
            print(f"word.{key}={entry.word}:{entry.count}")
        for index, (before, after) in enumerate(zip(plain_sizes, compressed_sizes)):
            print(f"string.{index}={before}:{after}")
        print(f"total_bits={report.total_bits}")
        print(f"string_bits={report.string_bits}")
        print(f"dictionary_bits={report.dictionary_bits}")
        print(f"compressed_string_bits={report.compressed_string_bits}")
        print(f"compressed_total_bits={report.compressed_total_bits}")
        print(f"ratio_percent={report.ratio_percent}")
        return EXIT_OK

    if dictionary.n_words:
        print(f"Dictionary: {dictionary.n_words} words, key width {dictionary.n_bits} bits")
        for key, entry in enumerate(dictionary.entries):
            print(f"  {key:>3}  {entry.word}  x{entry.count}")
    else:
        print("Dictionary: empty (no word repeats at least twice)")
    print()
    print("Strings (bits before -> after):")
    for text, before, after in zip(program.strings, plain_sizes, compressed_sizes):
        label = text if len(text) <= 40 else text[:37] + "..."
        print(f"  {before:>5} -> {after:>5}  {label!r}")
    print()
    print_report(report, compressed=True)
    return EXIT_OK


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="eqr",
        description="Compile, inspect, package, and run executable QR code programs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile source text to a binary payload")
    p.add_argument("source")
    p.add_argument("-o", "--output", required=True, help="payload file to write")
    p.add_argument(
        "--no-compress",
        dest="compress",
        action="store_false",
        help="serialize strings without the word dictionary",
    )
    p.add_argument(
        "--gain-filter",
        action="store_true",
        help="drop dictionary words whose header cost exceeds their savings",
    )
    p.add_argument("--stats", action="store_true", help="print the bit accounting")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("decompile", help="print a payload as canonical source text")
    p.add_argument("payload")
    p.set_defaults(func=cmd_decompile)

    p = sub.add_parser("run", help="execute a payload interactively")
    p.add_argument("payload")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("export", help="write a payload as a portable JSON document")
    p.add_argument("payload")
    p.add_argument("-o", "--output", default="-", help="JSON file to write (- for stdout)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("qr", help="render a payload file as a QR image")
    p.add_argument("payload")
    p.add_argument("image", help="PNG file to write")
    p.add_argument(
        "--error-correction",
        choices=qrio.ERROR_CORRECTION_LEVELS,
        default="L",
        help="QR error-correction level (default: L)",
    )
    p.set_defaults(func=cmd_qr)

    p = sub.add_parser("scan", help="extract the payload bytes from a QR image")
    p.add_argument("image")
    p.add_argument("output", help="payload file to write")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("stats", help="print the compression report for a source file")
    p.add_argument("source")
    p.add_argument("--kv", action="store_true", help="machine-readable key/value lines")
    p.add_argument(
        "--gain-filter",
        action="store_true",
        help="drop dictionary words whose header cost exceeds their savings",
    )
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(str(exc), EXIT_CONTENT)
    except (DecodeError, InterchangeError) as exc:
        return _fail(str(exc), EXIT_CONTENT)
    except CapacityError as exc:
        return _fail(str(exc), EXIT_CAPACITY)
    except QrReadError as exc:
        return _fail(str(exc), EXIT_CONTENT)
    except EqrError as exc:
        return _fail(str(exc), EXIT_CONTENT)


if __name__ == "__main__":
    sys.exit(main())
