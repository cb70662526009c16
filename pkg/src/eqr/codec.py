"""Bit-exact binary serialization of programs.

Layout (most-significant-bit first, final byte zero-padded on the right):

    payload   = version(4) header-command* body
    command   = END_HEADER(000) | DICT_LOCAL(101 000 exp-count word*)
    word      = coding(2) characters ETX
    body      = node
    node      = 00                                  exit
              | 01 string node                      print
              | 10 string exp-count (string node)*  question
              | 11 string exp-count (exp-limit node)* has-otherwise(1) node?
    string    = plain or dictionary-compressed framing, depending on
                whether the header carries a dictionary

Characters occupy 7 bits each under ASCII-7 coding (flag 00) and 8 bits per
UTF-8 byte under UTF-8 coding (flag 01). Strings end with ETX; compressed
sub-strings are separated by NUL. Signed integers use the exponential code:
4-bit groups of one continuation bit plus three payload bits, the payload
being a sign bit followed by the big-endian magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass

from eqr import ir
from eqr.errors import DecodeError, EncodeError, InvalidProgramError
from eqr.textcomp import (
    Coding,
    Constant,
    Dictionary,
    DictRef,
    Entry,
    SegmentedString,
    choose_coding,
    segment,
)

PAYLOAD_VERSION = 1  # 4-bit version field value

END_HEADER = 0b000
DICT_LOCAL = 0b101
DICT_LOCAL_PAD = 0b000  # constant filler after the DICT_LOCAL marker

TAG_EXIT = 0b00
TAG_PRINT = 0b01
TAG_ASK = 0b10
TAG_ASK_NUMERIC = 0b11

_CODING_FLAGS = {Coding.ASCII7: 0b00, Coding.UTF8: 0b01}
_FLAG_CODINGS = {flag: coding for coding, flag in _CODING_FLAGS.items()}

_NUL = 0
_ETX = 3


class BitStream:
    """Append-only bit sequence with an independent read cursor."""

    __slots__ = ("_acc", "_len", "_pos")

    def __init__(self) -> None:
        self._acc = 0
        self._len = 0
        self._pos = 0

    @property
    def bit_length(self) -> int:
        return self._len

    @property
    def remaining(self) -> int:
        return self._len - self._pos

    @property
    def bits(self) -> str:
        return format(self._acc, f"0{self._len}b") if self._len else ""

    def append_uint(self, value: int, width: int) -> None:
        if value < 0 or value >> width:
            raise EncodeError(f"value {value} does not fit in {width} bits")
        self._acc = (self._acc << width) | value
        self._len += width

    def extend(self, other: BitStream) -> None:
        self._acc = (self._acc << other._len) | other._acc
        self._len += other._len

    def read_uint(self, width: int) -> int:
        end = self._pos + width
        if end > self._len:
            raise DecodeError("truncated bit stream")
        self._pos = end
        return (self._acc >> (self._len - end)) & ((1 << width) - 1)

    def peek_uint(self, width: int) -> int:
        end = self._pos + width
        if end > self._len:
            raise DecodeError("truncated bit stream")
        return (self._acc >> (self._len - end)) & ((1 << width) - 1)

    def to_bytes(self) -> bytes:
        nbytes = (self._len + 7) // 8
        return (self._acc << (nbytes * 8 - self._len)).to_bytes(nbytes, "big")

    @classmethod
    def from_bytes(cls, data: bytes) -> BitStream:
        stream = cls()
        stream._acc = int.from_bytes(data, "big")
        stream._len = len(data) * 8
        return stream

    @classmethod
    def from_bits(cls, bits: str) -> BitStream:
        stream = cls()
        stream._acc = int(bits, 2) if bits else 0
        stream._len = len(bits)
        return stream


def exp_encode(value: int) -> BitStream:
    """Exponential signed-integer code: k 4-bit groups, 3 payload bits each."""
    mag = value if value >= 0 else -value
    k = (mag.bit_length() + 3) // 3  # minimal k with 3k-1 >= bit length
    payload = mag if value >= 0 else mag | (1 << (3 * k - 1))
    code = 0
    for i in range(k - 1, 0, -1):
        code = (code << 4) | 0b1000 | ((payload >> (3 * i)) & 7)
    code = (code << 4) | (payload & 7)
    out = BitStream()
    out.append_uint(code, 4 * k)
    return out


def exp_decode(stream: BitStream) -> int:
    payload = 0
    width = 0
    while True:
        group = stream.read_uint(4)
        payload = (payload << 3) | (group & 7)
        width += 3
        if not group & 0b1000:
            break
    mag = payload & ((1 << (width - 1)) - 1)
    return -mag if payload >> (width - 1) else mag


def _unit_width(coding: Coding) -> int:
    return 7 if coding is Coding.ASCII7 else 8


def _char_units(text: str, coding: Coding) -> bytes:
    if coding is Coding.ASCII7:
        try:
            units = text.encode("ascii")
        except UnicodeEncodeError:
            raise EncodeError(f"non-ASCII character under ASCII-7 coding: {text!r}")
    else:
        units = text.encode("utf-8")
    if _NUL in units or _ETX in units:
        raise EncodeError("string contains a reserved control character")
    return units


def encode_string_plain(text: str, coding: Coding | None = None) -> BitStream:
    """coding(2) + one unit per character/byte + ETX."""
    if coding is None:
        coding = choose_coding(text)
    out = BitStream()
    out.append_uint(_CODING_FLAGS[coding], 2)
    width = _unit_width(coding)
    for unit in _char_units(text, coding):
        out.append_uint(unit, width)
    out.append_uint(_ETX, width)
    return out


def _decode_coding(stream: BitStream) -> Coding:
    flag = stream.read_uint(2)
    coding = _FLAG_CODINGS.get(flag)
    if coding is None:
        raise DecodeError(f"unknown string coding flag {flag:02b}")
    return coding


def _units_to_text(units: bytes, coding: Coding) -> str:
    if coding is Coding.ASCII7:
        return units.decode("ascii")
    try:
        return units.decode("utf-8")
    except UnicodeDecodeError:
        raise DecodeError("invalid UTF-8 sequence in string")


def decode_string_plain(stream: BitStream) -> str:
    coding = _decode_coding(stream)
    width = _unit_width(coding)
    units = bytearray()
    while True:
        unit = stream.read_uint(width)
        if unit == _ETX:
            break
        if unit == _NUL:
            raise DecodeError("unexpected separator in a plain string")
        units.append(unit)
    return _units_to_text(bytes(units), coding)


def encode_dictionary(dictionary: Dictionary) -> BitStream:
    """DICT_LOCAL(101) 000 exp-word-count plain-coded words."""
    if dictionary.n_words == 0:
        raise EncodeError("cannot encode an empty dictionary")
    out = BitStream()
    out.append_uint(DICT_LOCAL, 3)
    out.append_uint(DICT_LOCAL_PAD, 3)
    out.extend(exp_encode(dictionary.n_words))
    for entry in dictionary.entries:
        out.extend(encode_string_plain(entry.word))
    return out


def _decode_dictionary_block(stream: BitStream) -> Dictionary:
    """Parses a DICT_LOCAL block after its 3-bit marker has been consumed."""
    pad = stream.read_uint(3)
    if pad != DICT_LOCAL_PAD:
        raise DecodeError(f"malformed dictionary header (filler {pad:03b})")
    count = exp_decode(stream)
    if count < 1:
        raise DecodeError(f"dictionary with invalid word count {count}")
    # occurrence counts are not serialized; decoded entries carry 0
    entries = tuple(Entry(decode_string_plain(stream), 0) for _ in range(count))
    return Dictionary(entries)


def encode_string_compressed(seg: SegmentedString, dictionary: Dictionary) -> BitStream:
    """coding(2) + type-bit-prefixed sub-strings, NUL-separated, ETX-terminated."""
    out = BitStream()
    out.append_uint(_CODING_FLAGS[seg.coding], 2)
    width = _unit_width(seg.coding)
    if seg.segments:
        first = seg.segments[0]
        if isinstance(first, Constant) and first.text[:1] in ("\x06", "\x07"):
            # the type bit plus such a character is bit-identical to a lone
            # ETX, which the decoder takes to mean the empty string
            raise EncodeError(
                "string starts with a character that aliases the empty-string framing"
            )
    for index, piece in enumerate(seg.segments):
        if index:
            out.append_uint(_NUL, width)
        if isinstance(piece, Constant):
            if not piece.text:
                raise EncodeError("empty constant sub-string")
            out.append_uint(0, 1)
            for unit in _char_units(piece.text, seg.coding):
                out.append_uint(unit, width)
        else:
            if not 0 <= piece.key < dictionary.n_words:
                raise EncodeError(f"dictionary key {piece.key} out of range")
            out.append_uint(1, 1)
            out.append_uint(piece.key, dictionary.n_bits)
    out.append_uint(_ETX, width)
    return out


def decode_string_compressed(stream: BitStream, dictionary: Dictionary) -> str:
    coding = _decode_coding(stream)
    width = _unit_width(coding)
    if stream.peek_uint(width) == _ETX:
        stream.read_uint(width)
        return ""
    parts: list[str] = []
    while True:
        if stream.read_uint(1):
            key = stream.read_uint(dictionary.n_bits)
            if key >= dictionary.n_words:
                raise DecodeError(f"dictionary key {key} out of range")
            parts.append(dictionary.word_at(key))
            control = stream.read_uint(width)
            if control not in (_NUL, _ETX):
                raise DecodeError("missing separator after a dictionary sub-string")
        else:
            units = bytearray()
            while True:
                control = stream.read_uint(width)
                if control in (_NUL, _ETX):
                    break
                units.append(control)
            if not units:
                raise DecodeError("empty constant sub-string")
            parts.append(_units_to_text(bytes(units), coding))
        if control == _ETX:
            return "".join(parts)


@dataclass
class EncodedPayload:
    """Header and body bit sections of one serialized program."""

    header: BitStream
    body: BitStream

    @property
    def bit_length(self) -> int:
        return self.header.bit_length + self.body.bit_length

    @property
    def byte_length(self) -> int:
        return (self.bit_length + 7) // 8

    def bitstream(self) -> BitStream:
        combined = BitStream()
        combined.extend(self.header)
        combined.extend(self.body)
        return combined

    def to_bytes(self) -> bytes:
        return self.bitstream().to_bytes()


def encode_program(
    program: ir.Program, dictionary: Dictionary | None = None
) -> EncodedPayload:
    """Serialize a program, compressing strings when a dictionary is given."""
    if dictionary is not None and dictionary.n_words == 0:
        dictionary = None

    header = BitStream()
    header.append_uint(PAYLOAD_VERSION, 4)
    if dictionary is not None:
        header.extend(encode_dictionary(dictionary))
    header.append_uint(END_HEADER, 3)

    def emit_string(out: BitStream, text: str) -> None:
        if dictionary is None:
            out.extend(encode_string_plain(text))
        else:
            out.extend(encode_string_compressed(segment(text, dictionary), dictionary))

    body = BitStream()

    def emit(node: ir.Node) -> None:
        if isinstance(node, ir.Exit):
            body.append_uint(TAG_EXIT, 2)
        elif isinstance(node, ir.Print):
            body.append_uint(TAG_PRINT, 2)
            emit_string(body, node.text)
            emit(node.next)
        elif isinstance(node, ir.Ask):
            body.append_uint(TAG_ASK, 2)
            emit_string(body, node.prompt)
            body.extend(exp_encode(len(node.branches)))
            for branch in node.branches:
                emit_string(body, branch.match)
                emit(branch.child)
        elif isinstance(node, ir.AskNumeric):
            body.append_uint(TAG_ASK_NUMERIC, 2)
            emit_string(body, node.prompt)
            body.extend(exp_encode(len(node.thresholds)))
            for threshold in node.thresholds:
                body.extend(exp_encode(threshold.limit))
                emit(threshold.child)
            body.append_uint(0 if node.otherwise is None else 1, 1)
            if node.otherwise is not None:
                emit(node.otherwise)
        else:
            raise EncodeError(f"unknown node type {type(node).__name__}")

    emit(program.root)
    return EncodedPayload(header, body)


def decode_payload(stream: BitStream) -> tuple[ir.Program, Dictionary | None]:
    """Parse a payload bit stream back into a program and its dictionary."""
    version = stream.read_uint(4)
    if version != PAYLOAD_VERSION:
        raise DecodeError(f"unsupported payload version {version}")
    dictionary: Dictionary | None = None
    while True:
        command = stream.read_uint(3)
        if command == END_HEADER:
            break
        if command == DICT_LOCAL:
            if dictionary is not None:
                raise DecodeError("duplicate dictionary in header")
            dictionary = _decode_dictionary_block(stream)
        else:
            raise DecodeError(f"unknown header command {command:03b}")

    def read_string() -> str:
        if dictionary is None:
            return decode_string_plain(stream)
        return decode_string_compressed(stream, dictionary)

    def read_count(what: str) -> int:
        count = exp_decode(stream)
        if count < 1:
            raise DecodeError(f"{what} with invalid count {count}")
        return count

    def read_node() -> ir.Node:
        tag = stream.read_uint(2)
        if tag == TAG_EXIT:
            return ir.Exit()
        if tag == TAG_PRINT:
            text = read_string()
            return ir.Print(text, read_node())
        if tag == TAG_ASK:
            prompt = read_string()
            branches = []
            for _ in range(read_count("question")):
                match = read_string()
                branches.append(ir.Branch(match, read_node()))
            return ir.Ask(prompt, tuple(branches))
        prompt = read_string()
        thresholds = []
        for _ in range(read_count("numeric question")):
            limit = exp_decode(stream)
            thresholds.append(ir.Threshold(limit, read_node()))
        otherwise = read_node() if stream.read_uint(1) else None
        return ir.AskNumeric(prompt, tuple(thresholds), otherwise)

    root = read_node()
    try:
        program = ir.Program.from_root(root)
    except InvalidProgramError as exc:
        raise DecodeError(f"decoded program is invalid: {exc}")
    return program, dictionary


def decode_program(payload: EncodedPayload | BitStream) -> ir.Program:
    stream = payload.bitstream() if isinstance(payload, EncodedPayload) else payload
    return decode_payload(stream)[0]
