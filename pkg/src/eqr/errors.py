"""Exception hierarchy shared across the toolchain."""


class EqrError(Exception):
    """Base class for all toolchain errors."""


class InvalidProgramError(EqrError):
    """A program tree violates a structural invariant."""


class ParseError(EqrError):
    """Source text could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class FormatError(EqrError):
    """A program contains strings the source grammar cannot represent."""


class EncodeError(EqrError):
    """A value cannot be serialized to the binary format."""


class DecodeError(EqrError):
    """A bit stream is not a well-formed payload."""


class CapacityError(EqrError):
    """A payload exceeds the QR capacity budget."""

    def __init__(self, bits: int, max_bytes: int):
        super().__init__(
            f"payload of {bits} bits ({(bits + 7) // 8} bytes) exceeds "
            f"the QR capacity of {max_bytes} bytes"
        )
        self.bits = bits
        self.max_bytes = max_bytes


class QrReadError(EqrError):
    """A QR image could not be located or decoded."""


class InterchangeError(EqrError):
    """A portable program document violates the interchange schema."""
