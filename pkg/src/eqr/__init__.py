"""Toolchain for executable QR codes: compile decision-tree programs to a
compact binary payload, package them as QR images, and run them interactively.

Pipeline:   source text -> ir tree -> payload bits -> QR image
            QR image    -> payload bits -> ir tree -> interactive session
"""

from eqr.errors import (
    CapacityError,
    DecodeError,
    EncodeError,
    EqrError,
    FormatError,
    InterchangeError,
    ParseError,
    QrReadError,
)

__version__ = "0.1.0"

__all__ = [
    "EqrError",
    "ParseError",
    "FormatError",
    "EncodeError",
    "DecodeError",
    "CapacityError",
    "QrReadError",
    "InterchangeError",
    "__version__",
]
