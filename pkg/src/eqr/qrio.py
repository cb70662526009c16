"""QR packaging: payload bits to bytes, capacity enforcement, image I/O.

Symbol generation is delegated to reportlab's bundled QR encoder (byte mode,
ISO/IEC 18004); decoding runs through a small Node.js helper built on jsqr,
which returns the raw byte content without any charset re-interpretation.
The helper's dependencies are installed on first use (see `ensure_decoder`).
"""

from __future__ import annotations

import base64
import json
import logging
import shutil
import subprocess
from dataclasses import dataclass
from pathlib import Path

from PIL import Image
from reportlab.graphics.barcode import qrencoder

from eqr.codec import BitStream, EncodedPayload
from eqr.errors import CapacityError, EncodeError, QrReadError

log = logging.getLogger(__name__)

# Version 40 with low error correction stores up to 2953 bytes.
QR_CAPACITY_BYTES = 2953

ERROR_CORRECTION_LEVELS = ("L", "M", "Q", "H")

_HELPER_DIR = Path(__file__).parent / "_qrjs"


@dataclass(frozen=True)
class QrBudget:
    max_bytes: int = QR_CAPACITY_BYTES


def pack(payload: EncodedPayload, budget: QrBudget = QrBudget()) -> bytes:
    """Payload bits as MSB-first bytes, zero-padded on the right."""
    if payload.byte_length > budget.max_bytes:
        raise CapacityError(payload.bit_length, budget.max_bytes)
    return payload.to_bytes()


def unpack(data: bytes) -> BitStream:
    """Bytes back to a bit stream; trailing padding is left to the decoder."""
    return BitStream.from_bytes(data)


def _fit_version(nbytes: int, level: int) -> int:
    for version in range(1, 41):
        blocks = qrencoder.QRRSBlock.getRSBlocks(version, level)
        capacity = sum(block.dataCount for block in blocks) * 8
        needed = 4 + (8 if version < 10 else 16) + 8 * nbytes
        if needed <= capacity:
            return version
    raise CapacityError(nbytes * 8, QR_CAPACITY_BYTES)


def _render(qr, scale: int, border: int) -> Image.Image:
    n = qr.getModuleCount()
    raw = bytes(0 if qr.isDark(r, c) else 255 for r in range(n) for c in range(n))
    img = Image.frombytes("L", (n, n), raw).resize((n * scale, n * scale), Image.NEAREST)
    pad = border * scale
    out = Image.new("L", (img.width + 2 * pad, img.height + 2 * pad), 255)
    out.paste(img, (pad, pad))
    return out


def emit_qr(
    data: bytes,
    path: str | Path,
    *,
    error_correction: str = "L",
    scale: int = 6,
    border: int = 4,
) -> None:
    """Write a byte-mode QR symbol image encoding `data` exactly."""
    if not data:
        raise EncodeError("cannot emit an empty payload")
    if error_correction not in ERROR_CORRECTION_LEVELS:
        raise EncodeError(f"unknown error-correction level {error_correction!r}")
    if len(data) > QR_CAPACITY_BYTES:
        raise CapacityError(len(data) * 8, QR_CAPACITY_BYTES)
    level = getattr(qrencoder.QRErrorCorrectLevel, error_correction)
    qr = qrencoder.QRCode(_fit_version(len(data), level), level)
    qr.addData(qrencoder.QR8bitByte(data))
    qr.make()
    _render(qr, scale, border).save(path, format="PNG")


def ensure_decoder() -> Path:
    """Install the jsqr helper's npm dependencies if they are missing."""
    script = _HELPER_DIR / "decode.js"
    if not script.exists():
        raise QrReadError(f"QR decode helper missing at {script}")
    if not (_HELPER_DIR / "node_modules" / "jsqr").exists():
        log.info("installing QR decoder dependencies into %s", _HELPER_DIR)
        npm = shutil.which("npm")
        if npm is None:
            raise QrReadError("npm is required to set up the QR decode helper")
        result = subprocess.run(
            [npm, "install", "--no-audit", "--no-fund"],
            cwd=_HELPER_DIR,
            capture_output=True,
            text=True,
        )
        if result.returncode != 0:
            raise QrReadError(f"npm install failed: {result.stderr.strip()}")
    return script


def read_qr_many(paths: list[str | Path]) -> list[bytes]:
    """Decode one QR symbol from each image, in one helper invocation."""
    script = ensure_decoder()
    node = shutil.which("node")
    if node is None:
        raise QrReadError("node is required to decode QR images")
    requests = []
    for path in paths:
        try:
            image = Image.open(path).convert("RGBA")
        except OSError as exc:
            raise QrReadError(f"cannot read image {path}: {exc}")
        requests.append(
            json.dumps(
                {
                    "w": image.width,
                    "h": image.height,
                    "rgba": base64.b64encode(image.tobytes()).decode(),
                }
            )
        )
    result = subprocess.run(
        [node, str(script)],
        input="\n".join(requests) + "\n",
        capture_output=True,
        text=True,
    )
    if result.returncode != 0:
        raise QrReadError(f"QR decode helper failed: {result.stderr.strip()}")
    lines = result.stdout.strip().splitlines()
    if len(lines) != len(paths):
        raise QrReadError("QR decode helper returned an unexpected response")
    out = []
    for path, line in zip(paths, lines):
        response = json.loads(line)
        if not response["ok"]:
            raise QrReadError(f"{path}: {response['error']}")
        out.append(base64.b64decode(response["data"]))
    return out


def read_qr(path: str | Path) -> bytes:
    """Return the exact bytes embedded in the image's QR symbol."""
    return read_qr_many([path])[0]
