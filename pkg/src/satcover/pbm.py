"""Plain (P1) and raw (P4) PBM bitmap reading and writing.

Foreground pixels are the 1-bits.  Coordinates are image coordinates:
origin top-left, x rightward, y downward, row-major storage.
"""

from __future__ import annotations

from dataclasses import dataclass

from .paths import Point


class PbmError(ValueError):
    """Malformed PBM header or truncated pixel data."""


@dataclass(frozen=True)
class BinaryImage:
    width: int
    height: int
    foreground: frozenset[Point]

    def __post_init__(self):
        for x, y in self.foreground:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"foreground pixel ({x},{y}) outside {self.width}x{self.height}")

    def __contains__(self, p: Point) -> bool:
        return p in self.foreground


def _tokens(data: bytes):
    """PBM tokens: whitespace separated, '#' comments run to end of line."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i:i + 1]
        if c == b"#":
            while i < n and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < n and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
                j += 1
            yield i, data[i:j]
            i = j


def load_pbm(data: bytes) -> BinaryImage:
    if not isinstance(data, (bytes, bytearray)):
        raise PbmError("load_pbm expects bytes")
    toks = _tokens(bytes(data))
    try:
        _, magic = next(toks)
    except StopIteration:
        raise PbmError("empty file") from None
    if magic not in (b"P1", b"P4"):
        raise PbmError(f"unsupported magic {magic!r} (want P1 or P4)")
    dims = []
    for _ in range(2):
        try:
            pos, tok = next(toks)
        except StopIteration:
            raise PbmError("truncated header: missing dimensions") from None
        try:
            dims.append(int(tok))
        except ValueError:
            raise PbmError(f"bad dimension token {tok!r}") from None
        last_pos, last_tok = pos, tok
    width, height = dims
    if width <= 0 or height <= 0:
        raise PbmError(f"dimensions must be positive, got {width}x{height}")

    fg = set()
    if magic == b"P1":
        count = 0
        for _, tok in toks:
            for ch in tok.decode("ascii", "replace"):
                if ch not in "01":
                    raise PbmError(f"P1 pixel must be 0 or 1, got {ch!r}")
                if count >= width * height:
                    raise PbmError("too many pixels")
                if ch == "1":
                    fg.add((count % width, count // width))
                count += 1
        if count != width * height:
            raise PbmError(f"expected {width * height} pixels, got {count}")
    else:
        # raw rows start after the single whitespace byte ending the header
        start = last_pos + len(last_tok)
        if start >= len(data) or not data[start:start + 1].isspace():
            raise PbmError("P4 header must end with one whitespace byte")
        start += 1
        row_bytes = (width + 7) // 8
        need = row_bytes * height
        raw = data[start:start + need]
        if len(raw) < need:
            raise PbmError(f"truncated raster: need {need} bytes, have {len(raw)}")
        for y in range(height):
            row = raw[y * row_bytes:(y + 1) * row_bytes]
            for x in range(width):
                if row[x >> 3] & (0x80 >> (x & 7)):
                    fg.add((x, y))
    return BinaryImage(width, height, frozenset(fg))


def dump_p1(img: BinaryImage) -> bytes:
    lines = [b"P1", f"{img.width} {img.height}".encode()]
    for y in range(img.height):
        lines.append(b" ".join(b"1" if (x, y) in img.foreground else b"0" for x in range(img.width)))
    return b"\n".join(lines) + b"\n"


def dump_p4(img: BinaryImage) -> bytes:
    row_bytes = (img.width + 7) // 8
    out = bytearray(f"P4\n{img.width} {img.height}\n".encode())
    for y in range(img.height):
        row = bytearray(row_bytes)
        for x in range(img.width):
            if (x, y) in img.foreground:
                row[x >> 3] |= 0x80 >> (x & 7)
        out += row
    return bytes(out)


def image_from_ascii(art: str) -> BinaryImage:
    """Build an image from lines of '.'/'#' characters (test fixtures)."""
    rows = [line for line in art.splitlines() if line.strip()]
    width = max(len(r) for r in rows)
    fg = {(x, y) for y, row in enumerate(rows) for x, ch in enumerate(row) if ch == "#"}
    return BinaryImage(width, len(rows), frozenset(fg))
