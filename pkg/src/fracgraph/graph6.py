"""graph6 encoding: 6 bits per printable byte (offset 63), upper triangle
read column by column, big-endian within each byte."""
from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import ParseError
from .graph import Graph


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: Graph) -> str:
    """Encode ``g`` as labelled (no canonicalisation, no trailing newline)."""
    n = g.n
    masks = g.masks
    bits = []
    for j in range(1, n):
        mj = masks[j]
        for i in range(j):
            bits.append(mj >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = v << 1 | b
        body.append(chr(63 + v))
    return _encode_n(n) + "".join(body)


def read_graph6(line: str | bytes) -> Graph:
    if isinstance(line, bytes):
        try:
            line = line.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError("non-ASCII byte in graph6", exc.start) from None
    line = line.rstrip("\r\n")
    if line.startswith(">>graph6<<"):
        line = line[10:]
    if not line:
        raise ParseError("empty graph6 string", 0)
    for i, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", i)
    vals = [ord(ch) - 63 for ch in line]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise ParseError("truncated vertex count", len(vals))
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        pos = 8
    else:
        if len(vals) < 4:
            raise ParseError("truncated vertex count", len(vals))
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(vals) - pos != need:
        raise ParseError(
            f"expected {need} edge bytes for n={n}, found {len(vals) - pos}",
            min(len(vals), pos + need),
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[pos + k // 6]
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    tail = nbits % 6
    if tail and vals[-1] & ((1 << (6 - tail)) - 1):
        raise ParseError("nonzero padding bits", len(vals) - 1)
    return Graph(n, edges)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield read_graph6(line)


def read_graph6_file(path) -> list[Graph]:
    with open(path) as fh:
        return list(read_graph6_lines(fh))


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + "\n")
