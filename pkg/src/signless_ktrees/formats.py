"""JSON and graph6 interchange for :class:`Graph`.

JSON form: ``{"n": 4, "edges": [[0, 1], [1, 2]]}`` with ``u < v`` and the
edge list sorted. graph6 follows the usual bit-packed upper triangle with
printable bytes offset by 63.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import GraphError
from .graph import Graph


def to_dict(g: Graph) -> dict[str, Any]:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def from_dict(obj: dict[str, Any]) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph object: {exc}") from exc
    return Graph(n, edges)


def to_json(g: Graph) -> str:
    return json.dumps(to_dict(g), separators=(",", ":"))


def from_json(text: str) -> Graph:
    return from_dict(json.loads(text))


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise GraphError(f"graph6 cannot encode n={n}")


def to_graph6(g: Graph) -> bytes:
    """Header-free graph6 bytes (no trailing newline)."""
    masks = g.masks
    bits = [masks[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + (b[0] << 5 | b[1] << 4 | b[2] << 3 | b[3] << 2 | b[4] << 1 | b[5])
        for b in (bits[i:i + 6] for i in range(0, len(bits), 6))
    )
    return _encode_n(g.n) + body


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data or any(c < 63 or c > 126 for c in data):
        raise GraphError("graph6 data must be non-empty printable bytes 63..126")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise GraphError("unsupported graph6 size header")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}")
    bits = [(c - 63) >> s & 1 for c in body for s in range(5, -1, -1)]
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    if any(bits[need:]):
        raise GraphError("graph6 padding bits must be zero")
    return Graph(n, edges)
