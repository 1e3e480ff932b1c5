"""Device coupling graph: qubit count, undirected edges, drawing coordinates.

Ships a programmatic 127-qubit heavy-hex layout matching the published
Eagle-class arrangement (7 rows of 14/15 qubits joined by 4 spacer qubits
per gap, alternating attachment columns).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class DeviceTopology:
    num_qubits: int
    edges: tuple[tuple[int, int], ...]  # normalized (a < b), sorted, no dups
    coords: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise TopologyError("device needs at least one qubit")
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise TopologyError(f"self-loop on qubit {a}")
            if not (0 <= a < self.num_qubits and 0 <= b < self.num_qubits):
                raise TopologyError(f"edge ({a},{b}) out of range")
            if a > b:
                raise TopologyError(f"edge ({a},{b}) not normalized")
            if (a, b) in seen:
                raise TopologyError(f"duplicate edge ({a},{b})")
            seen.add((a, b))
        if self.coords is not None and len(self.coords) != self.num_qubits:
            raise TopologyError("coords length must equal qubit count")

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.num_qubits)]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return tuple(tuple(sorted(n)) for n in nbrs)

    def neighbors(self, qubit: int) -> list[int]:
        """Adjacent qubits in ascending order."""
        if not 0 <= qubit < self.num_qubits:
            raise TopologyError(f"qubit {qubit} out of range")
        return list(self.adjacency[qubit])

    def shortest_path(self, a: int, b: int) -> list[int]:
        """BFS path from a to b inclusive; neighbors expand in ascending index
        order so ties resolve deterministically.  Empty list if disconnected."""
        for q in (a, b):
            if not 0 <= q < self.num_qubits:
                raise TopologyError(f"qubit {q} out of range")
        if a == b:
            return [a]
        parent: dict[int, int] = {a: a}
        queue = deque([a])
        while queue:
            cur = queue.popleft()
            for nxt in self.adjacency[cur]:
                if nxt in parent:
                    continue
                parent[nxt] = cur
                if nxt == b:
                    path = [b]
                    while path[-1] != a:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(nxt)
        return []

    def to_payload(self) -> dict:
        return {
            "num_qubits": self.num_qubits,
            "edges": [list(e) for e in self.edges],
            "coords": ([list(c) for c in self.coords]
                       if self.coords is not None else None),
        }


def load_topology(source: str | dict) -> DeviceTopology:
    """Build a validated topology from JSON text or an already-parsed dict."""
    doc = json.loads(source) if isinstance(source, str) else source
    if not isinstance(doc, dict) or "num_qubits" not in doc or "edges" not in doc:
        raise TopologyError("topology JSON needs 'num_qubits' and 'edges'")
    normalized = []
    seen = set()
    for pair in doc["edges"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise TopologyError(f"malformed edge {pair!r}")
        a, b = int(pair[0]), int(pair[1])
        key = (min(a, b), max(a, b))
        if key in seen:
            raise TopologyError(f"duplicate edge ({a},{b})")
        seen.add(key)
        normalized.append(key)
    coords = doc.get("coords")
    coords_t = (tuple((float(x), float(y)) for x, y in coords)
                if coords is not None else None)
    return DeviceTopology(int(doc["num_qubits"]), tuple(sorted(normalized)), coords_t)


def neighbors(topology: DeviceTopology, qubit: int) -> list[int]:
    return topology.neighbors(qubit)


def shortest_path(topology: DeviceTopology, a: int, b: int) -> list[int]:
    return topology.shortest_path(a, b)


def heavy_hex_127() -> DeviceTopology:
    """127-qubit heavy-hex lattice: 7 rows (14, 15x5, 14 qubits) with 4
    spacer qubits per row gap; spacer columns alternate {0,4,8,12} and
    {2,6,10,14}.  144 edges, connected, max degree 3."""
    row_cols = [list(range(14))] + [list(range(15)) for _ in range(5)] \
        + [list(range(1, 15))]
    next_id = 0
    row_ids: list[dict[int, int]] = []
    coords: dict[int, tuple[float, float]] = {}
    edges: list[tuple[int, int]] = []

    spacer_cols = [(0, 4, 8, 12), (2, 6, 10, 14)]
    pending_spacers: list[tuple[int, int]] = []  # (spacer id, column)
    for row, cols in enumerate(row_cols):
        ids = {}
        for col in cols:
            ids[col] = next_id
            coords[next_id] = (float(col), float(2 * row))
            next_id += 1
        row_ids.append(ids)
        for left, right in zip(cols, cols[1:]):
            edges.append((ids[left], ids[right]))
        for spacer, col in pending_spacers:
            edges.append((spacer, ids[col]))
        pending_spacers = []
        if row < len(row_cols) - 1:
            for col in spacer_cols[row % 2]:
                spacer = next_id
                coords[spacer] = (float(col), float(2 * row + 1))
                next_id += 1
                edges.append((row_ids[row][col], spacer))
                pending_spacers.append((spacer, col))

    norm = sorted((min(a, b), max(a, b)) for a, b in edges)
    coord_list = tuple(coords[i] for i in range(next_id))
    return DeviceTopology(next_id, tuple(norm), coord_list)
