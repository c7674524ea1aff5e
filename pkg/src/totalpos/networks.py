"""Weighted planar directed networks keyed by (column, level).

Every edge strictly increases column, so the graph is acyclic by
construction and the weight matrix is computed by one dynamic-programming
sweep per source, never by path enumeration.  Path enumeration is kept
separately as the small-instance oracle for the determinant =
disjoint-collection-sum identity, which this module guarantees only for
the built-in constructions (the three-section network and the grid).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .errors import EnumerationBudgetError, NetworkFormatError
from .matrices import ExactMatrix, MinorQuery
from .scalars import format_rational, parse_rational

__all__ = [
    "PlanarNetwork",
    "PathCollection",
    "weight_matrix",
    "iter_paths",
    "count_paths",
    "lgv_oracle_minor",
    "find_positive_collection",
    "build_grid",
    "export_dot",
    "export_json",
    "import_json",
]

Vertex = tuple[int, int]  # (column, level)


def _as_vertex(v) -> Vertex:
    c, l = v
    if isinstance(c, bool) or isinstance(l, bool):
        raise ValueError("vertex coordinates must be integers")
    if not isinstance(c, int) or not isinstance(l, int):
        raise ValueError(f"vertex coordinates must be integers: {(c, l)!r}")
    return (c, l)


class PlanarNetwork:
    """Immutable weighted DAG with ordered source and sink boundaries."""

    __slots__ = ("vertices", "edges", "sources", "sinks", "_adj")

    def __init__(self, vertices, edges, sources, sinks):
        vset = {_as_vertex(v) for v in vertices}
        norm_edges = []
        seen = set()
        for tail, head, w in edges:
            tail, head = _as_vertex(tail), _as_vertex(head)
            if tail not in vset or head not in vset:
                raise ValueError(f"edge endpoint not a vertex: {tail} -> {head}")
            if head[0] <= tail[0]:
                raise ValueError(
                    f"edge must strictly increase column: {tail} -> {head}"
                )
            if (tail, head) in seen:
                raise ValueError(f"duplicate edge: {tail} -> {head}")
            seen.add((tail, head))
            norm_edges.append((tail, head, Fraction(w)))
        src = tuple(_as_vertex(v) for v in sources)
        snk = tuple(_as_vertex(v) for v in sinks)
        for name, seq in (("sources", src), ("sinks", snk)):
            if not seq:
                raise ValueError(f"{name} must be nonempty")
            if any(v not in vset for v in seq):
                raise ValueError(f"{name} must be vertices of the network")
            if any(a[1] >= b[1] for a, b in zip(seq, seq[1:])):
                raise ValueError(f"{name} must strictly increase in level")
        object.__setattr__(self, "vertices", tuple(sorted(vset)))
        object.__setattr__(self, "edges", tuple(sorted(norm_edges)))
        object.__setattr__(self, "sources", src)
        object.__setattr__(self, "sinks", snk)
        adj: dict[Vertex, list[tuple[Vertex, Fraction]]] = {}
        for tail, head, w in self.edges:
            adj.setdefault(tail, []).append((head, w))
        object.__setattr__(self, "_adj", {k: tuple(v) for k, v in adj.items()})

    def __setattr__(self, name, value):
        raise AttributeError("PlanarNetwork is immutable")

    @property
    def adjacency(self) -> dict:
        return self._adj

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlanarNetwork):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.sources == other.sources
            and self.sinks == other.sinks
        )

    def __hash__(self):
        return hash((self.vertices, self.edges, self.sources, self.sinks))

    def __repr__(self):
        return (
            f"PlanarNetwork({len(self.vertices)} vertices, {len(self.edges)} edges, "
            f"{len(self.sources)} sources, {len(self.sinks)} sinks)"
        )


def weight_matrix(net: PlanarNetwork) -> ExactMatrix:
    """Entry (i, j) is the weight sum over source-i -> sink-j paths."""
    zero = Fraction(0)
    rows = []
    for s in net.sources:
        dp: dict[Vertex, Fraction] = {s: Fraction(1)}
        for v in net.vertices:  # sorted by column, and edges only go forward
            val = dp.get(v)
            if not val:
                continue
            for head, w in net.adjacency.get(v, ()):
                if w:
                    dp[head] = dp.get(head, zero) + val * w
        rows.append([dp.get(t, zero) for t in net.sinks])
    return ExactMatrix.from_rows(rows)


def count_paths(net: PlanarNetwork, src: Vertex, dst: Vertex) -> int:
    """Number of directed paths, zero-weight edges included."""
    dp: dict[Vertex, int] = {src: 1}
    for v in net.vertices:
        val = dp.get(v)
        if not val:
            continue
        for head, _ in net.adjacency.get(v, ()):
            dp[head] = dp.get(head, 0) + val
    return dp.get(dst, 0)


def iter_paths(
    net: PlanarNetwork,
    src: Vertex,
    dst: Vertex,
    edge_ok: Optional[Callable[[Vertex, Vertex, Fraction], bool]] = None,
) -> Iterator[tuple[tuple[Vertex, ...], Fraction]]:
    """Yield (vertex tuple, weight product) for every src -> dst path."""
    if src not in net.adjacency and src != dst:
        return
    limit_col = dst[0]
    stack_path: list[Vertex] = [src]

    def rec(v: Vertex, weight: Fraction):
        if v == dst:
            yield tuple(stack_path), weight
            return
        if v[0] >= limit_col:
            return
        for head, w in net.adjacency.get(v, ()):
            if edge_ok is not None and not edge_ok(v, head, w):
                continue
            stack_path.append(head)
            yield from rec(head, weight * w)
            stack_path.pop()

    yield from rec(src, Fraction(1))


def _boundary_pairs(
    net: PlanarNetwork, rows: Sequence[int], cols: Sequence[int]
) -> list[tuple[Vertex, Vertex]]:
    query = MinorQuery(tuple(rows), tuple(cols))
    if not query.rows:
        raise ValueError("query must select at least one source/sink pair")
    if query.rows[-1] > len(net.sources) or query.cols[-1] > len(net.sinks):
        raise ValueError("query indices exceed the boundary size")
    return [
        (net.sources[i - 1], net.sinks[j - 1]) for i, j in zip(query.rows, query.cols)
    ]


def lgv_oracle_minor(
    net: PlanarNetwork,
    rows: Sequence[int],
    cols: Sequence[int],
    *,
    budget: int = 10**7,
) -> Fraction:
    """Sum of weights over vertex-disjoint path collections, r-th selected
    source to r-th selected sink, by brute-force enumeration.

    The product of per-pair path counts must stay within the budget.
    """
    pairs = _boundary_pairs(net, rows, cols)
    # Zero-weight edges contribute nothing to any collection; prune them so
    # the enumeration budget reflects paths that can actually matter.
    pruned = PlanarNetwork(
        net.vertices,
        [(t, h, w) for (t, h, w) in net.edges if w != 0],
        net.sources,
        net.sinks,
    )
    product = 1
    for s, t in pairs:
        product *= count_paths(pruned, s, t)
        if product > budget:
            raise EnumerationBudgetError(
                f"path-count product exceeds enumeration budget {budget}"
            )
    if product == 0:
        return Fraction(0)
    path_lists = [
        [(frozenset(p), w) for p, w in iter_paths(pruned, s, t)] for s, t in pairs
    ]
    total = Fraction(0)
    used: set[Vertex] = set()

    def rec(r: int, weight: Fraction):
        nonlocal total
        if r == len(path_lists):
            total += weight
            return
        for pset, w in path_lists[r]:
            if used.isdisjoint(pset):
                used.update(pset)
                rec(r + 1, weight * w)
                used.difference_update(pset)

    rec(0, Fraction(1))
    return total


@dataclass(frozen=True)
class PathCollection:
    """Vertex-disjoint paths, one per selected boundary pair."""

    paths: tuple[tuple[Vertex, ...], ...]
    weight: Fraction

    def to_json_dict(self) -> dict:
        return {
            "paths": [[[c, l] for (c, l) in p] for p in self.paths],
            "weight": format_rational(self.weight),
        }


def find_positive_collection(
    net: PlanarNetwork,
    rows: Sequence[int],
    cols: Sequence[int],
    *,
    budget: int = 10**6,
) -> Optional[PathCollection]:
    """First vertex-disjoint collection along positive-weight edges, or
    None when none exists.  The budget caps visited search states.
    """
    pairs = _boundary_pairs(net, rows, cols)
    steps = 0
    used: set[Vertex] = set()
    out_paths: list[tuple[Vertex, ...]] = []

    def route(r: int) -> bool:
        nonlocal steps
        if r == len(pairs):
            return True
        src, dst = pairs[r]
        if src in used or dst in used:
            return False
        limit_col = dst[0]
        path: list[Vertex] = [src]

        def walk(v: Vertex) -> bool:
            nonlocal steps
            steps += 1
            if steps > budget:
                raise EnumerationBudgetError(
                    f"positive-collection search exceeded budget {budget}"
                )
            if v == dst:
                used.update(path)
                out_paths.append(tuple(path))
                if route(r + 1):
                    return True
                out_paths.pop()
                used.difference_update(path)
                return False
            if v[0] >= limit_col:
                return False
            for head, w in net.adjacency.get(v, ()):
                if w > 0 and head not in used:
                    path.append(head)
                    if walk(head):
                        return True
                    path.pop()
            return False

        return walk(src)

    if route(0):
        weight = Fraction(1)
        for p in out_paths:
            for a, b in zip(p, p[1:]):
                for head, w in net.adjacency[a]:
                    if head == b:
                        weight *= w
                        break
        return PathCollection(tuple(out_paths), weight)
    return None


def build_grid(grid_size: int, boundary_size: int) -> PlanarNetwork:
    """Unit-weight monotone grid with the staircase boundary.

    Grid points (x, y), 1 <= x, y <= grid_size+1, with unit steps in x
    and in y; source i is (1, i) and sink i is (grid_size - i + 2,
    grid_size + 1).  Embedded with column = x + y and level = y - x so
    that every edge strictly increases column.
    """
    if grid_size < 1:
        raise ValueError("grid_size must be >= 1")
    if not 1 <= boundary_size <= grid_size + 1:
        raise ValueError("boundary_size must be between 1 and grid_size + 1")
    side = grid_size + 1
    vertices = [(x + y, y - x) for x in range(1, side + 1) for y in range(1, side + 1)]
    edges = []
    for x in range(1, side + 1):
        for y in range(1, side + 1):
            v = (x + y, y - x)
            if x < side:
                edges.append((v, (x + 1 + y, y - x - 1), 1))
            if y < side:
                edges.append((v, (x + y + 1, y + 1 - x), 1))
    sources = [(1 + i, i - 1) for i in range(1, boundary_size + 1)]
    sinks = [(2 * grid_size + 3 - i, i - 1) for i in range(1, boundary_size + 1)]
    return PlanarNetwork(vertices, edges, sources, sinks)


def _vertex_name(v: Vertex) -> str:
    return f"c{v[0]}_l{v[1]}"


def export_dot(net: PlanarNetwork) -> str:
    """Deterministic DOT text; edge labels carry explicit numerator/denominator."""
    lines = ["digraph {"]
    for v in net.vertices:
        lines.append(f'  "{_vertex_name(v)}";')
    for tail, head, w in net.edges:
        label = f"{w.numerator}/{w.denominator}"
        lines.append(
            f'  "{_vertex_name(tail)}" -> "{_vertex_name(head)}" [label="{label}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(net: PlanarNetwork) -> str:
    data = {
        "vertices": [{"column": c, "level": l} for (c, l) in net.vertices],
        "edges": [
            {"from": [t[0], t[1]], "to": [h[0], h[1]], "weight": format_rational(w)}
            for (t, h, w) in net.edges
        ],
        "sources": [[c, l] for (c, l) in net.sources],
        "sinks": [[c, l] for (c, l) in net.sinks],
    }
    return json.dumps(data, indent=2)


def _take_vertex(value, where: str) -> Vertex:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or any(isinstance(x, bool) or not isinstance(x, int) for x in value)
    ):
        raise NetworkFormatError(f"{where}: expected [column, level] integers")
    return (value[0], value[1])


def import_json(text: str) -> tuple[PlanarNetwork, tuple[str, ...]]:
    """Parse a network; returns (network, warnings).

    Warnings flag legal but non-canonical weights (e.g. "2/4"), which are
    normalized.  Malformed input raises NetworkFormatError with the
    position (line/column for syntax, JSON path for schema).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkFormatError(
            f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(data, dict):
        raise NetworkFormatError("top level: expected an object")
    required = ("vertices", "edges", "sources", "sinks")
    for key in required:
        if key not in data:
            raise NetworkFormatError(f"top level: missing key {key!r}")
    for key in data:
        if key not in required:
            raise NetworkFormatError(f"top level: unexpected key {key!r}")
    if not isinstance(data["vertices"], list):
        raise NetworkFormatError("vertices: expected a list")
    vertices = []
    for idx, item in enumerate(data["vertices"]):
        where = f"vertices[{idx}]"
        if not isinstance(item, dict) or set(item) != {"column", "level"}:
            raise NetworkFormatError(f"{where}: expected {{column, level}}")
        c, l = item["column"], item["level"]
        if any(isinstance(x, bool) or not isinstance(x, int) for x in (c, l)):
            raise NetworkFormatError(f"{where}: column/level must be integers")
        vertices.append((c, l))
    if not isinstance(data["edges"], list):
        raise NetworkFormatError("edges: expected a list")
    warnings = []
    edges = []
    for idx, item in enumerate(data["edges"]):
        where = f"edges[{idx}]"
        if not isinstance(item, dict) or set(item) != {"from", "to", "weight"}:
            raise NetworkFormatError(f"{where}: expected {{from, to, weight}}")
        tail = _take_vertex(item["from"], f"{where}.from")
        head = _take_vertex(item["to"], f"{where}.to")
        if not isinstance(item["weight"], str):
            raise NetworkFormatError(f"{where}.weight: expected a string")
        try:
            value, canonical = parse_rational(item["weight"])
        except ValueError as e:
            raise NetworkFormatError(f"{where}.weight: {e}") from None
        if not canonical:
            warnings.append(
                f"{where}.weight: {item['weight']!r} normalized to "
                f"{format_rational(value)!r}"
            )
        edges.append((tail, head, value))
    for key in ("sources", "sinks"):
        if not isinstance(data[key], list):
            raise NetworkFormatError(f"{key}: expected a list")
    sources = [
        _take_vertex(v, f"sources[{i}]") for i, v in enumerate(data["sources"])
    ]
    sinks = [_take_vertex(v, f"sinks[{i}]") for i, v in enumerate(data["sinks"])]
    try:
        net = PlanarNetwork(vertices, edges, sources, sinks)
    except ValueError as e:
        raise NetworkFormatError(str(e)) from None
    return net, tuple(warnings)
