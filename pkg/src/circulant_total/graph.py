"""Circulant graphs C_n(d1, d2) and element adjacency for total colouring.

The elements of a total colouring are the n vertices and the 2n edges. Edges
are indexed by their lower endpoint: ``EDGE1`` index m is v_m v_{m+d1} and
``EDGE3`` index m is v_m v_{m+d2} (for the C_n(1, 3) family these are the
step-1 edges and the step-3 chords). Every element also has a flat id
``kind * n + index`` which the solver and the validator use internally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

#: Exact graph algorithms refuse graphs larger than this.
MAX_EXACT_ORDER = 64


class InvalidGraphError(ValueError):
    """Raised for parameters outside the admissible circulant family."""


class Kind(enum.IntEnum):
    VERTEX = 0
    EDGE1 = 1
    EDGE3 = 2


class Element(NamedTuple):
    kind: Kind
    index: int

    def __str__(self) -> str:
        return f"{self.kind.name}[{self.index}]"


def Vertex(i: int) -> Element:
    return Element(Kind.VERTEX, i)


def Edge1(i: int) -> Element:
    return Element(Kind.EDGE1, i)


def Edge3(i: int) -> Element:
    return Element(Kind.EDGE3, i)


@dataclass(frozen=True)
class CirculantGraph:
    """The 4-regular circulant C_n(d1, d2); immutable once built."""

    n: int
    d1: int = 1
    d2: int = 3

    def __post_init__(self) -> None:
        for name in ("n", "d1", "d2"):
            if not isinstance(getattr(self, name), int):
                raise InvalidGraphError(f"{name} must be an integer")
        if not 1 <= self.d1 < self.d2 <= (self.n - 1) // 2:
            raise InvalidGraphError(
                f"C_{self.n}({self.d1},{self.d2}) needs 1 <= d1 < d2 <= floor((n-1)/2)"
            )

    @property
    def offsets(self) -> tuple[int, int]:
        return (self.d1, self.d2)

    @property
    def element_count(self) -> int:
        return 3 * self.n

    def elements(self) -> Iterator[Element]:
        for kind in Kind:
            for i in range(self.n):
                yield Element(kind, i)

    def element_id(self, e: Element) -> int:
        self._check(e)
        return e.kind * self.n + e.index

    def element_at(self, flat: int) -> Element:
        kind, index = divmod(flat, self.n)
        return Element(Kind(kind), index)

    def endpoints(self, e: Element) -> tuple[int, int]:
        """Endpoint vertex indices of an edge element."""
        self._check(e)
        if e.kind is Kind.VERTEX:
            raise ValueError(f"{e} is not an edge")
        step = self.d1 if e.kind is Kind.EDGE1 else self.d2
        return e.index, (e.index + step) % self.n

    def edges(self) -> list[tuple[int, int]]:
        """All edges as vertex pairs, step-d1 edges first, each in index order."""
        return [self.endpoints(Element(kind, m)) for kind in (Kind.EDGE1, Kind.EDGE3) for m in range(self.n)]

    def neighbours(self, v: int) -> tuple[int, ...]:
        n = self.n
        return ((v + self.d1) % n, (v - self.d1) % n, (v + self.d2) % n, (v - self.d2) % n)

    def incident_edges(self, v: int) -> tuple[Element, ...]:
        n = self.n
        return (
            Edge1(v),
            Edge1((v - self.d1) % n),
            Edge3(v),
            Edge3((v - self.d2) % n),
        )

    def adjacent_elements(self, e: Element) -> frozenset[Element]:
        """Elements that may not share a colour with ``e`` (never ``e`` itself)."""
        self._check(e)
        if e.kind is Kind.VERTEX:
            return frozenset(
                [Vertex(u) for u in self.neighbours(e.index)] + list(self.incident_edges(e.index))
            )
        a, b = self.endpoints(e)
        out = {Vertex(a), Vertex(b)}
        out.update(self.incident_edges(a))
        out.update(self.incident_edges(b))
        out.discard(e)
        return frozenset(out)

    @cached_property
    def conflict_table(self) -> tuple[tuple[int, ...], ...]:
        """Flat-id adjacency lists of the total graph, sorted."""
        n, d1, d2 = self.n, self.d1, self.d2
        stars = self.stars
        rows = []
        for v in range(n):
            rows.append(sorted({(v + s) % n for s in (d1, -d1, d2, -d2)} | set(stars[v][1:])))
        for base, step in ((n, d1), (2 * n, d2)):
            for m in range(n):
                me = base + m
                rows.append(sorted((set(stars[m]) | set(stars[(m + step) % n])) - {me}))
        return tuple(tuple(r) for r in rows)

    @cached_property
    def stars(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the flat ids of the vertex and its incident edges."""
        n, d1, d2 = self.n, self.d1, self.d2
        return tuple(
            (v, *sorted((n + v, n + (v - d1) % n, 2 * n + v, 2 * n + (v - d2) % n))) for v in range(n)
        )

    def vertex_adjacency_masks(self) -> list[int]:
        return [sum(1 << u for u in self.neighbours(v)) for v in range(self.n)]

    def to_dot(self) -> str:
        lines = [f'graph "C{self.n}({self.d1},{self.d2})" {{']
        lines += [f"  v{i};" for i in range(self.n)]
        lines += [f"  v{a} -- v{b};" for a, b in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _check(self, e: Element) -> None:
        if not 0 <= e.index < self.n:
            raise ValueError(f"{e} is not an element of C_{self.n}")


def build(n: int, d1: int = 1, d2: int = 3) -> CirculantGraph:
    return CirculantGraph(n, d1, d2)


def _greedy_independent(masks: list[int], cand: int) -> int:
    size = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        size += 1
        cand &= ~(masks[v] | low)
    return size


def independence_number(g: CirculantGraph) -> int:
    """Exact maximum independent set size by branch and bound.

    Branches on a vertex of maximum remaining degree (take it / drop it);
    a subtree is cut when the chosen set plus every remaining candidate
    cannot beat the incumbent, which starts from a greedy solution.
    """
    if g.n > MAX_EXACT_ORDER:
        raise InvalidGraphError(f"independence_number limited to n <= {MAX_EXACT_ORDER}")
    masks = g.vertex_adjacency_masks()
    full = (1 << g.n) - 1
    best = _greedy_independent(masks, full)

    def search(cand: int, size: int) -> None:
        nonlocal best
        if not cand:
            if size > best:
                best = size
            return
        if size + cand.bit_count() <= best:
            return
        # vertices with no remaining neighbour can always be taken
        free = 0
        pivot, pivot_deg = -1, -1
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            deg = (masks[v] & cand).bit_count()
            if deg == 0:
                free |= low
            elif deg > pivot_deg:
                pivot, pivot_deg = v, deg
        if free:
            search(cand & ~free, size + free.bit_count())
            return
        bit = 1 << pivot
        search(cand & ~(masks[pivot] | bit), size + 1)
        search(cand & ~bit, size)

    # vertex-transitive: some maximum set contains v0
    search(full & ~(masks[0] | 1), 1)
    return best


def is_complete_bipartite_4_4(g: CirculantGraph) -> bool:
    if g.n != 8:
        return False
    masks = g.vertex_adjacency_masks()
    side = [-1] * g.n
    side[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.neighbours(v):
            if side[u] < 0:
                side[u] = 1 - side[v]
                stack.append(u)
            elif side[u] == side[v]:
                return False
    if -1 in side:
        return False
    parts = [sum(1 << v for v in range(g.n) if side[v] == s) for s in (0, 1)]
    if any(p.bit_count() != 4 for p in parts):
        return False
    return all(masks[v] == parts[1 - side[v]] for v in range(g.n))
