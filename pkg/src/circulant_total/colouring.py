"""Total colourings of C_n(d1, d2): representation, validation, diagnostics.

A colouring is three length-n words over 1..k: the vertex word, the step-1
edge word and the chord word, with edge words indexed by the lower endpoint.
Properness is not part of the type; ``verify`` reports every clash.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import CirculantGraph, Element

FIELDS = ("n", "k", "vertex_colours", "e1_colours", "e3_colours")


class ColouringFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TotalColouring:
    n: int
    k: int
    vertex: tuple[int, ...]
    e1: tuple[int, ...]
    e3: tuple[int, ...]

    def __post_init__(self) -> None:
        for name in ("vertex", "e1", "e3"):
            word = tuple(getattr(self, name))
            object.__setattr__(self, name, word)
            if len(word) != self.n:
                raise ColouringFormatError(f"{name} word has length {len(word)}, expected {self.n}")
            bad = [c for c in word if not (isinstance(c, int) and 1 <= c <= self.k)]
            if bad:
                raise ColouringFormatError(f"{name} word has colours outside 1..{self.k}: {bad[:5]}")

    @classmethod
    def from_words(cls, vertex: str, e1: str, e3: str, k: int | None = None) -> "TotalColouring":
        words = [vertex.strip(), e1.strip(), e3.strip()]
        for w in words:
            if not w.isdigit() or "0" in w:
                raise ColouringFormatError(f"not a colour word over 1..9: {w!r}")
        tracks = [tuple(int(ch) for ch in w) for w in words]
        if k is None:
            k = max(max(t) for t in tracks)
        return cls(len(tracks[0]), k, *tracks)

    @classmethod
    def from_flat(cls, n: int, k: int, colours: Sequence[int]) -> "TotalColouring":
        return cls(n, k, tuple(colours[:n]), tuple(colours[n : 2 * n]), tuple(colours[2 * n : 3 * n]))

    @property
    def flat(self) -> tuple[int, ...]:
        return self.vertex + self.e1 + self.e3

    def words(self) -> tuple[str, str, str]:
        if self.k > 9:
            raise ColouringFormatError("compact format holds colours 1-9 only")
        return tuple("".join(map(str, t)) for t in (self.vertex, self.e1, self.e3))  # type: ignore[return-value]

    def to_compact(self) -> str:
        return "\n".join(self.words()) + "\n"

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "vertex_colours": list(self.vertex),
            "e1_colours": list(self.e1),
            "e3_colours": list(self.e3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), indent=2) + "\n"

    @classmethod
    def from_record(cls, rec: dict) -> "TotalColouring":
        missing = [f for f in FIELDS if f not in rec]
        if missing:
            raise ColouringFormatError(f"record lacks fields {missing}")
        return cls(rec["n"], rec["k"], rec["vertex_colours"], rec["e1_colours"], rec["e3_colours"])

    def rotated(self, r: int) -> "TotalColouring":
        """Shift every index by ``r``: element i takes the colour of element i - r."""
        r %= self.n

        def rot(t: tuple[int, ...]) -> tuple[int, ...]:
            return t[-r:] + t[:-r] if r else t

        return TotalColouring(self.n, self.k, rot(self.vertex), rot(self.e1), rot(self.e3))

    def recoloured(self, perm: dict[int, int] | Sequence[int]) -> "TotalColouring":
        """Apply a colour permutation (mapping or 1-based sequence of images)."""
        m = perm if isinstance(perm, dict) else {i + 1: c for i, c in enumerate(perm)}
        return TotalColouring(
            self.n, self.k, *(tuple(m[c] for c in t) for t in (self.vertex, self.e1, self.e3))
        )


def parse(text: str, k: int | None = None) -> TotalColouring:
    """Read either format; a leading ``{`` selects the structured record."""
    body = text.lstrip()
    if not body:
        raise ColouringFormatError("empty input")
    if body[0] == "{":
        try:
            rec = json.loads(body)
        except json.JSONDecodeError as exc:
            raise ColouringFormatError(str(exc)) from exc
        c = TotalColouring.from_record(rec)
        if k is not None and k != c.k:
            c = TotalColouring(c.n, k, c.vertex, c.e1, c.e3)
        return c
    lines = [ln.strip() for ln in body.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 3:
        raise ColouringFormatError(f"compact format needs 3 words, got {len(lines)}")
    return TotalColouring.from_words(*lines, k=k)


@dataclass(frozen=True)
class ConflictReport:
    conflicts: tuple[tuple[Element, Element], ...]

    @property
    def ok(self) -> bool:
        return not self.conflicts

    def __bool__(self) -> bool:
        return bool(self.conflicts)

    def __len__(self) -> int:
        return len(self.conflicts)

    def __iter__(self):
        return iter(self.conflicts)

    def __str__(self) -> str:
        if not self.conflicts:
            return "OK"
        return "\n".join(f"conflict {a} {b}" for a, b in self.conflicts)


def verify(g: CirculantGraph, c: TotalColouring) -> ConflictReport:
    if c.n != g.n:
        raise ValueError(f"colouring has n={c.n} but graph has n={g.n}")
    flat = c.flat
    pairs = [
        (g.element_at(i), g.element_at(j))
        for i, row in enumerate(g.conflict_table)
        for j in row
        if j > i and flat[j] == flat[i]
    ]
    return ConflictReport(tuple(pairs))


def colour_class_sizes(c: TotalColouring) -> tuple[int, ...]:
    counts = Counter(c.vertex)
    return tuple(counts.get(j, 0) for j in range(1, c.k + 1))


def parity_condition(c: TotalColouring) -> bool:
    return all(size % 2 == c.n % 2 for size in colour_class_sizes(c))


def cyclic_gaps(positions: Iterable[int], n: int) -> tuple[int, ...]:
    """Forward distances between consecutive positions around Z_n, in index order."""
    ps = sorted(set(p % n for p in positions))
    if not ps:
        raise ValueError("no positions")
    return tuple((ps[(s + 1) % len(ps)] - ps[s]) % n or n for s in range(len(ps)))


def class_gap_multiset(c: TotalColouring, j: int) -> tuple[int, ...]:
    """Sorted cyclic gaps between the vertices coloured ``j``; they sum to n."""
    members = [i for i, col in enumerate(c.vertex) if col == j]
    if not members:
        raise ValueError(f"colour {j} has no vertices")
    return tuple(sorted(cyclic_gaps(members, c.n)))


def chord_colour_count(c: TotalColouring, j: int) -> int:
    return c.e3.count(j)
