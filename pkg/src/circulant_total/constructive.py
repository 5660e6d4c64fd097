"""Explicit total 5-colourings of C_n(1, 3).

Orders n = 5p + 9q are coloured by repeating two fixed blocks; the remaining
Type I orders (11, 16, 21, 22, 26, 31) use stored words. The five orders
7, 8, 12, 13 and 17 have no 5-colouring and are handed to the exact solver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colouring import TotalColouring, verify
from .graph import build

TYPE_II_ORDERS = frozenset({7, 8, 12, 13, 17})


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class BlockPattern:
    vertex_a: str = "24351"
    e1_a: str = "12123"
    e3_a: str = "45534"
    vertex_b: str = "212534121"
    e1_b: str = "453453453"
    e3_b: str = "121212534"

    def expand(self, p: int, q: int) -> tuple[str, str, str]:
        return (
            self.vertex_a * p + self.vertex_b * q,
            self.e1_a * p + self.e1_b * q,
            self.e3_a * p + self.e3_b * q,
        )


BLOCKS = BlockPattern()

SPORADIC: dict[int, tuple[str, str, str]] = {
    11: ("25354543431", "12121212123", "43435354545"),
    16: ("2453534242353524", "1212121314141415", "4345453525232353"),
    21: (
        "234345453512345123451",
        "121212121231213451323",
        "453534345454532214545",
    ),
    22: (
        "2545353434545353124341",
        "1212121212121212312124",
        "3434545353434545453535",
    ),
    26: (
        "24535343454535141252313421",
        "12121212121212323434545145",
        "43454535343454515121232353",
    ),
    31: (
        "2343454535123451234512345123451",
        "1212121212312134513231213451323",
        "4535343454545322145454532214545",
    ),
}


def _check_table() -> None:
    for n, words in SPORADIC.items():
        c = TotalColouring.from_words(*words, k=5)
        if c.n != n or not verify(build(n), c).ok:
            raise ConstructionError(f"stored colouring for n={n} is not a proper total 5-colouring")


if __debug__:
    _check_table()


class TypeII:
    """Marker returned by ``construct`` for orders without a total 5-colouring."""

    def __init__(self, n: int) -> None:
        self.n = n

    def __repr__(self) -> str:
        return f"TypeII(n={self.n})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TypeII) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("TypeII", self.n))


def decompose_5p9q(n: int) -> tuple[int, int] | None:
    """Nonnegative (p, q) with 5p + 9q = n and q as small as possible."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    for q in range(5):
        rest = n - 9 * q
        if rest < 0:
            return None
        if rest % 5 == 0:
            return rest // 5, q
    return None


def colour_5p9q(p: int, q: int) -> TotalColouring:
    if p < 0 or q < 0:
        raise ConstructionError("p and q must be nonnegative")
    if 5 * p + 9 * q < 7:
        raise ConstructionError(f"5p + 9q = {5 * p + 9 * q} is below 7")
    return TotalColouring.from_words(*BLOCKS.expand(p, q), k=5)


def colour_sporadic(n: int) -> TotalColouring:
    if n not in SPORADIC:
        raise ConstructionError(f"no stored 5-colouring for n={n}")
    return TotalColouring.from_words(*SPORADIC[n], k=5)


def construct(n: int) -> TotalColouring | TypeII:
    if n < 7:
        raise ConstructionError("C_n(1,3) needs n >= 7")
    if n in TYPE_II_ORDERS:
        return TypeII(n)
    pq = decompose_5p9q(n)
    c = colour_5p9q(*pq) if pq is not None else colour_sporadic(n)
    if __debug__ and not verify(build(n), c).ok:
        raise ConstructionError(f"construction for n={n} failed verification")
    return c
