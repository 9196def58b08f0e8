"""Valued quivers and the graph primitives the invariant computations run on.

Vertices are the integers ``1..n``.  An arrow ``j -> i`` carries a valuation
``(head_mult, tail_mult)``, written in that order everywhere (files included).

Boolean matrices are tuples of row bitmasks: bit ``i - 1`` of row ``j - 1`` is
set when there is an arrow (or, for powers, a path) from ``j`` to ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, NamedTuple, Optional, Sequence

BoolMatrix = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Valuation:
    head_mult: int = 1
    tail_mult: int = 1

    def swapped(self) -> Valuation:
        return Valuation(self.tail_mult, self.head_mult)


@dataclass(frozen=True, order=True)
class Arrow:
    tail: int
    head: int
    val: Valuation = Valuation()

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


class VertexClass(NamedTuple):
    is_source: bool
    is_sink: bool


@dataclass(frozen=True)
class ValuedQuiver:
    """A finite valued quiver.

    Construction never fails; malformed input (bad endpoints, duplicated
    ordered pairs, zero valuations) is kept as-is and reported by
    :func:`validate`.  Arrows are stored sorted so equal quivers compare equal
    regardless of input order.
    """

    vertex_count: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))

    @classmethod
    def from_pairs(
        cls,
        vertex_count: int,
        pairs: Iterable[tuple[int, int]],
        valuations: Optional[dict[tuple[int, int], tuple[int, int]]] = None,
    ) -> ValuedQuiver:
        """Build a quiver from ``(tail, head)`` pairs; valuations default to (1,1)."""
        valuations = valuations or {}
        arrows = []
        for tail, head in pairs:
            val = Valuation(*valuations.get((tail, head), (1, 1)))
            arrows.append(Arrow(tail, head, val))
        return cls(vertex_count, tuple(arrows))

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    @cached_property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((a.tail, a.head) for a in self.arrows)

    @cached_property
    def out_arrows(self) -> dict[int, tuple[Arrow, ...]]:
        out: dict[int, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out.setdefault(a.tail, []).append(a)
        return {v: tuple(arrs) for v, arrs in out.items()}

    @cached_property
    def in_arrows(self) -> dict[int, tuple[Arrow, ...]]:
        inc: dict[int, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc.setdefault(a.head, []).append(a)
        return {v: tuple(arrs) for v, arrs in inc.items()}

    def successors(self, v: int) -> list[int]:
        return sorted({a.head for a in self.out_arrows.get(v, ())})

    def predecessors(self, v: int) -> list[int]:
        return sorted({a.tail for a in self.in_arrows.get(v, ())})

    @cached_property
    def sources(self) -> frozenset[int]:
        return frozenset(v for v in self.vertices if not self.in_arrows[v])

    @cached_property
    def sinks(self) -> frozenset[int]:
        return frozenset(v for v in self.vertices if not self.out_arrows[v])

    @cached_property
    def adjacency(self) -> BoolMatrix:
        rows = [0] * self.vertex_count
        for a in self.arrows:
            rows[a.tail - 1] |= 1 << (a.head - 1)
        return tuple(rows)

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 1 <= v <= self.vertex_count:
            raise VertexOutOfRange(v, self.vertex_count)


class VertexOutOfRange(ValueError):
    def __init__(self, vertex, vertex_count):
        super().__init__(f"vertex {vertex} is not in 1..{vertex_count}")
        self.vertex = vertex
        self.vertex_count = vertex_count


def validate(q: ValuedQuiver) -> list[str]:
    """Return every structural defect of ``q``; an empty list means well formed."""
    defects = []
    if q.vertex_count < 0:
        defects.append(f"negative vertex count {q.vertex_count}")
    seen = set()
    for a in q.arrows:
        for end in (a.tail, a.head):
            if not 1 <= end <= q.vertex_count:
                defects.append(f"endpoint {end} out of range in arrow ({a.tail},{a.head})")
        pair = (a.tail, a.head)
        if pair in seen:
            defects.append(f"duplicate pair ({a.tail},{a.head})")
        seen.add(pair)
        if a.val.head_mult < 1 or a.val.tail_mult < 1:
            defects.append(
                f"zero valuation ({a.val.head_mult},{a.val.tail_mult}) "
                f"on arrow ({a.tail},{a.head})"
            )
    return defects


def opposite(q: ValuedQuiver) -> ValuedQuiver:
    """Reverse every arrow and swap its valuation pair."""
    return ValuedQuiver(
        q.vertex_count,
        tuple(Arrow(a.head, a.tail, a.val.swapped()) for a in q.arrows),
    )


def classify_vertex(q: ValuedQuiver, v: int) -> VertexClass:
    q.check_vertex(v)
    return VertexClass(is_source=v in q.sources, is_sink=v in q.sinks)


def down_set(q: ValuedQuiver, v: int) -> frozenset[int]:
    """Vertices reachable from ``v`` by a directed path, ``v`` included."""
    q.check_vertex(v)
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in q.successors(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def down_length(q: ValuedQuiver, v: int) -> Optional[int]:
    """Longest path length starting at ``v``, or None if a cycle is reachable."""
    reach = down_set(q, v)
    graph = {u: q.successors(u) for u in reach}
    try:
        # successors are yielded before the vertex itself
        order = list(TopologicalSorter(graph).static_order())
    except CycleError:
        return None
    longest: dict[int, int] = {}
    for u in order:
        longest[u] = max((longest[w] + 1 for w in graph[u]), default=0)
    return longest[v]


# --- boolean matrices -------------------------------------------------------


def bool_identity(n: int) -> BoolMatrix:
    return tuple(1 << k for k in range(n))


def bool_mul(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    rows = []
    for row in a:
        acc = 0
        k = 0
        while row:
            if row & 1:
                acc |= b[k]
            row >>= 1
            k += 1
        rows.append(acc)
    return tuple(rows)


def bool_entry(m: BoolMatrix, j: int, i: int) -> bool:
    """Entry for the 1-based vertex pair ``(j, i)``."""
    return bool(m[j - 1] >> (i - 1) & 1)


def bool_column(m: BoolMatrix, i: int) -> frozenset[int]:
    bit = 1 << (i - 1)
    return frozenset(j + 1 for j, row in enumerate(m) if row & bit)


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return frozenset(out)


def set_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


@dataclass(frozen=True)
class BoolPowerOrbit:
    """The eventually periodic sequence ``A, A^2, ...`` of boolean powers.

    ``powers[k]`` holds ``A^(k+1)`` for ``k < preperiod + period - 1`` and
    ``A^(preperiod + period) == A^preperiod``.
    """

    preperiod: int
    period: int
    powers: tuple[BoolMatrix, ...] = field(repr=False)
    size: int = 0

    def power(self, n: int) -> BoolMatrix:
        if n < 0:
            raise ValueError("negative exponent")
        if n == 0:
            return bool_identity(self.size)
        if n >= self.preperiod:
            n = self.preperiod + (n - self.preperiod) % self.period
        return self.powers[n - 1]

    @property
    def horizon(self) -> int:
        """Largest exponent worth inspecting: every power equals one up to here."""
        return self.preperiod + self.period


def bool_power_orbit(q: ValuedQuiver) -> BoolPowerOrbit:
    a = q.adjacency
    first_seen = {a: 1}
    powers = [a]
    current = a
    n = 1
    while True:
        current = bool_mul(current, a)
        n += 1
        if current in first_seen:
            lam = first_seen[current]
            return BoolPowerOrbit(lam, n - lam, tuple(powers), q.vertex_count)
        first_seen[current] = n
        powers.append(current)


def paths_of_length(
    q: ValuedQuiver, start: int, length: int
) -> Iterable[Sequence[int]]:
    """Every directed path of exactly ``length`` arrows from ``start``, in lex order."""
    path = [start]

    def walk(u, remaining):
        if remaining == 0:
            yield tuple(path)
            return
        for w in q.successors(u):
            path.append(w)
            yield from walk(w, remaining - 1)
            path.pop()

    yield from walk(start, length)
