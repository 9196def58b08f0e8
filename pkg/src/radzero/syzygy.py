"""Syzygies of semisimple modules over a radical-square-zero algebra.

A semisimple module is a plain ``dict`` mapping vertex to multiplicity, with
no zero entries.  Python ints are unbounded, so multiplicities stay exact.

On the right side the projective cover of ``S_i`` has radical
``sum over arrows j -> i of S_j^tail_mult``; the left side is the same walk on
the opposite quiver, i.e. forward along arrows with head multiplicities.
"""

from __future__ import annotations

import enum
from functools import total_ordering
from typing import Union

from .quiver import ValuedQuiver

SimpleMultiset = dict[int, int]

PATH_BUDGET = 10**6


class Side(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


@total_ordering
class _Infinity:
    """Top element of the extended naturals; compares above every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("radzero.infinity")

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "∞"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
ExtendedNat = Union[int, _Infinity]


class PathBudgetExceeded(RuntimeError):
    pass


def _check_support(q: ValuedQuiver, m: SimpleMultiset) -> None:
    for v in m:
        q.check_vertex(v)


def syzygy_step(q: ValuedQuiver, side: Side, m: SimpleMultiset) -> SimpleMultiset:
    """First syzygy of the semisimple module ``m``.

    Projective simples (right: sources, left: sinks) have no arrows to walk and
    vanish on their own.
    """
    _check_support(q, m)
    out: SimpleMultiset = {}
    if side is Side.RIGHT:
        for i, count in m.items():
            for a in q.in_arrows[i]:
                out[a.tail] = out.get(a.tail, 0) + a.val.tail_mult * count
    else:
        for j, count in m.items():
            for a in q.out_arrows[j]:
                out[a.head] = out.get(a.head, 0) + a.val.head_mult * count
    return {v: c for v, c in sorted(out.items()) if c}


def syzygy_power(q: ValuedQuiver, side: Side, v: int, n: int) -> SimpleMultiset:
    q.check_vertex(v)
    if n < 0:
        raise ValueError("syzygy order must be non-negative")
    m = {v: 1}
    for _ in range(n):
        if not m:
            break
        m = syzygy_step(q, side, m)
    return m


def syzygy_power_oracle(
    q: ValuedQuiver, side: Side, v: int, n: int, budget: int = PATH_BUDGET
) -> SimpleMultiset:
    """``syzygy_power`` by enumerating every length-``n`` path ending (right) or
    starting (left) at ``v`` and multiplying the valuations along it."""
    q.check_vertex(v)
    if n < 0:
        raise ValueError("syzygy order must be non-negative")
    if side is Side.RIGHT:
        steps = {u: [(a.tail, a.val.tail_mult) for a in arrs] for u, arrs in q.in_arrows.items()}
    else:
        steps = {u: [(a.head, a.val.head_mult) for a in arrs] for u, arrs in q.out_arrows.items()}

    out: SimpleMultiset = {}
    paths = 0
    stack = [(v, n, 1)]
    pop, push = stack.pop, stack.append
    while stack:
        u, remaining, product = pop()
        if remaining == 0:
            paths += 1
            if paths > budget:
                raise PathBudgetExceeded(f"more than {budget} paths of length {n}")
            out[u] = out.get(u, 0) + product
            continue
        for w, weight in steps[u]:
            push((w, remaining - 1, product * weight))
    return dict(sorted(out.items()))


def pdim_simple(q: ValuedQuiver, side: Side, v: int) -> ExtendedNat:
    """Projective dimension of the simple at ``v``.

    A nonzero ``n``-th syzygy with ``n = |V|`` needs a path of ``|V|`` arrows,
    which repeats a vertex, so the resolution never stops.
    """
    q.check_vertex(v)
    support = {v}
    last = 0
    for n in range(1, q.vertex_count + 1):
        support = set(syzygy_step(q, side, dict.fromkeys(support, 1)))
        if not support:
            return last
        last = n
    return INFINITY


def total_multiplicity(m: SimpleMultiset) -> int:
    return sum(m.values())
