"""Finite posets given by their Hasse diagrams."""

from __future__ import annotations

import graphlib
import logging
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    CycleDetected,
    DuplicateElement,
    NotBounded,
    NotComparable,
    UnknownElement,
)
from .quiver import Path, Quiver

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Chain:
    """Saturated chain ``x0 < x1 < ... < xn`` (each step a cover)."""

    vertices: tuple

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def __str__(self):
        return "-".join(map(str, self.vertices))


@dataclass(frozen=True)
class Interval:
    bottom: object
    top: object
    members: frozenset
    poset: "Poset" = field(repr=False, compare=False, hash=False)


class Poset(Quiver):
    """A finite poset stored as the transitive reduction of its order.

    Construct through :func:`build_poset`, which validates and reduces the
    cover list.  Element order of the input is kept as the iteration order.
    """

    def __init__(self, elements: tuple, covers: tuple):
        self.elements = elements
        self.covers = covers
        self.vertices = elements
        self.edge_ids = covers
        self.edge_dom = {c: c[0] for c in covers}
        self.edge_cod = {c: c[1] for c in covers}

    def __repr__(self):
        return f"Poset(elements={list(self.elements)!r}, covers={list(self.covers)!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and set(self.covers) == set(other.covers)
        )

    def __hash__(self):
        return hash((self.elements, frozenset(self.covers)))

    def __len__(self):
        return len(self.elements)

    # order relation ----------------------------------------------------------

    def leq(self, x, y) -> bool:
        return y in self.reachable[x]

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    @cached_property
    def leq_pairs(self) -> frozenset:
        return frozenset((x, y) for x in self.elements for y in self.reachable[x])

    @property
    def minimal_elements(self) -> tuple:
        return tuple(x for x in self.elements if not self.in_edges[x])

    @property
    def maximal_elements(self) -> tuple:
        return tuple(x for x in self.elements if not self.out_edges[x])

    @property
    def is_bounded(self) -> bool:
        return len(self.elements) > 0 and len(self.minimal_elements) == 1 and len(self.maximal_elements) == 1

    @property
    def bottom(self):
        if not self.is_bounded:
            raise NotBounded("poset has no unique minimum and maximum")
        return self.minimal_elements[0]

    @property
    def top(self):
        if not self.is_bounded:
            raise NotBounded("poset has no unique minimum and maximum")
        return self.maximal_elements[0]

    def intervals(self) -> list:
        """All closed intervals ``[x, y]`` as ``(x, y)`` pairs, in element order."""
        return [(x, y) for x in self.elements for y in self.elements if self.leq(x, y)]

    # quiver interface ----------------------------------------------------------

    def scope(self, path: Path):
        return (path.dom, self.cod(path))

    def render(self, path: Path) -> str:
        return "-".join(map(str, self.vertex_sequence(path)))

    def parse_path(self, text: str) -> Path:
        names = {str(e): e for e in self.elements}
        parts = text.strip().split("-")
        try:
            verts = [names[s.strip()] for s in parts]
        except KeyError as exc:
            raise UnknownElement(f"unknown element {exc.args[0]!r} in path {text!r}") from None
        edges = tuple(zip(verts, verts[1:]))
        for e in edges:
            if e not in self.edge_dom:
                raise ValueError(f"{e[0]}-{e[1]} is not a cover relation")
        return Path(verts[0], edges)

    def chain_of(self, path: Path) -> Chain:
        return Chain(self.vertex_sequence(path))

    def path_of(self, chain: Chain) -> Path:
        v = chain.vertices
        return Path(v[0], tuple(zip(v, v[1:])))

    def interval_degree(self, x, y) -> int:
        """Maximal length of a maximal chain of ``[x, y]``."""
        return max(p.degree for p in self.chains_in((x, y)))


def build_poset(elements, covers) -> Poset:
    """Validate ``covers`` over ``elements`` and keep only the true covers."""
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        seen = set()
        dup = next(e for e in elements if e in seen or seen.add(e))
        raise DuplicateElement(f"duplicate element {dup!r}")
    known = set(elements)
    pairs = []
    for c in covers:
        x, y = c[0], c[1]
        for z in (x, y):
            if z not in known:
                raise UnknownElement(f"cover ({x!r}, {y!r}) references unknown element {z!r}")
        if x == y:
            raise CycleDetected(f"self-loop at {x!r}")
        if (x, y) not in pairs:
            pairs.append((x, y))

    ts = graphlib.TopologicalSorter({e: [] for e in elements})
    for x, y in pairs:
        ts.add(y, x)
    try:
        tuple(ts.static_order())
    except graphlib.CycleError as exc:
        raise CycleDetected(f"cycle through {exc.args[1]!r}") from None

    draft = Poset(elements, tuple(pairs))
    reduced = []
    for x, y in pairs:
        # (x, y) is redundant iff y is reachable from another successor of x
        redundant = any(
            y in draft.reachable[z] for (a, z) in pairs if a == x and z != y
        )
        if redundant:
            log.debug("dropping non-cover pair (%r, %r)", x, y)
        else:
            reduced.append((x, y))
    return Poset(elements, tuple(reduced))


def fresh_name(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def augment(p: Poset) -> Poset:
    """Adjoin a new minimum ``0^`` and maximum ``1^``.

    The new minimum is covered by every old minimal element and the new
    maximum covers every old maximal element; the empty poset becomes a
    2-chain.
    """
    taken = {str(e) for e in p.elements}
    lo = fresh_name("0^", taken)
    hi = fresh_name("1^", taken | {lo})
    covers = [(lo, m) for m in p.minimal_elements]
    covers += list(p.covers)
    covers += [(m, hi) for m in p.maximal_elements]
    if not p.elements:
        covers = [(lo, hi)]
    return Poset((lo,) + p.elements + (hi,), tuple(covers))


def bounded(p: Poset) -> Poset:
    """``p`` itself when already bounded, else its augmentation."""
    return p if p.is_bounded else augment(p)


def closed_interval(p: Poset, x, y) -> Interval:
    for z in (x, y):
        if z not in p.reachable:
            raise UnknownElement(f"unknown element {z!r}")
    if not p.leq(x, y):
        raise NotComparable(f"{x!r} is not below {y!r}")
    members = frozenset(z for z in p.reachable[x] if p.leq(z, y))
    return Interval(x, y, members, p)


def maximal_chains(iv: Interval) -> list:
    """All saturated chains from ``iv.bottom`` to ``iv.top``."""
    p = iv.poset
    return [p.chain_of(path) for path in p.chains_in((iv.bottom, iv.top))]


def is_graded(p: Poset) -> bool:
    lengths = {c.length for c in maximal_chains(closed_interval(p, p.bottom, p.top))}
    return len(lengths) == 1


def interval_poset(iv: Interval) -> Poset:
    """The closed interval as a bounded poset in its own right."""
    p = iv.poset
    elements = [x for x in p.elements if x in iv.members]
    covers = [(x, y) for x, y in p.covers if x in iv.members and y in iv.members]
    return Poset(tuple(elements), tuple(covers))
