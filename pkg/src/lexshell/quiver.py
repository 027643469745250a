"""Shared path machinery for posets and acyclic categories.

Both carriers are presented by a finite acyclic quiver: Hasse covers for a
poset, indecomposable generators for a category.  Everything downstream
(labellings, the path algebra, Groebner bases) only talks to this interface.
"""

from __future__ import annotations

import os
from functools import cached_property
from typing import Hashable, Iterator, NamedTuple

from .errors import PathBoundExceeded

DEFAULT_PATH_BOUND = 100_000


def path_bound() -> int:
    raw = os.environ.get("LEXSHELL_PATH_BOUND")
    return int(raw) if raw else DEFAULT_PATH_BOUND


class Path(NamedTuple):
    """A directed path: start vertex plus edge ids in traversal order.

    ``Path(x, ())`` is the trivial path at ``x``.
    """

    dom: Hashable
    edges: tuple

    @property
    def degree(self) -> int:
        return len(self.edges)


class Quiver:
    """Mixin over ``vertices``, ``edge_ids``, ``edge_dom`` and ``edge_cod``.

    Subclasses set those four attributes and implement :meth:`scope`.
    """

    vertices: tuple
    edge_ids: tuple
    edge_dom: dict
    edge_cod: dict

    # -- basic path algebra on edge sequences --------------------------------

    def cod(self, path: Path):
        return self.edge_cod[path.edges[-1]] if path.edges else path.dom

    def vertex_sequence(self, path: Path) -> tuple:
        return (path.dom,) + tuple(self.edge_cod[e] for e in path.edges)

    def concat(self, p: Path, q: Path) -> Path | None:
        """``p`` followed by ``q``; ``None`` when the endpoints do not meet."""
        if self.cod(p) != q.dom:
            return None
        return Path(p.dom, p.edges + q.edges)

    def subpath(self, path: Path, i: int, j: int) -> Path:
        """Edges ``i..j-1`` of ``path`` (vertex indices ``i..j``)."""
        dom = path.dom if i == 0 else self.edge_cod[path.edges[i - 1]]
        return Path(dom, path.edges[i:j])

    def path_from_edges(self, edges) -> Path:
        edges = tuple(edges)
        if not edges:
            raise ValueError("use Path(vertex, ()) for trivial paths")
        for e, f in zip(edges, edges[1:]):
            if self.edge_cod[e] != self.edge_dom[f]:
                raise ValueError(f"edges {e!r} and {f!r} do not compose")
        return Path(self.edge_dom[edges[0]], edges)

    @cached_property
    def out_edges(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e in self.edge_ids:
            out[self.edge_dom[e]].append(e)
        return out

    @cached_property
    def in_edges(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for e in self.edge_ids:
            inc[self.edge_cod[e]].append(e)
        return inc

    # -- enumeration ----------------------------------------------------------

    def iter_paths_from(self, v) -> Iterator[Path]:
        stack = [Path(v, ())]
        while stack:
            p = stack.pop()
            yield p
            end = self.cod(p)
            for e in reversed(self.out_edges[end]):
                stack.append(Path(p.dom, p.edges + (e,)))

    @cached_property
    def all_paths(self) -> tuple:
        """Every path, trivial ones included, grouped by start vertex."""
        bound = path_bound()
        out = []
        for v in self.vertices:
            for p in self.iter_paths_from(v):
                out.append(p)
                if len(out) > bound:
                    raise PathBoundExceeded(
                        f"more than {bound} paths; raise LEXSHELL_PATH_BOUND to continue"
                    )
        return tuple(out)

    @cached_property
    def nontrivial_paths(self) -> tuple:
        return tuple(p for p in self.all_paths if p.edges)

    @cached_property
    def paths_ending_at(self) -> dict:
        out = {v: [] for v in self.vertices}
        for p in self.all_paths:
            out[self.cod(p)].append(p)
        return out

    @cached_property
    def paths_starting_at(self) -> dict:
        out = {v: [] for v in self.vertices}
        for p in self.all_paths:
            out[p.dom].append(p)
        return out

    # -- scopes: intervals of a poset, morphisms of a category ---------------

    def scope(self, path: Path):
        raise NotImplementedError

    @cached_property
    def scopes(self) -> dict:
        """Map scope -> tuple of the paths in it (its maximal chains)."""
        out: dict = {}
        for p in self.all_paths:
            out.setdefault(self.scope(p), []).append(p)
        return {k: tuple(v) for k, v in out.items()}

    def chains_in(self, scope) -> tuple:
        return self.scopes[scope]

    @cached_property
    def topo_index(self) -> dict:
        """Position of each vertex in the input-order-stable topological sort."""
        indeg = {v: len(self.in_edges[v]) for v in self.vertices}
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        position = {v: i for i, v in enumerate(self.vertices)}
        while ready:
            ready.sort(key=position.__getitem__)
            v = ready.pop(0)
            order.append(v)
            for e in self.out_edges[v]:
                w = self.edge_cod[e]
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        return {v: i for i, v in enumerate(order)}

    @cached_property
    def reachable(self) -> dict:
        """``reachable[x]`` is the set of vertices ``y`` with a path ``x -> y``."""
        out = {}
        for v in sorted(self.vertices, key=self.topo_index.__getitem__, reverse=True):
            acc = {v}
            for e in self.out_edges[v]:
                acc |= out[self.edge_cod[e]]
            out[v] = frozenset(acc)
        return out

    def hom_nonempty(self, x, y) -> bool:
        return y in self.reachable[x]

    @property
    def initial(self):
        """The unique source reaching every vertex, else ``None``."""
        for v in self.vertices:
            if len(self.reachable[v]) == len(self.vertices):
                return v
        return None

    @property
    def terminal(self):
        everything = set(self.vertices)
        sinks = [v for v in self.vertices if not self.out_edges[v]]
        if len(sinks) == 1 and all(sinks[0] in self.reachable[v] for v in everything):
            return sinks[0]
        return None

    # -- rendering ------------------------------------------------------------

    def render(self, path: Path) -> str:
        raise NotImplementedError

    def parse_path(self, text: str) -> Path:
        raise NotImplementedError
