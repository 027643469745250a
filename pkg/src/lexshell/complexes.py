"""Order complexes, nerves, and shellings.

A :class:`GeneralisedSimplicialComplex` stores faces explicitly, per
dimension, with ordered boundary references.  Faces of a nerve are chains of
morphism ids and are never reconstructed from vertices, since two faces of a
nerve may share all their vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .category import AcyclicCategory
from .errors import IncompleteOrdering, SearchBoundExceeded
from .poset import Poset

DEFAULT_FACET_BOUND = 9


@dataclass(frozen=True)
class GeneralisedSimplicialComplex:
    """``faces[k]`` lists the k-faces; ``boundary[k][i]`` indexes ``faces[k-1]``.

    ``vertices[k][i]`` is the vertex tuple of a face.  When
    ``vertex_determined`` holds (order complexes) faces are identified with
    their vertex sets.
    """

    faces: tuple
    boundary: tuple
    vertices: tuple
    vertex_determined: bool

    @property
    def dimension(self) -> int:
        return len(self.faces) - 1

    def face_counts(self) -> tuple:
        return tuple(len(f) for f in self.faces)

    @cached_property
    def facets(self) -> tuple:
        """``(dim, index)`` of faces lying in no boundary, by dimension then index."""
        covered = set()
        for k in range(1, len(self.faces)):
            for bd in self.boundary[k]:
                covered.update((k - 1, j) for j in bd)
        return tuple(
            (k, i)
            for k in range(len(self.faces))
            for i in range(len(self.faces[k]))
            if (k, i) not in covered
        )

    def closure(self, face) -> frozenset:
        """All faces below ``face`` (itself included) as ``(dim, index)`` pairs."""
        seen = {face}
        stack = [face]
        while stack:
            k, i = stack.pop()
            if k == 0:
                continue
            for j in self.boundary[k][i]:
                if (k - 1, j) not in seen:
                    seen.add((k - 1, j))
                    stack.append((k - 1, j))
        return frozenset(seen)

    def check(self) -> None:
        for k in range(1, len(self.faces)):
            for i, bd in enumerate(self.boundary[k]):
                assert len(bd) == k + 1, (k, i, bd)
                assert all(0 <= j < len(self.faces[k - 1]) for j in bd)


def order_complex(p: Poset) -> GeneralisedSimplicialComplex:
    """Faces are the chains ``x1 < ... < xk`` (not necessarily saturated)."""
    pos = p.topo_index
    by_dim: list = []
    # grow chains upward from each element
    level = [(x,) for x in sorted(p.elements, key=pos.__getitem__)]
    while level:
        by_dim.append(level)
        nxt = []
        for ch in level:
            top = ch[-1]
            for y in sorted(p.reachable[top], key=pos.__getitem__):
                if y != top:
                    nxt.append(ch + (y,))
        level = nxt
    index = [{f: i for i, f in enumerate(fs)} for fs in by_dim]
    boundary = [tuple(() for _ in by_dim[0])] if by_dim else []
    for k in range(1, len(by_dim)):
        boundary.append(
            tuple(
                tuple(index[k - 1][f[:i] + f[i + 1:]] for i in range(k + 1))
                for f in by_dim[k]
            )
        )
    return GeneralisedSimplicialComplex(
        faces=tuple(tuple(fs) for fs in by_dim),
        boundary=tuple(boundary),
        vertices=tuple(tuple(fs) for fs in by_dim),
        vertex_determined=True,
    )


def nerve(c: AcyclicCategory) -> GeneralisedSimplicialComplex:
    """Composable chains of non-identity morphisms, in traversal order.

    A k-face ``(m1, ..., mk)`` has boundary: drop ``m1``; compose each
    adjacent pair; drop ``mk``.  Vertices are objects; a 1-face's boundary is
    ``(cod, dom)`` (deleting vertex 0, then vertex 1).
    """
    faces = [tuple((x,) for x in c.objects)]
    verts = [tuple((x,) for x in c.objects)]
    nonid = [m.id for m in c.non_identity_morphisms]
    starting: dict = {}
    for mid in nonid:
        starting.setdefault(c.morphism[mid].dom, []).append(mid)
    level = [(mid,) for mid in nonid]
    while level:
        faces.append(tuple(level))
        verts.append(
            tuple(
                (c.morphism[ch[0]].dom,) + tuple(c.morphism[m].cod for m in ch) for ch in level
            )
        )
        level = [
            ch + (nxt,) for ch in level for nxt in starting.get(c.morphism[ch[-1]].cod, [])
        ]
    index = [{f: i for i, f in enumerate(fs)} for fs in faces]
    boundary = [tuple(() for _ in faces[0])]
    for k in range(1, len(faces)):
        rows = []
        for ch in faces[k]:
            if k == 1:
                m = c.morphism[ch[0]]
                rows.append((index[0][(m.cod,)], index[0][(m.dom,)]))
                continue
            bd = [index[k - 1][ch[1:]]]
            for i in range(k - 1):
                merged = ch[:i] + (c.compose(ch[i], ch[i + 1]),) + ch[i + 2:]
                bd.append(index[k - 1][merged])
            bd.append(index[k - 1][ch[:-1]])
            rows.append(tuple(bd))
        boundary.append(tuple(rows))
    return GeneralisedSimplicialComplex(
        faces=tuple(faces),
        boundary=tuple(boundary),
        vertices=tuple(verts),
        vertex_determined=False,
    )


class _FacetGeometry:
    """Face sets of facets and of their codimension-one faces."""

    def __init__(self, k: GeneralisedSimplicialComplex):
        self.complex = k
        self.facets = k.facets
        if k.vertex_determined:
            self.sets = [frozenset(k.vertices[d][i]) for d, i in self.facets]
            self.codim1 = [
                {s - {v} for v in s} for s in self.sets
            ]
        else:
            self.sets = [k.closure(f) for f in self.facets]
            self.codim1 = []
            for d, i in self.facets:
                if d == 0:
                    self.codim1.append({frozenset()})
                else:
                    self.codim1.append({k.closure((d - 1, j)) for j in k.boundary[d][i]})

    def extends(self, prefix, j) -> bool:
        """Whether facet ``j`` may follow the facets listed in ``prefix``."""
        fj = self.sets[j]
        if self.complex.vertex_determined:
            good = [fj & self.sets[k] for k in prefix]
            good = [s for s in good if s in self.codim1[j]]
            return all(any(fj & self.sets[i] <= g for g in good) for i in prefix)
        # two facets of a generalised complex may share several codimension-one faces
        meet = frozenset().union(*(fj & self.sets[k] for k in prefix))
        inside = [c for c in self.codim1[j] if c <= meet]
        return bool(inside) and meet == frozenset().union(*inside)


def _facet_positions(k: GeneralisedSimplicialComplex, ordering, vertices: bool) -> list:
    facets = k.facets
    if vertices:
        lookup = {frozenset(k.vertices[d][i]): n for n, (d, i) in enumerate(facets)}
        keys = [frozenset(f) for f in ordering]
    else:
        lookup = {f: n for n, f in enumerate(facets)}
        keys = [tuple(f) for f in ordering]
    out = []
    for f in keys:
        if f not in lookup:
            raise IncompleteOrdering(f"{sorted(f, key=str) if vertices else f!r} is not a facet")
        out.append(lookup[f])
    if sorted(out) != list(range(len(facets))):
        raise IncompleteOrdering("ordering must list every facet exactly once")
    return out


def is_shelling(k: GeneralisedSimplicialComplex, ordering, vertices: bool = False) -> bool:
    """Check the shelling condition for a facet ordering.

    ``ordering`` lists facets as ``(dim, index)`` pairs, or as vertex
    collections when ``vertices`` is set (vertex-determined complexes only).
    """
    if vertices and not k.vertex_determined:
        raise ValueError("faces of a generalised complex are not determined by vertices")
    positions = _facet_positions(k, ordering, vertices)
    geo = _FacetGeometry(k)
    return all(geo.extends(positions[:n], positions[n]) for n in range(1, len(positions)))


def find_shelling(k: GeneralisedSimplicialComplex, bound: int = DEFAULT_FACET_BOUND):
    """Depth-first search for a shelling; the first one found is lexicographically least."""
    geo = _FacetGeometry(k)
    n = len(geo.facets)
    if n > bound:
        raise SearchBoundExceeded(f"{n} facets exceeds the shelling search bound {bound}")
    if n == 0:
        return ()
    order: list = []
    used = [False] * n

    def dfs():
        if len(order) == n:
            return True
        for j in range(n):
            if used[j]:
                continue
            if order and not geo.extends(order, j):
                continue
            used[j] = True
            order.append(j)
            if dfs():
                return True
            order.pop()
            used[j] = False
        return False

    return tuple(geo.facets[j] for j in order) if dfs() else None

