"""Finite acyclic categories presented by generators and relations.

A category is given by its indecomposable morphisms (generators) and a list
of relations between generator paths.  The composition congruence is the
equivalence closure of ``u p v ~ u q v`` over all relations ``p ~ q``; since
the generator digraph is acyclic the set of paths is finite and the closure
is computed exactly with a union-find.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    CycleDetected,
    DuplicateElement,
    GeneratorDecomposable,
    RelationEndpointMismatch,
    UnknownElement,
    ValidationError,
)
from .poset import Poset, build_poset, fresh_name
from .quiver import Path, Quiver

PATH_SEP = "."


@dataclass(frozen=True)
class Generator:
    id: str
    dom: object
    cod: object


@dataclass(frozen=True)
class Morphism:
    id: str
    dom: object
    cod: object
    paths: tuple  # generator paths composing to this morphism

    @property
    def is_identity(self) -> bool:
        return not self.paths[0].edges


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


class AcyclicCategory(Quiver):
    def __init__(self, objects, generators, relations):
        self.objects = objects
        self.generators = generators
        self.relations = relations
        self.vertices = objects
        self.edge_ids = tuple(g.id for g in generators)
        self.edge_dom = {g.id: g.dom for g in generators}
        self.edge_cod = {g.id: g.cod for g in generators}
        self._close()

    def __repr__(self):
        return (
            f"AcyclicCategory(objects={list(self.objects)!r}, "
            f"generators={[g.id for g in self.generators]!r}, relations={len(self.relations)})"
        )

    def _close(self):
        paths = self.all_paths
        index = {p: i for i, p in enumerate(paths)}
        uf = _UnionFind(len(paths))
        for p, q in self.relations:
            for u in self.paths_ending_at[p.dom]:
                for v in self.paths_starting_at[self.cod(p)]:
                    a = Path(u.dom, u.edges + p.edges + v.edges)
                    b = Path(u.dom, u.edges + q.edges + v.edges)
                    uf.union(index[a], index[b])
        classes: dict = {}
        for i, p in enumerate(paths):
            classes.setdefault(uf.find(i), []).append(p)

        self._class_of = {}
        morphisms = []
        for members in classes.values():
            members.sort(key=lambda p: (p.degree, index[p]))
            rep = members[0]
            if not rep.edges:
                mid = f"id_{rep.dom}"
            else:
                mid = self.render(rep)
                if rep.degree == 1 and len(members) > 1:
                    other = members[1]
                    if other.degree == 1:
                        raise ValidationError(
                            f"generators {rep.edges[0]!r} and {other.edges[0]!r} are identified"
                        )
                    raise GeneratorDecomposable(
                        f"generator {rep.edges[0]!r} equals the composite {self.render(other)}"
                    )
            m = Morphism(mid, rep.dom, self.cod(rep), tuple(members))
            morphisms.append(m)
            for p in members:
                self._class_of[p] = mid
        order = {v: i for i, v in enumerate(self.objects)}
        morphisms.sort(key=lambda m: (not m.is_identity, m.paths[0].degree, order[m.dom], index[m.paths[0]]))
        self.morphisms = tuple(morphisms)
        self.morphism = {m.id: m for m in morphisms}

    # quiver interface ---------------------------------------------------------

    def scope(self, path: Path):
        return self._class_of[path]

    @cached_property
    def scopes(self) -> dict:
        return {m.id: m.paths for m in self.morphisms}

    def render(self, path: Path) -> str:
        if not path.edges:
            return str(path.dom)
        return PATH_SEP.join(map(str, path.edges))

    def parse_path(self, text: str) -> Path:
        text = text.strip()
        if text in self.objects:
            return Path(text, ())
        ids = tuple(s.strip() for s in text.split(PATH_SEP))
        for g in ids:
            if g not in self.edge_dom:
                raise UnknownElement(f"unknown generator {g!r} in path {text!r}")
        return self.path_from_edges(ids)

    # category structure --------------------------------------------------------

    @property
    def non_identity_morphisms(self) -> tuple:
        return tuple(m for m in self.morphisms if not m.is_identity)

    def identity(self, x) -> Morphism:
        return self.morphism[f"id_{x}"]

    def compose(self, first: str, second: str) -> str:
        """Id of ``second o first`` (diagrammatic: ``first`` is applied first)."""
        p = self.morphism[first].paths[0]
        q = self.morphism[second].paths[0]
        pq = self.concat(p, q)
        if pq is None:
            raise ValueError(f"{first} and {second} are not composable")
        return self._class_of[pq]

    def hom(self, x, y) -> tuple:
        return tuple(m for m in self.morphisms if m.dom == x and m.cod == y)

    def _has_unique_out(self, x) -> bool:
        return all(len(self.hom(x, y)) == 1 for y in self.objects)

    def _has_unique_in(self, y) -> bool:
        return all(len(self.hom(x, y)) == 1 for x in self.objects)

    @property
    def initial_object(self):
        return next((x for x in self.objects if self._has_unique_out(x)), None)

    @property
    def terminal_object(self):
        return next((y for y in self.objects if self._has_unique_in(y)), None)

    @property
    def is_augmented(self) -> bool:
        return bool(self.objects) and self.initial_object is not None and self.terminal_object is not None


def build_category(objects, generators, relations=()) -> AcyclicCategory:
    """Build a category from objects, ``(id, dom, cod)`` generators and relations.

    Each relation is a pair of generator-id sequences in diagrammatic
    (traversal) order, e.g. ``(["alpha1", "beta"], ["alpha2", "beta"])``.
    """
    objects = tuple(objects)
    if len(set(objects)) != len(objects):
        raise DuplicateElement("duplicate object identifier")
    known = set(objects)
    gens = []
    seen = set()
    for g in generators:
        if isinstance(g, dict):
            g = Generator(str(g["id"]), g["dom"], g["cod"])
        elif not isinstance(g, Generator):
            g = Generator(str(g[0]), g[1], g[2])
        if g.id in seen:
            raise DuplicateElement(f"duplicate generator {g.id!r}")
        seen.add(g.id)
        for z in (g.dom, g.cod):
            if z not in known:
                raise UnknownElement(f"generator {g.id!r} references unknown object {z!r}")
        if g.dom == g.cod:
            raise CycleDetected(f"generator {g.id!r} is an endomorphism")
        gens.append(g)

    ts = graphlib.TopologicalSorter({x: [] for x in objects})
    for g in gens:
        ts.add(g.cod, g.dom)
    try:
        tuple(ts.static_order())
    except graphlib.CycleError as exc:
        raise CycleDetected(f"generator cycle through {exc.args[1]!r}") from None

    # a throwaway quiver to resolve relation paths before the closure runs
    shell = AcyclicCategory.__new__(AcyclicCategory)
    shell.vertices = objects
    shell.edge_ids = tuple(g.id for g in gens)
    shell.edge_dom = {g.id: g.dom for g in gens}
    shell.edge_cod = {g.id: g.cod for g in gens}
    rels = []
    for lhs, rhs in relations:
        try:
            p = lhs if isinstance(lhs, Path) else shell.path_from_edges(map(str, lhs))
            q = rhs if isinstance(rhs, Path) else shell.path_from_edges(map(str, rhs))
        except KeyError as exc:
            raise UnknownElement(f"relation uses unknown generator {exc.args[0]!r}") from None
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        if p.dom != q.dom or shell.cod(p) != shell.cod(q):
            raise RelationEndpointMismatch(
                f"relation {shell.render(p)} ~ {shell.render(q)} joins paths with different endpoints"
            )
        rels.append((p, q))
    return AcyclicCategory(objects, tuple(gens), tuple(rels))


def _parallel_relations(c: AcyclicCategory, lo, hi) -> list:
    """Relations identifying all paths ``lo -> x`` and all paths ``x -> hi``."""
    rels = []
    for x in c.vertices:
        for group in (
            [p for p in c.paths_ending_at[x] if p.edges and p.dom == lo],
            [p for p in c.paths_starting_at[x] if p.edges and c.cod(p) == hi],
        ):
            rels += [(group[0], other) for other in group[1:]]
    return rels


def augment_category(c: AcyclicCategory, force: bool = False) -> AcyclicCategory:
    """Adjoin an initial object ``0^`` and a terminal object ``1^``.

    ``0^`` gets one generator to each source object and ``1^`` one from each
    sink; every pair of parallel paths leaving ``0^`` or entering ``1^`` is
    then identified.  An already augmented category is returned unchanged
    unless ``force`` is set.
    """
    if c.is_augmented and not force:
        return c
    taken = {str(x) for x in c.objects}
    lo = fresh_name("0^", taken)
    hi = fresh_name("1^", taken | {lo})
    gens = list(c.generators)
    sources = [x for x in c.objects if not c.in_edges[x]]
    sinks = [x for x in c.objects if not c.out_edges[x]]
    gens += [Generator(f"{lo}>{x}", lo, x) for x in sources]
    gens += [Generator(f"{x}>{hi}", x, hi) for x in sinks]
    if not c.objects:
        gens.append(Generator(f"{lo}>{hi}", lo, hi))
    objects = (lo,) + c.objects + (hi,)
    draft = build_category(objects, gens, c.relations)
    return build_category(objects, gens, list(c.relations) + _parallel_relations(draft, lo, hi))


def poset_to_category(p: Poset) -> AcyclicCategory:
    """The category with one morphism ``x -> y`` whenever ``x <= y``."""
    gens = [Generator(f"{x}<{y}", x, y) for (x, y) in p.covers]
    cat = build_category(p.elements, gens)
    rels = []
    by_ends: dict = {}
    for path in cat.nontrivial_paths:
        by_ends.setdefault((path.dom, cat.cod(path)), []).append(path)
    for paths in by_ends.values():
        rels += [(paths[0], q) for q in paths[1:]]
    return build_category(p.elements, gens, rels)


def category_to_poset(c: AcyclicCategory) -> Poset:
    """Inverse of :func:`poset_to_category`; requires every hom-set to have at most one element."""
    for m in c.morphisms:
        if len(c.hom(m.dom, m.cod)) > 1:
            raise ValidationError(f"hom({m.dom!r}, {m.cod!r}) has more than one morphism")
    return build_poset(c.objects, [(g.dom, g.cod) for g in c.generators])


def poset_labelling_to_category(labels: dict) -> dict:
    return {f"{x}<{y}": v for (x, y), v in labels.items()}
