"""Path algebras, parallel ideals and the negative degree lexicographic order.

Monomials are :class:`~lexshell.quiver.Path` values with edges stored in
traversal order for posets and categories alike.  Only the *product* differs:
for a category ``a * b`` means "``b`` then ``a``", matching composition of
morphisms, whereas for a poset it means "``a`` then ``b``".
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import cached_property

from .category import AcyclicCategory
from .errors import (
    IncomparableTie,
    NoCarrier,
    NotComparable,
    PrefixViolation,
    ZeroElement,
)
from .labellings import as_labelling, check_prefix_condition
from .poset import Poset
from .quiver import Path, Quiver

log = logging.getLogger(__name__)


class AlgebraElement:
    """Finite rational combination of paths of one quiver."""

    __slots__ = ("terms", "quiver")

    def __init__(self, terms, quiver: Quiver):
        clean = {}
        for m, c in dict(terms).items():
            c = Fraction(c)
            if c:
                clean[m] = c
        self.terms = clean
        self.quiver = quiver

    @classmethod
    def monomial(cls, path: Path, quiver: Quiver, coeff=1):
        return cls({path: coeff}, quiver)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return AlgebraElement(out, self.quiver)

    def __neg__(self):
        return AlgebraElement({m: -c for m, c in self.terms.items()}, self.quiver)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return AlgebraElement({m: c * k for m, c in self.terms.items()}, self.quiver)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = scale

    def monomials(self):
        return list(self.terms)

    def degrees(self):
        return {m.degree for m in self.terms}

    def render(self, order=None) -> str:
        return render_element(self, order)

    def __repr__(self):
        return f"AlgebraElement({self.render()!r})"


def render_element(f: AlgebraElement, order=None) -> str:
    """``+a-b-f - a-c-f`` style text; terms sorted greatest first when an order is given."""
    if not f.terms:
        return "0"
    q = f.quiver
    items = list(f.terms.items())
    if order is not None:
        items.sort(key=lambda mc: order.rank.get(mc[0], -1), reverse=True)
    out = []
    for i, (m, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        coeff = "" if abs(c) == 1 else f"{abs(c)} "
        body = coeff + q.render(m)
        out.append(f"{sign}{body}" if i == 0 else f"{sign} {body}")
    return " ".join(out)


def traversal_product(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of "``a``-path then ``b``-path"."""
    q = a.quiver
    out: dict = {}
    for m, c in a.terms.items():
        end = q.cod(m)
        for n, d in b.terms.items():
            if n.dom == end:
                key = Path(m.dom, m.edges + n.edges)
                out[key] = out.get(key, 0) + c * d
    return AlgebraElement(out, q)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product in the path algebra; diagrammatic reversal for categories."""
    if isinstance(a.quiver, AcyclicCategory):
        return traversal_product(b, a)
    return traversal_product(a, b)


def parallel_ideal_generators(inst: Quiver) -> list:
    """Differences ``p - rep`` for every non-representative path of each scope.

    Scopes are intervals for a poset and morphisms for a category, so for a
    category only paths with the same composite are related.
    """
    gens = []
    for chains in inst.scopes.values():
        rep = chains[0]
        for p in chains[1:]:
            gens.append(AlgebraElement({p: 1, rep: -1}, inst))
    return gens


def incidence_product(p: Poset, x, y, z, w):
    """``xi[x,y] * xi[z,w]`` in the incidence algebra, as an interval pair or ``None``."""
    if not p.leq(x, y) or not p.leq(z, w):
        raise NotComparable("both factors must be intervals")
    return (x, w) if y == z else None


def graded_product(p: Poset, x, y, w, z):
    """``xi[x,y] * xi[w,z]`` in the associated graded algebra (``None`` for zero)."""
    if not p.leq(x, y) or not p.leq(w, z):
        raise NotComparable("both factors must be intervals")
    if y != w:
        return None
    if p.interval_degree(x, y) + p.interval_degree(w, z) == p.interval_degree(x, z):
        return (x, z)
    return None


def truncate(f: AlgebraElement) -> AlgebraElement:
    """Sum of the terms of least degree."""
    if not f:
        raise ZeroElement("truncation of the zero element")
    low = min(f.degrees())
    return AlgebraElement({m: c for m, c in f.terms.items() if m.degree == low}, f.quiver)


class MonomialOrder:
    """Negative degree lexicographic order refined by carriers and domains.

    ``w > v`` when ``w`` has smaller degree; for equal degree when its label
    sequence is larger; then when its carrier (earliest maximal chain, in lex
    order, containing it as a factor) comes earlier; finally by domain.  For a
    poset the higher domain wins; for a category ``w`` wins when there is a
    morphism from its domain to that of ``v``.

    Trivial paths are not ranked.  ``rank[w]`` is an integer with larger
    meaning greater.
    """

    def __init__(self, inst: Quiver, labels):
        self.inst = inst
        self.labels = as_labelling(labels)
        verdict = check_prefix_condition(inst, self.labels)
        if not verdict:
            raise PrefixViolation("monomial order needs the prefix condition", verdict.witness)
        self.bottom = inst.initial
        self.top = inst.terminal
        self.is_category = isinstance(inst, AcyclicCategory)
        # unbounded instances use their source-to-sink paths as maximal chains
        self.sources = {x for x in inst.vertices if not inst.in_edges[x]}
        self.sinks = {x for x in inst.vertices if not inst.out_edges[x]}
        self.shelling = tuple(
            sorted(
                (p for p in inst.all_paths if p.dom in self.sources and inst.cod(p) in self.sinks),
                key=self.labels.sequence,
            )
        )
        self.carrier_index = self._carriers()
        self._check_ties()
        keyed = sorted(inst.nontrivial_paths, key=self.sort_key)
        self.rank = {p: i for i, p in enumerate(keyed)}
        self.monomials = tuple(keyed)

    def _carriers(self) -> dict:
        out = {}
        for idx, chain in enumerate(self.shelling):
            n = chain.degree
            for i in range(n):
                for j in range(i + 1, n + 1):
                    sub = self.inst.subpath(chain, i, j)
                    out.setdefault(sub, idx)
        return out

    def carrier(self, w: Path) -> Path:
        """Earliest maximal chain of the shelling having ``w`` as a factor."""
        if not w.edges:
            raise ValueError("carriers are defined for paths of degree >= 1")
        try:
            return self.shelling[self.carrier_index[w]]
        except KeyError:
            raise NoCarrier(f"no maximal chain contains {self.inst.render(w)}") from None

    def _dom_key(self, w: Path) -> int:
        t = self.inst.topo_index[w.dom]
        return -t if self.is_category else t

    def sort_key(self, w: Path):
        return (-w.degree, self.labels.sequence(w), -self.carrier_index[w], self._dom_key(w))

    def _check_ties(self):
        groups: dict = {}
        for w in self.inst.nontrivial_paths:
            key = (w.degree, self.labels.sequence(w), self.carrier_index[w])
            groups.setdefault(key, []).append(w)
        for members in groups.values():
            for i, w in enumerate(members):
                for v in members[i + 1:]:
                    if w.dom == v.dom or not (
                        self.inst.hom_nonempty(w.dom, v.dom) or self.inst.hom_nonempty(v.dom, w.dom)
                    ):
                        raise IncomparableTie(
                            f"{self.inst.render(w)} and {self.inst.render(v)} are not separated"
                        )

    def explain(self, w: Path, v: Path):
        """``(sign, rule)``: sign of ``w`` vs ``v`` and the 1-based rule that decided.

        Rule 0 means ``w == v``.  Evaluated from the rules directly, not
        from ``rank``.
        """
        if w == v:
            return 0, 0
        if not w.edges or not v.edges:
            raise ValueError("trivial paths are not ordered")
        if w.degree != v.degree:
            return (1 if w.degree < v.degree else -1), 1
        lw, lv = self.labels.sequence(w), self.labels.sequence(v)
        if lw != lv:
            return (1 if lw > lv else -1), 2
        cw, cv = self.carrier_index[w], self.carrier_index[v]
        if cw != cv:
            return (1 if cw < cv else -1), 3
        x, y = w.dom, v.dom
        if x != y:
            up = self.inst.hom_nonempty(y, x)  # x above y
            down = self.inst.hom_nonempty(x, y)
            if self.is_category:
                if down:
                    return 1, 4
                if up:
                    return -1, 4
            else:
                if up:
                    return 1, 4
                if down:
                    return -1, 4
        raise IncomparableTie(f"{self.inst.render(w)} and {self.inst.render(v)} are not separated")

    def compare(self, w: Path, v: Path) -> int:
        return self.explain(w, v)[0]

    def leading(self, f: AlgebraElement):
        if not f:
            raise ZeroElement("leading term of the zero element")
        m = max(f.terms, key=self.rank.__getitem__)
        return m, f.terms[m]

    @cached_property
    def least_below(self) -> dict:
        """Least (by labels) path from a source (the bottom, when bounded) to each vertex."""
        out = {}
        for x in self.inst.vertices:
            cands = [p for p in self.inst.paths_ending_at[x] if p.dom in self.sources]
            out[x] = min(cands, key=self.labels.sequence)
        return out

    @cached_property
    def least_above(self) -> dict:
        out = {}
        for x in self.inst.vertices:
            cands = [p for p in self.inst.paths_starting_at[x] if self.inst.cod(p) in self.sinks]
            out[x] = min(cands, key=self.labels.sequence)
        return out

    def carrier_by_formula(self, w: Path) -> Path:
        """Least chain below ``w``, then ``w``, then least chain above ``w``."""
        lo = self.least_below[w.dom]
        hi = self.least_above[self.inst.cod(w)]
        return Path(lo.dom, lo.edges + w.edges + hi.edges)


def leading_term(f: AlgebraElement, order: MonomialOrder):
    return order.leading(f)


def carrier(w: Path, order: MonomialOrder) -> Path:
    return order.carrier(w)


def compare(w: Path, v: Path, order: MonomialOrder) -> int:
    return order.compare(w, v)
