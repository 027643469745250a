"""Noncommutative Groebner bases of ideals in a finite path algebra.

Completion follows the diamond lemma: every overlap ``lm(f) = u c``,
``lm(g) = c v`` and every inclusion ``lm(g) = u lm(f) v`` is resolved by
reducing the corresponding S-element.  The ambient set of paths is finite, so
completion always terminates and the result is exact.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, MonomialOrder, parallel_ideal_generators, truncate
from .errors import NotInIdeal, OrderNotTotal, ZeroElement
from .quiver import Path, Quiver

log = logging.getLogger(__name__)

STRATEGIES = ("greatest", "leftmost-innermost", "rightmost-outermost")


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple
    order: MonomialOrder
    initial_terms: tuple
    reduced: bool

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def normal_form(self, f, strategy="greatest"):
        return normal_form(f, self.elements, self.order, strategy)


def _lead(terms: dict, rank: dict) -> Path:
    try:
        return max(terms, key=rank.__getitem__)
    except KeyError as exc:
        raise OrderNotTotal(f"monomial {exc.args[0]!r} is not ranked by the order") from None


def leading_term(f: AlgebraElement, order: MonomialOrder):
    """Order-greatest monomial of ``f`` with its coefficient."""
    if not f:
        raise ZeroElement("leading term of the zero element")
    m = _lead(f.terms, order.rank)
    return m, f.terms[m]


def _sandwich(q: Quiver, terms: dict, left: tuple, right: tuple, dom, scale) -> dict:
    """``scale * u f v`` where ``u``/``v`` are edge tuples and ``f`` is uniform."""
    if not left:
        return {Path(m.dom, m.edges + right): c * scale for m, c in terms.items()}
    return {Path(dom, left + m.edges + right): c * scale for m, c in terms.items()}


def _factors(q: Quiver, m: Path, innermost=True):
    """All ``(i, j)`` slices of ``m`` as paths, shortest first when ``innermost``."""
    n = m.degree
    lengths = range(1, n + 1) if innermost else range(n, 0, -1)
    for length in lengths:
        for i in range(0, n - length + 1):
            yield i, i + length, q.subpath(m, i, i + length)


def _find_divisor(q, m, lm_index, strategy):
    if strategy == "rightmost-outermost":
        for length in range(m.degree, 0, -1):
            for i in range(m.degree - length, -1, -1):
                sub = q.subpath(m, i, i + length)
                if sub in lm_index:
                    return i, i + length, lm_index[sub]
        return None
    for i, j, sub in _factors(q, m):
        if sub in lm_index:
            return i, j, lm_index[sub]
    return None


def _reduce_terms(terms: dict, basis, q: Quiver, rank: dict, strategy="greatest") -> dict:
    """Normal form of a term dict modulo monic ``basis`` (list of term dicts)."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    lm_index = {}
    for g in basis:
        lm_index.setdefault(_lead(g, rank), g)
    terms = dict(terms)
    while True:
        candidates = sorted(terms, key=rank.__getitem__, reverse=(strategy != "leftmost-innermost"))
        hit = None
        for m in candidates:
            d = _find_divisor(q, m, lm_index, strategy)
            if d is not None:
                hit = m, d
                break
        if hit is None:
            return terms
        m, (i, j, g) = hit
        coeff = terms[m]
        lm = q.subpath(m, i, j)
        lc = g[lm]
        for path, c in _sandwich(q, g, m.edges[:i], m.edges[j:], m.dom, -coeff / lc).items():
            new = terms.get(path, 0) + c
            if new:
                terms[path] = new
            else:
                terms.pop(path, None)


def normal_form(f: AlgebraElement, G, order: MonomialOrder, strategy="greatest") -> AlgebraElement:
    """Reduce ``f`` until no monomial is divisible by a leading monomial of ``G``."""
    basis = [g.terms for g in G if g]
    out = _reduce_terms(f.terms, basis, f.quiver, order.rank, strategy)
    return AlgebraElement(out, f.quiver)


def _monic(terms: dict, rank: dict) -> dict:
    lc = terms[_lead(terms, rank)]
    return {m: c / lc for m, c in terms.items()}


def _uniform_parts(f: AlgebraElement) -> list:
    q = f.quiver
    parts: dict = {}
    for m, c in f.terms.items():
        parts.setdefault((m.dom, q.cod(m)), {})[m] = Fraction(c)
    return list(parts.values())


def _obstructions(q: Quiver, a: dict, b: dict, la: Path, lb: Path, same: bool):
    """S-elements from overlaps ``la = u c, lb = c v`` and from ``lb = u la v``."""
    na, nb = la.degree, lb.degree
    for k in range(1, min(na, nb)):
        if la.edges[na - k:] == lb.edges[:k]:
            u = la.edges[: na - k]
            v = lb.edges[k:]
            s = _sandwich(q, a, (), v, la.dom, Fraction(1) / a[la])
            for path, c in _sandwich(q, b, u, (), la.dom, -Fraction(1) / b[lb]).items():
                s[path] = s.get(path, 0) + c
            yield Path(la.dom, la.edges + v), {m: c for m, c in s.items() if c}
    if not same and na <= nb:
        for i in range(0, nb - na + 1):
            if lb.edges[i:i + na] == la.edges:
                u, v = lb.edges[:i], lb.edges[i + na:]
                s = {m: c / b[lb] for m, c in b.items()}
                for path, c in _sandwich(q, a, u, v, lb.dom, -Fraction(1) / a[la]).items():
                    s[path] = s.get(path, 0) + c
                yield lb, {m: c for m, c in s.items() if c}


def _interreduce(basis: list, q: Quiver, rank: dict) -> list:
    leads = [_lead(g, rank) for g in basis]
    keep = []
    for idx, (g, lm) in enumerate(zip(basis, leads)):
        redundant = False
        for jdx, other in enumerate(leads):
            if jdx == idx:
                continue
            divides = any(sub == other for _, _, sub in _factors(q, lm))
            # among equal leading monomials keep the first
            if divides and (other != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for idx, g in enumerate(keep):
        lm = _lead(g, rank)
        others = keep[:idx] + keep[idx + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = _reduce_terms(tail, others, q, rank)
        tail[lm] = g[lm]
        out.append(_monic(tail, rank))
    out.sort(key=lambda g: rank[_lead(g, rank)])
    return out


def buchberger(gens, order: MonomialOrder) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Obstructions are processed in order of (degree, rank) of the monomial
    where they occur.
    """
    gens = list(gens)
    q = order.inst
    rank = order.rank
    basis: list = []
    leads: list = []
    queue: list = []
    counter = itertools.count()

    def push_pairs(new_idx):
        b, lb = basis[new_idx], leads[new_idx]
        for idx in range(new_idx + 1):
            a, la = basis[idx], leads[idx]
            pairs = [(a, la, b, lb)] if idx == new_idx else [(a, la, b, lb), (b, lb, a, la)]
            for x, lx, y, ly in pairs:
                for where, s in _obstructions(q, x, y, lx, ly, idx == new_idx):
                    heapq.heappush(queue, (where.degree, rank[where], next(counter), s))

    def add(terms):
        r = _reduce_terms(terms, basis, q, rank)
        if r:
            r = _monic(r, rank)
            basis.append(r)
            leads.append(_lead(r, rank))
            push_pairs(len(basis) - 1)

    for f in gens:
        for part in _uniform_parts(f):
            add(part)
    while queue:
        *_, s = heapq.heappop(queue)
        if s:
            add(s)

    reduced = _interreduce(basis, q, rank)
    for g in reduced:
        if any(abs(c) != 1 for c in g.values()):
            log.warning("basis element with coefficient outside {-1, 1}: %r", g)
    elements = tuple(AlgebraElement(g, q) for g in reduced)
    return GroebnerBasis(
        elements=elements,
        order=order,
        initial_terms=tuple(_lead(g, rank) for g in reduced),
        reduced=True,
    )


def parallel_basis(inst: Quiver, order: MonomialOrder) -> GroebnerBasis:
    return buchberger(parallel_ideal_generators(inst), order)


def is_groebner_basis(G, inst: Quiver, order: MonomialOrder, reference: GroebnerBasis | None = None) -> bool:
    """True iff every parallel difference reduces to zero modulo ``G``.

    Raises :class:`NotInIdeal` when some element of ``G`` lies outside the
    parallel ideal.
    """
    G = [g for g in G if g]
    ref = reference if reference is not None else parallel_basis(inst, order)
    for g in G:
        if normal_form(g, ref.elements, order):
            raise NotInIdeal(f"{g.render()} is not in the parallel ideal")
    for chains in inst.scopes.values():
        for p, r in itertools.combinations(chains, 2):
            if normal_form(AlgebraElement({p: 1, r: -1}, inst), G, order):
                return False
    return True


def initial_ideal_oracle(inst: Quiver, order: MonomialOrder) -> frozenset:
    """Paths that are not the order-minimum of their scope.

    The parallel ideal is spanned by differences inside each scope, so these
    are exactly the leading monomials of its nonzero elements.
    """
    out = set()
    for chains in inst.scopes.values():
        if len(chains) < 2:
            continue
        low = min(chains, key=order.rank.__getitem__)
        out.update(c for c in chains if c != low)
    return frozenset(out)


def divides(q: Quiver, w: Path, m: Path) -> bool:
    """``w`` is a contiguous factor of ``m``."""
    if not w.edges:
        return False
    n, k = m.degree, w.degree
    return any(m.edges[i:i + k] == w.edges for i in range(n - k + 1))


def minimal_generators(q: Quiver, monomials) -> frozenset:
    """Divisibility-minimal elements of a set of paths."""
    ms = set(monomials)
    return frozenset(
        m for m in ms if not any(w != m and divides(q, w, m) for w in ms)
    )


def is_quadratic(G: GroebnerBasis) -> bool:
    """Every element's truncation is homogeneous of degree 2."""
    return all(truncate(g).degrees() == {2} for g in G.elements)


def normal_monomials(inst: Quiver, G: GroebnerBasis) -> list:
    leads = set(G.initial_terms)
    return [
        p for p in inst.all_paths
        if not any(sub in leads for _, _, sub in _factors(inst, p))
    ]


def dimension_check(inst: Quiver, G: GroebnerBasis) -> bool:
    """Normal paths (trivial ones included) number as many as intervals / morphisms."""
    return len(normal_monomials(inst, G)) == len(inst.scopes)


def truncation_basis(G: GroebnerBasis) -> GroebnerBasis:
    """Groebner basis of the ideal generated by the truncations of ``G``."""
    return buchberger([truncate(g) for g in G.elements], G.order)
