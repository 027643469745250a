"""Edge labellings and the prefix, LEX and SBS conditions.

Labels are integers.  A labelling assigns one to every cover of a poset or
every generator of an acyclic category; a path is then read as its sequence
of labels and chains of one scope (interval, or morphism) are compared
lexicographically.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from .errors import PrefixViolation, SearchBoundExceeded, ValidationError
from .poset import Interval
from .category import Morphism
from .quiver import Path, Quiver

DEFAULT_EDGE_BOUND = 12


class EdgeLabelling(Mapping):
    """Immutable map from edge ids to integer labels."""

    def __init__(self, labels):
        self._labels = dict(labels)
        for e, v in self._labels.items():
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValidationError(f"label of {e!r} must be an integer, got {v!r}")

    def __getitem__(self, edge):
        return self._labels[edge]

    def __iter__(self):
        return iter(self._labels)

    def __len__(self):
        return len(self._labels)

    def __repr__(self):
        return f"EdgeLabelling({self._labels!r})"

    def __hash__(self):
        return hash(frozenset(self._labels.items()))

    def sequence(self, path: Path) -> tuple:
        return tuple(self._labels[e] for e in path.edges)

    def check_total(self, inst: Quiver) -> None:
        missing = [e for e in inst.edge_ids if e not in self._labels]
        if missing:
            raise ValidationError(f"labelling misses edges {missing!r}")


def as_labelling(labels) -> EdgeLabelling:
    return labels if isinstance(labels, EdgeLabelling) else EdgeLabelling(labels)


@dataclass
class Verdict:
    """Boolean outcome plus a witness when it is false."""

    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


def scope_key(scope):
    if isinstance(scope, Interval):
        return (scope.bottom, scope.top)
    if isinstance(scope, Morphism):
        return scope.id
    return scope


def _prefix_witness(seqs):
    """Two indices whose label sequences are prefix-related, or ``None``."""
    order = sorted(range(len(seqs)), key=seqs.__getitem__)
    # a prefix of c sorts before c and everything between shares the prefix
    for i, j in zip(order, order[1:]):
        a, b = seqs[i], seqs[j]
        if b[: len(a)] == a:
            return i, j
    return None


def check_prefix_condition(inst: Quiver, labels) -> Verdict:
    """No label sequence of a maximal chain is a prefix of another in the same scope."""
    lab = as_labelling(labels)
    lab.check_total(inst)
    for scope, chains in inst.scopes.items():
        if len(chains) < 2:
            continue
        hit = _prefix_witness([lab.sequence(c) for c in chains])
        if hit is not None:
            return Verdict(False, (scope, chains[hit[0]], chains[hit[1]]))
    return Verdict(True)


def least_chains(inst: Quiver, labels) -> dict:
    """Map each scope to its lexicographically least chain."""
    lab = as_labelling(labels)
    verdict = check_prefix_condition(inst, lab)
    if not verdict:
        raise PrefixViolation("labelling violates the prefix condition", verdict.witness)
    return {
        scope: min(chains, key=lab.sequence) for scope, chains in inst.scopes.items()
    }


def lex_least_chain(inst: Quiver, scope, labels) -> Path:
    lab = as_labelling(labels)
    key = scope_key(scope)
    chains = inst.chains_in(key)
    hit = _prefix_witness([lab.sequence(c) for c in chains])
    if hit is not None:
        raise PrefixViolation(f"prefix condition fails in {key!r}", (key, chains[hit[0]], chains[hit[1]]))
    return min(chains, key=lab.sequence)


def check_lex_condition(inst: Quiver, labels) -> Verdict:
    """LEX: a chain least on ``[x, t]`` and on ``[s, y]`` (``x < s < t < y``) is least on ``[x, y]``.

    The witness is ``(scope, chain, s, t)``.
    """
    least = least_chains(inst, labels)
    for scope, chains in inst.scopes.items():
        best = least[scope]
        for c in chains:
            n = c.degree
            if c == best or n < 3:
                continue
            verts = inst.vertex_sequence(c)
            low_ok = [inst.subpath(c, 0, j) == least[inst.scope(inst.subpath(c, 0, j))] for j in range(n + 1)]
            high_ok = [inst.subpath(c, i, n) == least[inst.scope(inst.subpath(c, i, n))] for i in range(n + 1)]
            for i in range(1, n - 1):
                for j in range(i + 1, n):
                    if low_ok[j] and high_ok[i]:
                        return Verdict(False, (scope, c, verts[i], verts[j]))
    return Verdict(True)


def check_sbs_condition(inst: Quiver, labels) -> Verdict:
    """SBS: every non-least chain has consecutive ``r < s < t`` not least on ``[r, t]``.

    Works for posets and for categories (where ``[r, t]`` is the morphism the
    two-step subchain composes to).  The witness is ``(scope, chain)``.
    """
    least = least_chains(inst, labels)
    for scope, chains in inst.scopes.items():
        best = least[scope]
        for c in chains:
            if c == best:
                continue
            if not any(
                least[inst.scope(sub)] != sub
                for sub in (inst.subpath(c, k, k + 2) for k in range(c.degree - 1))
            ):
                return Verdict(False, (scope, c))
    return Verdict(True)


def check_sbs_category(cat, labels) -> Verdict:
    return check_sbs_condition(cat, labels)


def search_lex_labelling(inst: Quiver, max_label: int, bound: int = DEFAULT_EDGE_BOUND):
    """First labelling into ``1..max_label`` satisfying prefix and SBS, else ``None``.

    Only dense labellings (label set ``{1..k}``) are tried: the conditions
    depend on the labels only up to order isomorphism.  Candidates run in
    lexicographic order so the result is the lexicographically smallest
    witness.
    """
    edges = inst.edge_ids
    if len(edges) > bound:
        raise SearchBoundExceeded(f"{len(edges)} edges exceeds the search bound {bound}")
    for values in dense_labellings(len(edges), max_label):
        lab = EdgeLabelling(dict(zip(edges, values)))
        if check_prefix_condition(inst, lab) and check_sbs_condition(inst, lab):
            return lab
    return None


def dense_labellings(n_edges: int, max_label: int):
    """Label tuples over ``1..max_label`` whose value set is ``{1..k}`` for some ``k``."""
    if n_edges == 0:
        yield ()
        return
    for values in itertools.product(range(1, max_label + 1), repeat=n_edges):
        top = max(values)
        if len(set(values)) == top:
            yield values
