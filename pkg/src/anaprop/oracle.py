"""Brute-force reference for the finite-algebra decision procedure.

Enumerates every term of the fragment up to a depth bound, evaluates each one
directly under every assignment, and transcribes the proportion definition
literally over the resulting rule universe.  With the depth set to at least
the number of reachable behavior states, every behavior class is realized
within the bound and the bounded comparisons coincide with the unbounded
ones, so the oracle is exact.  It is allowed to be exponential.
"""
from __future__ import annotations

import itertools
from typing import Optional

from .algebras import FiniteAlgebra, eval_term
from .decider import Verdict
from .terms import App, RewriteRule, Signature, Term, Var, variables


class OracleBudgetExceeded(Exception):
    """The enumerated term universe outgrew the configured limit."""


def enumerate_terms(signature: Signature, k: int, ell: Optional[int],
                    depth: int, limit: Optional[int] = None) -> list[Term]:
    """Every term over x1..xk within ``depth``, respecting the occurrence bound.

    Complete and duplicate-free; ordered by depth, then by construction order.
    """
    occs: dict[Term, tuple[int, ...]] = {}
    out: list[Term] = []

    def push(term: Term, occ: tuple[int, ...]) -> None:
        if ell is not None and any(n > ell for n in occ):
            return
        if limit is not None and len(out) >= limit:
            raise OracleBudgetExceeded(f"term universe exceeds {limit} terms")
        occs[term] = occ
        out.append(term)

    for v in range(k):
        push(Var(f"x{v + 1}"), tuple(1 if i == v else 0 for i in range(k)))
    for sym in signature.constants():
        push(App(sym), (0,) * k)
    previous_start = 0
    for _ in range(depth):
        level_start = previous_start
        known = list(out)
        new_start = len(out)
        for sym, rank in signature.symbols():
            if rank == 0:
                continue
            for combo in itertools.product(range(len(known)), repeat=rank):
                if all(c < level_start for c in combo):
                    continue  # no child from the previous level: depth not reached
                occ = tuple(
                    sum(occs[known[c]][v] for c in combo) for v in range(k)
                )
                push(App(sym, tuple(known[c] for c in combo)), occ)
        if new_start == len(out):
            break
        previous_start = new_start
    return out


def oracle_justifications(a: str, b: str, algebra: FiniteAlgebra, k: int,
                          ell: Optional[int], depth: int) -> set[RewriteRule]:
    """All in-fragment rules s -> t with a shared assignment sending s, t to a, b."""
    terms = enumerate_terms(algebra.signature, k, ell, depth)
    assignments = [
        dict(zip([f"x{i + 1}" for i in range(k)], values))
        for values in itertools.product(algebra.carrier, repeat=k)
    ]
    vectors = [tuple(eval_term(t, alpha, algebra) for alpha in assignments) for t in terms]
    masks = [variables(t) for t in terms]
    out: set[RewriteRule] = set()
    for i, s in enumerate(terms):
        for j, t in enumerate(terms):
            if not masks[j] <= masks[i]:
                continue
            if any(x == a and y == b for x, y in zip(vectors[i], vectors[j])):
                out.add(RewriteRule(s, t))
    return out


class OracleUniverse:
    """The bounded rule universe of an algebra pair, grouped by observed behavior.

    Terms with identical value vectors (in both algebras) and identical
    variable sets are interchangeable in every membership and comparison the
    proportion definition makes, so rule-set comparisons factor through these
    observation classes.
    """

    def __init__(self, first: FiniteAlgebra, second: Optional[FiniteAlgebra] = None,
                 k: int = 1, ell: Optional[int] = None, depth: int = 3,
                 limit: Optional[int] = None):
        self.first = first
        self.second = second if second is not None else first
        if self.second.signature.ranks != first.signature.ranks:
            raise ValueError("the two algebras must share a signature")
        self.k = k
        terms = enumerate_terms(first.signature, k, ell, depth, limit)
        names = [f"x{i + 1}" for i in range(k)]
        self._assignments = [
            [dict(zip(names, values)) for values in itertools.product(alg.carrier, repeat=k)]
            for alg in (self.first, self.second)
        ]
        class_index: dict[tuple, int] = {}
        self.class_vectors: list[tuple] = []
        self.class_reps: list[Term] = []
        for t in terms:
            key = (
                tuple(eval_term(t, alpha, self.first) for alpha in self._assignments[0]),
                tuple(eval_term(t, alpha, self.second) for alpha in self._assignments[1]),
                frozenset(variables(t)),
            )
            if key not in class_index:
                class_index[key] = len(self.class_vectors)
                self.class_vectors.append(key)
                self.class_reps.append(t)
        self._build_pairs()

    def _build_pairs(self) -> None:
        by_side: list[dict[tuple[str, str], set[int]]] = [{}, {}]
        trivial: set[int] = set()
        pairs: list[tuple[int, int]] = []
        carriers = [self.first.carrier, self.second.carrier]
        for i, (vec_a_i, vec_b_i, mask_i) in enumerate(self.class_vectors):
            for j, (vec_a_j, vec_b_j, mask_j) in enumerate(self.class_vectors):
                if not mask_j <= mask_i:
                    continue
                pid = len(pairs)
                pairs.append((i, j))
                is_trivial = True
                for m, (vi, vj) in enumerate([(vec_a_i, vec_a_j), (vec_b_i, vec_b_j)]):
                    hits = set(zip(vi, vj))
                    for hit in hits:
                        by_side[m].setdefault(hit, set()).add(pid)
                    if len(hits) != len(carriers[m]) ** 2:
                        is_trivial = False
                if is_trivial:
                    trivial.add(pid)
        self.pairs = pairs
        self.by_side = [
            {key: frozenset(v) for key, v in side.items()} for side in by_side
        ]
        self.trivial = frozenset(trivial)

    def _side(self, side: int, a: str, b: str) -> frozenset[int]:
        return self.by_side[side].get((a, b), frozenset())

    def decide_arrow(self, a: str, b: str, c: str, d: str, swap: bool = False) -> Verdict:
        left, right = (1, 0) if swap else (0, 1)
        label = f"{a}->{b} :. {c}->{d}"
        lhs = self._side(left, a, b)
        rhs = self._side(right, c, d)
        if (lhs | rhs) <= self.trivial:
            return Verdict(True, "all-trivial", arrow=label)
        shared = (lhs & rhs) - self.trivial
        carrier = (self.first if right == 0 else self.second).carrier
        if not shared:
            return Verdict(False, "empty-intersection", arrow=label)
        for d2 in carrier:
            other = (lhs & self._side(right, c, d2)) - self.trivial
            if shared < other:
                return Verdict(False, "not-maximal", counter=d2, arrow=label)
        return Verdict(True, "maximal", arrow=label)

    def decide(self, a: str, b: str, c: str, d: str) -> Verdict:
        arrows = [
            self.decide_arrow(a, b, c, d),
            self.decide_arrow(b, a, d, c),
            self.decide_arrow(c, d, a, b, swap=True),
            self.decide_arrow(d, c, b, a, swap=True),
        ]
        for verdict in arrows:
            if not verdict.holds:
                return verdict
        reason = "maximal" if any(v.reason == "maximal" for v in arrows) else "all-trivial"
        return Verdict(True, reason)

    def solve(self, a: str, b: str, c: str) -> list[str]:
        return [d for d in self.second.carrier if self.decide(a, b, c, d).holds]


def oracle_decide(a: str, b: str, c: str, d: str, first: FiniteAlgebra,
                  second: Optional[FiniteAlgebra] = None, k: int = 1,
                  ell: Optional[int] = None, depth: int = 3,
                  limit: Optional[int] = None) -> Verdict:
    """One-shot reference decision of a : b :: c : d at the given depth."""
    return OracleUniverse(first, second, k, ell, depth, limit).decide(a, b, c, d)
