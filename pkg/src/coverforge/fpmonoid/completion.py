"""Completion of commutative monoid presentations.

A relation ``u ~ v`` between exponent vectors is a pure-difference binomial, and
Buchberger's algorithm restricted to such binomials never leaves that class.
Rules are oriented by graded-lex order (total degree first, ties broken
lexicographically with later generators larger).

Every rule carries a trace: a chain of single rewrite steps from its lhs to its
rhs, each step using an input relation or an earlier rule.  ``verify_traces``
replays all of them.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field


def order_key(e):
    return (sum(e), e[::-1])


def weighted_revlex_key(weights):
    """Weighted degree, then reverse lex (smaller last exponent is larger).

    Every weight must be >= 1 so that the order is a well-order.
    """
    w = tuple(weights)
    if min(w, default=1) < 1:
        raise ValueError("weights must be positive")

    def key(e):
        return (sum(a * b for a, b in zip(w, e)), tuple(-x for x in reversed(e)))

    return key


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_max(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass
class Rule:
    id: int
    lhs: tuple
    rhs: tuple
    # steps: (rule id, shift, forward); forward means shift+lhs -> shift+rhs
    trace: list = field(default_factory=list, repr=False)
    axiom: bool = False

    def __post_init__(self):
        self.support = tuple((i, c) for i, c in enumerate(self.lhs) if c)
        self.rhs_support = tuple((i, c) for i, c in enumerate(self.rhs) if c)

    def matches(self, x) -> bool:
        for i, c in self.support:
            if x[i] < c:
                return False
        return True


class CompletionError(RuntimeError):
    pass


class RewriteSystem:
    """A confluent, terminating set of rules ``lhs -> rhs`` (lhs > rhs)."""

    def __init__(self, rank: int, rules, archive, key=order_key):
        self.rank = rank
        self.key = key
        self.rules = sorted(rules, key=lambda r: key(r.lhs))
        self.archive = archive  # every rule ever created, by id
        self._buckets = {}
        for r in self.rules:
            first = next((i for i, c in enumerate(r.lhs) if c), None)
            self._buckets.setdefault(first, []).append(r)

    def __len__(self):
        return len(self.rules)

    def pairs(self):
        return [(r.lhs, r.rhs) for r in self.rules]

    def _find(self, x):
        for i, c in enumerate(x):
            if c:
                for r in self._buckets.get(i, ()):
                    if r.matches(x):
                        return r
        return None

    def normal_form(self, x) -> tuple:
        x = tuple(x)
        if len(x) != self.rank:
            raise ValueError(f"expected a vector of length {self.rank}, got {len(x)}")
        r = self._find(x)
        if r is None:
            return x
        cur = list(x)
        while r is not None:
            for i, c in r.support:
                cur[i] -= c
            for i, c in r.rhs_support:
                cur[i] += c
            r = self._find(cur)
        return tuple(cur)

    def is_reducible(self, x) -> bool:
        return self._find(tuple(x)) is not None

    def is_confluent(self) -> bool:
        """Check that every critical pair joins."""
        rs = self.rules
        for i, a in enumerate(rs):
            for b in rs[i + 1:]:
                if not any(x and y for x, y in zip(a.lhs, b.lhs)):
                    continue
                m = vec_max(a.lhs, b.lhs)
                if self.normal_form(vec_add(vec_sub(m, a.lhs), a.rhs)) != self.normal_form(
                    vec_add(vec_sub(m, b.lhs), b.rhs)
                ):
                    return False
        return True

    def verify_traces(self) -> bool:
        """Replay every trace: each step must apply an axiom or an earlier rule."""
        for rule in self.archive:
            if rule.axiom:
                continue
            x = rule.lhs
            for rid, shift, forward in rule.trace:
                if rid >= rule.id:
                    return False
                used = self.archive[rid]
                src, dst = (used.lhs, used.rhs) if forward else (used.rhs, used.lhs)
                if vec_add(shift, src) != x or min(shift, default=0) < 0:
                    return False
                x = vec_add(shift, dst)
            if x != rule.rhs:
                return False
        return True


class _Completer:
    def __init__(self, rank, relations, traces=True, key=order_key):
        self.rank = rank
        self.key = key
        self.traces = traces
        self.archive: list[Rule] = []
        self.active: dict[int, Rule] = {}
        self.buckets: dict[int, list[Rule]] = {}
        self.pending = deque()
        self.pairs = []
        for u, v in relations:
            u, v = tuple(u), tuple(v)
            if key(u) < key(v):
                u, v = v, u
            ax = Rule(len(self.archive), u, v, axiom=True)
            self.archive.append(ax)
            self.pending.append((u, v, [(ax.id, (0,) * rank, True)]))

    # -- reduction with step recording --------------------------------------
    def _find(self, x):
        for i, c in enumerate(x):
            if c:
                for r in self.buckets.get(i, ()):
                    if r.matches(x):
                        return r
        return None

    def reduce(self, x):
        steps = []
        r = self._find(x)
        if r is None:
            return x, steps
        cur = list(x)
        while r is not None:
            for i, c in r.support:
                cur[i] -= c
            if self.traces:
                steps.append((r.id, tuple(cur), True))
            for i, c in r.rhs_support:
                cur[i] += c
            r = self._find(cur)
        return tuple(cur), steps

    @staticmethod
    def _reverse(steps):
        return [(rid, shift, not fwd) for rid, shift, fwd in reversed(steps)]

    def _new_rule(self, lhs, rhs, trace):
        r = Rule(len(self.archive), lhs, rhs, trace if self.traces else [])
        self.archive.append(r)
        return r

    def _activate(self, r):
        self.active[r.id] = r
        self.buckets.setdefault(r.support[0][0], []).append(r)

    def _deactivate(self, r):
        del self.active[r.id]
        self.buckets[r.support[0][0]].remove(r)

    def process_equation(self, a, b, chain):
        na, sa = self.reduce(a)
        nb, sb = self.reduce(b)
        if na == nb:
            return
        # chain: a -> b ; want na -> nb: reverse(sa) + chain + sb
        full = self._reverse(sa) + chain + sb if self.traces else []
        if self.key(na) < self.key(nb):
            na, nb = nb, na
            full = self._reverse(full) if self.traces else []
        if not any(na):
            raise CompletionError("cannot orient a relation with zero lhs")
        rule = self._new_rule(na, nb, full)
        # collapse: rules whose lhs the new rule reduces go back to the queue
        for old in list(self.active.values()):
            if rule.matches(old.lhs):
                self._deactivate(old)
                self.pending.append((old.lhs, old.rhs, [(old.id, (0,) * self.rank, True)]))
        self._activate(rule)
        # simplify right-hand sides
        for old in list(self.active.values()):
            if old.id == rule.id:
                continue
            if rule.matches(old.rhs):
                nr, steps = self.reduce(old.rhs)
                repl = self._new_rule(old.lhs, nr, [(old.id, (0,) * self.rank, True)] + steps)
                self._deactivate(old)
                self._activate(repl)
                self._add_pairs(repl)
        self._add_pairs(rule)

    def _add_pairs(self, rule):
        for other in list(self.active.values()):
            if other.id == rule.id:
                continue
            if not any(x and y for x, y in zip(rule.lhs, other.lhs)):
                continue  # coprime leading terms always join
            m = vec_max(rule.lhs, other.lhs)
            a, b = (other, rule) if other.id < rule.id else (rule, other)
            heapq.heappush(self.pairs, (self.key(m), a.id, b.id))

    def run(self):
        while self.pending or self.pairs:
            if self.pending:
                a, b, chain = self.pending.popleft()
                self.process_equation(a, b, chain)
                continue
            _, i, j = heapq.heappop(self.pairs)
            ri, rj = self.active.get(i), self.active.get(j)
            if ri is None or rj is None:
                continue
            m = vec_max(ri.lhs, rj.lhs)
            si, sj = vec_sub(m, ri.lhs), vec_sub(m, rj.lhs)
            a, b = vec_add(si, ri.rhs), vec_add(sj, rj.rhs)
            # a <- m -> b
            chain = [(ri.id, si, False), (rj.id, sj, True)]
            self.process_equation(a, b, chain)
        return RewriteSystem(self.rank, list(self.active.values()), self.archive, self.key)


def complete(rank: int, relations, traces: bool = True, check: bool = True, key=order_key) -> RewriteSystem:
    """Complete the congruence generated by ``relations`` on ``N^rank``.

    ``key`` maps an exponent vector to a sortable value defining the term order;
    it must be a well-order compatible with addition.
    """
    for u, v in relations:
        if len(u) != rank or len(v) != rank:
            raise ValueError("relation vectors must have the presentation rank")
        if min(u, default=0) < 0 or min(v, default=0) < 0:
            raise ValueError("relation vectors must be nonnegative")
    rs = _Completer(rank, relations, traces, key).run()
    if check and not rs.is_confluent():
        raise CompletionError("completion produced a non-confluent system")
    return rs
