"""Bounded Todd-Coxeter coset enumeration over the trivial subgroup.

Relator-driven (HLT-style) filling with eager coincidence processing
through a union-find: each live coset is scanned against every relator,
scans define missing cosets and force the closing edge, and detected
coincidences are merged immediately, re-queueing clashing edges.  After
its relator scans a coset's remaining undefined edges are filled with
fresh cosets, so a finished run always carries a complete table.

Resource exhaustion is an outcome, not an error; a completed table plus
``verify_table`` certifies the group order exactly.
"""

from collections import deque
from dataclasses import dataclass, field

from . import words
from .errors import InvalidParameter
from .presentation import Presentation


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = 100_000
    max_steps: int = 10_000_000

    def __post_init__(self):
        if self.max_cosets < 1 or self.max_steps < 1:
            raise InvalidParameter("enumeration limits must be positive")


@dataclass(frozen=True)
class CosetTable:
    """Complete action table; row entries are coset ids, one column per
    symbol in the order g0, g0^-1, g1, g1^-1, ..."""

    n_generators: int
    rows: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Finished:
    order: int
    table: CosetTable


@dataclass(frozen=True)
class LimitExceeded:
    live_cosets: int


Outcome = Finished | LimitExceeded


def _symbol(x: int) -> int:
    return 2 * (abs(x) - 1) + (0 if x > 0 else 1)


class _Limit(Exception):
    pass


@dataclass
class _Enumeration:
    nsym: int
    max_cosets: int
    max_steps: int
    parent: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    pending: deque = field(default_factory=deque)
    steps: int = 0

    def find(self, c):
        parent = self.parent
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def new_coset(self):
        if len(self.rows) >= self.max_cosets:
            raise _Limit
        c = len(self.rows)
        self.parent.append(c)
        self.rows.append([None] * self.nsym)
        return c

    def define(self, c, s):
        d = self.new_coset()
        self.rows[c][s] = d
        self.rows[d][s ^ 1] = c
        return d

    def tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise _Limit

    def merge(self, a, b):
        self.pending.append((a, b))
        self.process_coincidences()

    def process_coincidences(self):
        rows = self.rows
        while self.pending:
            a, b = self.pending.popleft()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            for s in range(self.nsym):
                d = rows[b][s]
                if d is None:
                    continue
                if rows[a][s] is None:
                    rows[a][s] = d
                else:
                    self.pending.append((self.find(rows[a][s]), self.find(d)))

    def set_edge(self, c, s, d):
        """Force c --s--> d, merging with any existing assignments."""
        c, d = self.find(c), self.find(d)
        e = self.rows[c][s]
        if e is None:
            self.rows[c][s] = d
        elif self.find(e) != d:
            self.merge(e, d)
            c, d = self.find(c), self.find(d)
        e = self.rows[d][s ^ 1]
        if e is None:
            self.rows[d][s ^ 1] = c
        elif self.find(e) != c:
            self.merge(e, c)

    def scan(self, c, rel):
        """Trace ``rel`` from coset ``c``, filling gaps and closing the cycle."""
        f = self.find(c)
        i, j = 0, len(rel)
        b = f
        while i < j:
            self.tick()
            d = self.rows[f][rel[i]]
            if d is None:
                break
            f = self.find(d)
            i += 1
        else:
            if f != self.find(c):
                self.merge(f, self.find(c))
            return
        while j > i:
            self.tick()
            d = self.rows[b][rel[j - 1] ^ 1]
            if d is None:
                break
            b = self.find(d)
            j -= 1
        if j == i:
            if f != b:
                self.merge(f, b)
            return
        while j > i + 1:
            self.tick()
            f = self.define(f, rel[i])
            i += 1
        self.set_edge(f, rel[i], b)

    def live_count(self):
        return sum(1 for c in range(len(self.rows)) if self.find(c) == c)


def enumerate_cosets(P: Presentation, limits: EnumerationLimits = EnumerationLimits()) -> Outcome:
    """Run the enumeration; deterministic in ``P`` and ``limits``."""
    nsym = 2 * P.n_generators
    rels = [
        tuple(_symbol(x) for x in w)
        for w in (words.cyclic_reduce(r) for r in P.relators)
        if w
    ]
    e = _Enumeration(nsym=nsym, max_cosets=limits.max_cosets, max_steps=limits.max_steps)
    try:
        e.new_coset()
        c = 0
        while c < len(e.rows):
            if e.find(c) == c:
                for rel in rels:
                    e.scan(c, rel)
                    if e.find(c) != c:
                        break
                if e.find(c) == c:
                    for s in range(nsym):
                        if e.rows[c][s] is None:
                            e.define(c, s)
            c += 1
    except _Limit:
        return LimitExceeded(e.live_count())
    live = [c for c in range(len(e.rows)) if e.find(c) == c]
    index = {c: t for t, c in enumerate(live)}
    rows = tuple(
        tuple(index[e.find(e.rows[c][s])] for s in range(nsym)) for c in live
    )
    return Finished(len(live), CosetTable(P.n_generators, rows))


def verify_table(P: Presentation, t: CosetTable) -> bool:
    """Independent check that ``t`` is a complete, consistent action of
    the presented group: full rows, inverse consistency, and every
    relator tracing to the identity from every coset."""
    rows = t.rows
    n = len(rows)
    if n == 0 or t.n_generators != P.n_generators:
        return False
    nsym = 2 * P.n_generators
    for row in rows:
        if len(row) != nsym:
            return False
        for d in row:
            if not isinstance(d, int) or not 0 <= d < n:
                return False
    for c in range(n):
        for s in range(nsym):
            if rows[rows[c][s]][s ^ 1] != c:
                return False
    for rel in P.relators:
        syms = [_symbol(x) for x in rel]
        for c in range(n):
            d = c
            for s in syms:
                d = rows[d][s]
            if d != c:
                return False
    return True
