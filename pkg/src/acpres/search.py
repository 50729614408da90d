"""Bounded search for move sequences between presentation classes.

States are deduplicated by canonical form.  Because the canonical form
already quotients by rotation, inversion, free/cyclic reduction, relator
order and relabelling, the useful branching is not the raw single-move
set (most of which is the identity on classes) but a small family of
composite edges, each a short primitive move sequence:

* splice: compose relator i with a rotation of relator j or of its
  inverse, at any cyclic position of relator i, then reduce - this is
  composition conjugated by the rotation/inversion moves it quotients;
* replace (extended move set only);
* stabilize / destabilize.

Every edge materialises as explicit primitive moves, so a successful
search emits a transcript that replays move by move from the input
presentation.  The edge family is invariant under the symmetries the
canonical form quotients by, which makes dedup pruning sound: two states
with equal canonical forms reach the same canonical classes.
"""

import heapq
from collections import deque
from dataclasses import dataclass, field

from . import words
from .errors import AcpresError, InvalidParameter, Unbalanced
from .invariants import abs_det, exponent_matrix, padded_row_space
from .presentation import (
    Cancel,
    CanonicalPresentation,
    Compose,
    Destabilize,
    Invert,
    MovePolicy,
    Presentation,
    Replace,
    Rotate,
    Stabilize,
    Transcript,
    _canonical_key,
    apply_move,
    enumerate_moves,
    normalize,
    verify_transcript,
)


def _key(n_generators, rels):
    return n_generators, _canonical_key(n_generators, rels)


@dataclass(frozen=True)
class SearchConfig:
    move_set: str = "eac"
    strategy: str = "greedy"
    max_depth: int | None = 16
    max_total_length: int | None = 20
    max_generators: int = 4
    node_budget: int | None = 100_000
    goal: str = "trivial"
    self_check: bool = False

    def __post_init__(self):
        if self.move_set not in ("sac", "eac"):
            raise InvalidParameter(f"move_set must be 'sac' or 'eac', got {self.move_set!r}")
        if self.strategy not in ("bfs", "iddfs", "greedy"):
            raise InvalidParameter(f"unknown strategy {self.strategy!r}")
        goal_rank(self.goal)
        for bound in (self.max_depth, self.max_total_length, self.node_budget):
            if bound is not None and bound < 1:
                raise InvalidParameter("bounds must be positive")
        if self.max_generators < 1:
            raise InvalidParameter("max_generators must be positive")


@dataclass
class SearchResult:
    outcome: str  # "found" | "exhausted" | "budget_exceeded"
    transcript: Transcript | None
    nodes_expanded: int
    dedup_hits: int
    frontier_stats: dict | None = None


def goal_rank(goal: str):
    """None for the 'trivial' goal, else the k of 'rank:k'."""
    if goal == "trivial":
        return None
    name, _, arg = goal.partition(":")
    if name == "rank":
        try:
            k = int(arg)
        except ValueError:
            k = 0
        if k >= 1:
            return k
    raise InvalidParameter(f"goal must be 'trivial' or 'rank:<k>', got {goal!r}")


def goal_satisfied(canon: CanonicalPresentation, goal: str) -> bool:
    """Trivial goal: every relator kills a distinct generator.  Rank goal:
    exactly k generators, each relator empty or a distinct single
    generator (the '(c | 1)' shape and its mixtures)."""
    return _goal_on_key((canon.n_generators, canon.relators), goal)


def _goal_on_key(key, goal) -> bool:
    n, relators = key
    rank = goal_rank(goal)
    if rank is None:
        return n >= 1 and relators == tuple((k + 1,) for k in range(n))
    if n != rank:
        return False
    singles = []
    for r in relators:
        if len(r) > 1:
            return False
        if len(r) == 1:
            singles.append(abs(r[0]))
    return len(singles) == len(set(singles))


# --- composite edges ---------------------------------------------------------


def _tidy_relator_moves(rels, i):
    """Primitive moves bringing relator ``i`` to cyclically reduced form;
    mutates ``rels`` in place and returns the move list."""
    moves = []
    rel = list(rels[i])
    while True:
        for pos in range(len(rel) - 1):
            if rel[pos] == -rel[pos + 1]:
                moves.append(Cancel(i, pos))
                del rel[pos : pos + 2]
                break
        else:
            if len(rel) >= 2 and rel[0] == -rel[-1]:
                moves.append(Rotate(i, 1))
                rel = rel[1:] + rel[:1]
                moves.append(Cancel(i, len(rel) - 2))
                del rel[-2:]
                continue
            break
    rels[i] = tuple(rel)
    return moves


def _splice_result(rels, i, j, p, k, inv):
    other = words.invert(rels[j]) if inv else rels[j]
    return words.cyclic_reduce(words.rotate(rels[i], p) + words.rotate(other, k))


def _edges(n_generators, rels, cfg: SearchConfig):
    """Deterministic edge stream: (descriptor, n_generators, relators).

    Successor relators are cyclically reduced; the matching primitive
    moves are materialised lazily by ``_materialize``.
    """
    total = sum(len(r) for r in rels)
    cap = cfg.max_total_length
    m = len(rels)
    for i in range(m):
        for j in range(m):
            if i == j or not rels[j]:
                continue
            for p in range(max(1, len(rels[i]))):
                for k in range(len(rels[j])):
                    for inv in (False, True):
                        new = _splice_result(rels, i, j, p, k, inv)
                        if cap is not None and total - len(rels[i]) + len(new) > cap:
                            continue
                        out = list(rels)
                        out[i] = new
                        yield ("splice", i, j, p, k, inv), n_generators, tuple(out)
    if cfg.move_set == "eac":
        for i in range(n_generators):
            for j in range(n_generators):
                if i == j:
                    continue
                for s in (1, -1):
                    out = tuple(
                        words.cyclic_reduce(words.substitute(r, i, j, s)) for r in rels
                    )
                    if cap is not None and sum(len(r) for r in out) > cap:
                        continue
                    yield ("replace", i, j, s), n_generators, out
    if n_generators + 1 <= cfg.max_generators and (cap is None or total + 1 <= cap):
        yield ("stab",), n_generators + 1, rels + ((n_generators + 1,),)
    if n_generators > 1:
        for r, w in enumerate(rels):
            if len(w) != 1:
                continue
            g = abs(w[0]) - 1
            if any(
                any(abs(x) - 1 == g for x in rel)
                for t, rel in enumerate(rels)
                if t != r
            ):
                continue
            out = tuple(
                tuple(x - (1 if x > 0 else -1) if abs(x) - 1 > g else x for x in rel)
                for t, rel in enumerate(rels)
                if t != r
            )
            yield ("destab", g, r), n_generators - 1, out


def _materialize(P: Presentation, desc):
    """Primitive moves realising edge ``desc`` from ``P``; returns
    (moves, successor).  The successor's canonical form equals that of
    the cheap successor produced by ``_edges``."""
    kind = desc[0]
    if kind == "splice":
        _, i, j, p, k, inv = desc
        moves = []
        if p:
            moves.append(Rotate(i, p))
        if inv:
            moves.append(Invert(j))
        if k:
            moves.append(Rotate(j, k))
        moves.append(Compose(i, j))
        if k:
            moves.append(Rotate(j, len(P.relators[j]) - k))
        if inv:
            moves.append(Invert(j))
        state = P
        for mv in moves:
            state = apply_move(state, mv)
        rels = list(state.relators)
        moves.extend(_tidy_relator_moves(rels, i))
        return tuple(moves), Presentation(P.n_generators, rels)
    if kind == "replace":
        _, i, j, s = desc
        moves = [Replace(i, j, s)]
        state = apply_move(P, moves[0])
        rels = list(state.relators)
        for t in range(len(rels)):
            moves.extend(_tidy_relator_moves(rels, t))
        return tuple(moves), Presentation(P.n_generators, rels)
    if kind == "stab":
        return (Stabilize(),), apply_move(P, Stabilize())
    if kind == "destab":
        _, g, r = desc
        mv = Destabilize(g, r)
        return (mv,), apply_move(P, mv)
    raise InvalidParameter(f"unknown edge {desc!r}")


@dataclass
class _Node:
    state: Presentation
    parent: int
    edge_moves: tuple
    depth: int


@dataclass
class _Space:
    """Bookkeeping shared by the strategies."""

    cfg: SearchConfig
    nodes: list = field(default_factory=list)
    visited: dict = field(default_factory=dict)
    nodes_expanded: int = 0
    dedup_hits: int = 0
    budget_hit: bool = False
    root_det: int | None = None
    root_space = None

    def check_invariants(self, P):
        if abs_det(exponent_matrix(P)) != self.root_det:
            raise AcpresError("self-check failed: |det| changed along an edge")
        if self.cfg.move_set == "sac":
            n = max(P.n_generators, self.root_space.n_cols)
            if padded_row_space(P, n) != self.root_space:
                raise AcpresError("self-check failed: mod-2 row space changed")


def _prepare_root(P: Presentation, cfg: SearchConfig):
    rels = list(P.relators)
    moves = []
    for i in range(len(rels)):
        moves.extend(_tidy_relator_moves(rels, i))
    return tuple(moves), Presentation(P.n_generators, rels)


def _reconstruct(space: _Space, nid: int, P: Presentation, prefix) -> Transcript:
    chunks = []
    while nid != -1:
        node = space.nodes[nid]
        chunks.append(node.edge_moves)
        nid = node.parent
    moves = list(prefix)
    for chunk in reversed(chunks[:-1]):  # root node carries no edge moves
        moves.extend(chunk)
    return Transcript(P, tuple(moves))


def search_trivialization(P: Presentation, cfg: SearchConfig) -> SearchResult:
    """Search for a replayable trivialization under the config bounds."""
    if not P.balanced:
        raise Unbalanced("search requires a balanced presentation")
    space = _Space(cfg)
    if cfg.self_check:
        space.root_det = abs_det(exponent_matrix(P))
        space.root_space = padded_row_space(P, max(P.n_generators, cfg.max_generators))
    prefix, root = _prepare_root(P, cfg)
    root_key = _key(root.n_generators, root.relators)
    space.nodes.append(_Node(root, -1, (), 0))
    space.visited[root_key] = 0
    if _goal_on_key(root_key, cfg.goal):
        t = Transcript(P, prefix)
        verify_transcript(t)
        return SearchResult("found", t, 0, 0)
    if cfg.strategy == "iddfs":
        return _run_iddfs(space, P, prefix)
    return _run_queue(space, P, prefix)


def _expand(space: _Space, nid: int):
    """Yield child node ids; sets ``budget_hit`` instead of overrunning."""
    cfg = space.cfg
    node = space.nodes[nid]
    space.nodes_expanded += 1
    for desc, n, rels in _edges(node.state.n_generators, node.state.relators, cfg):
        key = _key(n, rels)
        if key in space.visited:
            space.dedup_hits += 1
            continue
        if cfg.node_budget is not None and len(space.nodes) >= cfg.node_budget:
            space.budget_hit = True
            return
        moves, child_state = _materialize(node.state, desc)
        if cfg.self_check:
            space.check_invariants(child_state)
        child = len(space.nodes)
        space.nodes.append(_Node(child_state, nid, moves, node.depth + 1))
        space.visited[key] = child
        yield child, key


def _run_queue(space: _Space, P, prefix) -> SearchResult:
    cfg = space.cfg
    if cfg.strategy == "greedy":
        frontier = [(space.nodes[0].state.reduced_total_length, 0)]
        pop = lambda: heapq.heappop(frontier)[1]
        push = lambda nid: heapq.heappush(
            frontier, (space.nodes[nid].state.reduced_total_length, nid)
        )
    else:
        frontier = deque([0])
        pop = frontier.popleft
        push = frontier.append
    while frontier:
        nid = pop()
        if cfg.max_depth is not None and space.nodes[nid].depth >= cfg.max_depth:
            continue
        for child, key in _expand(space, nid):
            if _goal_on_key(key, cfg.goal):
                t = _reconstruct(space, child, P, prefix)
                final = verify_transcript(t)
                if (normalize(final).n_generators, normalize(final).relators) != key:
                    raise AcpresError("internal error: transcript does not replay to the goal")
                return SearchResult("found", t, space.nodes_expanded, space.dedup_hits)
            push(child)
        if space.budget_hit:
            return SearchResult(
                "budget_exceeded", None, space.nodes_expanded, space.dedup_hits
            )
    stats = {"states": len(space.visited), "max_depth": max(n.depth for n in space.nodes)}
    return SearchResult(
        "exhausted", None, space.nodes_expanded, space.dedup_hits, frontier_stats=stats
    )


def _run_iddfs(space: _Space, P, prefix) -> SearchResult:
    cfg = space.cfg
    max_depth = cfg.max_depth if cfg.max_depth is not None else 2**30
    root = space.nodes[0]
    root_key = _key(root.state.n_generators, root.state.relators)
    total_expanded = 0
    total_dedup = 0
    seen_states = {root_key}
    for limit in range(1, max_depth + 1):
        space.nodes = [root]
        space.visited = {root_key: 0}
        space.nodes_expanded = 0
        space.dedup_hits = 0
        space.budget_hit = False
        stack = [0]
        while stack:
            nid = stack.pop()
            if space.nodes[nid].depth >= limit:
                continue
            children = list(_expand(space, nid))
            if space.budget_hit:
                return SearchResult(
                    "budget_exceeded",
                    None,
                    total_expanded + space.nodes_expanded,
                    total_dedup + space.dedup_hits,
                )
            for child, key in children:
                seen_states.add(key)
                if _goal_on_key(key, cfg.goal):
                    t = _reconstruct(space, child, P, prefix)
                    verify_transcript(t)
                    return SearchResult(
                        "found",
                        t,
                        total_expanded + space.nodes_expanded,
                        total_dedup + space.dedup_hits,
                    )
                stack.append(child)
        total_expanded += space.nodes_expanded
        total_dedup += space.dedup_hits
    stats = {"states": len(seen_states), "max_depth": max_depth}
    return SearchResult("exhausted", None, total_expanded, total_dedup, frontier_stats=stats)


def reachable_set(P: Presentation, cfg: SearchConfig) -> set:
    """All canonical forms reachable under the config bounds."""
    if not P.balanced:
        raise Unbalanced("reachable_set requires a balanced presentation")
    if cfg.max_total_length is None:
        raise InvalidParameter("reachable_set needs a total length cap to stay finite")
    root_det = abs_det(exponent_matrix(P)) if cfg.self_check else None
    root_space = (
        padded_row_space(P, max(P.n_generators, cfg.max_generators))
        if cfg.self_check and cfg.move_set == "sac"
        else None
    )
    root = normalize(P)
    root_key = (root.n_generators, root.relators)
    seen = {root_key}
    queue = deque([(root_key, 0)])
    while queue:
        (n, rels), depth = queue.popleft()
        if cfg.max_depth is not None and depth >= cfg.max_depth:
            continue
        for _, n2, rels2 in _edges(n, rels, cfg):
            key = _key(n2, rels2)
            if key in seen:
                continue
            if cfg.node_budget is not None and len(seen) >= cfg.node_budget:
                return {CanonicalPresentation(*k) for k in seen}
            if root_det is not None or root_space is not None:
                child = Presentation(n2, rels2)
                if root_det is not None and abs_det(exponent_matrix(child)) != root_det:
                    raise AcpresError("self-check failed: |det| changed along an edge")
                if root_space is not None:
                    nn = max(child.n_generators, root_space.n_cols)
                    if padded_row_space(child, nn) != root_space:
                        raise AcpresError("self-check failed: mod-2 row space changed")
            seen.add(key)
            queue.append((key, depth + 1))
    return {CanonicalPresentation(*k) for k in seen}


def greedy_simplify(P: Presentation, budget: int | None = None) -> Transcript:
    """Repeatedly apply the single presentation-shaped move (no
    stabilization moves) that best shrinks (reduced length, raw length),
    lexicographically; stops at a local minimum or the budget."""
    if not P.balanced:
        raise Unbalanced("greedy_simplify requires a balanced presentation")
    policy = MovePolicy("eac", max_generators=P.n_generators, max_total_length=None)
    state = P
    applied = []
    while budget is None or len(applied) < budget:
        cost = (state.reduced_total_length, state.total_length)
        best = None
        best_cost = cost
        for mv in enumerate_moves(state, policy):
            if isinstance(mv, (Stabilize, Destabilize)):
                continue
            nxt = apply_move(state, mv)
            nxt_cost = (nxt.reduced_total_length, nxt.total_length)
            if nxt_cost < best_cost:
                best, best_cost = (mv, nxt), nxt_cost
        if best is None:
            break
        applied.append(best[0])
        state = best[1]
    return Transcript(P, tuple(applied))
