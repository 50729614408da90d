"""Shared test helpers: independent oracles and random generators."""

import itertools

from acpres.presentation import MovePolicy, Presentation, enumerate_moves
from acpres.heegaard import Crossing, HeegaardDiagram


# --- independent oracles -----------------------------------------------------


def oracle_reduce(w):
    """Free reduction by repeated single-pass adjacent-pair deletion until
    a fixpoint; independent of the stack-based implementation."""
    w = list(w)
    while True:
        out = []
        i = 0
        changed = False
        while i < len(w):
            if i + 1 < len(w) and w[i] == -w[i + 1]:
                i += 2
                changed = True
            else:
                out.append(w[i])
                i += 1
        w = out
        if not changed:
            return tuple(w)


def oracle_det(rows):
    """Determinant by permutation expansion; exact for small matrices."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            k = start
            while not seen[k]:
                seen[k] = True
                k = perm[k]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def perm_compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def perm_group_order(gens):
    """Order of the permutation group generated by ``gens`` (tuples),
    by closure under composition."""
    n = len(gens[0])
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = perm_compose(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def perm_eval_word(word, gens):
    """Evaluate a relator word in a concrete permutation group; generator
    k maps to gens[k]."""
    n = len(gens[0])
    inv = [tuple(sorted(range(n), key=lambda i: g[i])) for g in gens]
    out = tuple(range(n))
    for x in word:
        p = gens[abs(x) - 1] if x > 0 else inv[abs(x) - 1]
        out = perm_compose(out, p)
    return out


def cyclic_perm_gens(k):
    return [tuple((i + 1) % k for i in range(k))]


def dihedral_perm_gens(n):
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return [rot, ref]


# --- random generators -------------------------------------------------------


def random_word(rng, n_gens, max_len):
    length = rng.randrange(0, max_len + 1)
    return tuple(
        rng.choice((1, -1)) * rng.randrange(1, n_gens + 1) for _ in range(length)
    )


def random_presentation(rng, max_n=4, max_total=20, balanced=True):
    n = rng.randrange(1, max_n + 1)
    m = n if balanced else rng.randrange(1, max_n + 1)
    rels = []
    remaining = max_total
    for _ in range(m):
        L = rng.randrange(0, max(1, min(remaining, 8)) + 1)
        remaining -= L
        rels.append(tuple(rng.choice((1, -1)) * rng.randrange(1, n + 1) for _ in range(L)))
    return Presentation(n, rels)


def random_applicable_move(rng, P, move_set, max_generators=8, max_total_length=64):
    policy = MovePolicy(move_set, max_generators=max_generators, max_total_length=max_total_length)
    moves = enumerate_moves(P, policy)
    return rng.choice(moves) if moves else None


def random_diagram(rng, max_curves=4, max_crossings=20):
    """Random balanced diagram; component 0 usually carries at least two
    curve pairs so handle slides stay applicable."""
    layouts = [[2], [3], [4], [2, 1], [2, 2], [3, 1], [1], [1, 1]]
    layout = rng.choice([l for l in layouts if sum(l) <= max_curves])
    genus = [rng.randrange(0, 3) for _ in layout]
    alpha_component = []
    beta_component = []
    for comp, k in enumerate(layout):
        alpha_component.extend([comp] * k)
        beta_component.extend([comp] * k)
    crossings = []
    alpha_next = {a: 0 for a in range(len(alpha_component))}
    budget = max_crossings
    for b, comp in enumerate(beta_component):
        alphas = [a for a, c in enumerate(alpha_component) if c == comp]
        L = rng.randrange(0, min(5, budget) + 1)
        budget -= L
        for pos in range(L):
            a = rng.choice(alphas)
            crossings.append(
                Crossing(b, pos, a, alpha_next[a], rng.choice((1, -1)))
            )
            alpha_next[a] += 1
    return HeegaardDiagram(genus, alpha_component, beta_component, crossings)
