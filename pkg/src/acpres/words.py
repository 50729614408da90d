"""Free-group words stored as flat tuples of signed letters.

Letter encoding: generator ``k`` (0-based) appears as ``+(k+1)``, its
inverse as ``-(k+1)``.  The empty tuple is the identity.  All functions
are pure; ``concat`` and ``substitute`` deliberately return unreduced
words so that cancellation stays an explicit, replayable step, while
``reduce``/``cyclic_reduce`` provide the reduced layer.
"""

import re

from .errors import GeneratorOutOfRange, ParseError, SameGenerator

Word = tuple[int, ...]


def letter(gen: int, sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return (gen + 1) * sign


def gen_index(x: int) -> int:
    return abs(x) - 1


def sign_of(x: int) -> int:
    return 1 if x > 0 else -1


def reduce(w) -> Word:
    """Freely reduce ``w``; the result is the unique reduced form."""
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w) -> bool:
    return all(w[t] != -w[t + 1] for t in range(len(w) - 1))


def invert(w) -> Word:
    return tuple(-x for x in reversed(w))


def concat(u, v) -> Word:
    return tuple(u) + tuple(v)


def rotate(w, k: int) -> Word:
    """Cyclic left rotation by ``k`` (taken mod the length)."""
    w = tuple(w)
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def substitute(w, i: int, j: int, s: int) -> Word:
    """Rewrite generator ``i`` as ``i`` followed by ``j^s`` throughout.

    Occurrences of the inverse letter pick up the inverse factor on the
    left, so the rewrite is a homomorphism.  Not auto-reduced.
    """
    if i == j:
        raise SameGenerator(f"substitute needs distinct generators, got {i} twice")
    if s not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {s}")
    pos = i + 1
    out = []
    for x in w:
        if x == pos:
            out.append(x)
            out.append((j + 1) * s)
        elif x == -pos:
            out.append((j + 1) * -s)
            out.append(x)
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w) -> Word:
    """Freely reduce, then strip mutually inverse first/last letters."""
    r = reduce(w)
    a, b = 0, len(r)
    while b - a >= 2 and r[a] == -r[b - 1]:
        a += 1
        b -= 1
    return r[a:b]


def is_cyclically_reduced(w) -> bool:
    return is_reduced(w) and not (len(w) >= 2 and w[0] == -w[-1])


def exponent_vector(w, n: int) -> tuple[int, ...]:
    """Signed letter counts per generator; length ``n``."""
    v = [0] * n
    for x in w:
        g = abs(x) - 1
        if g >= n:
            raise GeneratorOutOfRange(f"letter for generator {g} with only {n} declared")
        v[g] += 1 if x > 0 else -1
    return tuple(v)


def word_key(w):
    """Sort key ordering letters a < a^-1 < b < b^-1 < ..."""
    return tuple((abs(x) - 1, 0 if x > 0 else 1) for x in w)


def min_cyclic(w) -> Word:
    """Least word, under ``word_key``, among all rotations of the
    cyclic reduction of ``w`` and of its inverse."""
    w = cyclic_reduce(w)
    if not w:
        return w
    best = None
    best_key = None
    for cand in (w, invert(w)):
        for k in range(len(cand)):
            rot = cand[k:] + cand[:k]
            key = word_key(rot)
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return best


# --- text form ------------------------------------------------------------
#
# Words print as whitespace-separated letters, a letter being a generator
# name optionally followed by ^-1; the empty word is the literal "1".

_TOKEN_RE = re.compile(r"\S+")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def default_names(n: int) -> list[str]:
    return [chr(ord("a") + k) if k < 26 else f"g{k + 1}" for k in range(n)]


def fresh_name(names) -> str:
    used = set(names)
    k = 0
    while True:
        cand = chr(ord("a") + k) if k < 26 else f"g{k + 1}"
        if cand not in used:
            return cand
        k += 1


def format_word(w, names) -> str:
    if not w:
        return "1"
    return " ".join(names[abs(x) - 1] + ("" if x > 0 else "^-1") for x in w)


def parse_word(text: str, name_to_index, base: int = 0) -> Word:
    """Parse the word syntax; ``base`` offsets reported error positions."""
    tokens = [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]
    if len(tokens) == 1 and tokens[0][0] == "1":
        return ()
    out = []
    for tok, pos in tokens:
        if tok == "1":
            raise ParseError("'1' denotes the empty word and cannot mix with letters", base + pos)
        name, sep, sup = tok.partition("^")
        if sep and sup != "-1":
            raise ParseError(f"bad exponent {sup!r}, only ^-1 is supported", base + pos)
        if not _NAME_RE.match(name):
            raise ParseError(f"bad generator name {name!r}", base + pos)
        if name not in name_to_index:
            raise ParseError(f"unknown generator {name!r}", base + pos)
        g = name_to_index[name]
        out.append(-(g + 1) if sep else g + 1)
    return tuple(out)
