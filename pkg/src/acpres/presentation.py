"""Balanced presentations, the extended Andrews-Curtis move algebra,
canonical forms and replayable transcripts.

Moves come in two flavours.  The primitive set is composition, inversion,
cancellation/insertion, stabilization/destabilization and replacement;
``Rotate`` is a derived move (a cyclic shift of one relator) that the
verifier accepts by default and rejects in strict mode, since start-point
independence is an assumption rather than a primitive.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import words
from .errors import (
    AcpresError,
    DestabilizeBlocked,
    IndexOutOfRange,
    InvalidMoveAt,
    InvalidParameter,
    NotACancellablePair,
    NotInvertibleAsSingleMove,
    ParseError,
    SameGenerator,
)
from .words import Word, word_key


@dataclass(frozen=True)
class Presentation:
    """``n_generators`` and an ordered tuple of relator words."""

    n_generators: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if self.n_generators < 0:
            raise InvalidParameter("generator count must be nonnegative")
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.n_generators:
                    raise IndexOutOfRange(
                        f"letter {x} outside generator range 1..{self.n_generators}"
                    )

    @property
    def balanced(self) -> bool:
        return self.n_generators == len(self.relators)

    @property
    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    @property
    def reduced_total_length(self) -> int:
        return sum(len(words.reduce(r)) for r in self.relators)


# --- moves ------------------------------------------------------------------


@dataclass(frozen=True)
class Compose:
    """relator_i <- relator_i . relator_j (raw concatenation)."""

    i: int
    j: int


@dataclass(frozen=True)
class Invert:
    i: int


@dataclass(frozen=True)
class Cancel:
    """Delete the adjacent inverse pair at ``pos``, ``pos+1`` in relator ``i``."""

    i: int
    pos: int


@dataclass(frozen=True)
class Insert:
    """Insert the cancelling pair g^s g^-s at ``pos`` in relator ``i``."""

    i: int
    pos: int
    g: int
    s: int


@dataclass(frozen=True)
class Stabilize:
    pass


@dataclass(frozen=True)
class Destabilize:
    """Remove generator ``g`` and relator ``r``; higher generator indices
    shift down by one."""

    g: int
    r: int


@dataclass(frozen=True)
class Replace:
    """Substitute g_i -> g_i g_j^s in every relator."""

    i: int
    j: int
    s: int


@dataclass(frozen=True)
class Rotate:
    """Cyclic left shift of relator ``r`` by ``k`` (derived move)."""

    r: int
    k: int


Move = Compose | Invert | Cancel | Insert | Stabilize | Destabilize | Replace | Rotate


@dataclass(frozen=True)
class Transcript:
    initial: Presentation
    moves: tuple[Move, ...]

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))


def _check_relator(P, i):
    if not 0 <= i < len(P.relators):
        raise IndexOutOfRange(f"relator index {i} out of range 0..{len(P.relators) - 1}")


def _check_generator(P, g):
    if not 0 <= g < P.n_generators:
        raise IndexOutOfRange(f"generator index {g} out of range 0..{P.n_generators - 1}")


def _shift_down(w, g):
    return tuple(x - (1 if x > 0 else -1) if abs(x) - 1 > g else x for x in w)


def _shift_up(w, g):
    """Inverse of ``_shift_down`` (indices >= g move up)."""
    return tuple(x + (1 if x > 0 else -1) if abs(x) - 1 >= g else x for x in w)


def apply_move(P: Presentation, m: Move) -> Presentation:
    """Apply one move, validating its parameters against ``P``."""
    rels = list(P.relators)
    if isinstance(m, Compose):
        _check_relator(P, m.i)
        _check_relator(P, m.j)
        if m.i == m.j:
            raise SameGenerator("compose needs two distinct relators")
        rels[m.i] = words.concat(rels[m.i], rels[m.j])
        return Presentation(P.n_generators, rels)
    if isinstance(m, Invert):
        _check_relator(P, m.i)
        rels[m.i] = words.invert(rels[m.i])
        return Presentation(P.n_generators, rels)
    if isinstance(m, Cancel):
        _check_relator(P, m.i)
        w = rels[m.i]
        if not 0 <= m.pos < len(w) - 1:
            raise IndexOutOfRange(f"pair position {m.pos} out of range in relator of length {len(w)}")
        if w[m.pos] != -w[m.pos + 1]:
            raise NotACancellablePair(
                f"letters at {m.pos}, {m.pos + 1} are not mutually inverse"
            )
        rels[m.i] = w[: m.pos] + w[m.pos + 2 :]
        return Presentation(P.n_generators, rels)
    if isinstance(m, Insert):
        _check_relator(P, m.i)
        _check_generator(P, m.g)
        if m.s not in (1, -1):
            raise InvalidParameter(f"sign must be +1 or -1, got {m.s}")
        w = rels[m.i]
        if not 0 <= m.pos <= len(w):
            raise IndexOutOfRange(f"insert position {m.pos} out of range in relator of length {len(w)}")
        pair = (words.letter(m.g, m.s), words.letter(m.g, -m.s))
        rels[m.i] = w[: m.pos] + pair + w[m.pos :]
        return Presentation(P.n_generators, rels)
    if isinstance(m, Stabilize):
        rels.append((P.n_generators + 1,))
        return Presentation(P.n_generators + 1, rels)
    if isinstance(m, Destabilize):
        _check_generator(P, m.g)
        _check_relator(P, m.r)
        w = words.reduce(rels[m.r])
        if len(w) != 1 or abs(w[0]) - 1 != m.g:
            raise DestabilizeBlocked(
                f"relator {m.r} does not reduce to a single letter of generator {m.g}"
            )
        for t, rel in enumerate(rels):
            if t == m.r:
                continue
            if any(abs(x) - 1 == m.g for x in words.reduce(rel)):
                raise DestabilizeBlocked(
                    f"generator {m.g} survives free reduction of relator {t}"
                )
        out = []
        for t, rel in enumerate(rels):
            if t == m.r:
                continue
            if any(abs(x) - 1 == m.g for x in rel):
                rel = words.reduce(rel)  # kills the cancelling occurrences
            out.append(_shift_down(rel, m.g))
        return Presentation(P.n_generators - 1, out)
    if isinstance(m, Replace):
        _check_generator(P, m.i)
        _check_generator(P, m.j)
        if m.i == m.j:
            raise SameGenerator("replace needs two distinct generators")
        if m.s not in (1, -1):
            raise InvalidParameter(f"sign must be +1 or -1, got {m.s}")
        return Presentation(
            P.n_generators, [words.substitute(r, m.i, m.j, m.s) for r in rels]
        )
    if isinstance(m, Rotate):
        _check_relator(P, m.r)
        rels[m.r] = words.rotate(rels[m.r], m.k)
        return Presentation(P.n_generators, rels)
    raise InvalidParameter(f"unknown move {m!r}")


def inverse_moves(m: Move, P: Presentation) -> list[Move]:
    """A move list (at most 3 long) undoing ``m`` applied to ``P``.

    Exact in the raw layer for Invert, Cancel/Insert, Stabilize and
    Rotate.  For Compose and Replace the round trip leaves a cancelling
    pair per undone factor, so equality holds after free reduction.
    Destabilize is only invertible from the last generator/relator slot
    with an exactly single-letter relator.
    """
    if isinstance(m, Compose):
        return [Invert(m.j), Compose(m.i, m.j), Invert(m.j)]
    if isinstance(m, Invert):
        return [Invert(m.i)]
    if isinstance(m, Cancel):
        _check_relator(P, m.i)
        w = P.relators[m.i]
        if not 0 <= m.pos < len(w) - 1 or w[m.pos] != -w[m.pos + 1]:
            raise NotACancellablePair(f"move {m} is not applicable to the given presentation")
        x = w[m.pos]
        return [Insert(m.i, m.pos, abs(x) - 1, 1 if x > 0 else -1)]
    if isinstance(m, Insert):
        return [Cancel(m.i, m.pos)]
    if isinstance(m, Stabilize):
        return [Destabilize(P.n_generators, len(P.relators))]
    if isinstance(m, Destabilize):
        exact = (
            m.g == P.n_generators - 1
            and m.r == len(P.relators) - 1
            and P.relators[m.r] in ((m.g + 1,), (-(m.g + 1),))
            and all(
                not any(abs(x) - 1 == m.g for x in rel)
                for t, rel in enumerate(P.relators)
                if t != m.r
            )
        )
        if not exact:
            raise NotInvertibleAsSingleMove(
                "destabilization away from the last slot cannot be undone "
                "by a short primitive sequence"
            )
        if P.relators[m.r] == (m.g + 1,):
            return [Stabilize()]
        return [Stabilize(), Invert(m.r)]
    if isinstance(m, Replace):
        return [Replace(m.i, m.j, -m.s)]
    if isinstance(m, Rotate):
        _check_relator(P, m.r)
        n = len(P.relators[m.r])
        return [Rotate(m.r, (n - m.k % n) % n if n else 0)]
    raise InvalidParameter(f"unknown move {m!r}")


# --- canonical form ---------------------------------------------------------


@dataclass(frozen=True)
class CanonicalPresentation:
    """Deduplication key: cyclically reduced, rotation/inversion minimised,
    sorted relators with generators greedily relabelled by first occurrence."""

    n_generators: int
    relators: tuple[Word, ...]

    def as_presentation(self) -> Presentation:
        return Presentation(self.n_generators, self.relators)


# The canonical-form pipeline runs in an encoded letter space where the
# natural tuple order equals the letter order a < a^-1 < b < b^-1 < ...:
# generator g with sign s encodes to (g << 1) | (s < 0).


def _encode_cyc(w):
    out = []
    for x in w:
        e = ((abs(x) - 1) << 1) | (x < 0)
        if out and out[-1] == e ^ 1:
            out.pop()
        else:
            out.append(e)
    a, b = 0, len(out)
    while b - a >= 2 and out[a] == out[b - 1] ^ 1:
        a += 1
        b -= 1
    return tuple(out[a:b])


def _decode(w):
    return tuple(-((e >> 1) + 1) if e & 1 else (e >> 1) + 1 for e in w)


def _min_rotation(w):
    if not w:
        return w
    inv = tuple(e ^ 1 for e in reversed(w))
    best = None
    for cand in (w, inv):
        doubled = cand + cand
        n = len(cand)
        for k in range(n):
            rot = doubled[k : k + n]
            if best is None or rot < best:
                best = rot
    return best


def _canonical_pass(rels):
    rels = sorted(_min_rotation(r) for r in rels)
    mapping = {}
    for r in rels:
        for e in r:
            g = e >> 1
            if g not in mapping:
                mapping[g] = len(mapping)
    return tuple(
        tuple((mapping[e >> 1] << 1) | (e & 1) for e in r) for r in rels
    )


@lru_cache(maxsize=1 << 20)
def _canonical_key(n, relators):
    seen = {}
    seq = []
    state = tuple(_encode_cyc(r) for r in relators)
    while state not in seen:
        seen[state] = len(seq)
        seq.append(state)
        state = _canonical_pass(state)
    cycle = seq[seen[state] :]
    best = min(cycle)
    return tuple(_decode(r) for r in sorted(best))


def normalize(P: Presentation) -> CanonicalPresentation:
    """Deterministic canonical form.

    One pass minimises each relator over rotation and inversion, sorts,
    and relabels greedily; relabelling can disturb the per-relator minima,
    so the pass is iterated to a fixpoint (taking the least member if the
    iteration ever cycles, which keeps the map idempotent).
    """
    return CanonicalPresentation(
        P.n_generators, _canonical_key(P.n_generators, tuple(P.relators))
    )


# --- transcripts ------------------------------------------------------------


def replay(t: Transcript, strict: bool = False):
    """Yield the presentation after each move; fail at the first invalid one."""
    P = t.initial
    for idx, m in enumerate(t.moves):
        if strict and isinstance(m, Rotate):
            raise InvalidMoveAt(idx, AcpresError("rotate is rejected in strict mode"))
        try:
            P = apply_move(P, m)
        except AcpresError as e:
            raise InvalidMoveAt(idx, e) from e
        yield P


def verify_transcript(t: Transcript, strict: bool = False) -> Presentation:
    P = t.initial
    for P in replay(t, strict=strict):
        pass
    return P


# --- move enumeration -------------------------------------------------------


@dataclass(frozen=True)
class MovePolicy:
    """Branching policy: ``move_set`` is "sac" or "eac"; caps are on the
    resulting raw presentation and may be None for unbounded."""

    move_set: str = "sac"
    max_generators: int | None = None
    max_total_length: int | None = None

    def __post_init__(self):
        if self.move_set not in ("sac", "eac"):
            raise InvalidParameter(f"move_set must be 'sac' or 'eac', got {self.move_set!r}")


def _within(cap, value):
    return cap is None or value <= cap


def enumerate_moves(P: Presentation, policy: MovePolicy) -> list[Move]:
    """All applicable single moves under the policy, in a fixed order.

    Insert positions are restricted to the word ends to keep the list
    finite; full-generality Insert stays available through apply_move.
    """
    out = []
    total = P.total_length
    m = len(P.relators)
    for i in range(m):
        for j in range(m):
            if i != j and _within(policy.max_total_length, total + len(P.relators[j])):
                out.append(Compose(i, j))
    for i in range(m):
        out.append(Invert(i))
    for i, w in enumerate(P.relators):
        for pos in range(len(w) - 1):
            if w[pos] == -w[pos + 1]:
                out.append(Cancel(i, pos))
    if _within(policy.max_total_length, total + 2):
        for i, w in enumerate(P.relators):
            positions = (0,) if not w else (0, len(w))
            for pos in positions:
                for g in range(P.n_generators):
                    for s in (1, -1):
                        out.append(Insert(i, pos, g, s))
    if _within(policy.max_generators, P.n_generators + 1) and _within(
        policy.max_total_length, total + 1
    ):
        out.append(Stabilize())
    for r, w in enumerate(P.relators):
        red = words.reduce(w)
        if len(red) != 1:
            continue
        g = abs(red[0]) - 1
        if all(
            not any(abs(x) - 1 == g for x in words.reduce(rel))
            for t, rel in enumerate(P.relators)
            if t != r
        ):
            out.append(Destabilize(g, r))
    if policy.move_set == "eac":
        for i in range(P.n_generators):
            occurrences = sum(1 for rel in P.relators for x in rel if abs(x) - 1 == i)
            if not _within(policy.max_total_length, total + occurrences):
                continue
            for j in range(P.n_generators):
                if i == j:
                    continue
                for s in (1, -1):
                    out.append(Replace(i, j, s))
    for r, w in enumerate(P.relators):
        for k in range(1, len(w)):
            out.append(Rotate(r, k))
    return out


# --- text formats -----------------------------------------------------------


def format_presentation(P: Presentation, names=None) -> str:
    if names is None:
        names = words.default_names(P.n_generators)
    gens = ", ".join(names)
    rels = ", ".join(words.format_word(r, names) for r in P.relators)
    return f"< {gens} | {rels} >"


def parse_presentation(text: str, base: int = 0):
    """Parse ``< g1, g2 | w1, w2 >``; returns (Presentation, names)."""
    stripped = text.strip()
    start = base + text.index(stripped[0]) if stripped else base
    if not stripped.startswith("<"):
        raise ParseError("presentation must start with '<'", start)
    if not stripped.endswith(">"):
        raise ParseError("expected '>' closing the presentation", base + len(text))
    inner = stripped[1:-1]
    if "|" not in inner:
        raise ParseError("expected '|' between generators and relators", base + len(text))
    gen_part, _, rel_part = inner.partition("|")
    names = []
    offset = start + 1
    for piece in gen_part.split(","):
        name = piece.strip()
        if not name:
            if gen_part.strip():
                raise ParseError("empty generator name", offset)
            continue
        if not words._NAME_RE.match(name):
            raise ParseError(f"bad generator name {name!r}", offset + piece.index(name))
        if name in names:
            raise ParseError(f"duplicate generator name {name!r}", offset + piece.index(name))
        names.append(name)
        offset += len(piece) + 1
    index = {nm: k for k, nm in enumerate(names)}
    relators = []
    offset = start + 2 + len(gen_part)
    if rel_part.strip():
        for piece in rel_part.split(","):
            relators.append(words.parse_word(piece, index, base=offset))
            offset += len(piece) + 1
    return Presentation(len(names), relators), tuple(names)


_MOVE_ARITY = {
    "compose": 2,
    "invert": 1,
    "cancel": 2,
    "insert": 4,
    "stab": 0,
    "destab": 2,
    "replace": 3,
    "rotate": 2,
}


def parse_move(line: str, base: int = 0) -> Move:
    """One move per line, 1-based indices, e.g. ``compose 1 2``."""
    tokens = line.split()
    if not tokens:
        raise ParseError("empty move line", base)
    kind = tokens[0]
    if kind not in _MOVE_ARITY:
        raise ParseError(f"unknown move {kind!r}", base)
    args = tokens[1:]
    if len(args) != _MOVE_ARITY[kind]:
        raise ParseError(
            f"{kind} takes {_MOVE_ARITY[kind]} arguments, got {len(args)}", base
        )
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise ParseError(f"non-integer argument in {line.strip()!r}", base) from None
    if kind == "compose":
        return Compose(nums[0] - 1, nums[1] - 1)
    if kind == "invert":
        return Invert(nums[0] - 1)
    if kind == "cancel":
        return Cancel(nums[0] - 1, nums[1] - 1)
    if kind == "insert":
        if nums[3] not in (1, -1):
            raise ParseError("insert sign must be 1 or -1", base)
        return Insert(nums[0] - 1, nums[1] - 1, nums[2] - 1, nums[3])
    if kind == "stab":
        return Stabilize()
    if kind == "destab":
        return Destabilize(nums[0] - 1, nums[1] - 1)
    if kind == "replace":
        if nums[2] not in (1, -1):
            raise ParseError("replace sign must be 1 or -1", base)
        return Replace(nums[0] - 1, nums[1] - 1, nums[2])
    return Rotate(nums[0] - 1, nums[1])


def format_move(m: Move) -> str:
    if isinstance(m, Compose):
        return f"compose {m.i + 1} {m.j + 1}"
    if isinstance(m, Invert):
        return f"invert {m.i + 1}"
    if isinstance(m, Cancel):
        return f"cancel {m.i + 1} {m.pos + 1}"
    if isinstance(m, Insert):
        return f"insert {m.i + 1} {m.pos + 1} {m.g + 1} {m.s}"
    if isinstance(m, Stabilize):
        return "stab"
    if isinstance(m, Destabilize):
        return f"destab {m.g + 1} {m.r + 1}"
    if isinstance(m, Replace):
        return f"replace {m.i + 1} {m.j + 1} {m.s}"
    if isinstance(m, Rotate):
        return f"rotate {m.r + 1} {m.k}"
    raise InvalidParameter(f"unknown move {m!r}")


def evolve_names(names, m: Move):
    """Track symbolic generator names through a move."""
    names = list(names)
    if isinstance(m, Stabilize):
        names.append(words.fresh_name(names))
    elif isinstance(m, Destabilize):
        del names[m.g]
    return names


def format_transcript(t: Transcript, names=None) -> str:
    if names is None:
        names = words.default_names(t.initial.n_generators)
    lines = [format_presentation(t.initial, names)]
    lines.append("# generators: " + " ".join(names))
    lines.extend(format_move(m) for m in t.moves)
    return "\n".join(lines) + "\n"


def parse_transcript(text: str):
    """Parse a transcript file; returns (Transcript, names).

    Line 1 is the initial presentation, every further non-comment line
    one move; ``#`` starts a comment.
    """
    initial = None
    names = None
    moves = []
    offset = 0
    for line in text.splitlines(keepends=True):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            if initial is None:
                initial, names = parse_presentation(stripped, base=offset + line.index(stripped[0]))
            else:
                moves.append(parse_move(stripped, base=offset))
        offset += len(line)
    if initial is None:
        raise ParseError("transcript has no initial presentation", 0)
    return Transcript(initial, tuple(moves)), names
