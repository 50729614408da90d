import random

import pytest

from acpres import words
from acpres.errors import (
    DestabilizeBlocked,
    IndexOutOfRange,
    InvalidMoveAt,
    InvalidParameter,
    NotACancellablePair,
    NotInvertibleAsSingleMove,
    ParseError,
    SameGenerator,
)
from acpres.families import paper_z, trivial
from acpres.presentation import (
    Cancel,
    Compose,
    Destabilize,
    Insert,
    Invert,
    MovePolicy,
    Presentation,
    Replace,
    Rotate,
    Stabilize,
    Transcript,
    apply_move,
    enumerate_moves,
    format_presentation,
    format_transcript,
    inverse_moves,
    normalize,
    parse_move,
    parse_presentation,
    parse_transcript,
    replay,
    verify_transcript,
)
from util import random_applicable_move, random_presentation


def test_replace_matches_worked_example():
    P = paper_z()
    Q = apply_move(P, Replace(0, 1, -1))
    assert Q.relators == ((1, -2, 2), (2, 3), (1, -2, -3))  # raw, not auto-reduced


def test_stabilize_example():
    P = Presentation(1, ((1,),))
    Q = apply_move(P, Stabilize())
    assert Q.n_generators == 2
    assert Q.relators == ((1,), (2,))


def test_chain_tail_reaches_rank_one():
    # (b,c | b c^-1 c, c b^-1 c^-1) down to (c | 1)
    P = Presentation(2, ((1, -2, 2), (2, -1, -2)))
    seq = [
        Cancel(0, 1),
        Rotate(1, 1),
        Cancel(1, 1),
        Compose(1, 0),
        Cancel(1, 0),
        Destabilize(0, 0),
    ]
    for m in seq:
        P = apply_move(P, m)
    assert P == Presentation(1, ((),))


def test_apply_move_errors():
    P = paper_z()
    with pytest.raises(SameGenerator):
        apply_move(P, Compose(1, 1))
    with pytest.raises(SameGenerator):
        apply_move(P, Replace(0, 0, 1))
    with pytest.raises(IndexOutOfRange):
        apply_move(P, Invert(5))
    with pytest.raises(IndexOutOfRange):
        apply_move(P, Cancel(0, 9))
    with pytest.raises(NotACancellablePair):
        apply_move(P, Cancel(0, 0))
    with pytest.raises(InvalidParameter):
        apply_move(P, Insert(0, 0, 1, 2))
    with pytest.raises(DestabilizeBlocked):
        apply_move(P, Destabilize(0, 0))  # relator 0 is not a single letter
    Q = Presentation(2, ((1,), (1, 2)))
    with pytest.raises(DestabilizeBlocked):
        apply_move(Q, Destabilize(0, 0))  # generator survives in relator 1


def test_destabilize_reduces_cancelling_occurrences():
    # relator 1 mentions generator a only in a cancelling pair
    P = Presentation(2, ((1, -2, 2), (2, 1, -1, 2)))
    Q = apply_move(P, Destabilize(0, 0))
    assert Q == Presentation(1, ((1, 1),))


def test_balance_preserved_under_random_moves():
    rng = random.Random(21)
    P = random_presentation(rng, max_n=3, max_total=12)
    for _ in range(1500):
        m = random_applicable_move(rng, P, rng.choice(("sac", "eac")))
        if m is None:
            break
        Q = apply_move(P, m)
        assert Q.balanced == P.balanced
        P = Q


@pytest.mark.parametrize(
    "move",
    [Invert(1), Rotate(0, 1), Cancel(0, 1), Insert(1, 0, 2, -1), Stabilize()],
)
def test_inverse_moves_exact(move):
    P = Presentation(3, ((1, 2, -2), (2, 3), (1, -3)))
    Q = apply_move(P, move)
    R = Q
    for m in inverse_moves(move, P):
        R = apply_move(R, m)
    assert R == P


def test_inverse_moves_compose_and_replace_reduce_exact():
    rng = random.Random(22)
    for _ in range(1000):
        P = random_presentation(rng, max_n=3, max_total=10)
        candidates = [
            m
            for m in enumerate_moves(P, MovePolicy("eac"))
            if isinstance(m, (Compose, Replace))
        ]
        if not candidates:
            continue
        m = rng.choice(candidates)
        Q = apply_move(P, m)
        R = Q
        for mi in inverse_moves(m, P):
            R = apply_move(R, mi)
        reduced = lambda X: tuple(words.reduce(r) for r in X.relators)
        assert R.n_generators == P.n_generators
        assert reduced(R) == reduced(P)


def test_inverse_moves_destabilize():
    P = Presentation(2, ((1, 2), (-2,)))
    m = Destabilize(1, 1)
    Q = apply_move(P, m)
    R = Q
    for mi in inverse_moves(m, P):
        R = apply_move(R, mi)
    assert R == P

    mid = Presentation(2, ((1,), (2, 2)))
    with pytest.raises(NotInvertibleAsSingleMove):
        inverse_moves(Destabilize(0, 0), mid)


def test_normalize_examples():
    canon = normalize(Presentation(2, ((-2, -1), (1, 2))))
    assert canon.relators == ((1, 2), (1, 2))
    canon = normalize(Presentation(2, ((2, -1, -2),)))
    assert canon.relators == ((1,),)
    assert normalize(trivial(2)).as_presentation() == trivial(2)


def test_normalize_idempotent_and_invariant():
    rng = random.Random(23)
    cases = [
        # relabelling after sorting can disturb per-relator minima; the
        # fixpoint iteration has to absorb that
        Presentation(4, ((1, 4), (2, 3, 2, 4))),
    ]
    for _ in range(400):
        cases.append(random_presentation(rng, max_n=4, max_total=14))
    for P in cases:
        canon = normalize(P)
        assert normalize(canon.as_presentation()) == canon
        assert canon.relators == tuple(sorted(canon.relators, key=words.word_key))
        rels = list(P.relators)
        rng.shuffle(rels)
        assert normalize(Presentation(P.n_generators, rels)) == canon
        if P.relators:
            i = rng.randrange(len(P.relators))
            rels = list(P.relators)
            rels[i] = words.invert(rels[i])
            assert normalize(Presentation(P.n_generators, rels)) == canon
            rels = list(P.relators)
            rels[i] = words.rotate(rels[i], rng.randrange(1, 5))
            assert normalize(Presentation(P.n_generators, rels)) == canon
            rels = list(P.relators)
            g = rng.randrange(P.n_generators)
            pos = rng.randrange(len(rels[i]) + 1)
            rels[i] = rels[i][:pos] + (g + 1, -(g + 1)) + rels[i][pos:]
            assert normalize(Presentation(P.n_generators, rels)) == canon


def test_verify_transcript():
    P = paper_z()
    assert verify_transcript(Transcript(P, ())) == P
    bad = Transcript(P, (Compose(1, 1),))
    with pytest.raises(InvalidMoveAt) as err:
        verify_transcript(bad)
    assert err.value.index == 0
    assert isinstance(err.value.cause, SameGenerator)


def test_strict_mode_rejects_rotate():
    P = paper_z()
    t = Transcript(P, (Rotate(0, 1),))
    assert verify_transcript(t).relators[0] == (2, 1)
    with pytest.raises(InvalidMoveAt):
        verify_transcript(t, strict=True)


def test_enumerate_moves_policy():
    t1 = trivial(1)
    sac = enumerate_moves(t1, MovePolicy("sac", max_generators=2))
    assert Stabilize() in sac
    assert Invert(0) in sac
    assert not any(isinstance(m, Replace) for m in sac)
    eac = enumerate_moves(paper_z(), MovePolicy("eac"))
    assert Replace(0, 1, -1) in eac
    capped = enumerate_moves(paper_z(), MovePolicy("sac", max_total_length=5))
    assert not any(isinstance(m, Compose) for m in capped)
    assert enumerate_moves(paper_z(), MovePolicy("eac")) == enumerate_moves(
        paper_z(), MovePolicy("eac")
    )


def test_enumerate_moves_all_applicable():
    rng = random.Random(24)
    for _ in range(200):
        P = random_presentation(rng, max_n=3, max_total=10)
        for m in enumerate_moves(P, MovePolicy("eac", max_generators=5)):
            apply_move(P, m)


def test_presentation_text_roundtrip():
    P, names = parse_presentation("< a, b, c | a b, b c, a c^-1 >")
    assert P == paper_z()
    assert names == ("a", "b", "c")
    assert format_presentation(P, names) == "< a, b, c | a b, b c, a c^-1 >"
    text = format_presentation(P)
    P2, _ = parse_presentation(text)
    assert format_presentation(P2) == text
    P3, _ = parse_presentation("< c | 1 >")
    assert P3 == Presentation(1, ((),))


def test_presentation_text_roundtrip_random():
    rng = random.Random(25)
    for _ in range(200):
        P = random_presentation(rng, max_n=4, max_total=12, balanced=False)
        text = format_presentation(P)
        Q, _ = parse_presentation(text)
        assert Q == P
        assert format_presentation(Q) == text


def test_presentation_parse_errors():
    with pytest.raises(ParseError):
        parse_presentation("< a | a a")
    with pytest.raises(ParseError):
        parse_presentation("a | a")
    with pytest.raises(ParseError):
        parse_presentation("< a, a | a >")
    with pytest.raises(ParseError):
        parse_presentation("< a | b >")


def test_transcript_text_roundtrip():
    P = paper_z()
    t = Transcript(P, (Replace(0, 1, -1), Rotate(2, 1), Stabilize(), Destabilize(3, 3)))
    text = format_transcript(t)
    t2, names = parse_transcript(text)
    assert t2 == t
    assert names == ("a", "b", "c")
    assert format_transcript(t2) == text


def test_parse_move_errors():
    with pytest.raises(ParseError):
        parse_move("compose 1")
    with pytest.raises(ParseError):
        parse_move("slide 1 2")
    with pytest.raises(ParseError):
        parse_move("replace 1 2 3")
    assert parse_move("insert 2 1 3 -1") == Insert(1, 0, 2, -1)


def test_replay_yields_each_state():
    P = paper_z()
    t = Transcript(P, (Invert(0), Invert(0)))
    states = list(replay(t))
    assert len(states) == 2
    assert states[1] == P
