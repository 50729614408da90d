import random

import pytest

from acpres.errors import InvalidParameter, Unbalanced
from acpres.families import paper_z, trivial
from acpres.invariants import abs_det, exponent_matrix
from acpres.presentation import (
    Cancel,
    Presentation,
    Rotate,
    normalize,
    verify_transcript,
)
from acpres.search import (
    SearchConfig,
    goal_satisfied,
    greedy_simplify,
    reachable_set,
    search_trivialization,
)


def test_goal_predicates():
    assert goal_satisfied(normalize(trivial(3)), "trivial")
    assert goal_satisfied(normalize(Presentation(1, ((),))), "rank:1")
    assert goal_satisfied(normalize(trivial(1)), "rank:1")
    assert not goal_satisfied(normalize(paper_z()), "rank:1")
    assert not goal_satisfied(normalize(Presentation(2, ((1,), (1,)))), "rank:2")
    with pytest.raises(InvalidParameter):
        goal_satisfied(normalize(trivial(1)), "rank:0")


def test_already_at_goal_returns_empty_transcript():
    res = search_trivialization(trivial(3), SearchConfig(goal="trivial", max_generators=3))
    assert res.outcome == "found"
    assert res.transcript.moves == ()
    assert verify_transcript(res.transcript) == trivial(3)


def test_worked_example_trivializes_under_eac():
    cfg = SearchConfig(
        move_set="eac",
        strategy="greedy",
        max_depth=12,
        max_total_length=12,
        node_budget=10**6,
        goal="rank:1",
    )
    res = search_trivialization(paper_z(), cfg)
    assert res.outcome == "found"
    final = verify_transcript(res.transcript)
    assert goal_satisfied(normalize(final), "rank:1")
    assert res.transcript.initial == paper_z()


def test_sac_cannot_reach_fewer_generators():
    for goal in ("rank:1", "rank:2"):
        cfg = SearchConfig(
            move_set="sac",
            strategy="bfs",
            max_depth=None,
            max_total_length=8,
            max_generators=3,
            node_budget=None,
            goal=goal,
        )
        res = search_trivialization(paper_z(), cfg)
        assert res.outcome == "exhausted"


def test_strategies_agree_on_outcome_kind():
    cases = [
        (trivial(2), SearchConfig(goal="trivial", max_generators=2, max_total_length=6, max_depth=4)),
        (
            paper_z(),
            SearchConfig(
                move_set="sac",
                goal="rank:1",
                max_total_length=6,
                max_generators=3,
                max_depth=4,
                node_budget=None,
            ),
        ),
        (
            paper_z(),
            SearchConfig(
                move_set="eac",
                goal="rank:1",
                max_total_length=10,
                max_generators=3,
                max_depth=8,
                node_budget=200_000,
            ),
        ),
    ]
    for P, base in cases:
        kinds = set()
        for strategy in ("bfs", "iddfs", "greedy"):
            cfg = SearchConfig(
                move_set=base.move_set,
                strategy=strategy,
                max_depth=base.max_depth,
                max_total_length=base.max_total_length,
                max_generators=base.max_generators,
                node_budget=base.node_budget,
                goal=base.goal,
            )
            res = search_trivialization(P, cfg)
            kinds.add(res.outcome)
            if res.outcome == "found":
                final = verify_transcript(res.transcript)
                assert goal_satisfied(normalize(final), base.goal)
        assert len(kinds) == 1, kinds


def test_budget_exceeded():
    cfg = SearchConfig(goal="rank:1", node_budget=1, max_total_length=12)
    res = search_trivialization(paper_z(), cfg)
    assert res.outcome == "budget_exceeded"


def test_search_requires_balanced():
    with pytest.raises(Unbalanced):
        search_trivialization(Presentation(2, ((1,),)), SearchConfig())


def test_reachable_set_examples():
    cfg = SearchConfig(move_set="sac", max_generators=1, max_total_length=4, max_depth=None, node_budget=None)
    S = reachable_set(trivial(1), cfg)
    assert S == {normalize(trivial(1))}

    cfg = SearchConfig(move_set="sac", max_generators=3, max_total_length=8, max_depth=None, node_budget=None)
    S = reachable_set(paper_z(), cfg)
    assert all(c.n_generators == 3 for c in S)
    assert normalize(paper_z()) in S

    cfg = SearchConfig(node_budget=1, max_total_length=10)
    assert reachable_set(paper_z(), cfg) == {normalize(paper_z())}


def test_reachable_set_self_check_mode():
    cfg = SearchConfig(
        move_set="sac",
        max_generators=4,
        max_total_length=7,
        max_depth=None,
        node_budget=None,
        self_check=True,
    )
    S = reachable_set(paper_z(), cfg)  # raises if an invariant ever drifts
    det = abs_det(exponent_matrix(paper_z()))
    assert all(abs_det(exponent_matrix(c.as_presentation())) == det for c in S)


def test_reachable_set_needs_length_cap():
    with pytest.raises(InvalidParameter):
        reachable_set(paper_z(), SearchConfig(max_total_length=None))


def test_greedy_simplify_single_cancellation():
    P = Presentation(2, ((1, 2, -2), (2,)))
    t = greedy_simplify(P)
    assert t.moves == (Cancel(0, 1),)
    assert verify_transcript(t) == Presentation(2, ((1,), (2,)))


def test_greedy_simplify_local_minimum():
    assert greedy_simplify(trivial(1)).moves == ()


def test_greedy_simplify_conjugate_relator():
    # oracle: exhaustive depth-3 move search confirms total length 2 is
    # attainable from this start, and greedy should do at least as well
    P = Presentation(2, ((1, -2, 2), (2, -1, -2)))
    from acpres.presentation import MovePolicy, apply_move, enumerate_moves

    best = P.reduced_total_length
    frontier = [P]
    for _ in range(3):
        nxt = []
        for Q in frontier:
            for m in enumerate_moves(Q, MovePolicy("eac", max_total_length=10)):
                R = apply_move(Q, m)
                best = min(best, R.reduced_total_length)
                nxt.append(R)
        frontier = nxt[:200]
    assert best <= 2
    t = greedy_simplify(P)
    final = verify_transcript(t)
    assert final.reduced_total_length <= 2


def test_greedy_simplify_budget():
    P = Presentation(2, ((1, -1, 2, -2), (1, 1, -1, -1)))
    t = greedy_simplify(P, budget=1)
    assert len(t.moves) == 1
