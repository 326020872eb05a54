"""Tests for the list coloring and on-line hypergraph coloring adapters."""

import logging

import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from app.core.exceptions import InvalidConfigError, MalformedHypergraphError, PresentationError, StrategyError
from app.models.schemas import GameConfig, Hypergraph, Outcome, PresentationStep, VariantKind
from app.services.reductions import (
    ConstantColorer,
    RandomColorer,
    RandomPresenter,
    RemoverColorer,
    build_colorer,
    edge_list_text,
    m_ol_bracket,
    monochromatic_edges,
    pad_to_uniform,
    play_online,
    presenter_from_pusher,
    random_colorer,
    simulate_list_coloring,
    validate_hypergraph,
    verify_two_coloring,
)
from app.services.strategies import (
    BrickPusher,
    FibonacciRemover,
    GreedyWeightRemover,
    PushAllPusher,
    RandomPusher,
    RandomRemover,
    fibonacci_design_size,
)

logger = logging.getLogger(__name__)


# List coloring
def test_list_coloring_k1_n1_lister_wins(config_of):
    config = config_of(1, 1)
    coloring, transcript = simulate_list_coloring(PushAllPusher(config), GreedyWeightRemover(config), 1, 1)
    assert transcript.outcome is Outcome.PUSHER_WIN
    assert coloring.winner == "Lister"
    assert len(coloring.rounds) == transcript.round_count
    assert len(coloring.uncolored_out_of_colors) == 1
    assert len(coloring.rounds[0].offered) == 2
    assert len(coloring.rounds[0].colored) == 1


@hypothesis_settings(max_examples=200, deadline=None)
@given(
    k=st.integers(min_value=1, max_value=4),
    N=st.integers(min_value=1, max_value=10),
    restricted=st.booleans(),
    seed=st.integers(min_value=0, max_value=1000),
)
def test_list_coloring_winner_matches_chip_game(k, N, restricted, seed):
    kind = VariantKind.RESTRICTED if restricted else VariantKind.GENERAL
    config = GameConfig(k=k, N=N, variant=kind, c=1 if restricted else None)
    coloring, transcript = simulate_list_coloring(RandomPusher(config, seed), RandomRemover(config, seed), k, N)
    assert (coloring.winner == "Lister") == (transcript.outcome is Outcome.PUSHER_WIN)
    for lc_round in coloring.rounds:
        assert {ref.part for ref in lc_round.colored} <= {ref.part for ref in lc_round.offered}


def test_list_coloring_rejects_mmb_and_mismatch(config_of):
    mmb = config_of(1, 1, "mmb")
    with pytest.raises(InvalidConfigError):
        simulate_list_coloring(PushAllPusher(mmb), RandomRemover(mmb), 1, 1)
    general = config_of(2, 2)
    with pytest.raises(InvalidConfigError):
        simulate_list_coloring(PushAllPusher(general), RandomRemover(general), 2, 3)


# Colorer side
@pytest.mark.parametrize("seed", range(5))
def test_fibonacci_colorer_keeps_random_presentations_proper(seed):
    k, edges = 3, fibonacci_design_size(3)
    colorer = build_colorer("fib-remover", k, edges)
    hypergraph = play_online(RandomPresenter(k, edges, seed=seed), colorer)
    assert all(len(edge) == k for edge in hypergraph.edges)
    assert verify_two_coloring(hypergraph) == []


def test_colorer_gives_isolated_vertices_color_zero(config_of):
    colorer = RemoverColorer(GreedyWeightRemover(config_of(2, 2)), 2, 2)
    assert colorer.color(0, []) == 0
    assert colorer.rounds == 0


def test_colorer_rejects_full_edges(config_of):
    colorer = RemoverColorer(GreedyWeightRemover(config_of(2, 3)), 2, 3)
    colorer.color(0, [0])
    colorer.color(1, [0])
    with pytest.raises(PresentationError, match="already has 2"):
        colorer.color(2, [0])


def test_colorer_rejects_too_many_edges(config_of):
    colorer = RemoverColorer(GreedyWeightRemover(config_of(2, 1)), 2, 1)
    colorer.color(0, [0])
    with pytest.raises(PresentationError, match="handles 1"):
        colorer.color(1, [7])


def test_colorer_rejects_repeated_and_overloaded_edges():
    colorer = build_colorer("fib-remover", 2, 2)
    with pytest.raises(PresentationError):
        colorer.color(0, [0, 0])
    with pytest.raises(PresentationError, match="more than 1"):
        colorer.color(0, [0, 1])


def test_colorer_instance_checks(config_of):
    with pytest.raises(InvalidConfigError):
        RemoverColorer(GreedyWeightRemover(config_of(2, 3)), 2, 4)
    with pytest.raises(InvalidConfigError):
        RemoverColorer(FibonacciRemover(config_of(2, 2, "mmb")), 2, 2)


def test_build_colorer_ids():
    assert isinstance(build_colorer("random:seed=3", 2, 4), RandomColorer)
    assert build_colorer("constant:value=1", 2, 4).color(0, [0]) == 1
    assert build_colorer("greedy", 2, 4).name == "greedy-colorer"
    with pytest.raises(StrategyError):
        build_colorer("constant:value=2", 2, 4)
    with pytest.raises(StrategyError):
        build_colorer("nonsense", 2, 4)


# Presenter side
@pytest.mark.parametrize("colorer_id", ["random", "random:seed=4", "constant:value=0", "constant:value=1",
                                        "greedy", "solver"])
def test_brick_presenter_forces_a_monochromatic_edge(config_of, colorer_id):
    k, N = 2, 4
    presenter = presenter_from_pusher(BrickPusher(config_of(k, N)), k, N)
    hypergraph = play_online(presenter, build_colorer(colorer_id, k, 2 * N))
    logger.info(f"brick vs {colorer_id}: {edge_list_text(hypergraph)!r}")
    assert len(hypergraph.edges) == 2 * N
    assert monochromatic_edges(hypergraph)
    validate_hypergraph(hypergraph)
    assert verify_two_coloring(hypergraph)


def test_presenter_rejects_mmb(config_of):
    with pytest.raises(InvalidConfigError):
        presenter_from_pusher(PushAllPusher(config_of(2, 4, "mmb")), 2, 4)


def test_pad_to_uniform_fills_every_edge(config_of):
    presenter = presenter_from_pusher(BrickPusher(config_of(2, 4)), 2, 4)
    hypergraph = play_online(presenter, ConstantColorer(0))
    padded = pad_to_uniform(hypergraph, RandomColorer(1))
    assert all(len(edge) == 2 for edge in padded.edges)
    validate_hypergraph(padded)
    assert set(monochromatic_edges(hypergraph)) <= set(monochromatic_edges(padded))
    assert len(padded.presentation) == len(padded.colors)


def test_padding_continues_after_the_colorer_game_ends(config_of):
    colorer = build_colorer("greedy", 2, 8)
    hypergraph = play_online(presenter_from_pusher(BrickPusher(config_of(2, 4)), 2, 4), colorer)
    padded = pad_to_uniform(hypergraph, colorer)
    assert all(len(edge) == 2 for edge in padded.edges)
    assert verify_two_coloring(padded)


# Winner agreement with the chip game
def _instance(config_of, seed):
    k, N = 1 + seed % 4, 1 + (7 * seed) % 10
    config = config_of(k, N, "restricted", 1) if seed % 2 else config_of(k, N)
    return k, N, config


@pytest.mark.parametrize("seed", range(100))
def test_pusher_presenter_winner_matches_chip_game(config_of, seed):
    k, N, config = _instance(config_of, seed)
    presenter = presenter_from_pusher(RandomPusher(config, seed), k, N)
    hypergraph = play_online(presenter, random_colorer(seed))
    validate_hypergraph(hypergraph)
    assert presenter.outcome is not None
    assert bool(monochromatic_edges(hypergraph)) == (presenter.outcome is Outcome.PUSHER_WIN)


@pytest.mark.parametrize("seed", range(100))
def test_remover_colorer_winner_matches_chip_game(config_of, seed):
    k, N, config = _instance(config_of, seed)
    colorer = RemoverColorer(RandomRemover(config, seed), k, N)
    presenter = RandomPresenter(k, N, seed=seed, max_degree=1 if config.move_cap else 3)
    hypergraph = play_online(presenter, colorer)
    validate_hypergraph(hypergraph)
    assert colorer.outcome is not None
    assert bool(monochromatic_edges(hypergraph)) == (colorer.outcome is Outcome.PUSHER_WIN)


# Hypergraph checks
def test_verify_two_coloring():
    hypergraph = Hypergraph(k=2, edges=[[0, 1], [1, 2], [3]], colors={0: 0, 1: 0, 2: 1, 3: 1})
    assert verify_two_coloring(hypergraph) == [[0, 1]]
    assert monochromatic_edges(hypergraph) == [0]
    assert edge_list_text(hypergraph) == "0 1\n1 2\n3\n"


@pytest.mark.parametrize("hypergraph", [
    Hypergraph(k=2, edges=[[0, 1, 2]], colors={0: 0, 1: 0, 2: 0}),
    Hypergraph(k=2, edges=[[0, 0]], colors={0: 1}),
    Hypergraph(k=2, edges=[[0, 1]], colors={0: 1}),
    Hypergraph(k=2, edges=[[0, 1]], colors={0: 1, 1: 1},
               presentation=[PresentationStep(vertex=0, edges=[0], color=1),
                             PresentationStep(vertex=1, edges=[], color=1)]),
    Hypergraph(k=2, edges=[[0]], colors={0: 1}, presentation=[PresentationStep(vertex=0, edges=[0], color=0)]),
])
def test_malformed_hypergraphs(hypergraph):
    with pytest.raises(MalformedHypergraphError):
        verify_two_coloring(hypergraph)


# Bounds
def test_m_ol_bracket_small_k():
    one = m_ol_bracket(1)
    assert (one.lo, one.hi) == (1, 2)
    two = m_ol_bracket(2)
    assert (two.lo, two.hi) == (3, 6)
    assert two.threshold.threshold == 3
    assert one.lo >= 2 ** (1 - 1)
    assert two.lo >= 2 ** (2 - 1)


def test_m_ol_bracket_under_a_small_budget():
    bracket = m_ol_bracket(3, budget=5)
    assert bracket.threshold.threshold is None
    assert bracket.hi == 24
    assert bracket.lo <= 12
