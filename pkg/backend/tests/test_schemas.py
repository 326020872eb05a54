"""Tests for the pydantic domain models."""

import logging

import pytest
from pydantic import ValidationError

from app.models.schemas import (
    GameConfig,
    GameVariant,
    MoveSet,
    PathChoice,
    PathCounts,
    PathId,
    Round,
    SolveReport,
    Transcript,
    VariantKind,
)

logger = logging.getLogger(__name__)


def test_variant_rules():
    assert GameVariant.general().move_cap is None
    assert GameVariant.restricted(2).move_cap == 2
    mmb = GameVariant(kind=VariantKind.MAKER_BREAKER)
    assert mmb.c == 1
    assert mmb.chip_removal

    with pytest.raises(ValidationError):
        GameVariant(kind=VariantKind.GENERAL, c=1)
    with pytest.raises(ValidationError):
        GameVariant(kind=VariantKind.RESTRICTED)
    with pytest.raises(ValidationError):
        GameVariant(kind=VariantKind.MAKER_BREAKER, c=2)


def test_config_serializes_flat():
    config = GameConfig.of(3, 5, GameVariant.restricted(1))
    assert config.model_dump(mode="json") == {"k": 3, "N": 5, "variant": "restricted", "c": 1}
    assert str(config) == "(k=3, N=5, restricted(c=1))"
    assert config.round_limit() == 30
    assert config.with_chips(7).N == 7


def test_config_rejects_bad_values():
    with pytest.raises(ValidationError):
        GameConfig(k=0, N=1)
    with pytest.raises(ValidationError):
        GameConfig(k=2, N=-1)
    with pytest.raises(ValidationError):
        GameConfig(k=2, N=1, variant=VariantKind.RESTRICTED)
    with pytest.raises(ValidationError):
        GameConfig(k=2, N=1, extra_field=True)


def test_path_counts_validation():
    with pytest.raises(ValidationError):
        PathCounts(first=(0, 1), second=(0, 1, 2))
    with pytest.raises(ValidationError):
        PathCounts(first=(0, -1), second=(0, 1))
    with pytest.raises(ValidationError):
        PathCounts(first=(1,), second=(1,))
    counts = PathCounts(first=(0, 1), second=(2, 0))
    assert counts[PathId.SECOND] == (2, 0)
    assert counts[0] == (0, 1)


def test_move_set_never_moves_vertex_zero():
    with pytest.raises(ValidationError):
        MoveSet(advance=PathCounts(first=(1, 0), second=(0, 0)))
    assert MoveSet(advance=PathCounts(first=(0, 1), second=(0, 0))).moved_on(PathId.FIRST) == 1


def test_path_id_helpers():
    assert PathId.FIRST.index == 0
    assert PathId.FIRST.other is PathId.SECOND
    assert PathId.from_index(1) is PathId.SECOND


def test_transcript_alias_and_count():
    config = GameConfig.of(1, 1)
    record = Round(advance=PathCounts(first=(0, 1), second=(0, 1)), removal=PathChoice(path=PathId.FIRST))
    transcript = Transcript(config=config, rounds=[record], outcome="PusherWin", roundCount=1)
    data = transcript.model_dump(mode="json", by_alias=True)
    logger.debug(f"Transcript JSON: {data}")
    assert data["roundCount"] == 1
    assert data["rounds"][0]["removal"] == {"kind": "path", "path": "first"}
    assert Transcript.model_validate(data) == transcript

    with pytest.raises(ValidationError):
        Transcript(config=config, rounds=[record], outcome="PusherWin", round_count=2)
    with pytest.raises(ValidationError):
        Transcript(config=config, rounds=[record, record, record], outcome="PusherWin", round_count=3)


def test_removal_union_discriminates():
    data = {"advance": {"first": [0, 1], "second": [0, 1]},
            "removal": {"kind": "chip", "path": "second", "position": 0}}
    record = Round.model_validate(data)
    assert record.removal.kind == "chip"
    assert record.removal.position == 0


def test_solve_report_uses_camel_case_alias():
    report = SolveReport(k=2, N=1, variant=VariantKind.GENERAL, outcome="RemoverWin", states_explored=4)
    assert report.model_dump(by_alias=True)["statesExplored"] == 4
