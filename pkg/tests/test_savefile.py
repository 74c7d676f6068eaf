from __future__ import annotations

import random

import pytest

from decodoku.engine import (
    DYNAMIC,
    PUZZLE,
    RUNNING,
    add_annotation,
    apply_player_move,
    new_game,
    random_policy,
    suggest_move,
)
from decodoku.errors import ReplayError, SaveParseError
from decodoku.lattice import LatticeSpec
from decodoku.noise import NoiseSpec, rng_stream
from decodoku.savefile import (
    MAGIC,
    SaveDocument,
    build_document,
    parse,
    render,
    replay,
    replay_text,
    serialize,
)

SPEC = LatticeSpec(8, 8, 10)


def _play_game(seed: int, moves: int = 8, mode: str = DYNAMIC, p: float = 0.12):
    g = new_game(SPEC, NoiseSpec(p=p, seed=seed), mode)
    rng = rng_stream(seed, "fuzzpolicy")
    for i in range(moves):
        if g.status != RUNNING:
            break
        move = suggest_move(g).move if i % 2 == 0 else random_policy(g, rng)
        if move is None:
            break
        apply_player_move(g, move)
        if i == 1:
            add_annotation(g, f"note at tick {g.moves_made}")
    return g


def test_fresh_game_serializes_to_header_and_footer():
    g = new_game(SPEC, NoiseSpec(p=0.0, seed=5), PUZZLE)
    text = serialize(g)
    assert text.splitlines() == [
        MAGIC,
        "variant=Z10 grid=8x8 d=10 seed=5 mode=puzzle spawn_period=1 p=0.0",
        "END score=0 status=running",
    ]


def test_one_error_one_move_layout():
    g = new_game(LatticeSpec(8, 8, 10), NoiseSpec(p=0.0, seed=0), PUZZLE)
    from decodoku.engine import apply_recorded_error
    from decodoku.lattice import ErrorEvent, HORIZONTAL, QuditId
    from decodoku.pairrank import Move

    apply_recorded_error(g, ErrorEvent(QuditId(HORIZONTAL, 0, 1), 3, 0), tick=0)
    apply_player_move(g, Move((0, 0), (0, 1)))
    add_annotation(g, "merged the 3+7 pair")
    lines = serialize(g).splitlines()
    assert lines[2] == "E H 0 1 3"
    assert lines[3] == "M 0,0 -> 0,1"
    assert lines[4] == "# merged the 3+7 pair"
    assert lines[5] == "END score=1 status=running"


def test_parse_serialize_round_trip_is_byte_exact():
    for seed in range(20):
        g = _play_game(seed)
        text = serialize(g)
        doc = parse(text)
        assert render(doc) == text


def test_replay_reproduces_live_state():
    for seed in range(15):
        g = _play_game(seed)
        g2 = replay(parse(serialize(g)))
        assert g2.syndrome.values == g.syndrome.values
        assert g2.syndrome.absorbed_left == g.syndrome.absorbed_left
        assert g2.syndrome.absorbed_right == g.syndrome.absorbed_right
        assert g2.ledger.net_shift == g.ledger.net_shift
        assert g2.moves_made == g.moves_made
        assert g2.score == g.score
        assert g2.status == g.status
        assert g2.annotations == g.annotations


def test_replay_of_truncated_document_matches_midgame_state():
    g_full = _play_game(3, moves=6)
    g_short = _play_game(3, moves=4)
    doc = parse(serialize(g_full))
    # drop everything after the 4th move line
    seen = 0
    cut_body = []
    for line in doc.body:
        from decodoku.savefile import MoveLine

        if isinstance(line, MoveLine):
            seen += 1
            if seen > 4:
                break
        cut_body.append(line)
    truncated = SaveDocument(doc.header, cut_body, 0, RUNNING)
    g2 = replay(truncated)
    assert g2.moves_made == 4
    assert g2.syndrome.values == g_short.syndrome.values


def test_missing_magic_fails_at_line_1():
    with pytest.raises(SaveParseError) as err:
        parse("NOT-A-SAVE\n")
    assert err.value.line_no == 1


def test_unknown_version_rejected():
    with pytest.raises(SaveParseError) as err:
        parse("DECODOKU-SAVE v2\nvariant=Z10 grid=8x8 d=10 seed=0 mode=puzzle spawn_period=1 p=0.0\nEND score=0 status=running\n")
    assert err.value.line_no == 1


def test_malformed_header_fails_at_line_2():
    with pytest.raises(SaveParseError) as err:
        parse(MAGIC + "\nvariant=Z10 grid=8x8\n")
    assert err.value.line_no == 2


def test_variant_dimension_mismatch_rejected():
    text = MAGIC + "\nvariant=Z9 grid=8x8 d=10 seed=0 mode=puzzle spawn_period=1 p=0.0\nEND score=0 status=running\n"
    with pytest.raises(SaveParseError):
        parse(text)


def _doc_text(*body: str) -> str:
    head = [MAGIC, "variant=Z10 grid=8x8 d=10 seed=0 mode=puzzle spawn_period=1 p=0.0"]
    return "\n".join(head + list(body) + ["END score=0 status=running"]) + "\n"


def test_non_adjacent_move_rejected_with_line_number():
    with pytest.raises(SaveParseError) as err:
        parse(_doc_text("M 0,0 -> 5,5"))
    assert err.value.line_no == 3


def test_zero_magnitude_error_line_rejected():
    with pytest.raises(SaveParseError):
        parse(_doc_text("E H 2 2 0"))


def test_out_of_range_qudit_rejected():
    with pytest.raises(SaveParseError):
        parse(_doc_text("E V 0 3 4"))


def test_unknown_tag_rejected():
    with pytest.raises(SaveParseError) as err:
        parse(_doc_text("Q wat"))
    assert err.value.line_no == 3


def test_wrong_column_boundary_push_rejected():
    with pytest.raises(SaveParseError):
        parse(_doc_text("B 0,3 -> OFF:left"))


def test_missing_end_rejected():
    text = MAGIC + "\nvariant=Z10 grid=8x8 d=10 seed=0 mode=puzzle spawn_period=1 p=0.0\n"
    with pytest.raises(SaveParseError):
        parse(text)


def test_content_after_end_rejected():
    with pytest.raises(SaveParseError):
        parse(_doc_text() + "E H 0 1 3\n")


def test_replay_rejects_move_from_empty_plaquette():
    with pytest.raises(ReplayError, match="body line 1"):
        replay_text(_doc_text("M 0,0 -> 0,1"))


def test_annotation_round_trip_preserves_text():
    g = _play_game(1, moves=3)
    add_annotation(g, "  spaced   out  note ")
    text = serialize(g)
    doc = parse(text)
    assert render(doc) == text
    # inner spacing survives; only the ends are trimmed
    assert "# spaced   out  note\n" in text
