from __future__ import annotations

import decodoku.cli as cli
from decodoku.engine import DYNAMIC, apply_player_move, new_game, suggest_move
from decodoku.lattice import LatticeSpec
from decodoku.noise import NoiseSpec
from decodoku.savefile import serialize


def test_logical_command_writes_csv(tmp_path, capsys):
    out = tmp_path / "rates.csv"
    rc = cli.main(
        ["logical", "--lattice", "6x6", "--p", "0.0,0.1", "--trials", "20", "--seed", "1",
         "--out", str(out)]
    )
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "p,trials,failures,rate"
    assert lines[1].startswith("0.0,20,0,")
    assert "wilson95" in capsys.readouterr().out


def test_survival_command_summary(tmp_path, capsys):
    rc = cli.main(
        ["survival", "--policy", "random", "--episodes", "3", "--cap", "30", "--seed", "2",
         "--out", str(tmp_path / "s.csv")]
    )
    assert rc == 0
    assert "policy=random episodes=3" in capsys.readouterr().out


def test_replay_command_reports_outcome(tmp_path, capsys):
    g = new_game(LatticeSpec(), NoiseSpec(seed=4), DYNAMIC)
    for _ in range(3):
        apply_player_move(g, suggest_move(g).move)
    path = tmp_path / "game.save"
    path.write_text(serialize(g))
    assert cli.main(["replay", str(path)]) == 0
    assert f"score={g.score} status=running" in capsys.readouterr().out


def test_serve_flag_routes_to_server(monkeypatch):
    calls = {}

    def fake_run(app, host, port, log_level):
        calls["host"], calls["port"] = host, port

    import uvicorn

    monkeypatch.setattr(uvicorn, "run", fake_run)
    assert cli.main(["--serve", "--port", "9911"]) == 0
    assert calls == {"host": "127.0.0.1", "port": 9911}


def test_no_command_prints_help(capsys):
    assert cli.main([]) == 2
    assert "usage" in capsys.readouterr().out
