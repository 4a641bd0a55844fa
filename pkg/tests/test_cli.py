"""CLI behavior: outputs, exit codes, strategy checks, play, serve."""

import re
import subprocess
import sys
import time

import httpx
import pytest

from impartial.cli import main

RAS_ROW_1 = "0 2 2 1 4 3 3 1 4 2 6 5"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- grundy -------------------------------------------------------------------


def test_grundy_table_first_row(capsys):
    code, out, _ = run_cli(capsys, "grundy", "--game", "remove-a-square-2xn", "--n-max", "12")
    assert code == 0
    assert out.strip() == RAS_ROW_1


def test_grundy_wraps_at_twelve(capsys):
    code, out, _ = run_cli(capsys, "grundy", "--game", "remove-a-square-2xn", "--n-max", "24")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 2
    assert lines[0] == RAS_ROW_1


def test_grundy_csv(capsys):
    code, out, _ = run_cli(
        capsys, "grundy", "--game", "remove-a-square-2xn", "--n-max", "3", "--format", "csv"
    )
    assert code == 0
    assert out.strip() == "n,g\n1,0\n2,2\n3,2"


def test_grundy_bad_range_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "grundy", "--game", "remove-a-square-2xn", "--n-max", "0")
    assert code == 2
    assert "error" in err


def test_unknown_game_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["grundy", "--game", "tic-tac-toe", "--n-max", "5"])
    assert excinfo.value.code == 2


# --- classify -----------------------------------------------------------------


def test_classify_demon_examples(capsys):
    code, out, _ = run_cli(capsys, "classify", "--game", "demon", "--range", "0..10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "P,N,N,P,P,N,N,N,P,P,P"


def test_classify_sfp_p_side(capsys):
    code, out, _ = run_cli(capsys, "classify", "--game", "sfp", "--range", "1..30")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "P: 1,2,3,4,5,7,11,13,16,17,19,22,23,25,27,29"
    assert lines[2] == "N: 6,8,9,10,12,14,15,18,20,21,24,26,28,30"


def test_classify_chocolate_single_value(capsys):
    code, out, _ = run_cli(
        capsys, "classify", "--game", "chocolate", "--m", "2", "--range", "0..0"
    )
    assert code == 0
    assert out.strip().splitlines()[0] == "P"


def test_classify_chocolate_requires_m(capsys):
    code, _, err = run_cli(capsys, "classify", "--game", "chocolate", "--range", "0..5")
    assert code == 2


def test_classify_check_modes_agree(capsys):
    for game, extra in [
        ("demon", []),
        ("chocolate", ["--m", "3"]),
        ("nofactor", []),
        ("complete", []),
        ("cycle", []),
    ]:
        lo = {"nofactor": "0", "complete": "1", "cycle": "3"}.get(game, "0")
        code, _, err = run_cli(
            capsys, "classify", "--game", game, "--range", f"{lo}..10", "--check", *extra
        )
        assert code == 0, (game, err)


def test_classify_check_rejected_without_closed_form(capsys):
    code, _, _ = run_cli(capsys, "classify", "--game", "sfp", "--range", "1..10", "--check")
    assert code == 2


def test_classify_oracle_bound(capsys):
    code, _, _ = run_cli(
        capsys, "classify", "--game", "nofactor", "--range", "0..20", "--oracle"
    )
    assert code == 2


def test_classify_csv_format(capsys):
    code, out, _ = run_cli(
        capsys, "classify", "--game", "demon", "--range", "0..2", "--format", "csv"
    )
    assert code == 0
    assert out.strip() == "n,outcome\n0,P\n1,N\n2,N"


def test_classify_parallel_jobs_preserve_order(capsys):
    code, serial, _ = run_cli(capsys, "classify", "--game", "demon", "--range", "0..40")
    code2, parallel, _ = run_cli(
        capsys, "classify", "--game", "demon", "--range", "0..40", "--jobs", "3"
    )
    assert code == code2 == 0
    assert serial == parallel


# --- verify -------------------------------------------------------------------


@pytest.mark.parametrize(
    "game",
    ["remove-a-square-2xn", "path-remove-an-edge", "sfp-p", "sfp-n", "cycle-n", "path-p"],
)
def test_verify_against_bundled_snapshots(capsys, game):
    code, out, _ = run_cli(capsys, "verify", "--game", game)
    assert code == 0, out
    assert "pass" in out


def test_verify_explicit_id_and_range(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--game",
        "remove-a-square-2xn",
        "--oeis",
        "A286332",
        "--n-max",
        "192",
    )
    assert code == 0 and "pass" in out


def test_verify_wrong_id_is_usage_error(capsys):
    code, _, _ = run_cli(
        capsys, "verify", "--game", "remove-a-square-2xn", "--oeis", "A000001"
    )
    assert code == 2


def test_verify_corrupt_snapshot_is_data_error(capsys, tmp_path):
    (tmp_path / "A286332.txt").write_text("not numbers at all\n")
    code, _, err = run_cli(
        capsys,
        "verify",
        "--game",
        "remove-a-square-2xn",
        "--snapshot-dir",
        str(tmp_path),
    )
    assert code == 4


def test_verify_mismatching_snapshot_fails(capsys, tmp_path):
    (tmp_path / "A286332.txt").write_text("1 0\n2 2\n3 9\n")
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--game",
        "remove-a-square-2xn",
        "--n-max",
        "3",
        "--snapshot-dir",
        str(tmp_path),
    )
    assert code == 3
    assert "fail" in out


def test_verify_missing_snapshot_is_data_error(capsys, tmp_path):
    code, _, _ = run_cli(
        capsys,
        "verify",
        "--game",
        "remove-a-square-2xn",
        "--snapshot-dir",
        str(tmp_path),
    )
    assert code == 4


# --- period -------------------------------------------------------------------


def test_period_remove_a_square(capsys):
    code, out, _ = run_cli(
        capsys, "period", "--game", "remove-a-square-2xn", "--n-max", "400"
    )
    assert code == 0
    assert "period 12" in out


def test_period_path_game(capsys):
    code, out, _ = run_cli(
        capsys, "period", "--game", "path-remove-an-edge", "--n-max", "300"
    )
    assert code == 0
    assert "period 34" in out


def test_period_insufficient_data(capsys):
    code, out, _ = run_cli(
        capsys, "period", "--game", "remove-a-square-2xn", "--n-max", "10"
    )
    assert code == 3
    assert "no period" in out


# --- verify-strategy ------------------------------------------------------------


def test_verify_strategy_diamond(capsys):
    code, out, _ = run_cli(
        capsys, "verify-strategy", "--target", "diamond-strategy", "--bound", "2"
    )
    assert code == 0
    assert "c=2" in out


def test_verify_strategy_nofactor(capsys):
    code, out, _ = run_cli(
        capsys, "verify-strategy", "--target", "nofactor-second-wins", "--bound", "9"
    )
    assert code == 0


def test_verify_strategy_mirror_small(capsys):
    code, out, _ = run_cli(
        capsys, "verify-strategy", "--target", "mirror-strategy", "--bound", "8"
    )
    assert code == 0


def test_verify_strategy_mirror_rejects_asymmetric_input(capsys, tmp_path):
    points = tmp_path / "shape.txt"
    points.write_text("1 1\n2 1\n")
    code, _, err = run_cli(
        capsys,
        "verify-strategy",
        "--target",
        "mirror-strategy",
        "--points-file",
        str(points),
    )
    assert code == 2
    assert "precondition" in err


# --- play (subprocess: needs real stdin) ----------------------------------------


def play_process(args, moves):
    return subprocess.run(
        [sys.executable, "-m", "impartial.cli", "play", *args],
        input="\n".join(moves) + "\n",
        capture_output=True,
        text=True,
        timeout=60,
    )


def test_play_demon_game_to_the_end():
    result = play_process(["--game", "demon", "--coins", "5"], ["2", "1"])
    assert result.returncode == 0
    assert "pile: 3" in result.stdout  # engine faced the P-position 3
    assert "engine made the last move" in result.stdout


def test_play_rejects_illegal_move_and_reprompts():
    result = play_process(["--game", "demon", "--coins", "5"], ["4", "2", "1"])
    assert result.returncode == 0
    assert "illegal move" in result.stdout


def test_play_handles_eof():
    result = subprocess.run(
        [sys.executable, "-m", "impartial.cli", "play", "--game", "demon", "--coins", "5"],
        input="",
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert result.returncode == 0
    assert "aborted" in result.stdout


def test_play_chocolate_forced_line():
    result = play_process(["--game", "chocolate", "--m", "2", "--stones", "4"], ["2"])
    assert result.returncode == 0
    assert "engine made the last move" in result.stdout


# --- serve (subprocess) ----------------------------------------------------------


def test_serve_ephemeral_port_and_catalog():
    proc = subprocess.Popen(
        [sys.executable, "-m", "impartial.cli", "serve", "--port", "0"],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
        text=True,
    )
    try:
        line = proc.stdout.readline()
        match = re.search(r"http://([\d.]+):(\d+)", line)
        assert match, line
        base = f"http://{match.group(1)}:{match.group(2)}"
        for _ in range(50):
            try:
                response = httpx.get(f"{base}/api/games", timeout=1.0)
                break
            except httpx.HTTPError:
                time.sleep(0.1)
        else:
            pytest.fail("service never came up")
        assert response.status_code == 200
        assert len(response.json()["games"]) == 7
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_serve_occupied_port_exits_5():
    import socket

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.bind(("127.0.0.1", 0))
    sock.listen(1)
    port = sock.getsockname()[1]
    try:
        result = subprocess.run(
            [sys.executable, "-m", "impartial.cli", "serve", "--port", str(port)],
            capture_output=True,
            text=True,
            timeout=30,
        )
        assert result.returncode == 5
    finally:
        sock.close()
