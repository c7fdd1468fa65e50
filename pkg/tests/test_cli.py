"""Command-line conformance: golden transcripts, exit codes, and the
structured output schema."""

import json

from wittram import cli
from wittram.cli import main, run_command


# -- golden transcripts, text mode ---------------------------------------------

def test_witt_add_transcript():
    code, text = run_command(["witt", "add", "--p", "2", "[t; 0]", "[t; 0]"])
    assert code == 0
    assert text == "[0; t^2]"


def test_witt_neg_transcript():
    code, text = run_command(["witt", "neg", "--p", "3", "[t; t^2]"])
    assert code == 0
    assert text == "[2*t; 2*t^2]"


def test_ram_analyze_transcript():
    code, text = run_command(["ram", "analyze", "--p", "2", "t^-1"])
    assert code == 0
    assert text.splitlines() == [
        "verdict: TotallyRamified",
        "evidence: v_omega = -1; v_x1 = -1/2; ramification_index = 2",
    ]


def test_ram_analyze_stalled_transcript():
    code, text = run_command(
        ["ram", "analyze", "--p", "2", "--residue", "fp-u", "[u * t^-2]"]
    )
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "verdict: Unclassified"
    assert "no p-th root" in lines[1]
    assert lines[2].startswith("trace (1 steps):")


def test_empty_window_exits_4():
    code, text = run_command(["ram", "analyze", "--p", "2", "0 + O(t^0)"])
    assert code == 4
    assert text == (
        "error: PrecisionExhausted: series is zero to the available "
        "precision but the precision window is empty"
    )


def test_parse_error_exits_3():
    code, text = run_command(["ram", "analyze", "--p", "2", "t^"])
    assert code == 3
    assert text == "error: ParseError: at offset 2: found '' (expected an integer)"


def test_u_over_prime_field_exits_2():
    code, text = run_command(["ram", "analyze", "--p", "2", "--residue", "fp", "u"])
    assert code == 2
    assert text == "error: UnsupportedInput: prime-field values must be constants"


def test_symbol_normalize_transcript():
    code, text = run_command(["symbol", "normalize", "--p", "2", "[[t^-2]; t^5)"])
    assert code == 0
    assert text.splitlines() == [
        "result: [[t^-2]; t^-3 + O(t^56))",
        "trace (1 steps): power_adjust_b",
    ]


def test_symbol_normalize_rejects_divisible_valuation():
    code, text = run_command(["symbol", "normalize", "--p", "2", "[[t^-1]; t^2)"])
    assert code == 2
    assert text == "error: HypothesisViolation: v(b) must be coprime to p"


def test_symbol_rewrite_transcript():
    code, text = run_command(["symbol", "rewrite", "--p", "2", "[[t^2; t^4]; t^-1)"])
    assert code == 0
    assert text.splitlines() == [
        "result: [[t^-1 + t^2 + O(t^63); t^4 + O(t^63)]; t^-1)",
        "trace (7 steps): absorb, same_b, strip_zero, same_omega, absorb, "
        "pth_power_b, same_b",
    ]


def test_thm_cyclic_to_insep_transcript():
    code, text = run_command(
        ["thm", "cyclic-to-insep", "--p", "2", "--omega", "[t^-1]", "--b", "t^2"]
    )
    assert code == 0
    assert text.splitlines() == [
        "c: t + O(t^63)",
        "v(c): 1",
        "note: c = N(x1) * b with v(N(x1)) coprime to p",
    ]


def test_thm_insep_to_cyclic_transcript():
    code, text = run_command(["thm", "insep-to-cyclic", "--p", "2", "[[0]; t^-1)"])
    assert code == 0
    assert text.splitlines() == [
        "result: [[t^-1 + O(t^63)]; t^-1)",
        "verdict: TotallyRamified",
        "evidence: v_omega = -1; v_x1 = -1/2; ramification_index = 2",
        "note: cyclic part x^p - x = omega1' + b' is totally ramified",
        "trace (2 steps): absorb, same_b",
    ]


def test_thm_perfect_transcript():
    code, text = run_command(["thm", "perfect", "--p", "3", "[[t; 0]; t^2)"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("result: [[t^-7 + t + O(t^55);")
    assert lines[1] == "verdict: TotallyRamified"
    assert "v_x2 = -49/9" in lines[2]
    assert lines[-1] == "trace (3 steps): power_adjust_b, absorb, same_b"


def test_thm_disjoint_pair_transcript():
    code, text = run_command(["thm", "disjoint-pair", "--p", "2", "--residue", "fp-u"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "classes: u, u^3"
    assert lines[1] == (
        "sweep: 3 combinations, no nontrivial combination is a coboundary"
    )
    assert lines[2] == "verdict: division_pair"


def test_thm_roundtrip_transcript():
    code, text = run_command(
        ["thm", "roundtrip", "--p", "2", "--omega", "[0; 0]", "--b", "t"]
    )
    assert code == 0
    assert text.splitlines() == [
        "stage insep_to_cyclic: TotallyRamified",
        "stage classify_cyclic: TotallyRamified",
        "stage cyclic_to_insep: c = t^-3 + O(t^60), v(c) = -3",
        "stage final_check: witness and trace re-validated",
        "verdict: ok",
    ]


def test_oracle_ghost_check_transcript():
    code, text = run_command(["oracle", "ghost-check", "--p", "3", "--m", "3"])
    assert code == 0
    assert text == "verdict: ok (3 ghost identities)"


def test_oracle_newton_check_transcript():
    code, text = run_command(
        ["oracle", "newton-check", "--p", "2", "--count", "25", "--seed", "7"]
    )
    assert code == 0
    assert text == "verdict: agreement 25/25"


# -- exit code edges -------------------------------------------------------------

def test_m_flag_conflict_exits_2():
    code, text = run_command(["ram", "analyze", "--p", "2", "--m", "2", "t^-1"])
    assert code == 2
    assert text == "error: ShapeMismatch: --m 2 does not match an input of length 1"


def test_m_flag_matching_is_accepted():
    code, _ = run_command(["ram", "analyze", "--p", "2", "--m", "1", "t^-1"])
    assert code == 0


def test_prime_cap_exits_2():
    code, text = run_command(["ram", "analyze", "--p", "7", "t"])
    assert code == 2
    assert text == "error: LimitExceeded: universal polynomials capped at p <= 5"


def test_argparse_rejections_use_its_own_exit():
    # unknown choices never reach the handlers; argparse exits with code 2
    code, text = run_command(["ram", "analyze", "--p", "2", "--residue", "fq", "t"])
    assert code == 2
    assert text == ""


def test_newton_check_mismatch_exits_1(monkeypatch):
    monkeypatch.setattr(cli, "newton_classify_deg_p", lambda el: "split")
    code, text = run_command(
        ["oracle", "newton-check", "--p", "2", "--count", "5", "--seed", "7"]
    )
    assert code == 1
    lines = text.splitlines()
    assert lines[0].startswith("verdict: agreement ")
    assert any(line.startswith("mismatch: ") for line in lines[1:])


def test_seed_flag_is_deterministic():
    one = run_command(["oracle", "newton-check", "--p", "3", "--count", "10",
                       "--seed", "3", "--residue", "fp-u"])
    two = run_command(["oracle", "newton-check", "--p", "3", "--count", "10",
                       "--seed", "3", "--residue", "fp-u"])
    assert one == two
    other = run_command(["oracle", "newton-check", "--p", "3", "--count", "10",
                         "--seed", "4", "--residue", "fp-u"])
    assert other[0] == 0


# -- structured schema -------------------------------------------------------------

STRUCTURED_COMMANDS = [
    ["witt", "add", "--p", "2", "[t; 0]", "[t; 0]"],
    ["witt", "neg", "--p", "3", "[t]"],
    ["ram", "analyze", "--p", "2", "t^-1"],
    ["symbol", "normalize", "--p", "2", "[[t^-2]; t^5)"],
    ["symbol", "rewrite", "--p", "2", "[[t^2; t^4]; t^-1)"],
    ["thm", "cyclic-to-insep", "--p", "2", "--omega", "[t^-1]", "--b", "t^2"],
    ["thm", "insep-to-cyclic", "--p", "2", "[[0]; t^-1)"],
    ["thm", "perfect", "--p", "3", "[[t; 0]; t^2)"],
    ["thm", "disjoint-pair", "--p", "3", "--residue", "fp-u", "--m", "2"],
    ["thm", "roundtrip", "--p", "2", "--omega", "[0; 0]", "--b", "t"],
    ["oracle", "ghost-check", "--p", "2"],
    ["oracle", "newton-check", "--p", "2", "--count", "5", "--seed", "1"],
]


def test_structured_schema_is_stable():
    for argv in STRUCTURED_COMMANDS:
        code, text = run_command(argv + ["--format", "structured"])
        assert code == 0, argv
        record = json.loads(text)
        assert sorted(record.keys()) == [
            "config", "evidence", "inputs", "trace", "verdict",
        ], argv
        assert sorted(record["config"].keys()) == [
            "format", "m", "p", "precision", "residue",
        ]
        assert isinstance(record["trace"], list)
        assert isinstance(record["inputs"], dict)
        assert isinstance(record["evidence"], dict)


def test_structured_errors_keep_the_schema():
    code, text = run_command(
        ["ram", "analyze", "--p", "2", "--format", "structured", "t^"]
    )
    assert code == 3
    record = json.loads(text)
    assert sorted(record.keys()) == [
        "config", "evidence", "inputs", "trace", "verdict",
    ]
    assert record["verdict"] == "error"
    assert record["evidence"]["error"] == "ParseError"


def test_structured_roundtrip_trace():
    code, text = run_command(
        ["thm", "roundtrip", "--p", "2", "--format", "structured",
         "--omega", "[0; 0]", "--b", "t"]
    )
    assert code == 0
    record = json.loads(text)
    assert record["verdict"] == "ok"
    assert [s["rule"] for s in record["trace"]] == [
        "power_adjust_b", "absorb", "same_b", "as_coboundary", "same_b",
    ]
    step = record["trace"][0]
    assert sorted(step.keys()) == ["after", "before", "params", "rule"]
    assert step["before"] == ["[[0; 0]; t)"]
    assert step["after"] == "[[0; 0]; t^-3 + O(t^60))"
    assert step["params"] == {"gamma": "t^-1"}
    assert record["evidence"]["v_c"] == -3
    assert record["evidence"]["output_classification"] == "totally_ramified"
    assert record["evidence"]["stages"] == [
        "insep_to_cyclic", "classify_cyclic", "cyclic_to_insep", "final_check",
    ]


def test_structured_verdicts_use_enum_values():
    code, text = run_command(
        ["ram", "analyze", "--p", "2", "--format", "structured", "t^-1"]
    )
    record = json.loads(text)
    assert record["verdict"] == "totally_ramified"
    assert record["evidence"]["v_x1"] == "-1/2"


# -- main() ---------------------------------------------------------------------

def test_main_prints_and_returns_code(capsys):
    code = main(["witt", "add", "--p", "2", "[t; 0]", "[t; 0]"])
    assert code == 0
    assert capsys.readouterr().out == "[0; t^2]\n"


def test_main_error_path(capsys):
    code = main(["ram", "analyze", "--p", "2", "t^"])
    assert code == 3
    assert capsys.readouterr().out.startswith("error: ParseError")
