"""CLI behavior: dispatch, exit codes, error reporting, determinism."""

import io

import pytest

from commsum import cli


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_decompose_pass():
    code, out, err = run_cli(["decompose", "--ring", "matrix(integers, 2)",
                              "--input", "[[0,1],[0,0]]"])
    assert code == 0
    assert "verification: pass" in out
    assert "recomposition: pass" in out
    assert "elapsed:" in err


def test_decompose_nonzero_trace_is_an_input_error():
    code, out, err = run_cli(["decompose", "--ring", "matrix(integers, 2)",
                              "--input", "[[1,0],[0,0]]"])
    assert code == 2
    assert out == ""
    assert "trace is 1" in err


def test_syntax_error_reports_position():
    code, _, err = run_cli(["decompose", "--ring", "matrix(integers, 2)",
                            "--input", "[[1,0],[0,]]"])
    assert code == 2
    assert "char" in err


def test_missing_ring_is_an_input_error():
    code, _, err = run_cli(["decompose", "--input", "[[0,1],[0,0]]"])
    assert code == 2
    assert "--ring" in err


def test_wrong_ring_kind_is_rejected():
    code, _, err = run_cli(["decompose", "--ring", "integers",
                            "--input", "0"])
    assert code == 2
    assert "matrix ring" in err


def test_trace_sum_inline_split():
    code, out, _ = run_cli(["trace-sum", "--ring", "matrix(mod 4, 2)",
                            "--input", "[[1,2],[3,0]] ; [[0,1],[2,3]]"])
    assert code == 0
    assert "agreement: pass" in out


def test_trace_witness_with_key_value_input():
    code, out, _ = run_cli(["trace-witness", "--ring", "gf 7",
                            "--input", "terms: (3, 5); (2, 4)\nn: 2"])
    assert code == 0
    assert "witness-size: 2" in out


def test_bounded_with_input_document():
    doc = "matrix: [[1, 2], [3, 5]]\nterms: (2, 3); (1, 5)"
    code, out, _ = run_cli(["bounded", "--ring", "matrix(mod 6, 2)",
                            "--input", doc])
    assert code == 0
    assert "length-bound: 3" in out


def test_corner_defaults_to_singleton_blocks():
    code, out, _ = run_cli(["corner", "--ring", "matrix(integers, 3)",
                            "--input", "[[0,1,2],[3,0,4],[5,6,0]]"])
    assert code == 0
    assert "blocks: 1, 1, 1" in out


def test_weyl_commands():
    code, out, _ = run_cli(["weyl-eval", "--ring", "weyl(integers)",
                            "--input", "y0^2*x0^2"])
    assert code == 0
    assert "normal-form: x0^2*y0^2 - 4*x0*y0 + 2" in out

    code, out, _ = run_cli(["weyl-witness", "--ring", "weyl(integers)",
                            "--input", "x0*y0 + 3"])
    assert code == 0
    assert "fresh-index: 1" in out

    code, out, _ = run_cli(["weyl-integrate", "--ring", "weyl(rationals, 1)",
                            "--input", "x0*y0"])
    assert code == 0
    assert "antiderivative: 1/2*x0*y0^2" in out

    code, _, err = run_cli(["weyl-integrate", "--ring", "weyl(integers, 1)",
                            "--input", "x0*y0"])
    assert code == 2
    assert "divisible by 2" in err

    code, out, _ = run_cli(["weyl-integrate", "--ring", "weyl(integers, 1)",
                            "--input", "element: x0*y0\nmode: scaled"])
    assert code == 0
    assert "scale: 2" in out


def test_modp_and_lemma_and_counterexample():
    code, out, _ = run_cli(["modp-check", "--p", "5"])
    assert code == 0
    assert "commutator-is-identity: pass" in out
    assert "trace-of-xy-power: 4" in out

    code, out, _ = run_cli(["modp-check", "--p", "3", "--input", "r: 1"])
    assert code == 0
    assert "trace-equals-r: pass" in out

    code, out, _ = run_cli(["lemma-check", "--p", "2"])
    assert code == 0
    assert "max-dimension: 2" in out

    code, _, err = run_cli(["lemma-check", "--p", "5"])
    assert code == 2
    assert "sampling" in err

    code, out, _ = run_cli(["lemma-check", "--p", "5",
                            "--input", "mode: sample\nsamples: 30"])
    assert code == 0

    code, out, _ = run_cli(["counterexample", "--p", "2"])
    assert code == 0
    assert "target-span-dimension: 3" in out


def test_counterexample_with_custom_generators():
    doc = "x: x11 + x12\ny: x12\nz: x21"
    code, out, _ = run_cli(["counterexample", "--p", "2", "--input", doc])
    assert code == 0
    assert "phi-x11: x11 + x12" in out
    code, _, err = run_cli(["counterexample", "--p", "2",
                            "--input", "x: x11\ny: x11\nz: x21"])
    assert code == 2
    assert "dependent" in err


def test_shift_verify():
    code, out, _ = run_cli(["shift-verify", "--input", "(0,0,1); (1,1,2)",
                            "--window", "32"])
    assert code == 0
    assert "preimage-window: pass" in out
    code, out, _ = run_cli(["shift-verify", "--ring", "mod 6",
                            "--input", "(0, 1, 5)", "--window", "16"])
    assert code == 0


def test_replay_round_trip(tmp_path):
    saved = tmp_path / "report.txt"
    code, out, _ = run_cli(["lemma-check", "--p", "2", "--out", str(saved)])
    assert code == 0
    assert saved.read_text() == out

    code, out2, _ = run_cli(["replay", "--replay", str(saved)])
    assert code == 0
    assert "replay: match" in out2

    tampered = tmp_path / "tampered.txt"
    tampered.write_text(saved.read_text().replace("commuting-pairs: 88",
                                                  "commuting-pairs: 90"))
    code, out3, _ = run_cli(["replay", "--replay", str(tampered)])
    assert code == 1
    assert "replay: mismatch" in out3

    code, _, err = run_cli(["replay", "--replay", str(tmp_path / "absent.txt")])
    assert code == 2


def test_reports_are_deterministic():
    argvs = [
        ["decompose", "--ring", "matrix(mod 6, 3)",
         "--input", "[[1,2,3],[4,5,6],[0,0,0]]"],
        ["lemma-check", "--p", "3"],
        ["modp-check", "--p", "7", "--input", "r: 3"],
        ["lemma-check", "--p", "7", "--input", "mode: sample\nsamples: 40",
         "--seed", "0"],
        ["shift-verify", "--input", "(0,0,1); (3,2,-4)", "--window", "24"],
    ]
    for argv in argvs:
        code1, out1, _ = run_cli(argv)
        code2, out2, _ = run_cli(argv)
        assert code1 == code2 == 0
        assert out1 == out2


def test_unknown_command_rejected():
    code, _, _ = run_cli(["frobnicate"])
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["trace-witness", "--ring", "gf 7", "--input", "terms: (1, 2)\nn: 0"],
    ["bounded", "--ring", "matrix(integers, 2)",
     "--input", "matrix: [[1,0],[0,0]]"],
])
def test_precondition_failures_exit_2(argv):
    code, _, _ = run_cli(argv)
    assert code == 2
