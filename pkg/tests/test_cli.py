import json

import pytest

from zpure.cli import (
    BUNDLED_EXAMPLES,
    main,
    parse_sequence_document,
    report_document,
    sequence_document,
)
from zpure.purity import purity_report


@pytest.fixture()
def run_cli(capsys):
    def run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return run


def test_example_z4_nonpure(run_cli, tmp_path):
    code, out, _ = run_cli("example", "--name", "z4-nonpure")
    assert code == 0
    doc = json.loads(out)
    assert doc == {"modulus": 4, "L": [2], "M": [4], "N": [2], "f": [[2]], "g": [[1]]}
    path = tmp_path / "ex.json"
    code, _, _ = run_cli("example", "--name", "z4-nonpure", "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text()) == doc


def test_example_unknown_name(run_cli):
    code, _, err = run_cli("example", "--name", "nonsense")
    assert code == 2
    assert "unknown example" in err


def test_check_z4_nonpure_all_false(run_cli, tmp_path):
    path = tmp_path / "seq.json"
    path.write_text(json.dumps(BUNDLED_EXAMPLES["z4-nonpure"]))
    code, out, _ = run_cli("check", str(path), "--format", "json")
    assert code == 0  # consensus holds, so the run succeeds
    doc = json.loads(out)
    assert doc["consensus"] is True
    assert all(v is False for v in doc["verdicts"].values())
    assert doc["witnesses"]["tensor"] == {"kind": "tensor", "cyclic": 2}
    assert doc["witnesses"]["hom_lifting"]["target"] == [1]
    assert doc["witnesses"]["pp_pairs"]["psi"] == "E y1 : x1 + 2y1 = 0"


def test_check_split_demo_all_true(run_cli, tmp_path):
    path = tmp_path / "seq.json"
    path.write_text(json.dumps(BUNDLED_EXAMPLES["split-demo"]))
    code, out, _ = run_cli("check", str(path), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert all(doc["verdicts"].values())


def test_check_rejects_non_surjective(run_cli, tmp_path):
    bad = {"modulus": 4, "L": [2], "M": [4], "N": [2], "f": [[2]], "g": [[2]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run_cli("check", str(path))
    assert code == 2
    assert "surjective" in err


def test_check_rejects_ill_defined_map(run_cli, tmp_path):
    bad = {"modulus": 4, "L": [2], "M": [4], "N": [2], "f": [[1]], "g": [[1]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run_cli("check", str(path))
    assert code == 2
    assert "ill-defined" in err


def test_check_rejects_bad_chain(run_cli, tmp_path):
    bad = {"modulus": 8, "L": [], "M": [4, 2], "N": [4, 2], "f": [[], []], "g": [[1, 0], [0, 1]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run_cli("check", str(path))
    assert code == 2
    assert "chain" in err


def test_check_malformed_document(run_cli, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    code, _, err = run_cli("check", str(path))
    assert code == 3
    path2 = tmp_path / "missing.json"
    code, _, _ = run_cli("check", str(path2))
    assert code == 3


def test_roundtrip_documents():
    for name, doc in BUNDLED_EXAMPLES.items():
        seq = parse_sequence_document(doc)
        assert sequence_document(seq) == doc
        report = purity_report(seq)
        rd = report_document(seq, report)
        again = json.loads(json.dumps(rd))
        assert again == rd


def test_random_exit_codes_and_determinism(run_cli):
    code, out1, _ = run_cli("random", "--modulus", "4", "--trials", "30",
                            "--seed", "7", "--format", "json")
    assert code == 0
    code, out2, _ = run_cli("random", "--modulus", "4", "--trials", "30",
                            "--seed", "7", "--format", "json")
    assert out1 == out2
    code, out3, _ = run_cli("random", "--modulus", "4", "--trials", "30",
                            "--seed", "7", "--jobs", "2", "--format", "json")
    assert out1 == out3
    doc = json.loads(out1)
    assert doc["disagreements"] == 0
    assert doc["trials"] == 30


def test_random_invalid_trials(run_cli):
    code, _, err = run_cli("random", "--modulus", "4", "--trials", "0")
    assert code == 2


def test_lemmas_small(run_cli):
    code, out, _ = run_cli("lemmas", "--modulus", "4", "--trials", "3",
                           "--seed", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["all_passed"] is True
    names = {s["name"] for s in doc["suites"]}
    assert names == {"coend_evaluation", "restriction", "hom_tensor_duality",
                     "dual_of_hom", "fully_faithful"}


def test_lemmas_degenerate_modulus(run_cli):
    code, out, _ = run_cli("lemmas", "--modulus", "1", "--trials", "2",
                           "--seed", "0", "--format", "json")
    assert code == 0
    assert json.loads(out)["all_passed"] is True


def test_text_output_modes(run_cli, tmp_path):
    path = tmp_path / "seq.json"
    path.write_text(json.dumps(BUNDLED_EXAMPLES["split-demo"]))
    code, out, _ = run_cli("check", str(path), "--format", "text")
    assert code == 0
    assert "consensus: yes" in out
    code, out, _ = run_cli("random", "--modulus", "4", "--trials", "5",
                           "--seed", "1", "--format", "text")
    assert code == 0
    assert "disagreements: 0" in out
    code, out, _ = run_cli("lemmas", "--modulus", "4", "--trials", "2",
                           "--seed", "0", "--format", "text")
    assert code == 0
    assert "coend_evaluation" in out
