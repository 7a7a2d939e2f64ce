import json

import pytest

from safesets.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestSolve:
    def test_c4_unit(self, capsys):
        code, obj = run_json(capsys, "solve", "--graph6", "Cl",
                             "--weights", "[1, 1, 1, 1]")
        assert code == 0
        assert obj["s"] == "2" and obj["cs"] == "2"
        assert obj["minimumSafeSet"] == [0, 1]

    def test_weight_dict_and_fractions(self, capsys):
        weights = json.dumps(
            {"weights": ["1/2", "1/2", "1/3", "1/3", "1/3"]})
        code, obj = run_json(capsys, "solve", "--graph6", "D]o",
                             "--weights", weights)
        assert code == 0
        assert obj["s"] == "1"

    def test_all_minima(self, capsys):
        code, obj = run_json(capsys, "solve", "--graph6", "Cl",
                             "--weights", "[1, 1, 1, 1]", "--all-minima")
        assert code == 0
        assert obj["allMinimumSafeSets"] == [
            [0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
        assert obj["allMinimumConnectedSafeSets"] == [
            [0, 1], [0, 3], [1, 2], [2, 3]]

    def test_weights_file(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        path.write_text("[3, 3, 1, 2, 2]")
        code, obj = run_json(capsys, "solve", "--graph6", "DhC",
                             "--weights-file", str(path))
        assert code == 0
        assert obj["s"] == "4" and obj["cs"] == "4"

    def test_missing_weights(self, capsys):
        code, _, err = run(capsys, "solve", "--graph6", "Cl")
        assert code == 2
        assert "error:" in err and "weights" in err

    def test_wrong_weight_count(self, capsys):
        code, _, err = run(capsys, "solve", "--graph6", "Cl",
                           "--weights", "[1, 1]")
        assert code == 2
        assert "4" in err

    def test_bad_graph6(self, capsys):
        code, _, err = run(capsys, "solve", "--graph6", "Cé",
                           "--weights", "[1, 1, 1, 1]")
        assert code == 2
        assert "error:" in err

    def test_bad_json(self, capsys):
        code, _, err = run(capsys, "solve", "--graph6", "Cl",
                           "--weights", "[1, 1, 1")
        assert code == 2
        assert "line 1" in err


class TestRecognize:
    def test_k33_minus_edge(self, capsys):
        code, obj = run_json(capsys, "recognize", "--graph6", "EBz_")
        assert code == 0
        assert obj["verdict"] == "MEMBER"
        assert obj["family"] == "K33_MINUS_EDGE"

    def test_undecided(self, capsys):
        # Petersen graph
        code, obj = run_json(capsys, "recognize", "--graph6", "IheA@GUAo")
        assert code == 0
        assert obj["verdict"] == "UNDECIDED"


class TestWitnessAndVerify:
    def test_member_reports_unknown(self, capsys):
        code, obj = run_json(capsys, "witness", "--graph6", "EhEG")
        assert code == 0
        assert obj == {"schemaVersion": 1, "graph6": "EhEG",
                       "result": "unknown"}

    def test_witness_roundtrips_through_verify(self, capsys, tmp_path):
        code, cert = run_json(capsys, "witness", "--graph6", "D]o")
        assert code == 0
        assert cert["pattern"] == "KMN"
        path = tmp_path / "cert.json"
        path.write_text(json.dumps(cert))
        code, obj = run_json(capsys, "verify-certificate", "--input",
                             str(path))
        assert code == 0
        assert obj["ok"] is True and obj["problems"] == []

    def test_tampered_certificate_fails(self, capsys, tmp_path):
        code, cert = run_json(capsys, "witness", "--graph6", "D]o")
        assert code == 0
        cert["s"] = "1"
        path = tmp_path / "cert.json"
        path.write_text(json.dumps(cert))
        code, obj = run_json(capsys, "verify-certificate", "--input",
                             str(path))
        assert code == 1
        assert obj["ok"] is False and obj["problems"]

    def test_malformed_certificate(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        path.write_text("{\"graph6\": \"Cl\"}")
        code, _, err = run(capsys, "verify-certificate", "--input", str(path))
        assert code == 2
        assert "error:" in err


class TestContract:
    def test_vertex_set_form(self, capsys):
        code, obj = run_json(capsys, "contract", "--graph6", "DhC",
                             "--json", '{"s": [1, 3]}')
        assert code == 0
        assert obj["bags"] == [[1], [3], [0], [2], [4]]
        assert obj["inS"] == [True, True, False, False, False]

    def test_bags_form_with_lift(self, capsys):
        code, obj = run_json(
            capsys, "contract", "--graph6", "EhEG",
            "--json", '{"bags": [[0], [3], [1, 2], [4, 5]]}',
            "--weights", "[1, 2, 3, 4, 5, 6]")
        assert code == 0
        # the quotient joins 0 and 1 to both merged parts: C4 relabeled
        assert obj["quotientGraph6"] == "C]"
        assert obj["inS"] is None
        assert obj["liftedWeights"] == ["1", "4", "5", "11"]

    def test_needs_s_or_bags(self, capsys):
        code, _, err = run(capsys, "contract", "--graph6", "Cl",
                           "--json", "{}")
        assert code == 2
        assert "'s' or a 'bags'" in err


class TestCampaign:
    def test_input_file_with_outputs(self, capsys, tmp_path):
        graphs = tmp_path / "graphs.g6"
        graphs.write_text("DhC\nCl\n")
        out = tmp_path / "report.json"
        csv_path = tmp_path / "report.csv"
        code, _, err = run(capsys, "campaign", "--input", str(graphs),
                           "--out", str(out), "--csv", str(csv_path),
                           "--samples", "5")
        assert code == 0
        assert "campaign: 2 graphs, 0 failures" in err
        report = json.loads(out.read_text())
        assert report["counts"] == {
            "graphs": 2, "members": 1, "nonMembers": 1, "undecided": 0,
            "certificates": 1, "failures": 0,
            "bipartite": 2, "chordal": 1, "triangleFree": 2}
        lines = csv_path.read_text().strip().splitlines()
        assert len(lines) == 3

    def test_stdout_report(self, capsys, tmp_path):
        graphs = tmp_path / "graphs.g6"
        graphs.write_text("Cl\n")
        code, out, _ = run(capsys, "campaign", "--input", str(graphs),
                           "--samples", "2")
        assert code == 0
        assert json.loads(out)["counts"]["graphs"] == 1

    def test_unreadable_input(self, capsys, tmp_path):
        code, _, err = run(capsys, "campaign", "--input",
                           str(tmp_path / "missing.g6"))
        assert code == 2
        assert "cannot read" in err

    def test_bad_order(self, capsys):
        code, _, err = run(capsys, "campaign", "--max-order", "99")
        assert code == 2
        assert "between 1 and 8" in err


class TestArgparseErrors:
    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_graph6(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve"])
        assert exc.value.code == 2
