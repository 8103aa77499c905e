import pytest

from main import main

PROVABLE = """
list(sos).
p(c).
-p(x) | $ans(x).
end_of_list.
"""


@pytest.fixture
def input_file(tmp_path):
    path = tmp_path / "small.in"
    path.write_text(PROVABLE, encoding="utf-8")
    return path


class TestProve:
    def test_proof_exit_zero(self, input_file, capsys):
        assert main(["prove", str(input_file)]) == 0
        out = capsys.readouterr().out
        assert "---------------- PROOF ----------------" in out
        assert "$ans(c)." in out

    def test_limit_exit_two(self, input_file, capsys):
        assert main(["prove", str(input_file), "--assign", "max_weight=0", "--no-stats"]) == 2
        assert capsys.readouterr().out == "Search stopped by max_weight limit.\n"

    def test_sos_empty_exit_one(self, tmp_path):
        path = tmp_path / "empty.in"
        path.write_text("list(sos).\np(c).\nend_of_list.\n", encoding="utf-8")
        assert main(["prove", str(path)]) == 1

    def test_parse_error_exit_three(self, tmp_path):
        path = tmp_path / "bad.in"
        path.write_text("set(no_such_flag).\n", encoding="utf-8")
        assert main(["prove", str(path)]) == 3

    def test_missing_input(self):
        assert main(["prove"]) == 3

    def test_unknown_flag_override(self, input_file):
        assert main(["prove", str(input_file), "--set", "hyper_res"]) == 3

    def test_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["prove", "--assign"])
        assert info.value.code == 3


class TestCheck:
    def test_round_trip(self, input_file, tmp_path, capsys):
        main(["prove", str(input_file)])
        proof_file = tmp_path / "proof.txt"
        proof_file.write_text(capsys.readouterr().out, encoding="utf-8")
        assert main(["check", str(proof_file)]) == 0
        assert capsys.readouterr().out.startswith("Valid (3 lines)")

    def test_invalid(self, tmp_path, capsys):
        proof_file = tmp_path / "proof.txt"
        proof_file.write_text("1 [] p(c).\n2 [] -p(x).\n3 [binary,2.1,1.1] $ans(c).\n", encoding="utf-8")
        assert main(["check", str(proof_file)]) == 1
        assert capsys.readouterr().out.startswith("Invalid at 3")


class TestOracleCommands:
    def test_normalize(self, capsys):
        assert main(["normalize", "abst abst k c1 c2"]) == 0
        assert capsys.readouterr().out == "c1 c1\n"

    def test_normalize_cap(self, capsys):
        assert main(["normalize", "k c1 c2", "--cap", "0"]) == 2

    def test_normalize_bad_term(self):
        assert main(["normalize", "k (c1"]) == 3

    def test_verify(self, capsys):
        assert main(["verify", "f_reduced", "abst abst k"]) == 0
        assert capsys.readouterr().out == "verified\n"
        assert main(["verify", "f_reduced", "k"]) == 1

    def test_corpus_unknown_name(self):
        assert main(["corpus", "nope"]) == 3
