import pytest

from geodouble.cli import main, parse_complex_number, parse_matrix
from geodouble.construction import family_scheme
from geodouble.triangulation import render_scheme


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestParsing:
    def test_complex_literals(self):
        assert parse_complex_number("1+2i") == 1 + 2j
        assert parse_complex_number("-0.5i") == -0.5j
        assert parse_complex_number("3") == 3
        assert parse_complex_number("i") == 1j
        assert parse_complex_number("2-i") == 2 - 1j
        with pytest.raises(ValueError):
            parse_complex_number("zz")

    def test_matrix(self):
        assert parse_matrix("i,0;0,-i") == [[1j, 0], [0, -1j]]
        with pytest.raises(ValueError):
            parse_matrix("1,2,3;4,5,6")


class TestFamily:
    def test_verify_pass(self, capsys):
        code, out = run(capsys, "family", "verify", "--n", "4")
        assert code == 0
        assert "PASS edge_class_count" in out
        assert "FAIL" not in out

    def test_verify_inadmissible_is_domain_error(self, capsys):
        code = main(["family", "verify", "--n", "6"])
        assert code == 1

    def test_report_table(self, capsys):
        code, out = run(capsys, "family", "report", "--n-min", "4", "--n-max", "13")
        assert code == 0
        assert "6/7" in out
        assert "5/8" in out
        assert "PASS all_ratios_below_two" in out

    def test_report_epsilon(self, capsys):
        code, out = run(capsys, "family", "report", "--n-min", "4", "--n-max", "5",
                        "--epsilon", "0.1")
        assert code == 0
        assert "min_n_for_ratio = 79" in out

    def test_machine_output_deterministic(self, capsys):
        args = ("--machine", "family", "report", "--n-min", "4", "--n-max", "20")
        code1, out1 = run(capsys, *args)
        code2, out2 = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2
        assert "row.4.ratio_closed=6/7" in out1


class TestScheme:
    def test_info(self, tmp_path, capsys):
        path = tmp_path / "family4.scheme"
        path.write_text(render_scheme(family_scheme(4)))
        code, out = run(capsys, "scheme", "info", str(path))
        assert code == 0
        assert "edge_classes = 2" in out
        assert "orientable = True" in out
        assert "handlebody_genus = 5" in out

    def test_canon_roundtrip(self, tmp_path, capsys):
        path = tmp_path / "raw.scheme"
        path.write_text("tets 2\npair 2.453 1.132\npair 1.264 2.516\n"
                        "pair 1.453 2.132\npair 1.516 2.264\n")
        code, out = run(capsys, "scheme", "canon", str(path))
        assert code == 0
        assert out.splitlines()[0] == "tets 2"
        assert "pair 1.132 2.453" in out

    def test_parse_error_exit_one(self, tmp_path, capsys):
        path = tmp_path / "bad.scheme"
        path.write_text("tets 1\npair 1.132 1.132\n")
        assert main(["scheme", "info", str(path)]) == 1

    def test_family_emit(self, capsys):
        code, out = run(capsys, "scheme", "family", "--n", "4")
        assert code == 0
        assert out == render_scheme(family_scheme(4))


class TestFg:
    def test_fold_edge_list(self, capsys):
        code, out = run(capsys, "fg", "fold", "--rank", "2", "--gens", "aa,b,abA")
        assert code == 0
        assert "vertices = 2" in out
        assert "--a-->" in out

    def test_member(self, capsys):
        code, out = run(capsys, "fg", "member", "--rank", "2", "--gens", "a",
                        "--word", "aaa")
        assert code == 0
        assert "member = True" in out

    def test_rank_index_rep(self, capsys):
        _, out = run(capsys, "fg", "rank", "--rank", "2", "--gens", "aa,b,abA")
        assert "rank = 3" in out
        _, out = run(capsys, "fg", "index", "--rank", "2", "--gens", "a")
        assert "index = infinite" in out
        _, out = run(capsys, "fg", "rep", "--rank", "2", "--gens", "aa,b,abA",
                     "--word", "aaa")
        assert "representative = a" in out


class TestDouble:
    def test_nf(self, capsys):
        code, out = run(capsys, "double", "nf", "--rank", "2", "--H", "aa,b,abA",
                        "--word", "u:abA p:bb u:a")
        assert code == 0
        assert "syllables = 1" in out
        assert "fixed_by_swap = False" in out

    def test_fixtest_deterministic(self, capsys):
        args = ("double", "fixtest", "--rank", "2", "--H", "aa,b,abA",
                "--samples", "300", "--seed", "7")
        code1, out1 = run(capsys, *args)
        code2, out2 = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2
        assert "agreements = 300/300" in out1

    def test_fixtest_seed_changes_stream(self, capsys):
        _, out1 = run(capsys, "double", "fixtest", "--rank", "2", "--H", "aa",
                      "--samples", "50", "--seed", "1")
        _, out2 = run(capsys, "double", "fixtest", "--rank", "2", "--H", "aa",
                      "--samples", "50", "--seed", "2")
        assert out1 != out2


class TestIso:
    def test_classify(self, capsys):
        code, out = run(capsys, "iso", "classify", "--m", "1,1;0,1")
        assert code == 0
        assert "class = parabolic" in out

    def test_classify_reversing(self, capsys):
        code, out = run(capsys, "iso", "classify", "--m", "0,-1;1,0", "--rev")
        assert code == 0
        assert "fixed_set = empty" in out

    def test_commute(self, capsys):
        code, out = run(capsys, "iso", "commute", "--m1", "i,0;0,-i",
                        "--m2", "0,1;-1,0")
        assert code == 0
        assert "commute = True" in out
        assert "criterion = perpendicular_pi_rotations" in out

    def test_table(self, capsys):
        code, out = run(capsys, "iso", "table", "--preserving", "--closed")
        assert code == 0
        assert "fix_types = G Z" in out
        code, out = run(capsys, "iso", "table", "--reversing", "--phi2-id")
        assert "pi1(S)" in out


class TestPresAudit:
    def test_pres_from_scheme(self, tmp_path, capsys):
        path = tmp_path / "family4.scheme"
        path.write_text(render_scheme(family_scheme(4)))
        code, out = run(capsys, "pres", "from-scheme", str(path))
        assert code == 0
        assert "generators = 2" in out
        assert "relators = 8" in out

    def test_pres_h1rank(self, capsys):
        code, out = run(capsys, "pres", "h1rank", "--gens", "2",
                        "--relators", "abAB")
        assert code == 0
        assert "h1_rank = 2" in out

    def test_pres_simplify(self, capsys):
        code, out = run(capsys, "pres", "simplify", "--gens", "2",
                        "--relators", "b")
        assert code == 0
        assert "generators = 1" in out

    def test_audit_single_case(self, capsys):
        code, out = run(capsys, "audit", "--g", "2", "--m", "1", "--l", "0",
                        "--orientable", "--separating")
        assert code == 0
        assert "PASS final_inequality_strict" in out

    def test_audit_sweep(self, capsys):
        code, out = run(capsys, "audit", "--sweep", "--g-max", "5",
                        "--m-max", "3", "--l-max", "3")
        assert code == 0
        assert "PASS all_final_inequalities_strict" in out

    def test_audit_inconsistent_params(self, capsys):
        assert main(["audit", "--g", "2", "--m", "1", "--l", "1",
                     "--separating"]) == 1


class TestExitCodes:
    def test_unknown_subcommand_usage_error(self, capsys):
        assert main(["bogus"]) == 2

    def test_missing_required_usage_error(self, capsys):
        assert main(["family", "verify"]) == 2
