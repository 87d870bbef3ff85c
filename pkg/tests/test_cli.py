"""End-to-end command-line behavior: output lines and the exit-code contract."""

import pytest

from vancyc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.splitlines(), captured.err.splitlines()


def test_bracket_of_canonical_pair(capsys, germs_dir):
    """{q1, p1} = 1 printed as a bare polynomial."""
    code, out, err = run(capsys, "bracket", str(germs_dir / "canonical_pair.germ"), "1", "2")
    assert code == 0
    assert out == ["1"]
    assert err == []


def test_bracket_index_out_of_range(capsys, germs_dir):
    """Component indices are 1-based and validated."""
    code, out, err = run(capsys, "bracket", str(germs_dir / "basic.germ"), "0", "2")
    assert code == 2
    assert "out of range" in err[0]


def test_bracket_requires_symplectic_block(capsys, germs_dir):
    """A germ without a pairing cannot be bracketed."""
    code, out, err = run(capsys, "bracket", str(germs_dir / "fold.germ"), "1", "1")
    assert code == 2
    assert "no symplectic pairing" in err[0]


def test_discriminant_file_mode(capsys, germs_dir):
    """Full elimination output: target, generators, reduced form, multiplicity."""
    code, out, err = run(capsys, "discriminant", str(germs_dir / "basic.germ"))
    assert code == 0
    assert out == ["target: s1 s2", "generator: s1", "reduced: s1", "multiplicity: 1"]


def test_discriminant_given_mode(capsys):
    """--given reduces the provided curve and reports its origin multiplicity."""
    code, out, err = run(capsys, "discriminant", "--given", "s2*(s2^3-s1^4)")
    assert code == 0
    assert out == ["given: -s1^4*s2 + s2^4",
                   "reduced: s1^4*s2 - s2^4",
                   "multiplicity: 4"]


def test_discriminant_budget_exhaustion(capsys, germs_dir):
    """A zero S-pair budget exits 3 with the stopped-after diagnostic."""
    code, out, err = run(capsys, "discriminant", str(germs_dir / "basic.germ"),
                         "--budget", "0")
    assert code == 3
    assert out == ["budget-exhausted: stopped after 0 S-pairs (limit 0)"]


def test_discriminant_requires_input(capsys):
    """No file and no --given is a usage error."""
    code, out, err = run(capsys, "discriminant")
    assert code == 2


def test_missing_germ_file(capsys, germs_dir):
    """Unreadable paths map to exit 2 with an error line."""
    code, out, err = run(capsys, "discriminant", str(germs_dir / "no_such.germ"))
    assert code == 2
    assert err and err[0].startswith("error:")


def test_bad_germ_file_reports_position(capsys, tmp_path):
    """Syntax errors in germ files carry line/column in the message."""
    bad = tmp_path / "bad.germ"
    bad.write_text("vars: x\ncomponent: x + + 1\n")
    code, out, err = run(capsys, "discriminant", str(bad))
    assert code == 2
    assert "line 2" in err[0]


def test_coxeter_full_run(capsys):
    """Type A3: braid relations, group order 24, Coxeter element order 4."""
    code, out, err = run(capsys, "coxeter", "A3")
    assert code == 0
    assert out == [
        "CHECK braid-A3 pass expected=true got=true",
        "CHECK order-A3 pass expected=24 got=24",
        "CHECK coxeter-element-A3 pass expected=4 got=4",
    ]


def test_coxeter_single_check(capsys):
    """--check braid restricts the output to one CHECK line."""
    code, out, err = run(capsys, "coxeter", "G2", "--check", "braid")
    assert code == 0
    assert out == ["CHECK braid-G2 pass expected=true got=true"]


def test_coxeter_rejects_unsupported_type(capsys):
    """Labels outside the supported list are usage errors."""
    for label in ("E7", "Z9", "A99"):
        code, out, err = run(capsys, "coxeter", label)
        assert code == 2
        assert "unsupported type" in err[0]


def test_fold_d4_full(capsys):
    """The full fold prints type, group order/name, abelianness, rank check."""
    code, out, err = run(capsys, "fold", "D4", "full", "--notes")
    assert code == 0
    assert out == [
        "CHECK fold-type pass expected=G2 got=G2",
        "CHECK fold-group-order pass expected=6 got=6",
        "CHECK fold-group-abelian pass expected=false got=false",
        "CHECK fold-quotient-rank pass expected=true got=true",
        "NOTE fold-type orbits {0,2,3};{1}",
        "NOTE fold-group-order group S3",
    ]


def test_fold_rejects_non_simply_laced(capsys):
    """Folding a multiply-laced source is an input error."""
    code, out, err = run(capsys, "fold", "B3", "flip")
    assert code == 2
    assert err and err[0].startswith("error:") and "B3" in err[0]


def test_steinberg_all_checks(capsys):
    """Rank 2 runs five checks plus the explicitly assumed hypothesis line."""
    code, out, err = run(capsys, "steinberg", "--rank", "2", "--check", "all")
    assert code == 0
    assert out == [
        "CHECK steinberg-casimir pass expected=true got=true",
        "CHECK steinberg-rank-subregular pass expected=1 got=1",
        "CHECK steinberg-rank-regular pass expected=2 got=2",
        "CHECK steinberg-discriminant pass expected=2 got=2",
        "CHECK steinberg-slice pass expected=true got=true",
        "CHECK steinberg-t2-hypothesis assumed-hypothesis expected=assumed got=assumed",
    ]


def test_steinberg_rank_one(capsys):
    """Rank 1 drops the slice check instead of failing it."""
    code, out, err = run(capsys, "steinberg", "--rank", "1", "--check", "all")
    assert code == 0
    assert all("steinberg-slice" not in line for line in out)


def test_steinberg_usage_errors(capsys):
    """Unsupported ranks and the rank-1 slice request are usage errors."""
    code, _, err = run(capsys, "steinberg", "--rank", "3")
    assert code == 2
    code, _, err = run(capsys, "steinberg", "--rank", "1", "--check", "slice")
    assert code == 2


def test_paper_suite_passes(capsys):
    """All twelve checks pass at the default budget and exit 0."""
    code, out, err = run(capsys, "paper-suite")
    assert code == 0
    assert len(out) == 12
    assert all(line.startswith("CHECK ") for line in out)
    assert all(" pass " in line for line in out)
    assert err == ["paper-suite: 12 pass, 0 fail, 0 skipped-budget, 0 assumed-hypothesis"]


def test_paper_suite_is_deterministic(capsys):
    """Two runs at the same budget produce byte-identical reports."""
    code1 = main(["paper-suite"])
    first = capsys.readouterr().out
    code2 = main(["paper-suite"])
    second = capsys.readouterr().out
    assert code1 == code2 == 0
    assert first == second


def test_paper_suite_budget_zero(capsys):
    """Elimination-gated checks skip cleanly; everything else still passes."""
    code, out, err = run(capsys, "paper-suite", "--budget", "0")
    assert code == 3
    assert len(out) == 12
    skipped = [line.split()[1] for line in out if " skipped-budget " in line]
    assert skipped == ["discriminant-basic", "discriminant-al6",
                       "arnold-liouville-binomial"]
    assert sum(" pass " in line for line in out) == 9
    assert err == ["paper-suite: 9 pass, 0 fail, 3 skipped-budget, 0 assumed-hypothesis"]


def test_paper_suite_notes(capsys):
    """--notes appends NOTE lines after the CHECK block."""
    code, out, err = run(capsys, "paper-suite", "--notes")
    assert code == 0
    notes = [line for line in out if line.startswith("NOTE ")]
    assert notes
    assert all(line.startswith(("CHECK ", "NOTE ")) for line in out)
    assert any(line.startswith("NOTE henon-heiles ") for line in out)


def test_argparse_usage_errors():
    """No subcommand or an unknown one exits 2 via the parser."""
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
