import pathlib

import pytest

from mibasis import textio
from mibasis.cli import main
from mibasis.field import PrimeField
from mibasis.polymat import PolyMatrix

DATA = pathlib.Path(__file__).parent / "data"
GOLDEN = DATA / "example_instance.txt"

F97 = PrimeField(97)

EXPECTED_POPOV = PolyMatrix.from_entries(
    F97,
    [
        [[82, 40, 1], [76], []],
        [[13, 3], [57, 1], []],
        [[96], [96], [1]],
    ],
)


def read_polymat(path, skip=0):
    doc = textio.parse_document(pathlib.Path(path).read_text())
    return textio.polymat_from_section(doc.first("polymat", skip), doc.field())


def test_golden_file_round_trip_is_byte_identical():
    text = GOLDEN.read_text()
    doc = textio.parse_document(text)
    assert textio.serialize_document(doc) == text


def test_golden_file_parses_to_fixture_values():
    doc = textio.parse_document(GOLDEN.read_text())
    assert doc.p == 97
    assert doc.first("mat") == [[27, 49, 29], [50, 58, 0], [77, 10, 29]]
    assert doc.first("jordan") == [(0, 3)]
    assert doc.first("shift") == [0, 0, 0]


def test_composite_prime_rejected():
    with pytest.raises(textio.ParseError, match="p is not prime"):
        textio.parse_document("field p=91\n")


def test_parse_error_reports_line():
    bad = "field p=97\nmat 2 2\n1 2\n3 x\n"
    with pytest.raises(textio.ParseError, match="line 4"):
        textio.parse_document(bad)


def test_comments_and_blank_lines_ignored():
    text = "# header comment\nfield p=97\n\nshift 2  # trailing\n1 2\n"
    doc = textio.parse_document(text)
    assert doc.first("shift") == [1, 2]


def test_interp_lin_emits_popov_basis(tmp_path):
    out = tmp_path / "basis.txt"
    rc = main(["interp", "--algo", "lin", "--evals", str(GOLDEN), "-o", str(out)])
    assert rc == 0
    assert read_polymat(out) == EXPECTED_POPOV


def test_check_popov_on_emitted_basis(tmp_path, capsys):
    out = tmp_path / "basis.txt"
    assert main(["interp", "--algo", "lin", "--evals", str(GOLDEN), "-o", str(out)]) == 0
    rc = main(["check", "--popov", "--matrix", str(out)])
    assert rc == 0
    assert "ok" in capsys.readouterr().out


def test_interp_engines_agree_via_check_equiv(tmp_path):
    a = tmp_path / "dnc.txt"
    b = tmp_path / "oracle.txt"
    assert main(["interp", "--algo", "dnc", "--evals", str(GOLDEN), "-o", str(a)]) == 0
    assert main(["interp", "--algo", "oracle", "--evals", str(GOLDEN), "-o", str(b)]) == 0
    rc = main(
        [
            "check",
            "--equiv",
            "--matrix", str(a),
            "--matrix2", str(b),
            "--evals", str(GOLDEN),
        ]
    )
    assert rc == 0


def test_interp_deterministic_output(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    main(["interp", "--algo", "dnc", "--evals", str(GOLDEN), "-o", str(a)])
    main(["interp", "--algo", "dnc", "--evals", str(GOLDEN), "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_output_reparses(tmp_path):
    out = tmp_path / "basis.txt"
    main(["interp", "--algo", "oracle", "--evals", str(GOLDEN), "-o", str(out)])
    text = out.read_text()
    doc = textio.parse_document(text)
    assert textio.serialize_document(doc) == text


def test_hermite_pade_subcommand(tmp_path):
    inp = tmp_path / "hp.txt"
    inp.write_text(
        "field p=97\n"
        "polymat 3 1\n"
        "27,49,29\n"
        "50,58\n"
        "77,10,29\n"
        "shift 1\n"
        "3\n"
        "shift 3\n"
        "0 0 0\n"
    )
    out = tmp_path / "basis.txt"
    assert main(["hermite-pade", str(inp), "-o", str(out)]) == 0
    basis = read_polymat(out)
    rc = main(
        [
            "check",
            "--equiv",
            "--matrix", str(out),
            "--matrix2", str(out),
            "--evals", str(GOLDEN),
        ]
    )
    assert rc == 0
    assert basis.nrows == 3


def test_mpade_subcommand(tmp_path):
    inp = tmp_path / "mp.txt"
    inp.write_text(
        "field p=7\n"
        "polymat 2 2\n"
        "1,2;3\n"
        "0,1;5\n"
        "mat 1 2\n"
        "1 2\n"
        "shift 2\n"
        "2 1\n"
    )
    out = tmp_path / "basis.txt"
    assert main(["mpade", str(inp), "-o", str(out)]) == 0
    assert read_polymat(out).nrows == 2


def test_nullspace_subcommand(tmp_path):
    inp = tmp_path / "ns.txt"
    inp.write_text(
        "field p=7\npolymat 2 1\n1\n0,1\nshift 2\n0 1\n"
    )
    out = tmp_path / "n.txt"
    assert main(["nullspace", str(inp), "-o", str(out)]) == 0
    n = read_polymat(out)
    assert n.nrows == 1 and n.ncols == 2


def test_shift_change_subcommand(tmp_path):
    inp = tmp_path / "sc.txt"
    inp.write_text(
        "field p=97\n"
        "polymat 3 3\n"
        "0,36,1;0,31;0\n"
        "13,3;57,1;0\n"
        "96;96;1\n"
        "shift 3\n"
        "0 0 0\n"
        "shift 3\n"
        "0 3 6\n"
    )
    out = tmp_path / "r.txt"
    assert main(["shift-change", str(inp), "--with-transform", "-o", str(out)]) == 0
    r = read_polymat(out, 0)
    u = read_polymat(out, 1)
    assert r.nrows == 3 and u.nrows == 3


def test_rs_interp_subcommand(tmp_path):
    pts = tmp_path / "pts.txt"
    rows = [(3, 5), (10, 2), (20, 40), (33, 7)]
    pts.write_text(
        "field p=97\nmat 4 2\n" + "\n".join(f"{x} {y}" for x, y in rows) + "\n"
    )
    out = tmp_path / "q.txt"
    rc = main(
        ["rs-interp", str(pts), "--multiplicity", "1", "--weight", "1",
         "--list-size", "2", "-o", str(out)]
    )
    assert rc == 0
    q = read_polymat(out, 0)
    assert q.nrows == 1 and q.ncols == 2
    for x, y in rows:
        v = (F97.poly_eval(q.rows[0][0], x) + y * F97.poly_eval(q.rows[0][1], x)) % 97
        assert v == 0


def test_multi_interp_subcommand(tmp_path):
    inp = tmp_path / "mv.txt"
    inp.write_text(
        "field p=97\n"
        "mat 2 1\n0\n1\n"          # gamma
        "mat 2 2\n3 5\n10 2\n"     # points (x, y)
        "shift 1\n1\n"             # weights
        "mat 1 2\n0 0\n"           # support of point 1
        "mat 1 2\n0 0\n"           # support of point 2
    )
    out = tmp_path / "mv_out.txt"
    assert main(["multi-interp", str(inp), "-o", str(out)]) == 0
    basis = read_polymat(out)
    assert basis.nrows == 2


def test_domain_error_exit_code(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("field p=91\nmat 1 1\n3\n")
    assert main(["interp", "--evals", str(bad)]) == 1


def test_usage_error_exit_code():
    assert main(["interp"]) == 2
    assert main(["frobnicate"]) == 2


def test_check_missing_companion_flags_is_usage_error(tmp_path):
    out = tmp_path / "basis.txt"
    main(["interp", "--algo", "lin", "--evals", str(GOLDEN), "-o", str(out)])
    assert main(["check", "--interpolant", "--matrix", str(out)]) == 2
    assert main(["check", "--equiv", "--matrix", str(out), "--evals", str(GOLDEN)]) == 2


def test_dnc_with_dense_mulmat_is_usage_error(tmp_path):
    f = tmp_path / "inst.txt"
    f.write_text("field p=97\nmat 1 2\n1 2\nmat 2 2\n0 1\n0 0\n")
    assert main(["interp", "--algo", "dnc", "--evals", str(f), "--dense-mulmat", str(f)]) == 2


def test_interp_dense_mulmat_lin(tmp_path):
    f = tmp_path / "inst.txt"
    f.write_text("field p=97\nmat 1 2\n1 2\nmat 2 2\n0 1\n0 0\n")
    out = tmp_path / "o.txt"
    assert main(
        ["interp", "--algo", "lin", "--evals", str(f), "--dense-mulmat", str(f), "-o", str(out)]
    ) == 0
    assert read_polymat(out).nrows == 1
