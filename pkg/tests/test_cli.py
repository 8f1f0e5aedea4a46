import yaml

import pytest

from supergrading.abelian import parse_group
from supergrading.classify import enumerate_raw
from supergrading.cli import main
from supergrading.textio import emit_params

from test_textio import OSP12


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def osp_doc(tmp_path):
    path = tmp_path / "osp.yaml"
    path.write_text(OSP12)
    return path


def test_construct_and_verify_associative(capsys, tmp_path, osp_doc):
    dump, form = tmp_path / "m.yaml", tmp_path / "phi.yaml"
    code, _, _ = run(capsys, "construct", "--family", "m-star", "--params", osp_doc, "--out", dump,
                     "--phi-out", form)
    assert code == 0 and dump.exists() and form.exists()
    code, out, _ = run(capsys, "verify", dump, "--checks", "grading,associativity,unit,superinvolution,simplicity")
    assert code == 0
    report = yaml.safe_load(out)
    assert report["ok"] and len(report["checks"]) == 5


def test_construct_lie_and_verify(capsys, tmp_path, osp_doc):
    code, out, _ = run(capsys, "construct", "--family", "osp", "--params", osp_doc)
    assert code == 0
    dump = tmp_path / "l.yaml"
    dump.write_text(out)
    code, out, _ = run(capsys, "verify", dump, "--checks", "grading,anticommutativity,jacobi,simplicity")
    assert code == 0 and yaml.safe_load(out)["ok"]
    # a Lie dump is not associative
    code, out, _ = run(capsys, "verify", dump, "--checks", "associativity")
    assert code == 4


def test_construct_family_mismatch_is_invalid(capsys, osp_doc):
    code, _, err = run(capsys, "construct", "--family", "a-1", "--params", osp_doc)
    assert code == 3 and "osp" in err
    code, _, _ = run(capsys, "construct", "--family", "m-even", "--params", osp_doc)
    assert code == 3


def test_verify_corrupted_dump_exits_4(capsys, tmp_path, osp_doc):
    code, out, _ = run(capsys, "construct", "--family", "osp", "--params", osp_doc)
    lines = out.splitlines()
    i = lines.index("struct:") + 1
    lines[i] = lines[i].replace("[[4, 2]]", "[[4, 3]]")
    bad = tmp_path / "bad.yaml"
    bad.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", bad, "--checks", "anticommutativity,jacobi")
    assert code == 4
    assert yaml.safe_load(out)["ok"] is False


def test_iso_on_transported_pair(capsys, tmp_path):
    p = enumerate_raw("m-star", parse_group("Z4"), 16)[3]
    G = p.group
    q = p.transform(G.element(1))
    a, b = tmp_path / "a.yaml", tmp_path / "b.yaml"
    a.write_text(emit_params(p))
    b.write_text(emit_params(q))
    code, out, _ = run(capsys, "iso", a, b)
    assert code == 0
    rec = yaml.safe_load(out)
    assert rec["isomorphic"] is True and rec["branch"] == "shift"
    assert p.transform(parse_group("Z4").element(int(rec["witness"].strip("()")))).key() == q.key()


def test_iso_negative(capsys, tmp_path):
    ps = enumerate_raw("q", parse_group("Z2"), 2)
    a, b = tmp_path / "a.yaml", tmp_path / "b.yaml"
    h = {p.h for p in ps}
    assert len(h) == 2
    p = next(x for x in ps if x.h.is_identity)
    q = next(x for x in ps if not x.h.is_identity)
    a.write_text(emit_params(p))
    b.write_text(emit_params(q))
    code, out, _ = run(capsys, "iso", a, b)
    assert code == 0
    assert yaml.safe_load(out) == {"isomorphic": False, "witness": None, "branch": None}


def test_census_deterministic_and_counts(capsys):
    runs = [run(capsys, "census", "--family", "Q", "--group", "Z2", "--dim", "2") for _ in range(2)]
    assert runs[0][0] == 0 and runs[0][1] == runs[1][1]
    assert yaml.safe_load(runs[0][1])["count"] == 2
    code, out, _ = run(capsys, "census", "--family", "MEven", "--group", "Z2", "--dim", "4", "--shape", "1,1")
    assert code == 0 and yaml.safe_load(out)["count"] == 2


@pytest.mark.parametrize("argv, expected", [
    (["census", "--family", "Q", "--group", "Z2 x", "--dim", "2"], 2),
    (["census", "--family", "nope", "--group", "Z2", "--dim", "2"], 1),
    (["census", "--family", "Q", "--group", "Z2"], 1),
    (["census", "--family", "Q", "--group", "Z2", "--dim", "0"], 1),
    (["census", "--family", "Q", "--group", "Z2", "--dim", "2", "--shape", "x"], 1),
    (["frobnicate"], 1),
])
def test_exit_codes(capsys, argv, expected):
    assert run(capsys, *argv)[0] == expected


def test_parse_and_admissibility_exit_codes(capsys, tmp_path):
    bad_syntax = tmp_path / "s.yaml"
    bad_syntax.write_text("format: 1\ngroup: [\n")
    assert run(capsys, "construct", "--family", "m-star", "--params", bad_syntax)[0] == 2
    bad_kappa = tmp_path / "k.yaml"
    bad_kappa.write_text(OSP12.replace("- [(-1), 1]", "- [(-1), 2]"))
    code, _, err = run(capsys, "construct", "--family", "m-star", "--params", bad_kappa)
    assert code == 3 and "duality" in err
    good = tmp_path / "g.yaml"
    good.write_text(OSP12)
    assert run(capsys, "verify", good, "--checks", "bogus")[0] == 1


def test_phi_out_needs_involutive_family(capsys, tmp_path):
    p = enumerate_raw("m-even", parse_group("Z2"), 4)[0]
    doc = tmp_path / "p.yaml"
    doc.write_text(emit_params(p))
    code, _, _ = run(capsys, "construct", "--family", "m-even", "--params", doc, "--phi-out", tmp_path / "f.yaml")
    assert code == 1


def test_skew_from_params_and_form(capsys, tmp_path, osp_doc):
    form = tmp_path / "phi.yaml"
    run(capsys, "construct", "--family", "m-star", "--params", osp_doc, "--out", tmp_path / "m.yaml",
        "--phi-out", form)
    code, out, _ = run(capsys, "skew", osp_doc, "--phi", form)
    assert code == 0
    doc = yaml.safe_load(out)
    assert doc["lie"] is True and len(doc["basis"]) == 5
    # a form that is neither super-Hermitian nor skew
    text = form.read_text()
    broken = tmp_path / "broken.yaml"
    rows = text.splitlines()
    k = next(i for i, r in enumerate(rows) if r.startswith("- [1, 2,"))
    rows[k] = rows[k].rsplit(",", 1)[0] + ", 2]"
    broken.write_text("\n".join(rows) + "\n")
    assert run(capsys, "skew", osp_doc, "--phi", broken)[0] == 3


def test_skew_from_algebra_dumps(capsys, tmp_path, osp_doc):
    dump = tmp_path / "m.yaml"
    run(capsys, "construct", "--family", "m-star", "--params", osp_doc, "--out", dump)
    out_path = tmp_path / "skew.yaml"
    code, _, _ = run(capsys, "skew", dump, "--phi", dump, "--out", out_path)
    assert code == 0
    assert len(yaml.safe_load(out_path.read_text())["basis"]) == 5
    # an algebra dump without involution cannot serve as --phi
    code, out, _ = run(capsys, "construct", "--family", "osp", "--params", osp_doc)
    plain = tmp_path / "plain.yaml"
    plain.write_text(out)
    assert run(capsys, "skew", dump, "--phi", plain)[0] == 2
