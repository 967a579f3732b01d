import json

import numpy as np
import pytest

from goepel import pipeline
from goepel.cli import main
from goepel.io import read_ideal, write_ideal
from goepel.polyring.fields import PrimeField
from goepel.polyring.sparse import PolyRing

from conftest import to_pairs


def test_enumerate(tmp_path):
    out = tmp_path / "g2.json"
    assert main(["enumerate", "--genus", "2", "--even-cosets", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["count"] == 15 and len(doc["groups"]) == 15
    assert all(len(G["elements"]) == 4 and len(G["even_coset"]) == 4 for G in doc["groups"])


def test_theta_sample(tmp_path):
    out = tmp_path / "t.json"
    assert main(["theta", "sample", "--genus", "1", "--points", "2", "--precision", "1e-20",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["samples"]) == 2 and len(doc["samples"][0]["theta"]) == 3
    # high precision values are printed with more than double-precision digits
    assert len(doc["samples"][0]["theta"][0][0]) > 18


def test_relations_linear(tmp_path):
    out = tmp_path / "lin.ideal"
    assert main(["relations", "--genus", "2", "--kind", "linear", "--out", str(out)]) == 0
    header, polys = read_ideal(out)
    assert header["kind"] == "linear" and len(polys) == 15
    assert all(len(c) == 3 and set(np.abs(c)) == {1} for _, c in polys)


def _write_small(tmp_path):
    ring = PolyRing(["x", "y", "z"], PrimeField(101))
    x, y, z = ring.gens()
    write_ideal(tmp_path / "a.ideal", to_pairs([x * z, y * z]), ring.names, 101)
    write_ideal(tmp_path / "b.ideal", to_pairs([x * z, y * z, z]), ring.names, 101)


def test_ideal_tasks(tmp_path):
    _write_small(tmp_path)
    a, b = str(tmp_path / "a.ideal"), str(tmp_path / "b.ideal")
    assert main(["ideal", "--task", "hilbert", "--prime", "101", "--in", a, "--out", str(tmp_path / "h.json")]) == 0
    h = json.loads((tmp_path / "h.json").read_text())
    # (xz, yz) = (z) intersect (x, y): a line and a point, dimension 2 and degree 1
    assert (h["dim"], h["degree"], h["projective_dimension"]) == (2, 1, 1)
    assert main(["ideal", "--task", "gb", "--prime", "101", "--in", a, "--out", str(tmp_path / "g.ideal")]) == 0
    assert len(read_ideal(tmp_path / "g.ideal")[1]) == 2
    assert main(["ideal", "--task", "quotient", "--prime", "101", "--colon-degree", "1", "--in", a, b,
                 "--out", str(tmp_path / "q.json")]) == 0
    q = json.loads((tmp_path / "q.json").read_text())
    assert q["zero_dimensional_colon"] and q["degree_bound"] == 1 and q["colon_dimension"] == 2


def test_quotient_needs_two_inputs(tmp_path):
    _write_small(tmp_path)
    with pytest.raises(SystemExit):
        main(["ideal", "--task", "quotient", "--in", str(tmp_path / "a.ideal")])


def test_run_and_report(tmp_path, capsys):
    d = tmp_path / "run"
    code = main(["run", "--stage", "g1,g3-enumerate", "--prime", "557", "--precision", "1e-20", "--seed", "0",
                 "--out-dir", str(d)])
    assert code == 0
    first = {s: (d / "claims" / f"{s}.json").read_bytes() for s in ("g1", "g3-enumerate")}
    # rerunning reproduces the claim files byte for byte
    assert main(["run", "--stage", "g1,g3-enumerate", "--out-dir", str(d)]) == 0
    assert first == {s: (d / "claims" / f"{s}.json").read_bytes() for s in first}
    capsys.readouterr()
    assert main(["report", "--dir", str(d)]) == 0
    text = capsys.readouterr().out
    assert "0 failed" in text and "enum.counts" in text
    report = json.loads((d / "report.json").read_text())
    assert report["failed"] == 0 and len(report["claims"]) >= 10


def test_exit_code_counts_failures(tmp_path, monkeypatch):
    def stage(ctx):
        return [pipeline.claim("x.one", "always fails", 1, 2), pipeline.claim("x.two", "fails", 1, 3),
                pipeline.claim("x.ok", "passes", 1, 1)]
    monkeypatch.setitem(pipeline.STAGE_FUNCS, "g1", stage)
    assert main(["run", "--stage", "g1", "--out-dir", str(tmp_path)]) == 2


def test_unknown_stage(tmp_path):
    with pytest.raises(ValueError):
        main(["run", "--stage", "g9", "--out-dir", str(tmp_path)])


def test_claim_record_fields(tmp_path):
    main(["run", "--stage", "g3-enumerate", "--out-dir", str(tmp_path)])
    doc = json.loads((tmp_path / "claims" / "g3-enumerate.json").read_text())
    assert doc["environment"] == {"prime": 557, "precision": 1e-20, "seed": 0}
    for c in doc["claims"]:
        assert set(c) == {"id", "anchor", "computed", "expected", "status", "criterion"}
        assert c["status"] in ("pass", "fail")
