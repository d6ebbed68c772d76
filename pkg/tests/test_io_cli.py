import json
import subprocess
import sys

import pytest

from planedec.decomposition import ConstraintSpec, Decomposition, EdgeInMatching
from planedec.io import (DecompositionDocument, FormatError, emit_planar_code,
                         emit_rotation_text, parse_planar_code,
                         parse_rotation_text, PLANAR_CODE_HEADER)
from planedec.plane_graph import cycle_graph

C4_TEXT = "1: 2 4\n2: 1 3\n3: 2 4\n4: 3 1\nouter: 1 2\n"


def test_planar_code_c4():
    data = PLANAR_CODE_HEADER + bytes([4, 2, 4, 0, 1, 3, 0, 2, 4, 0, 3, 1, 0])
    (g,) = parse_planar_code(data)
    assert g.n == 4 and g.m == 4
    assert g.boundary_walk.vertices == (1, 2, 3, 4)


def test_planar_code_empty_body():
    assert list(parse_planar_code(PLANAR_CODE_HEADER)) == []


def test_planar_code_k2():
    data = PLANAR_CODE_HEADER + bytes([2, 2, 0, 1, 0])
    (g,) = parse_planar_code(data)
    assert g.n == 2 and g.m == 1


def test_planar_code_errors():
    with pytest.raises(FormatError):
        list(parse_planar_code(b"garbage"))
    with pytest.raises(FormatError):
        list(parse_planar_code(PLANAR_CODE_HEADER + bytes([3, 2, 0, 1])))
    with pytest.raises(FormatError):
        list(parse_planar_code(PLANAR_CODE_HEADER + bytes([2, 9, 0, 1, 0])))


def test_planar_code_round_trip():
    g = cycle_graph(5)
    (back,) = parse_planar_code(emit_planar_code([g]))
    assert back.rotation == g.rotation


def test_rotation_text_c4():
    g = parse_rotation_text(C4_TEXT)
    assert g.n == 4 and g.outer == (1, 2)
    again = parse_rotation_text(emit_rotation_text(g))
    assert again.rotation == g.rotation and again.outer == g.outer


def test_rotation_text_errors():
    with pytest.raises(FormatError):
        parse_rotation_text("1: 2\n2: \nouter: 1 2\n")  # asymmetric
    with pytest.raises(FormatError):
        parse_rotation_text("1: 2\n2: 1\n")  # missing outer
    with pytest.raises(FormatError):
        parse_rotation_text("1: 2\n1: 2\n2: 1\nouter: 1 2\n")


def test_document_round_trip():
    g = cycle_graph(4)
    spec = ConstraintSpec.parse("1001,1001",
                                side_conditions=[EdgeInMatching(4, 1)])
    dec = Decomposition.of(arcs=[(1, 2), (4, 3)], matching=[(4, 1)])
    doc = DecompositionDocument.for_graph(g, dec, path=(1, 2, 3, 4), spec=spec,
                                          trace=["Claim5"])
    back = DecompositionDocument.from_json(doc.to_json())
    assert back.to_json() == doc.to_json()
    assert back.decomposition() == dec
    assert back.spec == spec


def test_document_rejects_unknown_fields():
    with pytest.raises(FormatError):
        DecompositionDocument.from_json(json.dumps(
            {"graph": "00", "arcs": [], "matching": [], "surprise": 1}))


def run_cli(args, stdin=b""):
    proc = subprocess.run([sys.executable, "-m", "planedec.cli", *args],
                          input=stdin, capture_output=True)
    return proc


def test_cli_decompose_theorem(tmp_path):
    proc = run_cli(["decompose", "--goal", "theorem"], stdin=C4_TEXT.encode())
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert {"graph", "arcs", "matching"} <= set(doc)
    # pipe the document back into verify
    p = tmp_path / "doc.json"
    p.write_bytes(proc.stdout)
    proc2 = run_cli(["verify", str(p)], stdin=C4_TEXT.encode())
    assert proc2.returncode == 0 and proc2.stdout.strip() == b"pass"


def test_cli_verify_cycle_fails(tmp_path):
    doc = {"graph": "00",
           "arcs": [[1, 2], [2, 3], [3, 4], [4, 1]], "matching": []}
    p = tmp_path / "doc.json"
    p.write_text(json.dumps(doc))
    proc = run_cli(["verify", str(p)], stdin=C4_TEXT.encode())
    assert proc.returncode == 1
    err = json.loads(proc.stderr)
    assert "cycle" in err["detail"]


def test_cli_decompose_configuration_goal():
    proc = run_cli(["decompose", "--goal", "M0", "--path", "1,2,3,4"],
                   stdin=C4_TEXT.encode())
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert doc["path"] == [1, 2, 3, 4]
    assert doc["spec"]["a"] == "1001"


def test_cli_oracle_exists_and_count():
    proc = run_cli(["oracle", "--path", "1,2,3,4", "--a", "1001", "--b", "1001",
                    "--mode", "exists"], stdin=C4_TEXT.encode())
    assert proc.returncode == 0 and proc.stdout.strip() == b"true"
    proc = run_cli(["oracle", "--path", "1,2,3,4", "--a", "0000", "--b", "0000",
                    "--mode", "exists"], stdin=C4_TEXT.encode())
    assert proc.returncode == 1


def test_cli_enumerate_check():
    proc = run_cli(["enumerate", "--max-n", "5", "--check"])
    assert proc.returncode == 0, proc.stderr
    lines = proc.stdout.decode().splitlines()
    assert any(line.startswith("n=5\t7") for line in lines)


def test_cli_family():
    proc = run_cli(["family", "--max-n", "7", "--tag", "R"])
    assert proc.returncode == 0
    tags = [json.loads(line)["tag"] for line in proc.stdout.splitlines()]
    assert tags.count("R1") == 1 and tags.count("R2") == 1


def test_cli_color():
    proc = run_cli(["color"], stdin=C4_TEXT.encode())
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["valid"] and out["max_defect"] <= 1


def test_cli_usage_error_exit_2():
    proc = run_cli(["decompose", "--goal", "M0"], stdin=C4_TEXT.encode())
    assert proc.returncode == 2


def test_cli_determinism():
    a = run_cli(["decompose", "--goal", "theorem"], stdin=C4_TEXT.encode())
    b = run_cli(["decompose", "--goal", "theorem"], stdin=C4_TEXT.encode())
    assert a.stdout == b.stdout
