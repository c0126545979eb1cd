import json

import slidecam as sc
from slidecam.cli import main
from slidecam.render import render_svg

from conftest import LSHAPE, RECT


def write_poly(tmp_path, rings, name="poly.json"):
    path = tmp_path / name
    poly = sc.validate_polygon(rings)
    path.write_text(json.dumps(poly.to_dict()))
    return str(path)


def test_validate_round_trip(tmp_path):
    src = tmp_path / "raw.json"
    # scrambled orientation and a redundant collinear vertex
    src.write_text(json.dumps({"outer": [[0, 4], [4, 4], [4, 0], [2, 0], [0, 0]]}))
    out1 = tmp_path / "norm1.json"
    out2 = tmp_path / "norm2.json"
    assert main(["validate", str(src), "--out", str(out1)]) == 0
    assert main(["validate", str(out1), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_solve_comb_exact(tmp_path, capsys):
    p = sc.gen_comb(3)
    path = tmp_path / "comb.json"
    path.write_text(json.dumps(p.to_dict()))
    out = tmp_path / "sol.json"
    rc = main(["solve", str(path), "--mode", "mhsc", "--algo", "exact",
               "--out", str(out)])
    assert rc == 0
    assert "size=3" in capsys.readouterr().out
    sol = json.loads(out.read_text())
    assert sol["size"] == 3
    assert all(c["orientation"] == "H" for c in sol["cameras"])


def test_solve_then_verify_round_trip(tmp_path):
    poly_path = write_poly(tmp_path, LSHAPE)
    sol_path = tmp_path / "sol.json"
    assert main(["solve", poly_path, "--out", str(sol_path)]) == 0
    assert main(["verify", poly_path, str(sol_path)]) == 0


def test_verify_detects_uncovered(tmp_path, capsys):
    p = sc.gen_comb(3)
    poly_path = tmp_path / "comb.json"
    poly_path.write_text(json.dumps(p.to_dict()))
    sol_path = tmp_path / "bad.json"
    sol_path.write_text(json.dumps({
        "size": 1, "method": "manual",
        "cameras": [{"orientation": "H", "anchor": 0, "span": [0, 2]}]}))
    assert main(["verify", str(poly_path), str(sol_path)]) == 2
    assert "uncovered" in capsys.readouterr().out


def test_invalid_input_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"outer": [[0, 0], [3, 1], [0, 2]]}))
    assert main(["solve", str(bad)]) == 1


def test_infeasible_exit_code(tmp_path):
    poly_path = write_poly(tmp_path, LSHAPE)
    # only the short top guard allowed: the right-hand cross stays unhit
    pix = sc.pixelate(sc.validate_polygon(LSHAPE))
    gid = next(g.id for g in pix.guards if g.orientation == "H" and g.anchor == 2)
    rc = main(["solve", poly_path, "--mode", "custom", "--guard-ids", str(gid)])
    assert rc == 2


def test_limit_exit_code(tmp_path):
    poly_path = write_poly(tmp_path, RECT)
    # a width limit of -1 cannot hold any decomposition
    rc = main(["solve", poly_path, "--algo", "dp", "--width-max", "-1"])
    assert rc == 3


def test_generate_and_bounds(tmp_path, capsys):
    out = tmp_path / "comb.json"
    assert main(["generate", "--shape", "comb", "--k", "3", "--out", str(out)]) == 0
    assert main(["bounds", str(out)]) == 0
    assert "ok=True" in capsys.readouterr().out


def test_pixelate_render(tmp_path, capsys):
    poly_path = write_poly(tmp_path, LSHAPE)
    svg = tmp_path / "out.svg"
    assert main(["pixelate", poly_path, "--render", str(svg)]) == 0
    assert "pixels=3" in capsys.readouterr().out
    text = svg.read_text()
    assert text.startswith("<svg") and text.count("<rect") == 3


def test_export_instance(tmp_path, capsys):
    poly_path = write_poly(tmp_path, RECT)
    assert main(["export", poly_path, "--mode", "mhsc"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["universe"]) == 1
    assert data["sets"][0]["guards"] == data["universe"]


def test_svg_deterministic():
    pix = sc.pixelate(sc.validate_polygon(LSHAPE))
    sol = sc.brute_force_min_cover(sc.build_instance(pix))
    assert render_svg(pix, sol) == render_svg(pix, sol)


def test_svg_shading_lshape():
    pix = sc.pixelate(sc.validate_polygon(LSHAPE))
    sol = sc.brute_force_min_cover(sc.build_instance(pix))
    text = render_svg(pix, sol)
    assert text.count('fill="#bfdfff"') == 3  # all pixels visible
    assert text.count('stroke="#cc2222"') == 1


def test_solve_bg_and_path_algos(tmp_path):
    p = sc.gen_path_lb(2)
    path = tmp_path / "spiral.json"
    path.write_text(json.dumps(p.to_dict()))
    assert main(["solve", str(path), "--algo", "bg", "--seed", "5"]) == 0
    assert main(["solve", str(path), "--algo", "path"]) == 0
    assert main(["solve", str(path), "--algo", "dp"]) == 0
    assert main(["solve", str(path), "--algo", "greedy"]) == 0


def test_solve_bg_report(tmp_path):
    p = sc.gen_comb(3)
    path = tmp_path / "comb.json"
    path.write_text(json.dumps(p.to_dict()))
    report = tmp_path / "report.json"
    assert main(["solve", str(path), "--mode", "mhsc", "--algo", "bg",
                 "--seed", "7", "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert data["bg"]["terminating_k"] >= 1
    assert data["size"] >= 3


def test_solve_dp_dump_td(tmp_path):
    poly_path = write_poly(tmp_path, LSHAPE)
    td_path = tmp_path / "td.txt"
    assert main(["solve", poly_path, "--algo", "dp", "--dump-td", str(td_path)]) == 0
    assert td_path.read_text().startswith("s td ")


def test_solve_custom_crosses(tmp_path, capsys):
    p = sc.gen_comb(3)
    path = tmp_path / "comb.json"
    path.write_text(json.dumps(p.to_dict()))
    pix = sc.pixelate(p)
    # restrict to the three tooth crosses only
    tooth = [str(c.pixel_id) for c in pix.crosses
             if pix.pixels[c.pixel_id].rect[0] == 1]
    rc = main(["solve", str(path), "--mode", "custom",
               "--crosses", ",".join(tooth), "--guard-orientations", "H"])
    assert rc == 0
    assert "size=3" in capsys.readouterr().out


def test_path_algo_mode_validation(tmp_path):
    poly_path = write_poly(tmp_path, RECT)
    assert main(["solve", poly_path, "--algo", "path", "--mode", "mhsc"]) == 1


def test_solve_mvsc_comb(tmp_path, capsys):
    p = sc.gen_comb(3)
    path = tmp_path / "comb.json"
    path.write_text(json.dumps(p.to_dict()))
    assert main(["solve", str(path), "--mode", "mvsc"]) == 0
    assert "size=1" in capsys.readouterr().out  # the spine camera
