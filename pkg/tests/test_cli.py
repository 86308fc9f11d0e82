import numpy as np
import pytest

from quadpole.cli import main


def read_csv(path):
    with open(path) as fh:
        return fh.read()


def run(argv):
    return main(argv)


def test_racc_writes_csv(tmp_path):
    out = tmp_path / "racc.csv"
    rc = run(["racc", "--charges", "50", "--trials", "2", "--orders", "2,4",
              "--radii", "3,10", "--out", str(out)])
    assert rc == 0
    text = read_csv(out)
    lines = text.splitlines()
    assert lines[0].startswith("# quadpole ")
    assert lines[1] == "kind,p,r,mean_error,scaled_prefactor"
    kinds = {ln.split(",")[0] for ln in lines[2:]}
    assert kinds == {"outer", "outer_points", "outer_diff",
                     "inner", "inner_points", "inner_diff"}
    # 6 kinds x 2 orders x 2 radii
    assert len(lines) == 2 + 6 * 2 * 2


def test_racc_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["racc", "--charges", "30", "--trials", "2", "--orders", "3",
            "--radii", "5", "--seed", "7"]
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert read_csv(a) == read_csv(b)
    c = tmp_path / "c.csv"
    assert run(argv[:-2] + ["--seed", "8", "--out", str(c)]) == 0
    assert read_csv(a) != read_csv(c)


def test_racc_slopes(tmp_path):
    out = tmp_path / "racc.csv"
    rc = run(["racc", "--charges", "100", "--trials", "3", "--orders", "4",
              "--interpretation", "p", "--out", str(out)])
    assert rc == 0
    rows = [ln.split(",") for ln in read_csv(out).splitlines()[2:]]
    for kind, slope in (("outer", -5.0), ("inner", 4.0)):
        pts = [(float(r[2]), float(r[3])) for r in rows
               if r[0] == kind and (float(r[2]) > 3 if kind == "outer"
                                    else float(r[2]) < 1 / 3)]
        x = np.log([p[0] for p in pts])
        y = np.log([p[1] for p in pts])
        assert np.polyfit(x, y, 1)[0] == pytest.approx(slope, abs=0.15)


def test_tacc_writes_csv(tmp_path):
    out = tmp_path / "tacc.csv"
    rc = run(["tacc", "--charges", "30", "--trials", "1", "--orders", "3",
              "--out", str(out)])
    assert rc == 0
    lines = read_csv(out).splitlines()
    assert lines[1] == "kind,p,shift,cos_theta,abs_error"
    n_dirs = 86   # order-15 rule
    assert len(lines) == 2 + (3 + 4) * n_dirs


def test_flow_runs_scene(tmp_path):
    scene = tmp_path / "scene.txt"
    scene.write_text("0 0 0 1.0 1 0 0\n3 0 0 1.0 -1 0 0\n")
    out = tmp_path / "flow.csv"
    rc = run(["flow", "--scene", str(scene), "--orders", "3,5", "--out", str(out)])
    assert rc == 0
    lines = read_csv(out).splitlines()
    assert lines[1] == "p,sphere,radius,boundary_error,fit_residual"
    errs = {}
    for ln in lines[2:]:
        parts = ln.split(",")
        p = int(parts[0])
        errs[p] = max(errs.get(p, 0.0), float(parts[3]))
    assert errs[5] < errs[3]
    assert (tmp_path / "flow_p3_sphere0.exp").exists()


def test_flow_missing_scene():
    assert run(["flow", "--scene", "/nonexistent/scene.txt"]) == 2


def test_flow_bad_scene(tmp_path):
    scene = tmp_path / "scene.txt"
    scene.write_text("1 2 3\n")
    assert run(["flow", "--scene", str(scene)]) == 3


def test_flow_overlapping_scene(tmp_path):
    scene = tmp_path / "scene.txt"
    scene.write_text("0 0 0 1 1 0 0\n1 0 0 1 1 0 0\n")
    assert run(["flow", "--scene", str(scene), "--orders", "3"]) == 3


def test_exactness(capsys):
    assert run(["exactness", "15", "15"]) == 0
    assert "max |error|" in capsys.readouterr().out
    assert run(["exactness", "14", "14"]) == 2   # no such rule


def test_bad_orders():
    assert run(["racc", "--orders", "0", "--interpretation", "p",
                "--charges", "1", "--trials", "1"]) == 2
    assert run(["racc", "--orders", "99", "--interpretation", "p",
                "--charges", "1", "--trials", "1", "--radii", "5"]) == 2


def test_convert_round_trip(tmp_path):
    charges = tmp_path / "charges.txt"
    rng = np.random.default_rng(3)
    rows = np.hstack([rng.uniform(-0.5, 0.5, (6, 3)), rng.uniform(-1, 1, (6, 1))])
    np.savetxt(charges, rows)
    poly = tmp_path / "m.poly"
    assert run(["convert", "charges2poly", str(charges), "--order", "5",
                "--out", str(poly)]) == 0
    assert read_csv(poly).startswith("quadpole-polytensor p=5")
    exp = tmp_path / "m.exp"
    assert run(["convert", "poly2exp", str(poly), "--out", str(exp)]) == 0
    assert read_csv(exp).startswith("quadpole-expansion kind=outer")
    back = tmp_path / "points.txt"
    assert run(["convert", "exp2charges", str(exp), "--out", str(back)]) == 0
    pts = np.loadtxt(back)
    assert pts.shape[1] == 4
    # the equivalent point set reproduces the cloud's far field
    import quadpole as qp
    cloud = qp.PointCharges(rows[:, :3], rows[:, 3])
    x = np.array([[6.0, 2.0, -3.0]])
    approx = np.sum(pts[:, 3] / np.linalg.norm(x - pts[None, :, :3], axis=-1))
    exact = qp.direct_potential(cloud, x)[0]
    assert approx == pytest.approx(exact, abs=1e-3)


def test_convert_missing_input():
    assert run(["convert", "charges2poly", "/nonexistent.txt"]) == 2


def test_stdout_output(capsys):
    rc = run(["racc", "--charges", "5", "--trials", "1", "--orders", "2",
              "--radii", "4", "--out", "-"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1] == "kind,p,r,mean_error,scaled_prefactor"
