from adskg.cli import main
from adskg.expansions import OmegaGrid, RodRep, SliceRep, TubeRep, save_rep
from adskg.geometry import make_params


def test_eval_row_count(tmp_path, capsys):
    out = tmp_path / "mode.csv"
    code = main(["eval", "--kind", "sa", "--omega", "2.3", "--l", "1",
                 "--m", "0", "--rho", "0.1:1.4:14", "-o", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("# adskg v1 eval d=3")
    assert lines[1] == "t,rho,theta,phi,re,im"
    assert len(lines) == 2 + 14


def test_eval_invalid_kind(capsys):
    assert main(["eval", "--kind", "nope", "--rho", "0.5"]) == 2


def test_eval_deterministic(tmp_path):
    args = ["eval", "--kind", "jplus", "--n", "1", "--l", "1", "--m", "1",
            "--rho", "0.2:1.2:7", "--t", "0.0:1.0:3"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["-o", str(out1)]) == 0
    assert main(args + ["-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_unknown_suite():
    assert main(["verify", "nonsense"]) == 2


def test_verify_specfun(capsys):
    code = main(["verify", "specfun"])
    captured = capsys.readouterr().out
    assert code == 0
    assert "SUITE specfun PASS" in captured


def test_reconstruct_round_trip(tmp_path, capsys):
    params = make_params(3, 1.0, 0.0)
    grid = OmegaGrid(0.5, (-3, 2, 3))
    rep = TubeRep(grid, {(3, 1, 0): (0.7 + 0.2j, 0.1), (2, 0, 0): (0.4, 0.3j),
                         (-3, 1, 1): (0.2, 0.5j)}, "S")
    path = tmp_path / "rep.txt"
    save_rep(str(path), rep, params)
    code = main(["reconstruct", "--input", str(path), "--target", "tube",
                 "--rho0", "0.8"])
    captured = capsys.readouterr().out
    assert code == 0
    assert "RECONSTRUCT tube PASS" in captured


def test_reconstruct_empty_rep_parse_error(tmp_path):
    path = tmp_path / "rep.txt"
    path.write_text("adskg-rep v1 d=3 R=1.0 msq=0.0 domega=0.5\n")
    assert main(["reconstruct", "--input", str(path), "--target", "tube"]) == 2


def test_reconstruct_slice(tmp_path, capsys):
    params = make_params(3, 1.0, 0.0)
    rep = SliceRep({(1, 1, 0): (0.8, 0.2j), (0, 2, 1): (0.3j, 0.5)})
    path = tmp_path / "rep.txt"
    save_rep(str(path), rep, params)
    code = main(["reconstruct", "--input", str(path), "--target", "slice",
                 "--t0", "0.3"])
    assert code == 0
    assert "RECONSTRUCT slice PASS" in capsys.readouterr().out


def test_reconstruct_rod_magic_blind(tmp_path, capsys):
    params = make_params(3, 1.0, 0.0)
    grid = OmegaGrid(1.0, (3,))
    rep = RodRep(grid, {(3, 0, 0): 1.0})  # omega = 3 is magic for m = 0
    path = tmp_path / "rep.txt"
    save_rep(str(path), rep, params)
    code = main(["reconstruct", "--input", str(path), "--target", "boundary"])
    captured = capsys.readouterr().out
    assert code == 1
    assert "MagicFrequencyBlind" in captured


def test_reconstruct_missing_file():
    assert main(["reconstruct", "--input", "/nonexistent/rep.txt",
                 "--target", "tube"]) == 2
