import json

from pdakit.cli import main
from pdakit.constructions import mn, odd_tiling, shangguan_direct
from pdakit.gridio import load_pda, parse_grid, save_pda
from pdakit.lifting import odd_tiling_lift

import printed


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_mn_to_stdout(capsys):
    code, out, _ = run_cli(capsys, "gen", "mn", "4", "2")
    assert code == 0
    assert parse_grid(out) == mn(4, 2)


def test_gen_corollary_odd_matches_printed(capsys):
    code, out, _ = run_cli(capsys, "gen", "corollary-odd", "5", "2")
    assert code == 0
    assert out == printed.ODD_LIFT_10X10_G5_N2


def test_gen_unknown_name_and_bad_arity(capsys):
    assert run_cli(capsys, "gen", "nope", "3")[0] == 2
    assert run_cli(capsys, "gen", "mn", "4")[0] == 2
    assert run_cli(capsys, "gen", "mn", "4", "9")[0] == 2


def test_gen_odd_tiling_writes_three_files(tmp_path, capsys):
    prefix = str(tmp_path / "odd")
    code, _, err = run_cli(capsys, "gen", "odd-tiling", "5", "-o", prefix)
    assert code == 0
    fam = odd_tiling(5)
    assert load_pda(f"{prefix}.p0.grid") == fam.p0
    assert load_pda(f"{prefix}.p1.grid") == fam.p1
    assert load_pda(f"{prefix}.pstar.grid") == fam.pstar


def test_gen_json_format(capsys):
    code, out, _ = run_cli(capsys, "gen", "identity", "3", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["rows"] == obj["cols"] == 3


def test_verify_valid(tmp_path, capsys):
    path = tmp_path / "m42.grid"
    save_pda(mn(4, 2), path)
    code, out, _ = run_cli(capsys, "verify", str(path))
    assert code == 0
    assert out.strip() == "valid (4,6,3,4) g=3 M/N=1/2 R=2/3"


def test_verify_broken_exits_one_with_witness(tmp_path, capsys):
    path = tmp_path / "broken.grid"
    path.write_text("0 1 2\n0 4 5\n")
    code, out, _ = run_cli(capsys, "verify", str(path))
    assert code == 1
    assert out.splitlines()[0].startswith("C3 0 (0,0) (1,0)")


def test_compat_right_mode(tmp_path, capsys):
    u421 = tmp_path / "u421.grid"
    u412 = tmp_path / "u412.grid"
    u422 = tmp_path / "u422.grid"
    save_pda(shangguan_direct(4, 2, 1), u421)
    save_pda(shangguan_direct(4, 1, 2), u412)
    save_pda(shangguan_direct(4, 2, 2), u422)
    code, out, _ = run_cli(
        capsys, "compat", "--mode", "right", str(u421), str(u412), "--ref", str(u422)
    )
    assert code == 0 and out == ""


def test_compat_full_failure_prints_witnesses(tmp_path, capsys):
    fam = odd_tiling(3)
    p0, p1 = tmp_path / "p0.grid", tmp_path / "p1.grid"
    ref = tmp_path / "ref.grid"
    save_pda(fam.p0, p0)
    save_pda(fam.p1, p1)
    save_pda(fam.p0, ref)  # wrong reference: labels everywhere
    code, out, _ = run_cli(
        capsys, "compat", "--mode", "full", str(p0), str(p1), "--ref", str(ref)
    )
    assert code == 1
    assert "mirror=(" in out.splitlines()[0]


def test_compat_family_mode(tmp_path, capsys):
    from pdakit.constructions import all_star, identity
    from pdakit.core import hstack, vstack

    m0 = tmp_path / "m0.grid"
    m1 = tmp_path / "m1.grid"
    r01 = tmp_path / "r01.grid"
    r10 = tmp_path / "r10.grid"
    save_pda(vstack([identity(2, 0), identity(2, 1)]), m0)
    save_pda(hstack([identity(2, 1), identity(2, 0)]), m1)
    save_pda(identity(4, 2), r01)
    save_pda(all_star(2, 2), r10)
    code, out, _ = run_cli(
        capsys, "compat", "--mode", "family",
        str(m0), str(m1), "--ref", str(r01), "--ref", str(r10),
    )
    assert code == 0


def test_lift_uniform_writes_result_and_ledger(tmp_path, capsys):
    fam = odd_tiling(5)
    base = tmp_path / "base.grid"
    p0, p1, ref = tmp_path / "p0.grid", tmp_path / "p1.grid", tmp_path / "ref.grid"
    from pdakit.constructions import h_array

    save_pda(h_array(2), base)
    save_pda(fam.p0, p0)
    save_pda(fam.p1, p1)
    save_pda(fam.pstar, ref)
    out_path = tmp_path / "lifted.grid"
    code, _, _ = run_cli(
        capsys, "lift", "--mode", "uniform", str(base),
        "--member", str(p0), "--member", str(p1), "--ref", str(ref),
        "-o", str(out_path),
    )
    assert code == 0
    assert load_pda(out_path) == odd_tiling_lift(5, 2)
    ledger = json.loads((tmp_path / "lifted.grid.ledger.json").read_text())
    assert ledger["labels"]["0"] == [2, 6]


def test_lift_nonuniform_matches_printed(tmp_path, capsys):
    from pdakit.constructions import all_star, identity
    from pdakit.core import hstack, vstack

    m0, m1 = tmp_path / "m0.grid", tmp_path / "m1.grid"
    r01, r10 = tmp_path / "r01.grid", tmp_path / "r10.grid"
    save_pda(vstack([identity(2, 0), identity(2, 1)]), m0)
    save_pda(hstack([identity(2, 1), identity(2, 0)]), m1)
    save_pda(identity(4, 2), r01)
    save_pda(all_star(2, 2), r10)
    code, out, _ = run_cli(
        capsys, "lift", "--mode", "nonuniform",
        "--member", str(m0), "--member", str(m1),
        "--ref", str(r01), "--ref", str(r10),
    )
    assert code == 0
    assert out == printed.IDENTITY_LIFT_6X6


def test_params_chain_and_base(capsys):
    code, out, _ = run_cli(
        capsys, "params",
        "--family", "6,6,1,5,3,6,15,1",
        "--family", "10,10,1,6,2,4,45,10",
        "--base", "4,6,3,4,3",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("(60,60)_{11,51}^{3,12}")
    assert lines[-1] == "valid (240,360,186,3480) g=12 M/N=31/60 R=29/3"


def test_params_single_family_with_label_flags(capsys):
    code, out, _ = run_cli(
        capsys, "params",
        "--family", "11,11,9,10,2,11",
        "--member-labels", "4", "--ref-labels", "1",
        "--base", "2,2,1,1,2",
    )
    assert code == 0
    assert "valid (22,22,19,6) g=11" in out


def test_table_commands(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "table", "table1")
    assert code == 0
    assert out.startswith("scheme,g,K,f,Z,S,MN,R\n")
    dest = tmp_path / "fig2.csv"
    code, _, _ = run_cli(capsys, "table", "fig2", "-o", str(dest))
    assert code == 0
    assert dest.read_text().startswith("series,MN,R\n")


def test_sim_reports_json(tmp_path, capsys):
    path = tmp_path / "m42.grid"
    save_pda(mn(4, 2), path)
    code, out, _ = run_cli(
        capsys, "sim", "--pda", str(path), "--files", "4", "--size", "64",
        "--demands", "0,1,2,3",
    )
    assert code == 0
    report = json.loads(out)
    assert report["decode_ok"] == [True] * 4
    assert report["rate"] == "2/3"
    assert report["subpacketization"] == 6
    assert report["transmissions"] == 4
    assert report["bytes_sent"] == 4 * 11


def test_sim_seeded_is_deterministic(tmp_path, capsys):
    path = tmp_path / "m42.grid"
    save_pda(mn(4, 2), path)
    _, out1, _ = run_cli(capsys, "sim", "--pda", str(path), "--files", "4", "--size", "32", "--seed", "9")
    _, out2, _ = run_cli(capsys, "sim", "--pda", str(path), "--files", "4", "--size", "32", "--seed", "9")
    assert out1 == out2


def test_missing_file_is_an_error(capsys):
    code, _, err = run_cli(capsys, "verify", "/nonexistent/x.grid")
    assert code == 1
    assert "error:" in err


def test_gen_with_explicit_labels(capsys):
    code, out, _ = run_cli(capsys, "gen", "j", "2", "2", "--labels", "7,5,3,1")
    assert code == 0
    assert out == "7 5\n3 1\n"


def test_gen_identity_anti_flag(capsys):
    code, out, _ = run_cli(capsys, "gen", "identity", "3", "0", "--anti")
    assert code == 0
    assert out == printed.ANTI_IDENTITY_3_0


def test_lift_basic_mode(tmp_path, capsys):
    from pdakit.constructions import h_array, identity
    from pdakit.lifting import basic_lift

    base, member = tmp_path / "base.grid", tmp_path / "m.grid"
    save_pda(identity(3, 0), base)
    save_pda(h_array(4), member)
    code, out, _ = run_cli(
        capsys, "lift", "--mode", "basic", str(base), "--member", str(member)
    )
    assert code == 0
    assert parse_grid(out) == basic_lift(identity(3, 0), h_array(4)).result


def test_lift_family_mode(tmp_path, capsys):
    from pdakit.constructions import h_array
    from pdakit.core import Pda

    fresh = iter(range(100))
    grid = [[None if i == j else next(fresh) for j in range(3)] for i in range(3)]
    p0 = Pda.from_rows(grid)
    p1 = Pda.from_rows([[grid[j][i] for j in range(3)] for i in range(3)])
    paths = {}
    for name, p in [("p0", p0), ("p1", p1), ("pstar", h_array(3))]:
        paths[name] = tmp_path / f"{name}.grid"
        save_pda(p, paths[name])
    prefix = tmp_path / "out"
    code, _, _ = run_cli(
        capsys, "lift", "--mode", "family",
        "--member", str(paths["p0"]), "--member", str(paths["p1"]),
        "--ref", str(paths["pstar"]),
        "--q-member", str(paths["p0"]), "--q-ref", str(paths["pstar"]),
        "-o", str(prefix),
    )
    assert code == 0
    assert load_pda(f"{prefix}.r0.grid").shape == (9, 9)
    assert load_pda(f"{prefix}.rstar.grid").shape == (9, 9)


def test_compat_cstar_mode(tmp_path, capsys):
    from pdakit.constructions import h_array

    m0, m1, ref = tmp_path / "m0.grid", tmp_path / "m1.grid", tmp_path / "ref.grid"
    save_pda(h_array(3, [0, 1, 2]), m0)
    save_pda(h_array(3, [2, 0, 1]), m1)
    save_pda(h_array(3, [7, 8, 9]), ref)
    code, out, _ = run_cli(
        capsys, "compat", "--mode", "cstar", str(m0), str(m1), "--ref", str(ref)
    )
    assert code == 0 and out == ""
