"""End-to-end command-line behaviour, run in process."""

import io
import json

import numpy as np
import pytest

from holonomy_lab import cli, core, formats
from holonomy_lab.curves import CurveLift

from conftest import assert_angle_close

R = 1 / np.sqrt(2)
OCTANT = {"states": [
    {"dim": 3, "amplitudes": [[1, 0], [0, 0], [0, 0]]},
    {"dim": 3, "amplitudes": [[R, 0], [R, 0], [0, 0]]},
    {"dim": 3, "amplitudes": [[R, 0], [0, R], [0, 0]]},
]}


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(argv, capsys, expect=0):
    code, out, err = run(argv, capsys)
    assert code == expect, err
    return json.loads(out)


@pytest.fixture
def octant_file(tmp_path):
    path = tmp_path / "octant.json"
    path.write_text(json.dumps(OCTANT))
    return str(path)


class TestBi:
    def test_octant_invariant(self, octant_file, capsys):
        out = run_json(["bi", octant_file], capsys)
        assert out["order"] == 3
        assert out["bargmann_invariant"] == pytest.approx([0.25, 0.25])
        assert out["geometric_phase"] == pytest.approx(-np.pi / 4)

    def test_output_is_reproducible(self, octant_file, capsys):
        code, first, _ = run(["bi", octant_file], capsys)
        assert code == 0
        code, second, _ = run(["bi", octant_file], capsys)
        assert second == first

    def test_stdin_input(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(OCTANT)))
        out = run_json(["bi", "-"], capsys)
        assert out["order"] == 3

    def test_bad_json_is_a_parse_error(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{oops")
        code, _, err = run(["bi", str(path)], capsys)
        assert code == 1
        assert "invalid JSON" in err

    def test_missing_file(self, capsys):
        code, _, err = run(["bi", "/no/such/file.json"], capsys)
        assert code == 1

    def test_zero_vector_is_a_validation_error(self, tmp_path, capsys):
        bad = {"states": [{"dim": 2, "amplitudes": [[0, 0], [0, 0]]}] * 3}
        path = tmp_path / "zero.json"
        path.write_text(json.dumps(bad))
        code, _, err = run(["bi", str(path)], capsys)
        assert code == 2

    def test_output_flag_writes_file(self, octant_file, tmp_path, capsys):
        target = tmp_path / "result.json"
        code, out, _ = run(["bi", octant_file, "--output", str(target)],
                           capsys)
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["order"] == 3


class TestAngles:
    def test_octant_angles(self, octant_file, capsys):
        # the three octant states pairwise overlap with modulus 1/sqrt(2)
        out = run_json(["angles", octant_file], capsys)
        assert out["theta_12"] == pytest.approx(np.pi / 2)
        assert out["theta_23"] == pytest.approx(np.pi / 2)
        assert out["theta_31"] == pytest.approx(np.pi / 2)
        assert out["phi_g"] == pytest.approx(-np.pi / 4)

    def test_too_few_states_fail_at_parse(self, tmp_path, capsys):
        two = {"states": OCTANT["states"][:2]}
        path = tmp_path / "two.json"
        path.write_text(json.dumps(two))
        code, _, err = run(["angles", str(path)], capsys)
        assert code == 1
        assert "at least 3" in err

    def test_too_many_states_fail_validation(self, tmp_path, capsys):
        four = {"states": OCTANT["states"] + OCTANT["states"][:1]}
        path = tmp_path / "four.json"
        path.write_text(json.dumps(four))
        code, _, err = run(["angles", str(path)], capsys)
        assert code == 2
        assert "exactly 3" in err


class TestReconstruct:
    PARAMS = {"theta_12": 1.0, "theta_31": 1.2, "phi_12": 0.3,
              "phi_31": 0.7, "phi": 2.1}

    def write(self, tmp_path, params):
        path = tmp_path / "params.json"
        path.write_text(json.dumps(params))
        return str(path)

    def test_n2_round_trip(self, tmp_path, capsys):
        out = run_json(["reconstruct", self.write(tmp_path, self.PARAMS)],
                       capsys)
        states = formats.states_from_dict(out)
        angles = run_json(["bi", self.write(tmp_path, out)], capsys)
        assert len(states) == 3 and states[0].size == 2
        assert_angle_close(angles["geometric_phase"], out["derived"]["phi_g"],
                           tol=1e-10)

    def test_n3_has_three_components(self, tmp_path, capsys):
        params = dict(self.PARAMS, xi=0.9)
        out = run_json(["reconstruct", "--space", "n3",
                        self.write(tmp_path, params)], capsys)
        states = formats.states_from_dict(out)
        assert states[0].size == 3
        assert abs(states[2][2]) > 0.1

    def test_coherent_labels(self, tmp_path, capsys):
        params = {"theta_12": 1.0, "theta_31": 0.8, "phi_prime": 1.1}
        out = run_json(["reconstruct", "--space", "coherent",
                        self.write(tmp_path, params)], capsys)
        assert out["labels"][0] == [0.0, 0.0]
        assert out["derived"]["r"] > 0
        got = out["derived"]["phi_g"]
        want = -out["derived"]["r"] * out["derived"]["r_prime"] * np.sin(1.1)
        assert_angle_close(got, core.principal_angle(want), tol=1e-12)

    def test_missing_key(self, tmp_path, capsys):
        params = {k: v for k, v in self.PARAMS.items() if k != "phi"}
        code, _, err = run(["reconstruct", self.write(tmp_path, params)],
                           capsys)
        assert code == 1
        assert "missing parameter 'phi'" in err

    def test_out_of_range_angle(self, tmp_path, capsys):
        params = dict(self.PARAMS, theta_12=3.2)
        code, _, err = run(["reconstruct", self.write(tmp_path, params)],
                           capsys)
        assert code == 2


class TestPhase:
    def test_formula_inferred_from_xi(self, tmp_path, capsys):
        base = {"theta_12": 1.0, "theta_31": 1.1, "phi": 0.9}
        p1 = tmp_path / "a.json"
        p1.write_text(json.dumps(base))
        p2 = tmp_path / "b.json"
        p2.write_text(json.dumps(dict(base, xi=0.7)))
        out_n2 = run_json(["phase", str(p1)], capsys)
        out_n3 = run_json(["phase", str(p2)], capsys)
        assert out_n2["formula"] == "n2"
        assert out_n3["formula"] == "n3"
        assert out_n2["phase"] != out_n3["phase"]

    def test_explicit_formula_ignores_extra_key(self, tmp_path, capsys):
        base = {"theta_12": 1.0, "theta_31": 1.1, "phi": 0.9, "xi": 0.7}
        path = tmp_path / "p.json"
        path.write_text(json.dumps(base))
        out = run_json(["phase", "--formula", "n2", str(path)], capsys)
        assert out["formula"] == "n2"


class TestMajorana:
    def test_roots_then_rebuild_round_trip(self, tmp_path, capsys, rng):
        psi = core.random_state(5, rng)
        state_path = tmp_path / "state.json"
        state_path.write_text(formats.json_dumps(formats.state_to_dict(psi)))
        rep = run_json(["majorana", "roots", str(state_path)], capsys)
        rep_path = tmp_path / "rep.json"
        rep_path.write_text(json.dumps(rep))
        back = run_json(["majorana", "rebuild", str(rep_path)], capsys)
        rebuilt = formats.state_from_dict(back)
        assert np.allclose(rebuilt, psi, atol=1e-9)

    def test_basis_state_stars(self, tmp_path, capsys):
        path = tmp_path / "e2.json"
        path.write_text(json.dumps(
            {"dim": 3, "amplitudes": [[0, 0], [1, 0], [0, 0]]}))
        code, out, _ = run(["majorana", "stars", str(path)], capsys)
        assert code == 0
        assert out == "x,y,z\n0,0,1\n0,0,-1\n"


class TestNpc:
    def generate(self, tmp_path, capsys, name="curve.csv", extra=()):
        target = tmp_path / name
        code, _, err = run(["npc", "generate", "--theta0", "1.9",
                            "--eps", "0.6", "--output", str(target), *extra],
                           capsys)
        assert code == 0, err
        return str(target)

    def test_generate_then_verify(self, tmp_path, capsys):
        path = self.generate(tmp_path, capsys)
        report = run_json(["npc", "verify", path], capsys)
        assert report["ok"] is True
        assert report["violations"] == []
        assert report["min_real"] > 0

    def test_tampered_curve_fails_verification(self, tmp_path, capsys):
        path = self.generate(tmp_path, capsys)
        lift = formats.curve_from_csv(open(path).read())
        psi = lift.psi.copy()
        psi[:, 2] *= np.exp(0.25j * np.sin(np.pi * lift.s))
        bad = tmp_path / "bad.csv"
        bad.write_text(formats.curve_to_csv(CurveLift(lift.s, psi)))
        report = run_json(["npc", "verify", str(bad)], capsys, expect=2)
        assert report["ok"] is False
        assert report["violations"]

    def test_open_curve_phase(self, tmp_path, capsys):
        path = self.generate(tmp_path, capsys)
        out = run_json(["npc", "phase", path], capsys)
        assert out["connection_integral"] == pytest.approx(0.0, abs=1e-12)
        assert_angle_close(
            out["geometric_phase"],
            core.principal_angle(out["endpoint_phase"]
                                 - out["connection_integral"]),
            tol=1e-12)

    def test_loop_phase_matches_vertices(self, tmp_path, capsys, rng):
        from holonomy_lab.curves import geodesic_lift, in_phase_gauge
        from conftest import random_triad
        triad = random_triad(rng, 3)
        names = []
        for a in range(3):
            v1, v2 = in_phase_gauge(triad[a], triad[(a + 1) % 3])
            lift = geodesic_lift(v1, v2, grid=257)
            p = tmp_path / f"side{a}.csv"
            p.write_text(formats.curve_to_csv(lift))
            names.append(str(p))
        out = run_json(["npc", "phase", "--loop", *names], capsys)
        assert_angle_close(out["loop_phase"], out["vertex_phase"], tol=1e-8)
        assert_angle_close(out["loop_phase"], core.bi_phase(*triad), tol=1e-8)

    def test_argument_combinations(self, tmp_path, capsys):
        path = self.generate(tmp_path, capsys)
        code, _, err = run(["npc", "generate", path], capsys)
        assert code == 1 and "theta0" in err
        code, _, err = run(["npc", "verify"], capsys)
        assert code == 1
        code, _, err = run(["npc", "phase"], capsys)
        assert code == 1
        code, _, err = run(["npc", "phase", path, "--loop", path, path, path],
                           capsys)
        assert code == 1


class TestDecompose:
    def test_octant_decomposition(self, octant_file, capsys):
        out = run_json(["decompose", octant_file], capsys)
        # alpha carries the (n-1)-th root of the 1-2 overlap, here sqrt
        assert out["alpha"] == pytest.approx([np.sqrt(R), 0.0])
        assert len(out["factors"]) == 2
        assert out["geometric_phase"] == pytest.approx(-np.pi / 4)
        assert_angle_close(core.principal_angle(out["half_sum"]),
                           -np.pi / 4, tol=1e-10)
        assert len(out["stars_psi3"]) == 2


class TestStars:
    def test_trajectory_csv(self, tmp_path, capsys):
        target = tmp_path / "curve.csv"
        code, _, err = run(["npc", "generate", "--theta0", str(np.pi / 2),
                            "--grid", "33", "--output", str(target)], capsys)
        assert code == 0, err
        code, out, _ = run(["stars", str(target)], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "s,n1x,n1y,n1z,n2x,n2y,n2z"
        assert len(lines) == 34


class TestSelftest:
    def test_single_criterion(self, capsys):
        code, out, _ = run(["selftest", "--criterion", "0"], capsys)
        assert code == 0
        assert out.startswith("PASS  0")
        assert out.rstrip().endswith("1/1 checks passed")

    def test_unknown_criterion(self, capsys):
        code, _, err = run(["selftest", "--criterion", "99"], capsys)
        assert code == 1
        assert "no matching criteria" in err


class TestConfigPlumbing:
    def test_config_file_and_flag_precedence(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"grid": 17}))
        out_cfg = tmp_path / "a.csv"
        code, _, _ = run(["npc", "generate", "--theta0", "1.0",
                          "--config", str(cfg), "--output", str(out_cfg)],
                         capsys)
        assert code == 0
        assert len(out_cfg.read_text().splitlines()) == 18
        out_flag = tmp_path / "b.csv"
        code, _, _ = run(["npc", "generate", "--theta0", "1.0",
                          "--config", str(cfg), "--grid", "9",
                          "--output", str(out_flag)], capsys)
        assert code == 0
        assert len(out_flag.read_text().splitlines()) == 10

    def test_unknown_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"gird": 17}))
        code, _, err = run(["npc", "generate", "--theta0", "1.0",
                            "--config", str(cfg)], capsys)
        assert code == 1

    def test_invalid_tolerance_is_usage_error(self, octant_file, capsys):
        code, _, err = run(["bi", octant_file, "--tol-deg", "-1"], capsys)
        assert code == 1

    def test_unknown_subcommand_exits_one(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["frobnicate"])
        assert excinfo.value.code == 1

    def test_unknown_flag_exits_one(self, octant_file, capsys):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["bi", octant_file, "--frobnicate"])
        assert excinfo.value.code == 1
