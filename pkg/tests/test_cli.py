import json
import math

import pytest

from opuckit.cli import classify_k_trend, main
from opuckit.families import FamilySpec
from opuckit.sequences import ModulusError, VerblunskySequence


class TestFamilies:
    def test_constant(self):
        seq = FamilySpec(kind="constant", c=0.5).generate(3)
        assert seq.values == (0.5, 0.5, 0.5, 0.5)

    def test_power_guard(self):
        with pytest.raises(ModulusError):
            FamilySpec(kind="power", c=1.0, gamma=0.5).generate(3)

    def test_power_values(self):
        seq = FamilySpec(kind="power", c=0.9, gamma=0.5).generate(3)
        expected = [0.9, 0.9 / math.sqrt(2), 0.9 / math.sqrt(3), 0.45]
        for got, want in zip(seq.values, expected):
            assert got == pytest.approx(want, rel=1e-12)

    def test_rotated_modulus(self):
        seq = FamilySpec(kind="rotated", c=0.8, gamma=0.3, beta=1.1).generate(20)
        for n, v in enumerate(seq.values):
            assert abs(v) == pytest.approx(0.8 / (n + 1) ** 0.3, rel=1e-12)

    def test_random_deterministic_and_capped(self):
        a = FamilySpec(kind="random", seed=7, modulus_cap=0.6).generate(50)
        b = FamilySpec(kind="random", seed=7, modulus_cap=0.6).generate(50)
        assert a.values == b.values
        assert max(abs(v) for v in a.values) < 0.6

    def test_explicit_length_guard(self):
        fam = FamilySpec(kind="explicit", values=(0.1, 0.2))
        with pytest.raises(ValueError):
            fam.generate(5)

    def test_dict_round_trip(self):
        for fam in (
            FamilySpec(kind="power", c=0.9 + 0.1j, gamma=0.4),
            FamilySpec(kind="random", seed=3, modulus_cap=0.5),
            FamilySpec(kind="explicit", values=(0.1j, -0.2)),
        ):
            again = FamilySpec.from_dict(fam.to_dict())
            assert again == fam


class TestTrendClassifier:
    def test_bounded(self):
        assert classify_k_trend([1.0, 1.05, 1.04, 1.06]) == "bounded"

    def test_divergent(self):
        assert classify_k_trend([1.0, 1.5, 2.2, 3.5]) == "divergent"

    def test_inconclusive(self):
        assert classify_k_trend([1.0, 1.2, 1.5, 1.7]) == "inconclusive"


class TestCliCommands:
    def test_generate_to_file(self, tmp_path):
        out = tmp_path / "seq.json"
        code = main(
            [
                "generate",
                "--family",
                "constant",
                "--c",
                "0.5",
                "--n",
                "3",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        seq = VerblunskySequence.from_json(out.read_text())
        assert seq.values == (0.5, 0.5, 0.5, 0.5)

    def test_generate_guard_exit_code(self, tmp_path, capsys):
        code = main(
            ["generate", "--family", "power", "--c", "1.0", "--gamma", "0.5", "--n", "3"]
        )
        assert code == 2
        assert "not < 1" in capsys.readouterr().err

    def test_sumrule_zero_family(self, tmp_path):
        out = tmp_path / "rows.csv"
        code = main(
            [
                "sumrule",
                "report",
                "--family",
                "constant",
                "--c",
                "0",
                "--m",
                "1,2",
                "--n-list",
                "5,10",
                "--grid",
                "256",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# opuckit")
        assert lines[1] == "m,N,K_proxy,Q,tail,power_energy,residual"
        for line in lines[2:]:
            m, N, *vals = line.split(",")
            assert all(float(v) == 0 for v in vals)
        sidecar = json.loads((tmp_path / "rows.csv.config.json").read_text())
        assert sidecar["grid_size"] == 256
        assert sidecar["family"] == {"kind": "constant", "c": [0.0, 0.0]}

    def test_sumrule_determinism(self, tmp_path):
        args = [
            "sumrule",
            "report",
            "--family",
            "random",
            "--seed",
            "11",
            "--cap",
            "0.5",
            "--m",
            "1",
            "--n-list",
            "20,40",
            "--grid",
            "512",
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        # byte-identical modulo the version header line
        assert a.read_bytes().splitlines()[1:] == b.read_bytes().splitlines()[1:]

    def test_sumrule_jobs_matches_serial(self, tmp_path):
        base = [
            "sumrule",
            "report",
            "--family",
            "power",
            "--c",
            "0.5",
            "--gamma",
            "0.6",
            "--m",
            "1,2",
            "--n-list",
            "10,20",
            "--grid",
            "256",
        ]
        serial, parallel = tmp_path / "s.csv", tmp_path / "p.csv"
        assert main(base + ["--out", str(serial)]) == 0
        assert main(base + ["--jobs", "2", "--out", str(parallel)]) == 0
        assert serial.read_bytes().splitlines()[1:] == parallel.read_bytes().splitlines()[1:]

    def test_gram_certify(self, capsys):
        assert main(["gram", "certify", "--m-max", "3"]) == 0
        out = capsys.readouterr().out
        assert out.count("certified") == 3

    def test_gram_identity(self, capsys):
        assert main(["gram", "identity", "--m-max", "2"]) == 0
        assert "exact" in capsys.readouterr().out

    def test_gram_export(self, tmp_path):
        out = tmp_path / "gram.json"
        assert main(["gram", "export", "--m", "3", "--out", str(out)]) == 0
        obj = json.loads(out.read_text())
        assert obj["m"] == 3 and obj["order"] == "grlex"
        assert len(obj["entries"]) == 6

    def test_normalform_verify(self, capsys):
        assert main(["normalform", "verify"]) == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out and "[FAIL]" not in out

    def test_absorb_probe_gn(self, tmp_path):
        out = tmp_path / "probe.csv"
        code = main(
            [
                "absorb",
                "probe",
                "--family",
                "power",
                "--c",
                "0.8",
                "--gamma",
                "0.4",
                "--m",
                "3",
                "--r",
                "1",
                "--n-list",
                "50,100",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "family,m,param,N,ratio,lhs,rhs,passed"
        assert len(lines) == 4

    def test_absorb_probe_monomial(self, tmp_path):
        out = tmp_path / "absorb.csv"
        code = main(
            [
                "absorb",
                "probe",
                "--family",
                "power",
                "--c",
                "0.8",
                "--gamma",
                "0.3",
                "--m",
                "2",
                "--k",
                "2",
                "--epsilon",
                "0.1",
                "--n-list",
                "50,100,200",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        rows = out.read_text().splitlines()[2:]
        assert all(row.endswith("True") for row in rows)

    def test_measure_functional(self, capsys):
        code = main(
            [
                "measure",
                "functional",
                "--family",
                "constant",
                "--c",
                "0.5",
                "--n",
                "0",
                "--m",
                "0",
                "--grid",
                "2048",
            ]
        )
        assert code == 0
        val = json.loads(capsys.readouterr().out)
        assert val["value"] == pytest.approx(-math.log(0.75), abs=1e-8)

    def test_measure_weight_and_moments(self, tmp_path, capsys):
        out = tmp_path / "weight.json"
        assert (
            main(
                [
                    "measure",
                    "weight",
                    "--family",
                    "constant",
                    "--c",
                    "0.5",
                    "--n",
                    "0",
                    "--grid",
                    "64",
                    "--out",
                    str(out),
                ]
            )
            == 0
        )
        obj = json.loads(out.read_text())
        assert obj["kind"] == "sampled" and obj["grid"] == 64
        assert (
            main(
                [
                    "measure",
                    "moments",
                    "--family",
                    "constant",
                    "--c",
                    "0.5",
                    "--n",
                    "0",
                    "--grid",
                    "2048",
                    "--kmax",
                    "1",
                ]
            )
            == 0
        )
        mom = json.loads(capsys.readouterr().out)
        assert mom[0][0] == pytest.approx(1.0, abs=1e-10)
        assert mom[1][0] == pytest.approx(0.5, abs=1e-8)

    def test_measure_from_json_file(self, tmp_path, capsys):
        spec = tmp_path / "measure.json"
        spec.write_text('{"kind": "bernstein_szego", "alphas": [[0.5, 0.0]]}')
        code = main(
            [
                "measure",
                "functional",
                "--measure-json",
                str(spec),
                "--m",
                "0",
                "--grid",
                "2048",
            ]
        )
        assert code == 0
        val = json.loads(capsys.readouterr().out)
        assert val["value"] == pytest.approx(-math.log(0.75), abs=1e-8)

    def test_verify_selected_suite(self, capsys):
        assert main(["verify", "--suite", "absorb"]) == 0
        out = capsys.readouterr().out
        assert "checks passed" in out

    def test_config_defaults(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"grid": 2048, "m": 0, "n": 0}))
        code = main(
            [
                "--config",
                str(cfg),
                "measure",
                "functional",
                "--family",
                "constant",
                "--c",
                "0.5",
            ]
        )
        assert code == 0
        val = json.loads(capsys.readouterr().out)
        assert val["grid"] == 2048
        assert val["value"] == pytest.approx(-math.log(0.75), abs=1e-8)
