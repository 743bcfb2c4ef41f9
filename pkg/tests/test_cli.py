"""CLI surface: inputs, formats, exit codes, report round-trips."""

from __future__ import annotations

import json

from moment_fiber import cli, torus


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestAnalyze:
    def test_inline_stable_block(self, capsys):
        code, out, _ = run(
            ["analyze", "[[1],[-1]]", "--format", "json"], capsys
        )
        assert code == 0
        rep = json.loads(out)
        props = rep["properties"]
        assert props["stable"]["value"] is True
        assert props["visible"]["value"] is True
        assert props["irreducible"]["value"] is True
        assert props["normal"]["value"] is True
        assert rep["fiber_dimension"] == 3

    def test_two_components(self, capsys):
        code, out, _ = run(["analyze", "[[1],[0]]", "--format", "json"], capsys)
        rep = json.loads(out)
        assert rep["components"]["count"] == 2
        assert rep["properties"]["normal"]["value"] is False

    def test_nonvisible_report_has_reason_and_witness(self, capsys):
        code, out, _ = run(
            ["analyze", '{"weights": [[1],[1],[-2]]}', "--format", "json"],
            capsys,
        )
        rep = json.loads(out)
        assert rep["properties"]["stable"]["value"] is True
        assert rep["properties"]["visible"]["value"] is False
        assert rep["properties"]["visible"]["reason"]
        wit = rep["nonvisible_witness"]
        assert wit is not None
        assert any(int(c) > 0 for c in wit["relation"])
        assert any(int(c) < 0 for c in wit["relation"])

    def test_csv_file(self, tmp_path, capsys):
        path = tmp_path / "weights.csv"
        path.write_text("1, 0\n-1, 0\n0, 1\n")
        code, out, _ = run(["analyze", str(path), "--format", "json"], capsys)
        assert code == 0
        assert json.loads(out)["properties"]["visible"]["value"] is True

    def test_json_file(self, tmp_path, capsys):
        path = tmp_path / "weights.json"
        path.write_text('{"weights": [[1], [-1]]}')
        code, out, _ = run(["analyze", str(path), "--format", "json"], capsys)
        assert code == 0

    def test_malformed_json_exits_2(self, capsys):
        code, _, err = run(["analyze", '{"weights": [[1], [1}'], capsys)
        assert code == 2
        assert "line" in err or "char" in err

    def test_malformed_csv_exits_2(self, tmp_path, capsys):
        path = tmp_path / "weights.csv"
        path.write_text("1, x\n")
        code, _, err = run(["analyze", str(path)], capsys)
        assert code == 2
        assert "line 1" in err

    def test_float_hint_adds_but_never_replaces(self, capsys):
        _, out, _ = run(
            ["analyze", "[[1],[-1]]", "--format", "json", "--float-hint"],
            capsys,
        )
        rep = json.loads(out)
        cert = rep["properties"]["stable"]["certificate"]
        assert cert["coefficients"] == ["1/1", "1/1"]
        assert cert["coefficients_hint"] == [1.0, 1.0]

    def test_max_components_cap(self, capsys):
        _, out, _ = run(
            [
                "analyze",
                "[[1,0],[0,1]]",
                "--format",
                "json",
                "--max-components",
                "2",
            ],
            capsys,
        )
        rep = json.loads(out)
        assert rep["components"]["count"] == 4
        assert rep["components"]["list"] is None

    def test_report_round_trip(self):
        rep = cli.analyze(torus.WeightMatrix.from_rows([[1], [1], [-2]]))
        assert cli.AnalysisReport.from_json(rep.to_json()) == rep

    def test_color_env(self, capsys, monkeypatch):
        monkeypatch.setenv("MOMENT_FIBER_COLOR", "1")
        _, out, _ = run(["analyze", "[[1],[-1]]"], capsys)
        assert "\x1b[32m" in out
        monkeypatch.setenv("MOMENT_FIBER_COLOR", "0")
        _, out, _ = run(["analyze", "[[1],[-1]]"], capsys)
        assert "\x1b[" not in out


class TestKac:
    def test_rank_one_diagram_string(self, capsys):
        code, out, _ = run(
            ["kac", "E6 twist=1 labels=1,1,0,1,1,1,1", "--format", "json"],
            capsys,
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["order"] == 9
        assert rep["delta"] == 1

    def test_a2_all_ones(self, capsys):
        code, out, _ = run(
            ["kac", "A2", "twist=1", "labels=1,1,1", "--format", "json"],
            capsys,
        )
        rep = json.loads(out)
        assert rep["order"] == 3
        assert rep["dims"] == [2, 3, 3]

    def test_scan_with_divisibility_check(self, capsys):
        code, out, _ = run(
            [
                "kac",
                "E7 twist=1 scan --delta-ge 2 --check-order-not-div 9,14",
                "--format",
                "json",
            ],
            capsys,
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["scan"]["violations"] == []
        assert rep["scan"]["hits"]

    def test_unsupported_twisted_exits_3(self, capsys):
        code, _, err = run(["kac", "E6 twist=2 labels=1,0,1,1,1"], capsys)
        assert code == 3
        assert "refused" in err

    def test_twisted_table_flag(self, capsys):
        code, out, _ = run(
            [
                "kac",
                "E6 twist=2 labels=1,0,1,1,1 --allow-twisted-table",
                "--format",
                "json",
            ],
            capsys,
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["order"] == 12 and rep["delta"] == 1

    def test_bad_spec_exits_2(self, capsys):
        code, _, _ = run(["kac", "Q9 labels=1"], capsys)
        assert code == 2


class TestSelftest:
    def test_quick_run_passes(self, capsys):
        code, out, _ = run(
            ["selftest", "--count", "15", "--seed", "2", "--max-n", "6"],
            capsys,
        )
        assert code == 0
        assert "PASS" in out

    def test_degenerate_zero_weight_seeding(self, capsys):
        # Tiny bounds force n=1 matrices including S = [[0]].
        code, out, _ = run(
            [
                "selftest",
                "--count",
                "30",
                "--seed",
                "0",
                "--max-n",
                "1",
                "--max-r",
                "1",
                "--max-entry",
                "1",
            ],
            capsys,
        )
        assert code == 0

    def test_mutation_is_detected(self, capsys, monkeypatch):
        # Harness check: a wrong fast path must be reported with the
        # offending matrix echoed.
        real = torus.components

        def broken(w, max_components=None):
            out = real(w, max_components)
            if w.n >= 2:
                return type(out)(
                    components=out.components[:-1] if out.components else None,
                    count=out.count + 1,
                    fiber_dimension=out.fiber_dimension,
                    irreducible=out.irreducible,
                    normal=out.normal,
                )
            return out

        monkeypatch.setattr(cli.torus, "components", broken)
        code, out, _ = run(["selftest", "--count", "10", "--seed", "3"], capsys)
        assert code == 1
        assert "FAIL" in out
        assert "weights=" in out

    def test_parallel_shards(self, capsys):
        code, out, _ = run(
            ["selftest", "--count", "8", "--jobs", "2", "--max-n", "5"],
            capsys,
        )
        assert code == 0
