#
# MIT License
#
# (C) Copyright 2026 Hewlett Packard Enterprise Development LP
#
# Permission is hereby granted, free of charge, to any person obtaining a
# copy of this software and associated documentation files (the "Software"),
# to deal in the Software without restriction, including without limitation
# the rights to use, copy, modify, merge, publish, distribute, sublicense,
# and/or sell copies of the Software, and to permit persons to whom the
# Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included
# in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
# THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR
# OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE,
# ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
# OTHER DEALINGS IN THE SOFTWARE.
#
import json

import pytest

import bin.cli as cli

WORKED = {
    "m": 1, "M": 3,
    "A": {"dim": 1, "re": [[0]]},
    "B": {"dim": 1, "re": [[2]]},
    "C": {"dim": 1, "re": [[2]]},
    "D": {"dim": 1, "re": [[5]]},
}

CAMPAIGN = {
    "theorems": ["LC-QUAD", "SQ-MAP"],
    "functions": ["exp"],
    "maps": ["mixed:count=2"],
    "dims": [1, 2],
    "m_range": [0.5, 1.0],
    "M_range": [1.5, 2.0],
    "instances_per_cell": 2,
}


@pytest.fixture
def write(tmp_path):

    def _write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return _write


class TestVerify:

    def test_worked_instance_passes(self, write, capsys):
        code = cli.main(["-q", "verify", "--theorem", "LC-QUAD", "--instance", write("i.json", WORKED),
                         "--function", "exp"])
        assert code == cli.EXIT_PASS
        report = json.loads(capsys.readouterr().out)
        assert report["passed"] is True
        assert [link["equality"] for link in report["links"]] == [True, False, False, True]
        assert len(report["digest"]) == 56

    def test_relaxed_hypothesis_is_an_error(self, write):
        instance = dict(WORKED, D={"dim": 1, "re": [[3.5]]})
        code = cli.main(["-q", "verify", "--theorem", "LC-QUAD", "--instance", write("i.json", instance),
                         "--function", "exp"])
        assert code == cli.EXIT_ERROR

    def test_map_from_the_command_line(self, write, capsys):
        instance = dict(WORKED, D={"dim": 1, "re": [[3]]}, A={"dim": 1, "re": [[1]]})
        code = cli.main(["-q", "verify", "--theorem", "LC-MAP", "--instance", write("i.json", instance),
                         "--function", "exp", "--map", "identity"])
        assert code == cli.EXIT_PASS
        assert json.loads(capsys.readouterr().out)["theorem"] == "LC-MAP"

    def test_missing_file(self, tmp_path):
        code = cli.main(["-q", "verify", "--theorem", "LC-QUAD", "--instance", str(tmp_path / "none.json"),
                         "--function", "exp"])
        assert code == cli.EXIT_ERROR

    def test_unknown_function(self, write):
        code = cli.main(["-q", "verify", "--theorem", "LC-QUAD", "--instance", write("i.json", WORKED),
                         "--function", "sin"])
        assert code == cli.EXIT_ERROR

    def test_usage_error(self):
        assert cli.main(["verify", "--theorem", "LC-QUAD"]) == cli.EXIT_ERROR


class TestCampaign:

    def test_pass(self, write, tmp_path):
        out = tmp_path / "report.json"
        code = cli.main(["-q", "campaign", "--config", write("c.json", CAMPAIGN), "--out", str(out)])
        assert code == cli.EXIT_PASS
        report = json.loads(out.read_text())
        assert report["verdict"] == "pass"
        assert len(report["cells"]) == 4
        skipped = [cell for cell in report["cells"] if cell["skipped"]]
        assert {cell["theorem"] for cell in skipped} == {"SQ-MAP"}
        assert all(cell["reason"].startswith("function class mismatch") for cell in skipped)

    def test_byte_identical_across_workers(self, write, tmp_path):
        config = write("c.json", CAMPAIGN)
        one, two = tmp_path / "one.json", tmp_path / "two.json"
        assert cli.main(["-q", "campaign", "--config", config, "--out", str(one), "--workers", "1"]) == 0
        assert cli.main(["-q", "campaign", "--config", config, "--out", str(two), "--workers", "2"]) == 0
        assert one.read_bytes() == two.read_bytes()

    def test_bad_config(self, write, tmp_path):
        config = write("c.json", dict(CAMPAIGN, instances_per_cell=0))
        assert cli.main(["-q", "campaign", "--config", config, "--out", str(tmp_path / "r.json")]) == cli.EXIT_ERROR

    def test_unwritable_report(self, write, tmp_path):
        out = tmp_path / "missing" / "report.json"
        assert cli.main(["-q", "campaign", "--config", write("c.json", CAMPAIGN), "--out", str(out)]) == cli.EXIT_ERROR

    def test_executor_failure(self, write, tmp_path, monkeypatch):

        def broken(cfg):
            raise RuntimeError("worker pool died")

        monkeypatch.setattr(cli.campaign, "run_campaign", broken)
        out = tmp_path / "report.json"
        assert cli.main(["-q", "campaign", "--config", write("c.json", CAMPAIGN), "--out", str(out)]) == cli.EXIT_ERROR
        assert not out.exists()


class TestHunt:

    def test_counterexample_exits_one(self, capsys, tmp_path):
        out = tmp_path / "found.json"
        code = cli.main(["-q", "hunt", "--theorem", "LC-QUAD", "--relax", "cond-i-f", "--function", "recip",
                         "--budget", "100", "--out", str(out)])
        assert code == cli.EXIT_FAIL
        result = json.loads(capsys.readouterr().out)
        assert result["found"] is True
        assert result["report"]["passed"] is False
        assert result["instance"]["kind"] == "quadruple"
        assert json.loads(out.read_text()) == result

    def test_reciprocal_power_counterexample(self, capsys):
        code = cli.main(["-q", "hunt", "--theorem", "lc-quad", "--relax", "cond-i-f", "--function", "pow:p=-1",
                         "--budget", "10000", "--seed", "7"])
        assert code == cli.EXIT_FAIL
        result = json.loads(capsys.readouterr().out)
        assert result["found"] is True
        assert result["report"]["theorem"] == "LC-QUAD"

    def test_nothing_found(self, capsys):
        code = cli.main(["-q", "hunt", "--theorem", "LC-QUAD", "--relax", "none", "--function", "exp",
                         "--budget", "3"])
        assert code == cli.EXIT_PASS
        assert json.loads(capsys.readouterr().out)["found"] is False

    def test_relaxation_not_offered(self):
        code = cli.main(["-q", "hunt", "--theorem", "LC-MID", "--relax", "cond-i-f", "--function", "exp"])
        assert code == cli.EXIT_ERROR

    def test_found_instance_reverifies(self, capsys, tmp_path):
        cli.main(["-q", "hunt", "--theorem", "LC-QUAD", "--relax", "cond-i-f", "--function", "recip",
                  "--budget", "100"])
        instance = json.loads(capsys.readouterr().out)["instance"]
        path = tmp_path / "i.json"
        path.write_text(json.dumps(instance))
        # the unrelaxed hypotheses reject the instance
        code = cli.main(["-q", "verify", "--theorem", "LC-QUAD", "--instance", str(path), "--function", "recip"])
        assert code == cli.EXIT_ERROR
