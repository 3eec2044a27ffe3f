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
import pytest

import lib.campaign as campaign
import lib.errors as errors
import lib.matrixio as matrixio

BASE = {
    "theorems": ["LC-QUAD", "SQ-MAP"],
    "functions": ["exp"],
    "maps": ["none", "mixed:count=2"],
    "dims": [2],
    "m_range": [0.5, 1.0],
    "M_range": [1.5, 2.0],
    "instances_per_cell": 2,
}


def config(**changes):
    obj = dict(BASE)
    obj.update(changes)
    return obj


class TestConfig:

    def test_defaults(self):
        cfg = campaign.parse_config(config())
        assert cfg.theorems == ("LC-QUAD", "SQ-MAP")
        assert cfg.seed == 0
        assert cfg.workers >= 1
        assert cfg.tol == 1e-9

    def test_overrides(self):
        cfg = campaign.parse_config(config(seed=5), seed=7, workers=3)
        assert (cfg.seed, cfg.workers) == (7, 3)

    @pytest.mark.parametrize("changes,path", [
        ({"instances_per_cell": 0}, "instances_per_cell"),
        ({"theorems": ["LC-NOPE"]}, "theorems[0]"),
        ({"theorems": []}, "theorems"),
        ({"functions": ["sin"]}, "functions[0]"),
        ({"maps": ["kraus"]}, "maps[0]"),
        ({"dims": [0]}, "dims[0]"),
        ({"m_range": [1.0]}, "m_range"),
        ({"M_range": [0.8, 2.0]}, "M_range"),
        ({"tol": -1}, "tol"),
        ({"colour": "blue"}, "colour"),
    ])
    def test_rejects(self, changes, path):
        with pytest.raises(errors.ConfigError) as err:
            campaign.parse_config(config(**changes))
        assert err.value.path == path

    def test_missing_field(self):
        obj = config()
        del obj["dims"]
        with pytest.raises(errors.ConfigError):
            campaign.parse_config(obj)

    def test_load_garbage(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[")
        with pytest.raises(errors.ConfigError):
            campaign.load_config(str(path))


class TestCells:

    def test_cells_and_skips(self):
        cells = list(campaign.generate_cells(campaign.parse_config(config())))
        assert [(c.theorem, c.map) for c in cells] == [("LC-QUAD", "none"), ("SQ-MAP", "mixed:count=2")]
        assert cells[0].reason is None
        assert cells[1].reason.startswith("function class mismatch")

    def test_missing_map_shape(self):
        cells = list(campaign.generate_cells(campaign.parse_config(config(theorems=["LC-MULTI"]))))
        assert len(cells) == 1
        assert "no family map spec" in cells[0].reason

    def test_domain_skip(self):
        cells = list(campaign.generate_cells(campaign.parse_config(
            config(theorems=["LC-QUAD"], functions=["recip"], m_range=[-1.0, 1.0]))))
        assert "outside the domain" in cells[0].reason


class TestRun:

    def test_report(self):
        report = campaign.run_campaign(campaign.parse_config(config()))
        body = report.to_json()
        assert body["verdict"] == "pass"
        assert report.exit_code == 0
        lc, sq = body["cells"]
        assert (lc["passed"], lc["failed"], lc["skipped"]) == (2, 0, False)
        assert len(lc["equality_links"]) == 4
        assert sq["skipped"] and sq["passed"] == 0
        assert "workers" not in body["config"]

    def test_identical_across_workers(self):
        one = campaign.run_campaign(campaign.parse_config(config(), workers=1))
        two = campaign.run_campaign(campaign.parse_config(config(), workers=2))
        assert matrixio.dumps(one.to_json()) == matrixio.dumps(two.to_json())

    def test_seed_changes_results(self):
        obj = config(theorems=["LC-QUAD"], functions=["recip"])
        a = campaign.run_campaign(campaign.parse_config(obj, seed=1))
        b = campaign.run_campaign(campaign.parse_config(obj, seed=2))
        assert a.cells[0].min_link_eigenvalue != b.cells[0].min_link_eigenvalue

    def test_errors_count_as_failures(self, monkeypatch):

        def broken(*args, **kwargs):
            raise errors.HypothesisViolation("A <= m", "forced")

        monkeypatch.setattr(campaign.chains, "build_chain", broken)
        report = campaign.run_campaign(campaign.parse_config(config(theorems=["LC-QUAD"])))
        result = report.cells[0]
        assert result.failed == 2
        assert result.first_failure["seed_path"] == [0, 0, 0]
        assert "forced" in result.first_failure["error"]
        assert report.verdict == "fail"
        assert report.exit_code == 1

    def test_full_matrix(self, full_acceptance):
        cfg = campaign.parse_config({
            "theorems": ["LC-QUAD", "LC-MID", "LC-MAP", "LC-MULTI", "SQ-QUAD", "SQ-MAP", "SQ-MERCER"],
            "functions": ["exp", "recip", "pow:p=2"],
            "maps": ["none", "pinching", "family:n=2"],
            "dims": [1, 3],
            "m_range": [0.5, 1.0],
            "M_range": [1.5, 3.0],
            "instances_per_cell": 20 if full_acceptance else 1,
        })
        report = campaign.run_campaign(cfg)
        assert report.verdict == "pass"
        assert any(result.cell.reason is None for result in report.cells)
