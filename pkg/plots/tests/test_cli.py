import json
import os

import pytest

from ldosplots import cli, image_checksums, sha256_of


def _recipe(tmp_path, **kw):
    p = tmp_path / "recipe.json"
    p.write_text(json.dumps(kw))
    return str(p)


class TestCli:
    def test_renders_from_recipe(self, tmp_path, sweep_csv, capsys):
        out = str(tmp_path / "fig1e.png")
        rp = _recipe(tmp_path, figure="fig1e", inputs={"sweeps": [sweep_csv]}, out=out)
        assert cli.main([rp]) == 0
        assert capsys.readouterr().out.strip() == out
        assert image_checksums(out) == {os.path.basename(sweep_csv): sha256_of(sweep_csv)}

    def test_out_override(self, tmp_path, sweep_csv):
        other = str(tmp_path / "elsewhere.png")
        rp = _recipe(tmp_path, figure="fig1e", inputs={"sweeps": [sweep_csv]},
                     out=str(tmp_path / "orig.png"))
        assert cli.main([rp, "--out", other]) == 0
        assert os.path.exists(other)
        assert not os.path.exists(str(tmp_path / "orig.png"))

    def test_bad_recipe_exits_1(self, tmp_path, capsys):
        rp = _recipe(tmp_path, figure="fig9", inputs={}, out="x.png")
        assert cli.main([rp]) == 1
        assert "unknown figure" in capsys.readouterr().err

    def test_unsupported_csv_version_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("# ldos-kit v9.0.0\nz_over_a,energy_ev,re_G,im_G,purcell,flag\n"
                       "1e0,2.8e0,1e0,1e0,1e0,ok\n")
        rp = _recipe(tmp_path, figure="fig1e", inputs={"sweeps": [str(bad)]},
                     out=str(tmp_path / "f.png"))
        assert cli.main([rp]) == 1
        assert "unsupported schema version" in capsys.readouterr().err

    def test_missing_recipe_file_exits_1(self, tmp_path, capsys):
        assert cli.main([str(tmp_path / "nope.json")]) == 1
        assert "error" in capsys.readouterr().err
