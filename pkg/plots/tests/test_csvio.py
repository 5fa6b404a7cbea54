import numpy as np
import pytest

from ldosplots.csvio import (
    CsvFormatError,
    read_spectrum_csv,
    read_sweep_csv,
    sha256_of,
)

from conftest import HEADER, write_spectrum, write_sweep


class TestSpectrumReader:
    def test_round_trip(self, spectrum_csv):
        d = read_spectrum_csv(spectrum_csv)
        assert d.version == "0.1.0"
        assert d.provenance["kind"] == "vacuum"
        assert d.provenance["delta_nm"] == "2.0"
        assert len(d.energy_ev) == 27
        assert np.all(np.diff(d.energy_ev) > 0)
        assert d.purcell.min() > 0
        assert d.flags == ["ok"] * 27
        assert "2.0 nm" in d.label

    def test_rejects_foreign_file(self, tmp_path):
        p = tmp_path / "x.csv"
        p.write_text("energy,value\n1,2\n")
        with pytest.raises(CsvFormatError, match="not an ldos-kit CSV"):
            read_spectrum_csv(str(p))

    def test_rejects_unknown_version(self, tmp_path):
        p = tmp_path / "x.csv"
        p.write_text("# ldos-kit v9.0.0\nenergy_ev,re_G,im_G,purcell,flag\n"
                     "2.2e0,1e0,1e0,1e0,ok\n")
        with pytest.raises(CsvFormatError, match="unsupported schema version"):
            read_spectrum_csv(str(p))

    def test_rejects_wrong_columns(self, sweep_csv):
        with pytest.raises(CsvFormatError, match="unexpected columns"):
            read_spectrum_csv(sweep_csv)

    def test_rejects_short_row(self, tmp_path):
        p = tmp_path / "x.csv"
        p.write_text(f"{HEADER}\nenergy_ev,re_G,im_G,purcell,flag\n2.2,1.0\n")
        with pytest.raises(CsvFormatError, match="columns"):
            read_spectrum_csv(str(p))

    def test_rejects_empty_body(self, tmp_path):
        p = tmp_path / "x.csv"
        p.write_text(f"{HEADER}\nenergy_ev,re_G,im_G,purcell,flag\n")
        with pytest.raises(CsvFormatError, match="no data rows"):
            read_spectrum_csv(str(p))

    def test_provenance_line_optional(self, tmp_path):
        p = tmp_path / "x.csv"
        p.write_text(f"{HEADER}\nenergy_ev,re_G,im_G,purcell,flag\n"
                     "2.2e0,1e0,1e0,1e0,ok\n")
        d = read_spectrum_csv(str(p))
        assert d.provenance == {}


class TestSweepReader:
    def test_round_trip(self, sweep_csv):
        d = read_sweep_csv(sweep_csv)
        assert len(d.z_over_a) == 7
        assert d.z_over_a[0] == pytest.approx(0.2)
        assert np.all(d.purcell > 0)
        assert "2.0" in d.label

    def test_rejects_spectrum_file(self, spectrum_csv):
        with pytest.raises(CsvFormatError, match="unexpected columns"):
            read_sweep_csv(spectrum_csv)


class TestChecksum:
    def test_sha256_matches_hashlib(self, spectrum_csv):
        import hashlib

        with open(spectrum_csv, "rb") as f:
            expect = hashlib.sha256(f.read()).hexdigest()
        assert sha256_of(spectrum_csv) == expect
