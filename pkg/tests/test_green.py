import numpy as np
import pytest

from ldoskit.analytic import vacuum_im_gf
from ldoskit.fdtd.engine import RunResult
from ldoskit.green import (
    ExtractionRecord,
    extract_gf,
    extract_run,
    purcell_spectrum,
    records_from_run,
)
from ldoskit.units import EPS0, ev_to_omega


def _vacuum_record(e=3.0, delta=2e-9):
    # synthesize the e_src that a unit current density must produce for
    # G = i k0^3/(6 pi): e_src = i G delta^3 j / (eps0 w) with j = 1
    g = 1j * vacuum_im_gf(e)
    w = ev_to_omega(e)
    e_src = 1j * g * delta**3 / (EPS0 * w)
    return ExtractionRecord(e, e_src, 1.0 + 0j, delta)


class TestExtractGf:
    def test_round_trip_vacuum(self):
        s = extract_gf(_vacuum_record())
        assert s.purcell == pytest.approx(1.0, rel=1e-12)
        assert s.g.real == pytest.approx(0.0, abs=1e-9 * abs(s.g.imag))

    def test_linearity_in_amplitude(self):
        r = _vacuum_record()
        scaled = ExtractionRecord(r.energy_ev, 5.0 * r.e_src, 5.0 * r.j_src, r.delta)
        assert extract_gf(scaled).g == pytest.approx(extract_gf(r).g)

    def test_validation(self):
        with pytest.raises(ValueError):
            ExtractionRecord(3.0, 1.0, 0.0, 2e-9)
        with pytest.raises(ValueError):
            ExtractionRecord(-1.0, 1.0, 1.0, 2e-9)
        with pytest.raises(ValueError):
            ExtractionRecord(3.0, 1.0, 1.0, 2e-9, component="q")


def _fake_result(energies, e_src, j_src):
    return RunResult(
        energies_ev=np.asarray(energies, dtype=float),
        e_src=np.asarray(e_src, dtype=complex),
        j_src=np.asarray(j_src, dtype=complex),
        steps=100, residual=1e-8, reason="decayed",
        dt=1e-18, delta_nm=2.0, component="y",
    )


class TestRecordsFromRun:
    def test_sorted_samples(self):
        r = _vacuum_record()
        res = _fake_result([3.2, 3.0], [r.e_src, r.e_src], [1.0, 1.0])
        samples = extract_run(res)
        assert [s.energy_ev for s in samples] == [3.0, 3.2]

    def test_spectral_floor_guard(self):
        res = _fake_result([3.0, 3.2], [1.0, 1.0], [1.0, 1e-9])
        with pytest.raises(ValueError, match="below floor"):
            records_from_run(res)

    def test_all_zero_current(self):
        res = _fake_result([3.0], [1.0], [0.0])
        with pytest.raises(ValueError, match="no injected current"):
            records_from_run(res)


class TestPurcellSpectrum:
    def test_peak_annotation(self):
        recs = [_vacuum_record(e) for e in (2.5, 3.0, 3.5)]
        samples = [extract_gf(r) for r in recs]
        # bump the middle one
        samples[1] = type(samples[1]).from_g(3.0, 3j * vacuum_im_gf(3.0))
        e, rho, (pe, pv) = purcell_spectrum(samples)
        assert pe == 3.0
        assert pv == pytest.approx(3.0, rel=1e-12)
        assert np.all(np.diff(e) > 0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            purcell_spectrum([])
