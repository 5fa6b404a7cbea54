import numpy as np
import pytest

HEADER = "# ldos-kit v0.1.0"


def _fmt(x):
    return f"{x:.8e}"


def write_spectrum(path, energies, purcell, provenance="scenario=abc kind=vacuum delta_nm=2.0"):
    lines = [HEADER, f"# {provenance}", "energy_ev,re_G,im_G,purcell,flag"]
    for e, p in zip(energies, purcell):
        g = p * 1e20
        lines.append(",".join([_fmt(e), _fmt(-3.0 * g), _fmt(g), _fmt(p), "ok"]))
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def write_sweep(path, z_over_a, purcell, provenance="scenario=def kind=mnp-sweep delta_nm=2.0"):
    lines = [HEADER, f"# {provenance}", "z_over_a,energy_ev,re_G,im_G,purcell,flag"]
    for z, p in zip(z_over_a, purcell):
        g = p * 1e20
        lines.append(",".join([_fmt(z), _fmt(2.8), _fmt(-g), _fmt(g), _fmt(p), "ok"]))
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture
def spectrum_csv(tmp_path):
    e = np.linspace(2.2, 3.5, 27)
    return write_spectrum(tmp_path / "spec.csv", e, 1.0 + 5.0 * np.exp(-((e - 2.8) ** 2) / 0.01))


@pytest.fixture
def sweep_csv(tmp_path):
    z = np.array([0.2, 0.4, 0.6, 0.8, 1.1, 1.4, 2.0])
    return write_sweep(tmp_path / "sweep.csv", z, 1e4 / (1.0 + z**4))


@pytest.fixture
def fig2_inputs(tmp_path):
    e = np.linspace(2.2, 3.5, 27)
    inputs = {}
    for tag, scale in (("a", 1e6), ("b", 1e7), ("c", 1.0)):
        rho = scale * (1.0 + 4.0 * np.exp(-((e - 3.2) ** 2) / 0.005))
        inputs[f"{tag}_fdtd"] = write_spectrum(tmp_path / f"{tag}_fdtd.csv", e, rho)
        inputs[f"{tag}_ref"] = write_spectrum(
            tmp_path / f"{tag}_ref.csv", e, rho * 1.02, provenance="model=analytic kind=mnp"
        )
    return inputs


@pytest.fixture
def fig3_inputs(tmp_path):
    e = np.linspace(2.8, 3.5, 21)
    inputs = {}
    for key, scale in (("regularized_fdtd", 1e6), ("regularized_ref", 1.02e6),
                       ("cavity_fdtd", 3e6), ("cavity_ref", 3.1e6)):
        rho = scale * (1.0 + 3.0 * np.exp(-((e - 3.2) ** 2) / 0.003))
        inputs[key] = write_spectrum(tmp_path / f"{key}.csv", e, rho)
    return inputs
