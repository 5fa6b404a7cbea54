"""Spherical Bessel / Hankel functions of complex argument, Riccati form.

scipy's spherical_jn is real-argument only, and the sphere stacks here have
complex wavenumbers inside metal layers, so the recurrences are done by
hand: downward (normalized against j_0) for j_l, upward for h_l^(1).
"""

import numpy as np

_RESCALE = 1e250
_LMAX_HARD = 160


def riccati(kind, lmax, x):
    """Riccati-Bessel functions u_l and derivatives u_l' for l = 0..lmax.

    kind "j": u_l(x) = x j_l(x); kind "h1": u_l(x) = x h1_l(x).
    Returns (u, up), complex arrays of length lmax+1.  Derivatives are with
    respect to the argument, via u_l'(x) = x f_{l-1}(x) - l f_l(x).
    """
    if lmax < 0:
        raise ValueError("lmax must be >= 0")
    if lmax > _LMAX_HARD:
        raise OverflowError(f"order {lmax} beyond supported range {_LMAX_HARD}")
    x = complex(x)
    if kind == "j":
        f = _sph_jn(lmax + 1, x)
    elif kind == "h1":
        if x == 0:
            raise ValueError("h1 is singular at x = 0")
        f = _sph_h1n(lmax + 1, x)
    else:
        raise ValueError(f"kind must be 'j' or 'h1', got {kind!r}")
    ls = np.arange(lmax + 1)
    with np.errstate(over="ignore", invalid="ignore"):  # overflow raised below
        u = x * f[: lmax + 1]
        up = np.empty(lmax + 1, dtype=complex)
        # u_0 = sin(x) for j, -i e^{ix} for h1
        up[0] = np.cos(x) if kind == "j" else np.exp(1j * x)
        if lmax >= 1:
            up[1:] = x * f[:lmax] - ls[1:] * f[1 : lmax + 1]
    if not np.all(np.isfinite(u)) or not np.all(np.isfinite(up)):
        raise OverflowError(f"Riccati-Bessel recurrence overflowed at lmax={lmax}, x={x}")
    return u, up


def spherical_bessel(kind, l, x):
    """Single-order convenience wrapper: (u_l(x), u_l'(x)) in Riccati form."""
    u, up = riccati(kind, l, x)
    return u[l], up[l]


def _sph_jn(lmax, x):
    """j_l(x) for l = 0..lmax by downward recurrence, normalized to j_0."""
    if x == 0:
        out = np.zeros(lmax + 1, dtype=complex)
        out[0] = 1.0
        return out
    lstart = lmax + 16 + int(1.5 * abs(x))
    f = np.zeros(lstart + 2, dtype=complex)
    f[lstart + 1] = 0.0
    f[lstart] = 1e-30
    for l in range(lstart, 0, -1):
        f[l - 1] = (2 * l + 1) / x * f[l] - f[l + 1]
        if abs(f[l - 1]) > _RESCALE:
            f[l - 1 :] /= _RESCALE
    j0 = np.sin(x) / x
    scale = j0 / f[0]
    return f[: lmax + 1] * scale


def _sph_h1n(lmax, x):
    """h1_l(x) for l = 0..lmax by upward recurrence (stable for h1)."""
    h = np.zeros(lmax + 1, dtype=complex)
    e = np.exp(1j * x)
    h[0] = -1j * e / x
    if lmax >= 1:
        h[1] = -e / x * (1.0 + 1j / x)
    with np.errstate(over="ignore", invalid="ignore"):  # caller checks finiteness
        for l in range(1, lmax):
            h[l + 1] = (2 * l + 1) / x * h[l] - h[l - 1]
    return h
