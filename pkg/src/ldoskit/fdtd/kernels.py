"""Numba time-stepping kernels.

Field layout (uniform cubic Yee grid, spacing d, arrays shaped (nx,ny,nz)):

    Ex[i,j,k] at ((i+1/2), j, k)      Hx[i,j,k] at (i, (j+1/2), (k+1/2))
    Ey[i,j,k] at (i, (j+1/2), k)      Hy[i,j,k] at ((i+1/2), j, (k+1/2))
    Ez[i,j,k] at (i, j, (k+1/2))      Hz[i,j,k] at ((i+1/2), (j+1/2), k)

The full-domain loops are deliberately branch-free and gather-free so LLVM
can vectorize them: CPML auxiliary (psi) terms are updated unconditionally
— their feed coefficient c is exactly zero outside the boundary slabs, so
interior psi stays zero — the coordinate-stretch division is a multiply by
the precomputed inverse kappa, and the update coefficients D1/D2 are
volumetric float32 arrays (expanded per E edge from the material map);
numba specializes the kernels for the mixed precision of the field arrays
(float64 E-side, float32 H-side — see the YeeState docstring for why).
ikap/b/c are (3, nmax) profile stacks, row a for axis a, evaluated at
integer (E) or half-integer (H) positions.  Outermost tangential E is
never updated (PEC backing behind the PML).

Dispersive cells carry a polarization current J collocated with E,

    E^{n+1} = D1*E^n + D2*(curl H - jw*J^n)
    J^{n+1} = al*J^n + be*(E^{n+1} + E^n),

realized as three cheap passes over the bounding box of the dispersive
region (compact coefficient arrays, no gathers):

    box_save     stash E^n
    update_e     E* = D1*E + D2*curl  (full domain)
    box_correct  E^{n+1} = E* - (D2*jw)*J^n
    box_jupdate  J^{n+1} = al*J^n + be*(E^{n+1} + E^n)

box_jupdate runs after any source injection so the injected field drives
the current consistently.
"""

import numba
import numpy as np

F4 = np.float32

_jit = numba.njit(cache=True, fastmath=True, nogil=True)


@_jit
def update_h(Ex, Ey, Ez, Hx, Hy, Hz,
             pHxy, pHxz, pHyz, pHyx, pHzx, pHzy,
             ikap, b, c, dt_mu, inv_d):
    """Faraday half-step; ikap/b/c at half-integer positions."""
    nx, ny, nz = Ex.shape
    for i in range(nx):
        for j in range(ny - 1):
            for k in range(nz - 1):
                dEzdy = (Ez[i, j + 1, k] - Ez[i, j, k]) * inv_d
                dEydz = (Ey[i, j, k + 1] - Ey[i, j, k]) * inv_d
                py = b[1, j] * pHxy[i, j, k] + c[1, j] * dEzdy
                pz = b[2, k] * pHxz[i, j, k] + c[2, k] * dEydz
                pHxy[i, j, k] = py
                pHxz[i, j, k] = pz
                Hx[i, j, k] -= dt_mu * (dEzdy * ikap[1, j] - dEydz * ikap[2, k] + py - pz)
    for i in range(nx - 1):
        for j in range(ny):
            for k in range(nz - 1):
                dExdz = (Ex[i, j, k + 1] - Ex[i, j, k]) * inv_d
                dEzdx = (Ez[i + 1, j, k] - Ez[i, j, k]) * inv_d
                pz = b[2, k] * pHyz[i, j, k] + c[2, k] * dExdz
                px = b[0, i] * pHyx[i, j, k] + c[0, i] * dEzdx
                pHyz[i, j, k] = pz
                pHyx[i, j, k] = px
                Hy[i, j, k] -= dt_mu * (dExdz * ikap[2, k] - dEzdx * ikap[0, i] + pz - px)
    for i in range(nx - 1):
        for j in range(ny - 1):
            for k in range(nz):
                dEydx = (Ey[i + 1, j, k] - Ey[i, j, k]) * inv_d
                dExdy = (Ex[i, j + 1, k] - Ex[i, j, k]) * inv_d
                px = b[0, i] * pHzx[i, j, k] + c[0, i] * dEydx
                py = b[1, j] * pHzy[i, j, k] + c[1, j] * dExdy
                pHzx[i, j, k] = px
                pHzy[i, j, k] = py
                Hz[i, j, k] -= dt_mu * (dEydx * ikap[0, i] - dExdy * ikap[1, j] + px - py)


@_jit
def update_e(Ex, Ey, Ez, Hx, Hy, Hz,
             D1x, D1y, D1z, D2x, D2y, D2z,
             pExy, pExz, pEyz, pEyx, pEzx, pEzy,
             ikap, b, c, inv_d):
    """Ampere half-step without the J source term; ikap/b/c at integer positions."""
    nx, ny, nz = Ex.shape
    for i in range(nx):
        for j in range(1, ny):
            for k in range(1, nz):
                dHzdy = (Hz[i, j, k] - Hz[i, j - 1, k]) * inv_d
                dHydz = (Hy[i, j, k] - Hy[i, j, k - 1]) * inv_d
                py = b[1, j] * pExy[i, j, k] + c[1, j] * dHzdy
                pz = b[2, k] * pExz[i, j, k] + c[2, k] * dHydz
                pExy[i, j, k] = py
                pExz[i, j, k] = pz
                Ex[i, j, k] = D1x[i, j, k] * Ex[i, j, k] + D2x[i, j, k] * (
                    dHzdy * ikap[1, j] - dHydz * ikap[2, k] + py - pz)
    for i in range(1, nx):
        for j in range(ny):
            for k in range(1, nz):
                dHxdz = (Hx[i, j, k] - Hx[i, j, k - 1]) * inv_d
                dHzdx = (Hz[i, j, k] - Hz[i - 1, j, k]) * inv_d
                pz = b[2, k] * pEyz[i, j, k] + c[2, k] * dHxdz
                px = b[0, i] * pEyx[i, j, k] + c[0, i] * dHzdx
                pEyz[i, j, k] = pz
                pEyx[i, j, k] = px
                Ey[i, j, k] = D1y[i, j, k] * Ey[i, j, k] + D2y[i, j, k] * (
                    dHxdz * ikap[2, k] - dHzdx * ikap[0, i] + pz - px)
    for i in range(1, nx):
        for j in range(1, ny):
            for k in range(nz):
                dHydx = (Hy[i, j, k] - Hy[i - 1, j, k]) * inv_d
                dHxdy = (Hx[i, j, k] - Hx[i, j - 1, k]) * inv_d
                px = b[0, i] * pEzx[i, j, k] + c[0, i] * dHydx
                py = b[1, j] * pEzy[i, j, k] + c[1, j] * dHxdy
                pEzx[i, j, k] = px
                pEzy[i, j, k] = py
                Ez[i, j, k] = D1z[i, j, k] * Ez[i, j, k] + D2z[i, j, k] * (
                    dHydx * ikap[0, i] - dHxdy * ikap[1, j] + px - py)


@_jit
def box_save(Ex, Ey, Ez, ox, oy, oz, i0, j0, k0):
    """Stash E over the dispersive box into the compact o arrays."""
    bi, bj, bk = ox.shape
    for a in range(bi):
        for b_ in range(bj):
            for c_ in range(bk):
                ox[a, b_, c_] = Ex[i0 + a, j0 + b_, k0 + c_]
                oy[a, b_, c_] = Ey[i0 + a, j0 + b_, k0 + c_]
                oz[a, b_, c_] = Ez[i0 + a, j0 + b_, k0 + c_]


@_jit
def box_correct(Ex, Ey, Ez, Jx, Jy, Jz, gx, gy, gz, i0, j0, k0):
    """Subtract the current source term: E -= (D2*jw) * J over the box."""
    bi, bj, bk = gx.shape
    for a in range(bi):
        for b_ in range(bj):
            for c_ in range(bk):
                Ex[i0 + a, j0 + b_, k0 + c_] -= gx[a, b_, c_] * Jx[i0 + a, j0 + b_, k0 + c_]
                Ey[i0 + a, j0 + b_, k0 + c_] -= gy[a, b_, c_] * Jy[i0 + a, j0 + b_, k0 + c_]
                Ez[i0 + a, j0 + b_, k0 + c_] -= gz[a, b_, c_] * Jz[i0 + a, j0 + b_, k0 + c_]


@_jit
def box_jupdate(Ex, Ey, Ez, Jx, Jy, Jz, ox, oy, oz,
                alx, aly, alz, bex, bey, bez, i0, j0, k0):
    """J = al*J + be*(E_new + E_old) over the box."""
    bi, bj, bk = ox.shape
    for a in range(bi):
        for b_ in range(bj):
            for c_ in range(bk):
                i, j, k = i0 + a, j0 + b_, k0 + c_
                Jx[i, j, k] = alx[a, b_, c_] * Jx[i, j, k] + bex[a, b_, c_] * (
                    Ex[i, j, k] + ox[a, b_, c_])
                Jy[i, j, k] = aly[a, b_, c_] * Jy[i, j, k] + bey[a, b_, c_] * (
                    Ey[i, j, k] + oy[a, b_, c_])
                Jz[i, j, k] = alz[a, b_, c_] * Jz[i, j, k] + bez[a, b_, c_] * (
                    Ez[i, j, k] + oz[a, b_, c_])
