"""Regularized Green function / LDOS / Purcell factor toolkit.

FDTD engine with Drude dispersion and CPML boundaries, plus analytic
reference Green functions (homogeneous, cube-averaged, multilayer sphere,
real-cavity local field).

Sign convention used throughout: time dependence e^{-i omega t}, so passive
media have Im[eps] >= 0 and outgoing waves use the spherical Hankel
function of the first kind.
"""

__version__ = "0.1.0"
