"""Figure jobs: each id maps to one abscissa grid and a fixed set of curves.

Every row of a figure is independent (one abscissa value, all curves), so
rows can be computed by a worker pool and written in grid order.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import planar, sphereplane
from .materials import DcDielectric, Drude
from .specfun import ZETA3

A = 1.0
OMEGA_P_GRID = tuple(np.linspace(0.1, 50.0, 100))
EPS0_GRID = tuple(np.linspace(1.1, 20.0, 100))
EPS_GRID = tuple(np.round(np.linspace(0.02, 1.0, 50), 12))
BALL_OMEGA_P_R = (0.5, 1.0, 2.0, 5.0, 10.0)
BALL_EPS0 = (2.0, 5.0, 10.0, 100.0)
LM_TE = tuple(range(1, 12))
LM_TM = tuple(range(1, 9))


@dataclass(frozen=True)
class FigureJob:
    """One reproducible figure panel as a CSV table."""

    id: str
    title: str
    abscissa: str
    grid: tuple
    columns: tuple
    notes: tuple = ()


def _fig1L(wp):
    et, _ = planar.drude_vacuum_coeffs(wp, A)
    return (et, ZETA3 / (8.0 * math.pi**2 * A**3 * wp))


def _fig1R(e0):
    return (planar.dc_log_coefficient_numeric(e0, A), planar.dc_log_coefficient(e0, A))


def _fig2L(wp):
    geom = planar.PlanarGeometry(A)
    return (planar.linear_coeff_drude(0.0, geom, wp), -planar.f_lin_drude(wp, geom))


def _fig2R(e0):
    return (planar.linear_coeff_dc(0.0, e0), planar.f_lin_dc(e0))


def _fig3L(eps):
    geom = sphereplane.SpherePlaneGeometry.from_eps(eps)
    return tuple(sphereplane.linear_coeff_ball(Drude(w), geom) for w in BALL_OMEGA_P_R)


def _fig3R(eps):
    geom = sphereplane.SpherePlaneGeometry.from_eps(eps)
    return tuple(sphereplane.linear_coeff_ball(DcDielectric(e), geom) for e in BALL_EPS0)


def _fig4L(eps):
    geom = sphereplane.SpherePlaneGeometry.from_eps(eps)
    return tuple(sphereplane.fixed_param_g("TE", geom, l) for l in LM_TE)


def _fig4R(eps):
    geom = sphereplane.SpherePlaneGeometry.from_eps(eps)
    return tuple(sphereplane.fixed_param_g("TM", geom, l, divergence_study=True) for l in LM_TM)


FIGURES = {
    "fig1L": (FigureJob("fig1L", "E~1 of the Drude model versus omega_p (a = 1)", "omega_p",
                        OMEGA_P_GRID, ("E_tilde1", "asymptote_zeta3_over_8pi2_a3_omega_p")), _fig1L),
    "fig1R": (FigureJob("fig1R", "E~1 of the DC model versus eps0 (a = 1)", "eps0",
                        EPS0_GRID, ("E_tilde1", "closed_form_Li2")), _fig1R),
    "fig2L": (FigureJob("fig2L", "f_D(0) versus omega_p (a = 1)", "omega_p",
                        OMEGA_P_GRID, ("f_D0", "minus_f_lin"),
                        ("f_D0 tends to zeta(3) = 1.2020569... for large omega_p",)), _fig2L),
    "fig2R": (FigureJob("fig2R", "f_DC(0) versus eps0", "eps0",
                        EPS0_GRID, ("f_DC0", "closed_form_zeta3_minus_Li3")), _fig2R),
    "fig3L": (FigureJob("fig3L", "f_ball for the Drude model versus eps = R/L (l_m = 4)", "eps",
                        EPS_GRID, tuple(f"omega_p_R={w:g}" for w in BALL_OMEGA_P_R)), _fig3L),
    "fig3R": (FigureJob("fig3R", "f_ball for the DC model versus eps = R/L (l_m = 4)", "eps",
                        EPS_GRID, tuple(f"eps0={e:g}" for e in BALL_EPS0)), _fig3R),
    "fig4L": (FigureJob("fig4L", "g_TE versus eps for truncations l_m = 1..11", "eps",
                        EPS_GRID, tuple(f"l_m={l}" for l in LM_TE),
                        ("dashed lines corresponds to l_m=1",)), _fig4L),
    "fig4R": (FigureJob("fig4R", "g_TM versus eps for truncations l_m = 1..8", "eps",
                        EPS_GRID, tuple(f"l_m={l}" for l in LM_TM),
                        ("dashed lines corresponds to l_m=1",
                         "g_TM grows with l_m at eps = 1 (no convergent limit at contact)")), _fig4R),
}


def figure_row(fig_id, x):
    """Curve values of figure ``fig_id`` at abscissa ``x``."""
    return tuple(float(v) for v in FIGURES[fig_id][1](x))
