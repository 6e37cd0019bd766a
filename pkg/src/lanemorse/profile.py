"""Blow-up scales, rescaled profiles and the weighted potential f_p.

Everything here is a pure function of a computed RadialSolution. Quantities
involving |u|^(p-1) are evaluated as exp((p-1) ln|u|) throughout; naive
powering would overflow well before p ~ 10^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, UnimodalityError
from .radial import RadialSolution

__all__ = [
    "Scales",
    "FpAnalysis",
    "scales",
    "rescaled_profile",
    "rescaled_potential",
    "fp_values",
    "analyze_fp",
]


@dataclass
class Scales:
    """Blow-up scales of the two nodal regions and derived ratios.

    eps_plus^(-2) = p u(0)^(p-1) and eps_minus^(-2) = p |u(s_p)|^(p-1);
    ell_hat = s_p / eps_minus is the finite-p estimate of the limit ratio
    (reference value 7.1979).
    """

    eps_plus: float
    eps_minus: float
    ell_hat: float
    ratio_plus: float
    ratio_minus: float


def scales(sol: RadialSolution) -> Scales:
    p = sol.p
    eps_plus = math.exp(-0.5 * (math.log(p) + (p - 1.0) * math.log(sol.u0)))
    eps_minus = math.exp(-0.5 * (math.log(p) + (p - 1.0) * math.log(abs(sol.u_min))))
    return Scales(
        eps_plus=eps_plus,
        eps_minus=eps_minus,
        ell_hat=sol.s_p / eps_minus,
        ratio_plus=sol.r_p / eps_plus,
        ratio_minus=eps_minus / sol.r_p,
    )


def _amplitude(sol: RadialSolution, sign: str) -> tuple[float, float]:
    """(eps, reference amplitude) for the requested nodal region."""
    sc = scales(sol)
    if sign == "+":
        return sc.eps_plus, sol.u0
    if sign == "-":
        return sc.eps_minus, sol.u_min
    raise ConfigError(f"sign must be '+' or '-', got {sign!r}")


def rescaled_profile(sol: RadialSolution, sign: str, x):
    """z_p(x) = p (u(eps x) - u_ref) / u_ref in the chosen nodal region.

    u_ref is u(0) for '+' and u(s_p) for '-'; requires eps * x <= 1.
    """
    eps, amp = _amplitude(sol, sign)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(eps * x > 1.0):
        raise ConfigError("rescaled radius outside the unit ball")
    u, _ = sol.eval(eps * np.atleast_1d(x))
    z = sol.p * (u - amp) / amp
    return float(z[0]) if x.ndim == 0 else z


def rescaled_potential(sol: RadialSolution, sign: str, x):
    """V_p(x) = |u(eps x) / u_ref|^(p-1), evaluated in log space."""
    eps, amp = _amplitude(sol, sign)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(eps * x > 1.0):
        raise ConfigError("rescaled radius outside the unit ball")
    ln_u, _ = sol.ln_abs_u(eps * np.atleast_1d(x))
    with np.errstate(under="ignore"):
        v = np.exp((sol.p - 1.0) * (ln_u - math.log(abs(amp))))
    return float(v[0]) if x.ndim == 0 else v


def fp_values(sol: RadialSolution, r):
    """f_p(r) = p |u(r)|^(p-1) r^2 for scaled radii r (vectorized)."""
    r = np.asarray(r, dtype=float)
    ln_u, _ = sol.ln_abs_u(np.atleast_1d(r))
    with np.errstate(divide="ignore", under="ignore"):
        lg = math.log(sol.p) + (sol.p - 1.0) * ln_u + 2.0 * np.log(np.atleast_1d(r))
        out = np.where(np.isfinite(lg), np.exp(np.minimum(lg, 700.0)), 0.0)
    out[np.atleast_1d(r) == 0.0] = 0.0
    return float(out[0]) if r.ndim == 0 else out


@dataclass
class FpAnalysis:
    """Maximizers and maxima of f_p on the two nodal intervals."""

    c_p: float
    d_p: float
    max_plus: float
    max_minus: float
    sup_f: float


# f_p underflows to zero in floats close to the nodal radius and the
# boundary; differences below this fraction of the interval max are treated
# as plateau noise by the unimodality check.
_PLATEAU_FLOOR = 1e-9


def _check_unimodal(f: np.ndarray, where: str) -> None:
    floor = _PLATEAU_FLOOR * float(np.max(f))
    keep = f > floor
    fs = f[keep]
    if len(fs) < 3:
        raise UnimodalityError(f"too few usable f_p samples on the {where} interval")
    d = np.diff(fs)
    sign_changes = np.sum(np.sign(d[:-1]) * np.sign(d[1:]) < 0)
    i_max = int(np.argmax(fs))
    rising = np.all(d[:i_max] > 0) if i_max > 0 else True
    falling = np.all(d[i_max:] < 0) if i_max < len(fs) - 1 else True
    if sign_changes > 1 or not (rising and falling):
        raise UnimodalityError(
            f"f_p is not single-peaked on the {where} nodal interval "
            f"({sign_changes} interior sign changes); grid under-resolved?"
        )


def _golden_max_log(sol: RadialSolution, t_lo: float, t_hi: float,
                    tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section maximum of f_p over r = e^t, t in [t_lo, t_hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = t_lo, t_hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = fp_values(sol, math.exp(c))
    fd = fp_values(sol, math.exp(d))
    while (b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fp_values(sol, math.exp(c))
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fp_values(sol, math.exp(d))
    t_star = 0.5 * (a + b)
    return math.exp(t_star), float(fp_values(sol, math.exp(t_star)))


def analyze_fp(sol: RadialSolution) -> FpAnalysis:
    """Locate the unique maximum of f_p in each nodal region.

    Unimodality is verified from the sign pattern of discrete differences on
    the solution grid; maxima are then refined by golden section on the
    interpolator in the log radius (tolerance 1e-10, i.e. relative in r).
    """
    g = sol.grid
    interior = (g > 0) & (g < 1.0)
    plus = interior & (g < sol.r_p)
    minus = interior & (g > sol.r_p)
    f_plus = fp_values(sol, g[plus])
    f_minus = fp_values(sol, g[minus])
    _check_unimodal(f_plus, "positive")
    _check_unimodal(f_minus, "negative")

    def refine(mask, f):
        idx = np.where(mask)[0]
        i = idx[int(np.argmax(f))]
        lo = g[max(i - 1, 1)]
        hi = g[min(i + 1, len(g) - 1)]
        return _golden_max_log(sol, math.log(lo), math.log(hi))

    c_p, max_plus = refine(plus, f_plus)
    d_p, max_minus = refine(minus, f_minus)
    return FpAnalysis(
        c_p=c_p,
        d_p=d_p,
        max_plus=max_plus,
        max_minus=max_minus,
        sup_f=max(max_plus, max_minus),
    )
