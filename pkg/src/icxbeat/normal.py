"""Standard normal CDF and inverse CDF.

The inverse uses Wichura's AS241 (PPND16) rational approximations, accurate
to about 1e-16 relative over the whole open unit interval.
"""
from __future__ import annotations

import math

import numpy as np

_SPLIT1 = 0.425
_SPLIT2 = 5.0
_CONST1 = 0.180625
_CONST2 = 1.6

# coefficients for |q| <= 0.425, highest order first
_A = (2.5090809287301226727e3, 3.3430575583588128105e4, 6.7265770927008700853e4,
      4.5921953931549871457e4, 1.3731693765509461125e4, 1.9715909503065514427e3,
      1.3314166789178437745e2, 3.3871328727963666080e0)
_B = (5.2264952788528545610e3, 2.8729085735721942674e4, 3.9307895800092710610e4,
      2.1213794301586595867e4, 5.3941960214247511077e3, 6.8718700749205790830e2,
      4.2313330701600911252e1, 1.0)
# intermediate tail, r <= 5
_C = (7.74545014278341407640e-4, 2.27238449892691845833e-2, 2.41780725177450611770e-1,
      1.27045825245236838258e0, 3.64784832476320460504e0, 5.76949722146069140550e0,
      4.63033784615654529590e0, 1.42343711074968357734e0)
_D = (1.05075007164441684324e-9, 5.47593808499534494600e-4, 1.51986665636164571966e-2,
      1.48103976427480074590e-1, 6.89767334985100004550e-1, 1.67638483018380384940e0,
      2.05319162663775882187e0, 1.0)
# far tail
_E = (2.01033439929228813265e-7, 2.71155556874348757815e-5, 1.24266094738807843860e-3,
      2.65321895265761230930e-2, 2.96560571828504891230e-1, 1.78482653991729133580e0,
      5.46378491116411436990e0, 6.65790464350110377720e0)
_F = (2.04426310338993978564e-15, 1.42151175831644588870e-7, 1.84631831751005468180e-5,
      7.86869131145613259100e-4, 1.48753612908506148525e-2, 1.36929880922735805310e-1,
      5.99832206555887937690e-1, 1.0)


def _poly(coef, x):
    return np.polyval(coef, x)


def norm_ppf(p):
    """Inverse of the standard normal CDF; ``+-inf`` at 0 and 1."""
    p_arr = np.asarray(p, dtype=float)
    if np.any((p_arr < 0) | (p_arr > 1)) or np.any(np.isnan(p_arr)):
        raise ValueError("probability must lie in [0, 1]")
    q = p_arr - 0.5
    out = np.empty_like(q)

    central = np.abs(q) <= _SPLIT1
    r = _CONST1 - q[central] ** 2
    out[central] = q[central] * _poly(_A, r) / _poly(_B, r)

    tail = ~central
    if np.any(tail):
        qt = q[tail]
        r = np.where(qt < 0, p_arr[tail], 1.0 - p_arr[tail])
        with np.errstate(divide="ignore"):
            r = np.sqrt(-np.log(r))
        with np.errstate(invalid="ignore"):
            val = np.where(
                r <= _SPLIT2,
                _poly(_C, r - _CONST2) / _poly(_D, r - _CONST2),
                _poly(_E, r - _SPLIT2) / _poly(_F, r - _SPLIT2),
            )
        val = np.where(np.isinf(r), np.inf, val)
        out[tail] = np.where(qt < 0, -val, val)
    return float(out) if out.ndim == 0 else out


_erfc = np.frompyfunc(math.erfc, 1, 1)


def norm_cdf(x):
    """Standard normal CDF via the complementary error function."""
    x_arr = np.asarray(x, dtype=float)
    out = 0.5 * np.asarray(_erfc(-x_arr / math.sqrt(2.0)), dtype=float)
    return float(out) if np.ndim(out) == 0 else out
