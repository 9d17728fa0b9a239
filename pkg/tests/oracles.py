"""Independent reference computations used only by the tests."""

from fractions import Fraction
from math import comb, factorial

import mpmath


def laguerre_sum(m, mu, x):
    """Exact defining sum of L_m^mu(x) for rational ``x``."""
    x = Fraction(x)
    return sum(
        Fraction((-1) ** k * factorial(m + mu), factorial(k) * factorial(m - k) * factorial(mu + k)) * x**k
        for k in range(m + 1)
    )


def laguerre_abs_terms(m, mu, x):
    x = Fraction(x)
    return sum(
        Fraction(factorial(m + mu), factorial(k) * factorial(m - k) * factorial(mu + k)) * abs(x) ** k
        for k in range(m + 1)
    )


def binomial(n, k):
    return comb(n, k)


def mp_pacs(alpha, m, dps=50):
    """PACS moments in extended precision, straight from the Laguerre sums."""
    with mpmath.workdps(dps):
        a = mpmath.mpf(alpha)
        x = -a * a
        L = lambda n, mu: mpmath.laguerre(n, mu, x)
        lm = L(m, 0)
        mean = a * L(m, 1) / lm
        var = ((m + 1) * L(m + 1, 0) + a * a * L(m, 2)) / (2 * lm) - a * a * (L(m, 1) / lm) ** 2 - mpmath.mpf(1) / 4
        photons = (m + 1) * L(m + 1, 0) / lm - 1
        return mean, var, photons


def mp_ratio_cs(alpha, m, y, phi_over_pi, gamma=1, dps=50):
    with mpmath.workdps(dps):
        mean, var, n = mp_pacs(alpha, m, dps)
        phi = mpmath.mpf(phi_over_pi) * mpmath.pi
        s, c = mpmath.sin(phi), mpmath.cos(phi)
        y = mpmath.mpf(y)
        num = (gamma * (4 * var - 1) * s**2 + 1) * (mpmath.sqrt(n) * c + y * s) ** 2
        return num / (mean * c + y * s) ** 2


def mp_ratio_ss(alpha, m, y, phi_over_pi, gamma=1, dps=50):
    with mpmath.workdps(dps):
        mean, var, n = mp_pacs(alpha, m, dps)
        phi = mpmath.mpf(phi_over_pi) * mpmath.pi
        s, c = mpmath.sin(phi), mpmath.cos(phi)
        y = mpmath.mpf(y)
        r = mpmath.asinh(y)
        num = (gamma * (4 * var - 1) * s**2 + 1) * n * c**2
        den = (mean * c + y * s) ** 2 * (gamma * (mpmath.exp(-2 * r) - 1) * c**2 + 1)
        return num / den
