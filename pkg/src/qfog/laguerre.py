"""Laguerre and associated Laguerre polynomials of integer degree and order.

Values are produced by the upward three-term recurrence in the degree,

    k L_k^mu(x) = (2k - 1 + mu - x) L_{k-1}^mu(x) - (k - 1 + mu) L_{k-2}^mu(x),

seeded with L_0^mu = 1 and L_1^mu = 1 + mu - x.  For ``x <= 0`` every term
of the recurrence is non-negative, so no cancellation occurs; this is the
only regime the gyroscope formulas use (``x = -alpha**2``).
"""

import math
import operator

MAX_DEGREE = 10_000


def _check(m, mu, x):
    try:
        m, mu = operator.index(m), operator.index(mu)
    except TypeError:
        raise ValueError(f"degree and order must be integers, got m={m!r}, mu={mu!r}") from None
    if m < 0 or mu < 0:
        raise ValueError(f"degree and order must be non-negative, got m={m}, mu={mu}")
    if m > MAX_DEGREE:
        raise ValueError(f"degree m={m} exceeds supported maximum {MAX_DEGREE}")
    if not math.isfinite(x):
        raise ValueError(f"argument x must be finite, got {x!r}")
    return m, mu


def assoc_laguerre(m: int, mu: int, x: float) -> float:
    """Associated Laguerre polynomial L_m^mu(x).

    Args:
        m: degree, ``m >= 0``
        mu: order, ``mu >= 0``
        x: real argument

    Returns:
        L_m^mu(x) as a float.
    """
    m, mu = _check(m, mu, x)
    x = float(x)
    prev = 1.0
    if m == 0:
        return prev
    cur = 1.0 + mu - x
    for k in range(2, m + 1):
        prev, cur = cur, ((2 * k - 1 + mu - x) * cur - (k - 1 + mu) * prev) / k
    return cur


def laguerre(m: int, x: float) -> float:
    """Ordinary Laguerre polynomial L_m(x) = L_m^0(x)."""
    return assoc_laguerre(m, 0, x)
