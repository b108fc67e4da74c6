"""Bracketing root finder: dense sign scan, then bisection on every sign change."""

import numpy as np

from .errors import RootBracketError

SCAN_POINTS = 1024
XTOL = 1e-12


def bisect(f, a, b, fa=None, fb=None, xtol=XTOL, max_iter=400):
    """Bisection on ``[a, b]``; ``f(a)`` and ``f(b)`` must differ in sign."""
    if not a <= b:
        raise ValueError(f"bisect needs a <= b, got [{a!r}, {b!r}]")
    fa = f(a) if fa is None else fa
    fb = f(b) if fb is None else fb
    if fa == 0:
        return a
    if fb == 0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise RootBracketError(f"no sign change on [{a!r}, {b!r}]", (np.sign(fa), np.sign(fb)))
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if b - a <= xtol or m == a or m == b:
            break
        fm = f(m)
        if fm == 0:
            return m
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


def scan_roots(f, grid, xtol=XTOL):
    """All roots of ``f`` bracketed by sign changes over ``grid``.

    ``f`` must accept a numpy array (for the scan) and a float (for the
    bisection). Returns ``(roots, signs)`` with the roots ascending and the
    sign pattern of the scan.
    """
    grid = np.asarray(grid, dtype=float)
    with np.errstate(all="ignore"):
        values = np.asarray(f(grid), dtype=float)
    signs = np.sign(values)
    roots = []
    for i in range(len(grid) - 1):
        if signs[i] == 0:
            roots.append(float(grid[i]))
        elif signs[i] * signs[i + 1] < 0:
            roots.append(bisect(f, grid[i], grid[i + 1], values[i], values[i + 1], xtol=xtol))
    if signs[-1] == 0:
        roots.append(float(grid[-1]))
    return roots, signs


def unique_root(f, grid, xtol=XTOL, what="root"):
    """The single root of ``f`` over ``grid``; raises if the scan finds zero or several."""
    roots, signs = scan_roots(f, grid, xtol=xtol)
    if len(roots) != 1:
        raise RootBracketError(f"expected one {what}, scan found {len(roots)}", signs)
    return roots[0]
