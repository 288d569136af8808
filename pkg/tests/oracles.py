"""Independent brute-force oracles for the production checks.

All scans iterate over every cell pair, quadratic in the cell count, and
never reuse the label-position indexes the production code builds.
"""

from pdakit.core import Pda


def _coords(p: Pda):
    return [(j, k) for j in range(p.rows) for k in range(p.cols)]


def brute_force_blackburn_ok(p: Pda) -> bool:
    """C3 by scanning all cell pairs of one array."""
    cells = _coords(p)
    for a in range(len(cells)):
        j1, k1 = cells[a]
        s = p.cell(j1, k1)
        if s is None:
            continue
        for b in range(a + 1, len(cells)):
            j2, k2 = cells[b]
            if p.cell(j2, k2) != s:
                continue
            if p.cell(j1, k2) is not None or p.cell(j2, k1) is not None:
                return False
    return True


def brute_force_right_ok(p0: Pda, p1: Pda, pstar: Pda) -> bool:
    """Right compatibility by scanning all cross pairs."""
    for i0, j0 in _coords(p0):
        s = p0.cell(i0, j0)
        if s is None:
            continue
        for i1, j1 in _coords(p1):
            if p1.cell(i1, j1) != s:
                continue
            if pstar.cell(i0, j1) is not None:
                return False
    return True


def brute_force_full_ok(p0: Pda, p1: Pda, pstar: Pda) -> bool:
    """Full compatibility by scanning all cross pairs, both mirrors."""
    for i0, j0 in _coords(p0):
        s = p0.cell(i0, j0)
        if s is None:
            continue
        for i1, j1 in _coords(p1):
            if p1.cell(i1, j1) != s:
                continue
            if pstar.cell(i0, j1) is not None or pstar.cell(i1, j0) is not None:
                return False
    return True
