"""Deterministic generators for the concrete PDA families used by lifting.

Subset-indexed constructions follow one convention throughout: a t-subset of
[K] is a strictly increasing tuple, and "lexicographic order" compares those
tuples element-wise, so for K=4, t=2 the order is 01, 02, 03, 12, 13, 23.
Reverse lexicographic order is the exact reversal of that enumeration.
itertools.combinations(range(n), t) already enumerates lexicographically.

Label arguments default to range(count); passing explicit labels supports
disjoint-copy composition in block constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .core import Pda, hstack, vstack

__all__ = [
    "identity",
    "g_array",
    "h_array",
    "filled",
    "all_star",
    "mn",
    "mn_reverse",
    "shangguan_direct",
    "OddTilingFamily",
    "odd_tiling",
    "yan_half_memory",
]


def _check_labels(labels, count: int, default_start: int = 0) -> list:
    if labels is None:
        return list(range(default_start, default_start + count))
    labels = list(labels)
    if len(labels) != count:
        raise ValueError(f"expected {count} labels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be distinct")
    return labels


def identity(n: int, s: int = 0, anti: bool = False) -> Pda:
    """The (n, n, n-1, {s}) PDA with s on the main diagonal, stars elsewhere.

    With ``anti=True`` the label sits on the anti-diagonal instead.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][n - 1 - i if anti else i] = s
    return Pda.from_rows(grid)


def g_array(n: int, labels: "Sequence[int] | None" = None) -> Pda:
    """A 2-regular (n, n, 1, n(n-1)/2) PDA with stars on the anti-diagonal.

    The Blackburn property forces the two occurrences of a label to sit at a
    cell and its anti-transpose (i, j) -> (n-1-j, n-1-i); the cells strictly
    above the anti-diagonal are enumerated row-major and mirrored below.
    """
    labels = _check_labels(labels, n * (n - 1) // 2)
    grid = [[None] * n for _ in range(n)]
    d = 0
    for i in range(n):
        for j in range(n - 1 - i):
            grid[i][j] = labels[d]
            grid[n - 1 - j][n - 1 - i] = labels[d]
            d += 1
    return Pda.from_rows(grid)


def h_array(n: int, labels: "Sequence[int] | None" = None) -> Pda:
    """A 2-regular (n, n, 1, n(n-1)/2) PDA with stars on the main diagonal.

    Symmetric: the upper triangle is enumerated row-major and mirrored by
    transposition.
    """
    labels = _check_labels(labels, n * (n - 1) // 2)
    grid = [[None] * n for _ in range(n)]
    d = 0
    for i in range(n):
        for j in range(i + 1, n):
            grid[i][j] = labels[d]
            grid[j][i] = labels[d]
            d += 1
    return Pda.from_rows(grid)


def filled(rows: int, cols: int, labels: "Sequence[int] | None" = None) -> Pda:
    """The (cols, rows, 0, S) PDA filled row-wise with distinct labels."""
    labels = _check_labels(labels, rows * cols)
    return Pda(rows, cols, tuple(labels))


def all_star(rows: int, cols: int) -> Pda:
    """The (cols, rows, rows, {}) PDA of stars only."""
    return Pda(rows, cols, (None,) * (rows * cols))


def mn(k: int, t: int, labels: "Sequence[int] | None" = None) -> Pda:
    """The Maddah-Ali-Niesen PDA for K users and memory point t/K.

    Rows are the t-subsets of [K] in lexicographic order; the cell at row T,
    column u is a star when u is in T and otherwise the label indexed by the
    lexicographic rank of T union {u} among (t+1)-subsets.  Edge cases:
    t=0 is a filled single row, t=K a single all-star row.
    """
    if not 0 <= t <= k:
        raise ValueError(f"need 0 <= t <= K, got t={t}, K={k}")
    labels = _check_labels(labels, comb(k, t + 1))
    rank = {u: i for i, u in enumerate(combinations(range(k), t + 1))}
    grid = []
    for row_set in combinations(range(k), t):
        members = set(row_set)
        row = []
        for u in range(k):
            if u in members:
                row.append(None)
            else:
                row.append(labels[rank[tuple(sorted(members | {u}))]])
        grid.append(row)
    return Pda.from_rows(grid)


def mn_reverse(k: int, t: int, labels: "Sequence[int] | None" = None) -> Pda:
    """The MN PDA variant with rows and labels in reverse lexicographic order."""
    if not 0 <= t <= k:
        raise ValueError(f"need 0 <= t <= K, got t={t}, K={k}")
    labels = _check_labels(labels, comb(k, t + 1))
    uplus = list(combinations(range(k), t + 1))
    rank = {u: i for i, u in enumerate(reversed(uplus))}
    grid = []
    for row_set in reversed(list(combinations(range(k), t))):
        members = set(row_set)
        row = []
        for u in range(k):
            if u in members:
                row.append(None)
            else:
                row.append(labels[rank[tuple(sorted(members | {u}))]])
        grid.append(row)
    return Pda.from_rows(grid)


def shangguan_direct(n: int, a: int, b: int, labels: "Sequence[int] | None" = None) -> Pda:
    """The C(a+b,a)-regular (C(n,b), C(n,a), C(n,a)-C(n-b,a), C(n,a+b)) PDA.

    Rows are a-subsets and columns b-subsets of [n], both lexicographic; a
    cell is a star when row and column subsets intersect, and otherwise the
    label ranked by their union among (a+b)-subsets.  mn(K, t) is the b=1
    special case, cell for cell.
    """
    if a < 0 or b < 0 or a + b > n:
        raise ValueError(f"need 0 <= a, b and a+b <= n, got a={a}, b={b}, n={n}")
    labels = _check_labels(labels, comb(n, a + b))
    rank = {u: i for i, u in enumerate(combinations(range(n), a + b))}
    col_sets = list(combinations(range(n), b))
    grid = []
    for row_set in combinations(range(n), a):
        members = set(row_set)
        row = []
        for col_set in col_sets:
            if members & set(col_set):
                row.append(None)
            else:
                row.append(labels[rank[tuple(sorted(members | set(col_set)))]])
        grid.append(row)
    return Pda.from_rows(grid)


@dataclass(frozen=True)
class OddTilingFamily:
    """Two (g, g, g-2, [4]) PDAs that are Blackburn-compatible with respect
    to the diagonal identity PDA ``pstar``."""

    p0: Pda
    p1: Pda
    pstar: Pda


def odd_tiling(g: int) -> OddTilingFamily:
    """Build the odd-size compatible pair for any odd g >= 3.

    With n = g // 2, p0 tiles identity blocks

        [ I_n(0)  I_n(1)  *   ]
        [ 2       *...*   1   ]
        [ *       I_n(2)  I_n(3) ]

    and p1 the anti-diagonal variant

        [ *       I~_n(3) I~_n(1) ]
        [ 3       *...*   0   ]
        [ I~_n(2) I~_n(0)  *  ]

    The internal labels are exactly {0, 1, 2, 3}; relabel via disjoint_copy
    for composition.  pstar carries the fresh label 4 on its diagonal.
    """
    if g < 3 or g % 2 == 0:
        raise ValueError(f"g must be odd and at least 3, got {g}")
    n = g // 2
    p0 = vstack(
        [
            hstack([identity(n, 0), identity(n, 1), all_star(n, 1)]),
            hstack([filled(1, 1, [2]), all_star(1, g - 2), filled(1, 1, [1])]),
            hstack([all_star(n, 1), identity(n, 2), identity(n, 3)]),
        ]
    )
    p1 = vstack(
        [
            hstack([all_star(n, 1), identity(n, 3, anti=True), identity(n, 1, anti=True)]),
            hstack([filled(1, 1, [3]), all_star(1, g - 2), filled(1, 1, [0])]),
            hstack([identity(n, 2, anti=True), identity(n, 0, anti=True), all_star(n, 1)]),
        ]
    )
    return OddTilingFamily(p0=p0, p1=p1, pstar=identity(g, 4))


def yan_half_memory(g: int) -> Pda:
    """The g-regular (2g, 2^(g-1), 2^(g-2), 2^(g-1)) PDA of Yan et al.

    Stacks block rows [reverse-MN(g, 2i+1) | MN(g, g-2i-1)] for 2i+1 <= g,
    with contiguous disjoint label blocks S_i of size C(g, 2i); block row i
    shares S_i on the right and takes S_{i+1} on the left, which is what
    makes every label appear exactly g times across the two blocks.

    g=1 is rejected: the lone block row [* | 0] has unbalanced star counts,
    so no such PDA exists (2^(g-2) is not an integer).
    """
    if g < 2:
        raise ValueError(f"g must be at least 2, got {g}")
    starts = []
    acc = 0
    for i in range(g // 2 + 2):
        starts.append(acc)
        acc += comb(g, 2 * i)
    block_rows = []
    i = 0
    while 2 * i + 1 <= g:
        t = 2 * i + 1
        left = mn_reverse(g, t, range(starts[i + 1], starts[i + 1] + comb(g, t + 1)))
        right = mn(g, g - t, range(starts[i], starts[i] + comb(g, 2 * i)))
        block_rows.append(hstack([left, right]))
        i += 1
    return vstack(block_rows)
