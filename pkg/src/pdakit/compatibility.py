"""Decision procedures for Blackburn-compatibility between PDAs.

Two arrays interact only through cells that carry the same label.  The
checks below index label positions first, so their cost is proportional to
the number of equal-label pairs rather than to the square of the cell
count.  Witness order is deterministic: lowest label first, then row-major
cell pairs.

Right compatibility of (p0, p1) with respect to a reference of shape
rows(p0) x cols(p1) demands a star at (i0, j1) for every equal-label pair
p0(i0, j0) = p1(i1, j1); left compatibility mirrors to (i1, j0).  Full
compatibility is both at once with a single same-shape reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import Pda

__all__ = [
    "CompatWitness",
    "CompatReport",
    "is_right_compatible",
    "is_left_compatible",
    "is_blackburn_compatible",
    "GenFamily",
    "is_generalized_family",
    "check_condition_cstar",
]


@dataclass(frozen=True)
class CompatWitness:
    """Equal labels in two arrays whose mirrored reference cell is not a star.

    ``pair`` identifies the (i, j) member pair in family checks, None for
    two-array checks.
    """

    label: int
    cell0: tuple
    cell1: tuple
    mirror: tuple
    pair: "tuple | None" = None


@dataclass(frozen=True)
class CompatReport:
    ok: bool
    witnesses: tuple

    @staticmethod
    def from_witnesses(witnesses) -> "CompatReport":
        witnesses = tuple(witnesses)
        return CompatReport(not witnesses, witnesses)


def _check_shape(ref: Pda, rows: int, cols: int, what: str) -> None:
    if ref.shape != (rows, cols):
        raise ValueError(
            f"{what} must be {rows}x{cols}, got {ref.rows}x{ref.cols}"
        )


def _right_witnesses(p0: Pda, p1: Pda, pstar: Pda, pair=None):
    idx0 = p0.label_positions()
    idx1 = p1.label_positions()
    for s in sorted(idx0.keys() & idx1.keys()):
        for i0, j0 in idx0[s]:
            for i1, j1 in idx1[s]:
                if pstar.cell(i0, j1) is not None:
                    yield CompatWitness(s, (i0, j0), (i1, j1), (i0, j1), pair)


def is_right_compatible(p0: Pda, p1: Pda, pstar: Pda) -> CompatReport:
    _check_shape(pstar, p0.rows, p1.cols, "right reference")
    return CompatReport.from_witnesses(_right_witnesses(p0, p1, pstar))


def is_left_compatible(p0: Pda, p1: Pda, phash: Pda) -> CompatReport:
    """Left compatibility of (p0, p1) equals right compatibility of (p1, p0)."""
    _check_shape(phash, p1.rows, p0.cols, "left reference")
    return CompatReport.from_witnesses(
        CompatWitness(w.label, w.cell1, w.cell0, w.mirror)
        for w in _right_witnesses(p1, p0, phash)
    )


def is_blackburn_compatible(p0: Pda, p1: Pda, pstar: Pda) -> CompatReport:
    """Full compatibility: both mirrored reference cells star for every pair."""
    if not (p0.shape == p1.shape == pstar.shape):
        raise ValueError(
            f"full compatibility needs equal shapes, got {p0.shape}, "
            f"{p1.shape}, {pstar.shape}"
        )

    def witnesses():
        idx0 = p0.label_positions()
        idx1 = p1.label_positions()
        for s in sorted(idx0.keys() & idx1.keys()):
            for c0 in idx0[s]:
                for c1 in idx1[s]:
                    for mirror in ((c0[0], c1[1]), (c1[0], c0[1])):
                        if pstar.cell(*mirror) is not None:
                            yield CompatWitness(s, c0, c1, mirror)

    return CompatReport.from_witnesses(witnesses())


@dataclass(frozen=True)
class GenFamily:
    """Members plus one reference PDA per ordered pair (i, j), i != j.

    The reference for (i, j) has the row count of member i and the column
    count of member j.  Reference label sets must be pairwise disjoint and
    disjoint from all members' labels for the identity-lift equivalence to
    hold; that is checked by the lifting assembly, not here.
    """

    members: tuple
    refs: Mapping = field(hash=False)

    @staticmethod
    def of(members: Sequence[Pda], refs: Mapping) -> "GenFamily":
        return GenFamily(tuple(members), dict(refs))


def is_generalized_family(fam: GenFamily) -> CompatReport:
    """Every ordered pair (i, j) must be right compatible w.r.t. refs[(i, j)]."""
    g = len(fam.members)

    def witnesses():
        for i in range(g):
            for j in range(g):
                if i == j:
                    continue
                ref = fam.refs.get((i, j))
                if ref is None:
                    raise ValueError(f"missing reference for pair ({i},{j})")
                _check_shape(
                    ref, fam.members[i].rows, fam.members[j].cols, f"reference ({i},{j})"
                )
                yield from _right_witnesses(
                    fam.members[i], fam.members[j], ref, pair=(i, j)
                )

    return CompatReport.from_witnesses(witnesses())


def check_condition_cstar(members: Sequence[Pda], pstar: Pda) -> CompatReport:
    """Check the reference-star condition for coordinated family lifting.

    Applies to the regime where all members share identical star positions
    (so reference copies share labels only at identical positions): the
    reference must carry a star wherever the members do.  Differing member
    star patterns are rejected, the coordinated-copy regime does not apply.
    """
    if not members:
        raise ValueError("need at least one member")
    shape = members[0].shape
    for m in members:
        if m.shape != shape:
            raise ValueError("members must share one shape")
    _check_shape(pstar, *shape, "reference")
    stars = set(members[0].star_positions())
    for m in members[1:]:
        if set(m.star_positions()) != stars:
            raise ValueError("star positions differ across members")

    def witnesses():
        for r, c in sorted(stars):
            label = pstar.cell(r, c)
            if label is not None:
                yield CompatWitness(label, (r, c), (r, c), (r, c))

    return CompatReport.from_witnesses(witnesses())
