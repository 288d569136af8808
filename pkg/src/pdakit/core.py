"""Core placement delivery array value type, validation, and parameters.

A placement delivery array (PDA) is an f x K grid whose cells hold either a
star (a cached subfile) or a non-negative integer label (a coded
transmission slot).  Stars are represented by ``None``.  A grid is a
(K, f, Z, S) PDA when

  C1  every column contains the same number Z of stars,
  C2  every label of the label set S occurs at least once,
  C3  if two distinct cells carry the same label, the two mirrored cells
      (swap the columns) are both stars (the Blackburn property).

C3 is what makes XOR delivery decodable: the mirrored stars guarantee every
peer subfile entering a coded transmission is already cached by the users
that need to cancel it.

All values are immutable and hashable and every operation is a pure
function, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvalidPdaError

__all__ = [
    "Cell",
    "STAR",
    "Pda",
    "Violation",
    "ValidationReport",
    "PdaParams",
    "validate",
    "params",
    "relabel",
    "canonicalize",
    "disjoint_copy",
    "hstack",
    "vstack",
]

# A cell is a non-negative integer label or None for a star.
Cell = "int | None"
STAR = None


@dataclass(frozen=True)
class Pda:
    """An f x K grid of stars and integer labels, stored row-major.

    Rectangularity is enforced at construction; the PDA conditions are not,
    use :func:`validate`.
    """

    rows: int
    cols: int
    cells: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"grid must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.cells) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} cells for a "
                f"{self.rows}x{self.cols} grid, got {len(self.cells)}"
            )
        for c in self.cells:
            if c is not None and (
                not isinstance(c, int) or isinstance(c, bool) or c < 0
            ):
                raise ValueError(f"cells must be None or non-negative int, got {c!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "Pda":
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("grid must have at least one row")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
        cells = tuple(c for r in rows for c in r)
        return cls(len(rows), width, cells)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def cell(self, j: int, k: int):
        return self.cells[j * self.cols + k]

    def row(self, j: int) -> tuple:
        return self.cells[j * self.cols : (j + 1) * self.cols]

    def column(self, k: int) -> tuple:
        return self.cells[k :: self.cols]

    def labels(self) -> frozenset:
        return frozenset(c for c in self.cells if c is not None)

    def label_positions(self) -> dict:
        """Map each label to its cells as (row, col) pairs in row-major order."""
        index: dict = {}
        w = self.cols
        for pos, c in enumerate(self.cells):
            if c is not None:
                index.setdefault(c, []).append((pos // w, pos % w))
        return index

    def star_positions(self) -> list:
        w = self.cols
        return [(pos // w, pos % w) for pos, c in enumerate(self.cells) if c is None]

    def column_star_count(self, k: int) -> int:
        return sum(1 for c in self.column(k) if c is None)

    def to_rows(self) -> list:
        return [list(self.row(j)) for j in range(self.rows)]


@dataclass(frozen=True)
class Violation:
    """One witnessed condition failure.

    ``condition`` is "C1", "C2" or "C3".  The witness shape depends on the
    condition: C1 carries (column, star_count, expected); C2 carries the
    smallest missing label; C3 carries two equal-label cells and the
    mirrored cell that is not a star.
    """

    condition: str
    witness: tuple


@dataclass(frozen=True)
class ValidationReport:
    c1_ok: bool
    c2_ok: bool
    c3_ok: bool
    violations: tuple

    @property
    def ok(self) -> bool:
        return self.c1_ok and self.c2_ok and self.c3_ok


def validate(p: Pda, expected_labels: "int | None" = None) -> ValidationReport:
    """Check conditions C1-C3 and report one witness per violated condition.

    C2 is trivially satisfied by the labels actually present; when
    ``expected_labels`` declares the intended label count m (label set [m]),
    a missing-label violation is reported if fewer than m distinct labels
    appear.  Witnesses are the first violation in row-major scan order.
    """
    violations = []

    counts = [p.column_star_count(k) for k in range(p.cols)]
    c1_ok = True
    for k in range(1, p.cols):
        if counts[k] != counts[0]:
            c1_ok = False
            violations.append(Violation("C1", (k, counts[k], counts[0])))
            break

    present = p.labels()
    c2_ok = True
    if expected_labels is not None and len(present) < expected_labels:
        c2_ok = False
        missing = next(s for s in range(expected_labels) if s not in present)
        violations.append(Violation("C2", (missing,)))

    c3 = _first_blackburn_violation(p)
    c3_ok = c3 is None
    if c3 is not None:
        violations.append(c3)

    return ValidationReport(c1_ok, c2_ok, c3_ok, tuple(violations))


def _first_blackburn_violation(p: Pda) -> "Violation | None":
    """Scan cells row-major, checking each label cell against all earlier
    occurrences of the same label.  Cost is O(equal-label pairs)."""
    w = p.cols
    seen: dict = {}
    for pos, s in enumerate(p.cells):
        if s is None:
            continue
        j2, k2 = pos // w, pos % w
        for j1, k1 in seen.get(s, ()):
            if p.cell(j1, k2) is not None:
                return Violation("C3", ((j1, k1), (j2, k2), (j1, k2)))
            if p.cell(j2, k1) is not None:
                return Violation("C3", ((j1, k1), (j2, k2), (j2, k1)))
        seen.setdefault(s, []).append((j2, k2))
    return None


@dataclass(frozen=True)
class PdaParams:
    """The (K, f, Z, S) tuple of a PDA plus derived exact ratios.

    ``g`` is the coding gain and is present only when every label occurs
    exactly g times.  ``memory_ratio`` is Z/f and ``rate`` is S/f, both kept
    as exact rationals, never floats.
    """

    k: int
    f: int
    z: int
    s: int
    g: "int | None"
    memory_ratio: Fraction
    rate: Fraction

    def notation(self) -> str:
        tag = f"{self.g}-" if self.g is not None else ""
        return f"{tag}({self.k},{self.f},{self.z},{self.s})"


def params(p: Pda, expected_labels: "int | None" = None) -> PdaParams:
    """Extract (K, f, Z, S), regularity, memory ratio and rate.

    Raises :class:`InvalidPdaError` when validation fails.
    """
    report = validate(p, expected_labels)
    if not report.ok:
        raise InvalidPdaError(f"not a valid PDA: {report.violations}", report)
    z = p.column_star_count(0)
    index = p.label_positions()
    occurrences = {len(v) for v in index.values()}
    g = occurrences.pop() if len(occurrences) == 1 else None
    return PdaParams(
        k=p.cols,
        f=p.rows,
        z=z,
        s=len(index),
        g=g,
        memory_ratio=Fraction(z, p.rows),
        rate=Fraction(len(index), p.rows),
    )


def relabel(p: Pda, mapping: Mapping[int, int]) -> Pda:
    """Replace every label through ``mapping``; star positions unchanged.

    The mapping must cover every label of ``p`` and be injective on them.
    """
    present = p.labels()
    missing = present - mapping.keys()
    if missing:
        raise ValueError(f"mapping does not cover labels {sorted(missing)}")
    images = [mapping[s] for s in present]
    if len(set(images)) != len(images):
        raise ValueError("mapping is not injective on the present labels")
    cells = tuple(None if c is None else mapping[c] for c in p.cells)
    return Pda(p.rows, p.cols, cells)


def canonicalize(p: Pda) -> Pda:
    """Rename labels to 0..S-1 in order of first row-major appearance."""
    mapping: dict = {}
    for c in p.cells:
        if c is not None and c not in mapping:
            mapping[c] = len(mapping)
    return relabel(p, mapping)


def disjoint_copy(p: Pda, offset: int) -> Pda:
    """Shift canonical labels 0..S-1 by ``offset`` to get a label-disjoint copy."""
    if offset < 0:
        raise ValueError("offset must be non-negative")
    present = p.labels()
    if present != frozenset(range(len(present))):
        raise ValueError("disjoint_copy requires canonical labels 0..S-1")
    return relabel(p, {s: s + offset for s in present})


def hstack(parts: Sequence[Pda]) -> Pda:
    """Concatenate grids left to right; all parts need equal row counts."""
    if not parts:
        raise ValueError("nothing to stack")
    rows = parts[0].rows
    for q in parts:
        if q.rows != rows:
            raise ValueError("hstack needs equal row counts")
    return Pda.from_rows(
        [sum((list(q.row(j)) for q in parts), []) for j in range(rows)]
    )


def vstack(parts: Sequence[Pda]) -> Pda:
    """Concatenate grids top to bottom; all parts need equal column counts."""
    if not parts:
        raise ValueError("nothing to stack")
    cols = parts[0].cols
    for q in parts:
        if q.cols != cols:
            raise ValueError("vstack needs equal column counts")
    cells = tuple(c for q in parts for c in q.cells)
    return Pda(sum(q.rows for q in parts), cols, cells)
