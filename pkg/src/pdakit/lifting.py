"""Lifting constructions: build large PDAs from compatible small ones.

Uniform lifting replaces every cell of a base PDA by an equal-size block:
star cells get fresh label-disjoint copies of a reference PDA, and the t-th
occurrence of a base label s gets the t-th member of a compatible family,
relabeled onto a set S_s shared by all occurrences of s.  The shared set is
what lets two blocks interact, and their mirrored blocks are reference
copies whose stars are guaranteed exactly by Blackburn-compatibility of the
family, so the assembled array satisfies the Blackburn property again.

Star counts compose as Z' = Z_b * Z_ref + (f_b - Z_b) * Z_member, and with a
g_b-regular base the member-derived labels appear g_b * g_c times, where
g_c is the per-member label multiplicity.

Non-uniform lifting drops the equal-size requirement: members sit on the
(anti-)diagonal of a block matrix and per-pair references fill the rest;
validity of the assembly is equivalent to generalized compatibility of the
family.  The MN and Shangguan constructions are recursive instances.

Fresh labels are handed out by a single monotone allocator in emission
order: reference copies first (star cells, row-major), then one shared set
per base label in ascending label order.  That ordering reproduces the
published example arrays digit for digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .compatibility import (
    check_condition_cstar,
    is_blackburn_compatible,
)
from .constructions import all_star, filled, h_array, odd_tiling
from .core import Pda, PdaParams, disjoint_copy, params, validate
from .errors import CompatibilityError, InvalidPdaError, LiftError

__all__ = [
    "LedgerEntry",
    "LiftOutcome",
    "uniform_lift",
    "basic_lift",
    "lift_family",
    "assemble_identity_lift",
    "nonuniform_lift",
    "mn_recursive",
    "shangguan_recursive",
    "odd_tiling_lift",
    "ParamTuple",
    "measure_family",
    "lifted_params",
    "lift_family_params",
]


@dataclass(frozen=True)
class LedgerEntry:
    """One allocated label range: kind is "star" (reference copy for the
    key-th star of the base, row-major) or "label" (shared member set for
    the base label key)."""

    kind: str
    key: int
    start: int
    stop: int


@dataclass(frozen=True)
class LiftOutcome:
    result: Pda
    label_ledger: tuple

    def ledger_dict(self) -> dict:
        out = {"stars": {}, "labels": {}}
        for e in self.label_ledger:
            out["stars" if e.kind == "star" else "labels"][str(e.key)] = [e.start, e.stop]
        return out


def _validated(p: Pda, what: str) -> Pda:
    report = validate(p)
    if not report.ok:
        raise InvalidPdaError(f"{what} is not a valid PDA: {report.violations}", report)
    return p


def _relabel_block(p: Pda, source_labels: Sequence[int], start: int) -> Pda:
    mapping = {s: start + i for i, s in enumerate(source_labels)}
    cells = tuple(None if c is None else mapping[c] for c in p.cells)
    return Pda(p.rows, p.cols, cells)


def _assemble_uniform(base, members, pstar, star_ranges, label_ranges):
    """Place one block per base cell; star_ranges is keyed by base star
    position, label_ranges by base label."""
    m, n = pstar.rows, pstar.cols
    member_labels = sorted(members[0].labels()) if members else []
    pstar_labels = sorted(pstar.labels())
    grid = [[None] * (base.cols * n) for _ in range(base.rows * m)]
    occurrence: dict = {}
    for r in range(base.rows):
        for c in range(base.cols):
            s = base.cell(r, c)
            if s is None:
                block = _relabel_block(pstar, pstar_labels, star_ranges[(r, c)])
            else:
                t = occurrence.get(s, 0)
                occurrence[s] = t + 1
                block = _relabel_block(members[t], member_labels, label_ranges[s])
            for br in range(m):
                row = grid[r * m + br]
                row[c * n : (c + 1) * n] = block.row(br)
    return Pda.from_rows(grid)


def _lift_preconditions(base, members, pstar, what="member"):
    _validated(base, "base")
    _validated(pstar, "reference")
    for i, q in enumerate(members):
        _validated(q, f"{what} {i}")
        if q.shape != pstar.shape:
            raise LiftError(
                f"{what} {i} is {q.rows}x{q.cols}, reference is {pstar.rows}x{pstar.cols}"
            )
    label_sets = {q.labels() for q in members}
    if len(label_sets) > 1:
        raise LiftError(f"{what}s must share one label set")
    for i, j in combinations(range(len(members)), 2):
        report = is_blackburn_compatible(members[i], members[j], pstar)
        if not report.ok:
            raise CompatibilityError(
                f"{what}s {i} and {j} are not Blackburn-compatible with the "
                f"reference; first witness {report.witnesses[0]}",
                report,
            )


def _allocate(base, members, pstar):
    """Reference ranges first (stars row-major), then one shared range per
    base label ascending."""
    n_ref = len(pstar.labels())
    n_member = len(members[0].labels()) if members else 0
    ledger = []
    star_ranges = {}
    label_ranges = {}
    nxt = 0
    for idx, pos in enumerate(base.star_positions()):
        star_ranges[pos] = nxt
        ledger.append(LedgerEntry("star", idx, nxt, nxt + n_ref))
        nxt += n_ref
    for s in sorted(base.labels()):
        label_ranges[s] = nxt
        ledger.append(LedgerEntry("label", s, nxt, nxt + n_member))
        nxt += n_member
    return star_ranges, label_ranges, tuple(ledger)


def uniform_lift(base: Pda, members: Sequence[Pda], pstar: Pda) -> LiftOutcome:
    """Lift ``base`` by a Blackburn-compatible family, reference on stars.

    Needs at least max-occurrence-count members; all members share one
    label set and one shape with the reference, and are pairwise
    compatible with respect to it (checked, witnesses reported).
    """
    members = list(members)
    base_index = base.label_positions()
    need = max((len(v) for v in base_index.values()), default=0)
    if len(members) < need:
        raise LiftError(
            f"base needs {need} family members (max label occurrences), "
            f"got {len(members)}"
        )
    _lift_preconditions(base, members, pstar)
    star_ranges, label_ranges, ledger = _allocate(base, members, pstar)
    result = _assemble_uniform(base, members, pstar, star_ranges, label_ranges)
    report = validate(result)
    if not report.ok:
        raise LiftError(f"lifted array failed validation: {report.violations}")
    return LiftOutcome(result, ledger)


def basic_lift(base: Pda, p: Pda) -> LiftOutcome:
    """Lift with one PDA: all star cells become all-star blocks and every
    occurrence of a base label gets the same shared relabeled copy of p."""
    base_index = base.label_positions()
    need = max((len(v) for v in base_index.values()), default=0)
    return uniform_lift(base, [p] * need, all_star(p.rows, p.cols))


def lift_family(
    members: Sequence[Pda],
    pstar: Pda,
    q_members: Sequence[Pda],
    qstar: Pda,
) -> tuple:
    """Lift a whole compatible family, preserving compatibility.

    Every member is uniform-lifted by the q family with one coordinated
    label allocation: the copy for base label s uses the same fresh set in
    every member, and the reference copy at star position (r, c) likewise.
    This requires identical star positions across members and the
    reference-star condition on ``pstar`` (both checked).  The new
    reference is the basic lift of ``pstar`` by ``q_members[0]``.

    Returns (lifted members, lifted reference); the result family is
    verified pairwise compatible with respect to the new reference.
    """
    members = list(members)
    if not members:
        raise LiftError("need at least one member")
    stars = set(members[0].star_positions())
    for i, m in enumerate(members[1:], start=1):
        if m.shape != members[0].shape or set(m.star_positions()) != stars:
            raise LiftError(
                f"member {i} has different star positions; coordinated "
                "family lifting does not apply"
            )
    cstar = check_condition_cstar(members, pstar)
    if not cstar.ok:
        raise LiftError(
            f"reference carries a label at a member star position: "
            f"{cstar.witnesses[0].mirror}"
        )
    _lift_preconditions(members[0], members, pstar)

    q_members = list(q_members)
    need = max(
        (len(v) for m in members for v in m.label_positions().values()), default=0
    )
    if len(q_members) < need:
        raise LiftError(
            f"family members need {need} q-members (max label occurrences), "
            f"got {len(q_members)}"
        )
    _lift_preconditions(members[0], q_members, qstar, what="q-member")

    star_ranges, label_ranges, _ = _allocate(members[0], q_members, qstar)
    lifted = []
    for i, m in enumerate(members):
        r = _assemble_uniform(m, q_members, qstar, star_ranges, label_ranges)
        report = validate(r)
        if not report.ok:
            raise LiftError(f"lifted member {i} failed validation: {report.violations}")
        lifted.append(r)
    rstar = basic_lift(pstar, q_members[0]).result
    for i, j in combinations(range(len(lifted)), 2):
        report = is_blackburn_compatible(lifted[i], lifted[j], rstar)
        if not report.ok:
            raise LiftError(
                f"lifted members {i} and {j} lost compatibility: "
                f"{report.witnesses[0]}"
            )
    return tuple(lifted), rstar


def _block_position(g: int, i: int, j: int, orientation: str) -> tuple:
    """Grid position of the reference for ordered pair (i, j): the row block
    of member i and the column block of member j."""
    if orientation == "main":
        return (i, j)
    return (g - 1 - i, j)


def assemble_identity_lift(
    members: Sequence[Pda], refs: Mapping, orientation: str = "main"
) -> Pda:
    """Assemble the block matrix of an identity-base lift without validating.

    Members go on the main diagonal ("main") or the anti-diagonal ("anti");
    the reference for ordered pair (i, j) fills the mirrored block between
    member i's rows and member j's columns.
    """
    if orientation not in ("main", "anti"):
        raise ValueError(f"orientation must be 'main' or 'anti', got {orientation!r}")
    members = list(members)
    g = len(members)
    if g == 0:
        raise ValueError("need at least one member")
    if g == 1:
        if refs:
            raise ValueError("a single member takes no references")
        return members[0]
    blocks = {}
    for i in range(g):
        pos = (i, i) if orientation == "main" else (g - 1 - i, i)
        blocks[pos] = members[i]
    for i in range(g):
        for j in range(g):
            if i == j:
                continue
            ref = refs.get((i, j))
            if ref is None:
                raise ValueError(f"missing reference for pair ({i},{j})")
            if ref.rows != members[i].rows or ref.cols != members[j].cols:
                raise ValueError(
                    f"reference ({i},{j}) must be "
                    f"{members[i].rows}x{members[j].cols}, got {ref.rows}x{ref.cols}"
                )
            blocks[_block_position(g, i, j, orientation)] = ref

    heights = [blocks[(r, 0)].rows for r in range(g)]
    widths = [blocks[(0, c)].cols for c in range(g)]
    grid = []
    for r in range(g):
        for br in range(heights[r]):
            row = []
            for c in range(g):
                row.extend(blocks[(r, c)].row(br))
            grid.append(row)
    return Pda.from_rows(grid)


def _owning_member(g, offsets, cell, orientation):
    """Member index owning the block that contains the assembled cell, or
    None when the cell lies in a reference block."""
    row_offsets, col_offsets = offsets
    br = next(i for i in range(g) if cell[0] < row_offsets[i + 1])
    bc = next(i for i in range(g) if cell[1] < col_offsets[i + 1])
    member_row = bc if orientation == "main" else g - 1 - bc
    return bc if member_row == br else None


def nonuniform_lift(
    members: Sequence[Pda], refs: Mapping, orientation: str = "main"
) -> Pda:
    """Lift an identity base by members of possibly different sizes.

    Checks reference label disjointness and the per-column-block star
    balance up front, then assembles and validates.  By the equivalence
    between assembly validity and generalized compatibility, a Blackburn
    failure here pins down the offending member pair, which is reported.
    """
    members = list(members)
    g = len(members)
    for i, m in enumerate(members):
        _validated(m, f"member {i}")
    for key, ref in refs.items():
        _validated(ref, f"reference {key}")

    member_labels = frozenset().union(*(m.labels() for m in members)) if members else frozenset()
    taken = set(member_labels)
    for key in sorted(refs):
        ref_labels = refs[key].labels()
        overlap = ref_labels & taken
        if overlap:
            raise LiftError(
                f"reference {key} reuses labels {sorted(overlap)}; reference "
                "label sets must be disjoint from each other and from members"
            )
        taken |= ref_labels

    if g > 1:
        z_per_block = [
            members[j].column_star_count(0)
            + sum(refs[(i, j)].column_star_count(0) for i in range(g) if i != j)
            for j in range(g)
        ]
        if len(set(z_per_block)) > 1:
            raise LiftError(
                f"per-column-block star counts differ: {z_per_block}; C1 would fail"
            )

    result = assemble_identity_lift(members, refs, orientation)
    report = validate(result)
    if report.ok:
        return result

    c3 = next((v for v in report.violations if v.condition == "C3"), None)
    if c3 is not None:
        row_offsets = [0]
        col_offsets = [0]
        for r in range(g):
            owner = r if orientation == "main" else g - 1 - r
            row_offsets.append(row_offsets[-1] + members[owner].rows)
        for j in range(g):
            col_offsets.append(col_offsets[-1] + members[j].cols)
        offsets = (row_offsets, col_offsets)
        a = _owning_member(g, offsets, c3.witness[0], orientation)
        b = _owning_member(g, offsets, c3.witness[1], orientation)
        raise LiftError(
            f"assembly violates the Blackburn property between members "
            f"{a} and {b}: cells {c3.witness[0]} and {c3.witness[1]} share a "
            f"label but {c3.witness[2]} is not a star"
        )
    raise LiftError(f"assembly failed validation: {report.violations}")


def mn_recursive(k: int, t: int) -> Pda:
    """Build the MN PDA by anti-diagonal identity lifting.

    Members are the label column J and the (K-1, t-1) array sharing label
    set [C(K-1, t)]; references are the (K-1, t) array on fresh labels and
    an all-star column.  Reproduces mn(K, t) cell for cell.
    """
    if not 0 <= t <= k:
        raise ValueError(f"need 0 <= t <= K, got t={t}, K={k}")
    if t == 0:
        return filled(1, k, range(k))
    if t == k:
        return all_star(1, k)
    shared = comb(k - 1, t)
    p0 = filled(comb(k - 1, t), 1, range(shared))
    p1 = mn_recursive(k - 1, t - 1)
    pstar = disjoint_copy(mn_recursive(k - 1, t), shared)
    phash = all_star(comb(k - 1, t - 1), 1)
    return nonuniform_lift([p0, p1], {(0, 1): pstar, (1, 0): phash}, "anti")


def shangguan_recursive(n: int, a: int, b: int) -> Pda:
    """Build the subset-indexed Shangguan PDA by anti-diagonal lifting.

    Base cases: a filled array when min(a, b) = 0, an all-star array when
    a + b = n + 1 (reachable once the recursion lowers n).  Otherwise lift
    with members U(n-1, a, b-1), U(n-1, a-1, b) on a shared label set and
    references U(n-1, a, b) fresh plus an all-star block.  Reproduces
    shangguan_direct(n, a, b) cell for cell.
    """
    if a < 0 or b < 0 or a + b > n + 1:
        raise ValueError(f"need 0 <= a, b and a+b <= n+1, got a={a}, b={b}, n={n}")
    if min(a, b) == 0:
        return filled(comb(n, a), comb(n, b), range(comb(n, a) * comb(n, b)))
    if a + b == n + 1:
        return all_star(comb(n, a), comb(n, b))
    shared = comb(n - 1, a + b - 1)
    p0 = shangguan_recursive(n - 1, a, b - 1)
    p1 = shangguan_recursive(n - 1, a - 1, b)
    pstar = disjoint_copy(shangguan_recursive(n - 1, a, b), shared)
    phash = all_star(comb(n - 1, a - 1), comb(n - 1, b - 1))
    return nonuniform_lift([p0, p1], {(0, 1): pstar, (1, 0): phash}, "anti")


def odd_tiling_lift(g: int, n: int) -> Pda:
    """The g-regular (gn, gn, n(g-2)+1, n(2n-1)) PDA for odd g.

    Uniform lift of the star-diagonal 2-regular n x n base by the odd
    tiling pair with the diagonal identity reference.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    fam = odd_tiling(g)
    return uniform_lift(h_array(n), [fam.p0, fam.p1], fam.pstar).result


@dataclass(frozen=True)
class ParamTuple:
    """Shorthand for a compatible family when arrays are unavailable:
    (K, f)_{Z_member, Z_ref}^{family_size, ref_regularity}.

    ``member_labels`` and ``ref_labels`` carry the label-set sizes the
    parameter calculus needs; they are optional because the bare notation
    omits them.
    """

    k: int
    f: int
    z_member: int
    z_ref: int
    family_size: int
    ref_regularity: int
    member_labels: "int | None" = None
    ref_labels: "int | None" = None

    def notation(self) -> str:
        return (
            f"({self.k},{self.f})_{{{self.z_member},{self.z_ref}}}"
            f"^{{{self.family_size},{self.ref_regularity}}}"
        )


def measure_family(members: Sequence[Pda], pstar: Pda) -> ParamTuple:
    """Read the family tuple off actual arrays."""
    zs = {m.column_star_count(0) for m in members}
    if len(zs) != 1:
        raise ValueError(f"members have differing star counts {sorted(zs)}")
    ref = params(pstar)
    return ParamTuple(
        k=pstar.cols,
        f=pstar.rows,
        z_member=zs.pop(),
        z_ref=ref.z,
        family_size=len(members),
        ref_regularity=ref.g if ref.g is not None else 0,
        member_labels=len(members[0].labels()),
        ref_labels=ref.s,
    )


def _exact_div(num: int, den: int, what: str) -> int:
    if den == 0 or num % den:
        raise ValueError(f"inconsistent tuple: {what} ({num} not divisible by {den})")
    return num // den


def _label_counts(fam: ParamTuple, member_labels, ref_labels) -> tuple:
    lm = fam.member_labels if member_labels is None else member_labels
    lr = fam.ref_labels if ref_labels is None else ref_labels
    if lm is None or lr is None:
        raise ValueError("member and reference label counts are required")
    ref_cells = fam.k * (fam.f - fam.z_ref)
    if lr == 0:
        if ref_cells != 0:
            raise ValueError("inconsistent tuple: reference has cells but no labels")
    elif fam.ref_regularity * lr != ref_cells:
        raise ValueError(
            f"inconsistent tuple: {lr} reference labels at regularity "
            f"{fam.ref_regularity} do not cover {ref_cells} cells"
        )
    return lm, lr


def lifted_params(
    base: PdaParams,
    fam: ParamTuple,
    member_label_count: "int | None" = None,
    ref_label_count: "int | None" = None,
) -> PdaParams:
    """Parameters of the uniform lift of a regular base by a family tuple.

    Pure arithmetic, no arrays needed, so prior published family tuples can
    be consumed as opaque inputs.  Member-derived labels appear
    base.g * (family total multiplicity per label) times, computed as
    base.g * K(f - Z_member) / member_labels, which stays exact even for
    families whose individual members are not regular.
    """
    lm, lr = _label_counts(fam, member_label_count, ref_label_count)
    if base.g is None:
        raise ValueError("base must be regular for the lifted-parameter calculus")
    if base.g > fam.family_size:
        raise ValueError(
            f"base regularity {base.g} exceeds family size {fam.family_size}"
        )
    k2 = base.k * fam.k
    f2 = base.f * fam.f
    z2 = base.z * fam.z_ref + (base.f - base.z) * fam.z_member
    s2 = base.k * base.z * lr + base.s * lm

    has_member_labels = base.s > 0 and lm > 0
    has_ref_labels = base.z > 0 and lr > 0
    g_member = (
        _exact_div(base.g * fam.k * (fam.f - fam.z_member), lm, "member regularity")
        if has_member_labels
        else None
    )
    if not (has_member_labels or has_ref_labels):
        g2 = None
    elif not has_ref_labels:
        g2 = g_member
    elif not has_member_labels:
        g2 = fam.ref_regularity
    else:
        g2 = g_member if g_member == fam.ref_regularity else None
    return PdaParams(
        k=k2,
        f=f2,
        z=z2,
        s=s2,
        g=g2,
        memory_ratio=Fraction(z2, f2),
        rate=Fraction(s2, f2),
    )


def lift_family_params(p: ParamTuple, q: ParamTuple) -> ParamTuple:
    """Family tuple of lifting family p by family q, label counts included.

    Members lift uniformly (reference q-star on their stars), the reference
    lifts basically (all-star blocks on its stars), so the two star counts
    compose differently; the new reference regularity multiplies by the
    q-member regularity.
    """
    if None in (p.member_labels, p.ref_labels, q.member_labels, q.ref_labels):
        raise ValueError("family lifting needs label counts on both tuples")
    gc_p = _exact_div(p.k * (p.f - p.z_member), p.member_labels, "p member regularity")
    if gc_p > q.family_size:
        raise ValueError(
            f"p members are {gc_p}-regular but q has only {q.family_size} members"
        )
    gc_q = _exact_div(q.k * (q.f - q.z_member), q.member_labels, "q member regularity")
    return ParamTuple(
        k=p.k * q.k,
        f=p.f * q.f,
        z_member=p.z_member * q.z_ref + (p.f - p.z_member) * q.z_member,
        z_ref=p.z_ref * q.f + (p.f - p.z_ref) * q.z_member,
        family_size=p.family_size,
        ref_regularity=p.ref_regularity * gc_q,
        member_labels=p.member_labels * q.member_labels + p.k * p.z_member * q.ref_labels,
        ref_labels=p.ref_labels * q.member_labels,
    )
