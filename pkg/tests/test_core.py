import random

import pytest

from pdakit.constructions import all_star, filled, identity, mn
from pdakit.core import (
    Pda,
    canonicalize,
    disjoint_copy,
    hstack,
    params,
    relabel,
    validate,
    vstack,
)
from pdakit.errors import InvalidPdaError
from pdakit.gridio import parse_grid

import printed
from randgen import random_valid_pda


def test_grid_must_be_rectangular():
    with pytest.raises(ValueError):
        Pda(2, 2, (None, 0, 1))
    with pytest.raises(ValueError):
        Pda.from_rows([[0, 1], [2]])
    with pytest.raises(ValueError):
        Pda(1, 1, (-3,))


def test_validate_identity_passes():
    report = validate(identity(3, 1))
    assert report.ok
    assert identity(3, 1).column_star_count(0) == 2


def test_validate_all_star_passes_with_no_labels():
    p = all_star(2, 3)
    assert validate(p).ok
    assert p.labels() == frozenset()


def test_validate_catches_blackburn_violation_with_witness():
    # filled 2x3 with cell (1,0) changed from 3 to 0: two 0s share a column
    p = Pda.from_rows([[0, 1, 2], [0, 4, 5]])
    report = validate(p)
    assert not report.c3_ok and report.c1_ok
    (violation,) = [v for v in report.violations if v.condition == "C3"]
    assert violation.witness[0] == (0, 0)
    assert violation.witness[1] == (1, 0)
    assert p.cell(*violation.witness[2]) is not None


def test_validate_catches_unbalanced_columns():
    p = Pda.from_rows([[None, 0], [1, 2]])
    report = validate(p)
    assert not report.c1_ok
    (violation,) = [v for v in report.violations if v.condition == "C1"]
    assert violation.witness == (1, 0, 1)


def test_validate_declared_label_count():
    p = identity(3, 0)
    assert validate(p, expected_labels=1).ok
    report = validate(p, expected_labels=2)
    assert not report.c2_ok
    assert report.violations[0].witness == (1,)


def test_params_mn_4_2():
    info = params(mn(4, 2))
    assert (info.k, info.f, info.z, info.s, info.g) == (4, 6, 3, 4, 3)
    assert info.memory_ratio == 0.5 and info.memory_ratio.denominator == 2
    assert info.rate.numerator == 2 and info.rate.denominator == 3


def test_params_all_star():
    info = params(all_star(2, 3))
    assert (info.k, info.f, info.z, info.s) == (3, 2, 2, 0)
    assert info.memory_ratio == 1 and info.rate == 0


def test_params_ten_by_ten_example():
    info = params(parse_grid(printed.ODD_LIFT_10X10_G5_N2))
    assert (info.k, info.f, info.z, info.s, info.g) == (10, 10, 7, 6, 5)
    assert info.memory_ratio.numerator == 7 and info.memory_ratio.denominator == 10
    assert info.rate.numerator == 3 and info.rate.denominator == 5


def test_params_rejects_invalid():
    with pytest.raises(InvalidPdaError):
        params(Pda.from_rows([[0, 1, 2], [0, 4, 5]]))


def test_relabel_identity_and_shift():
    assert relabel(identity(3, 1), {1: 7}) == identity(3, 7)
    shifted = relabel(filled(2, 3), {i: i + 10 for i in range(6)})
    assert shifted == filled(2, 3, range(10, 16))


def test_relabel_rejects_bad_mappings():
    p = filled(1, 3)
    with pytest.raises(ValueError):
        relabel(p, {0: 5, 1: 6})
    with pytest.raises(ValueError):
        relabel(p, {0: 5, 1: 5, 2: 6})


def test_relabel_round_trip_on_random_pdas():
    rng = random.Random(20240)
    for _ in range(100):
        p = random_valid_pda(rng)
        labels = sorted(p.labels())
        images = rng.sample(range(200), len(labels))
        fwd = dict(zip(labels, images))
        back = {v: k for k, v in fwd.items()}
        q = relabel(p, fwd)
        assert relabel(q, back) == p
        assert params(q) == params(p)


def test_canonicalize_first_appearance_and_idempotence():
    p = Pda.from_rows([[None, 5], [5, None]])
    assert canonicalize(p) == Pda.from_rows([[None, 0], [0, None]])
    q = canonicalize(mn(4, 2, labels=[30, 10, 20, 40]))
    assert canonicalize(q) == q
    assert len(q.labels()) == 4


def test_canonical_forms_agree_across_relabelings():
    rng = random.Random(7)
    for _ in range(50):
        p = random_valid_pda(rng)
        labels = sorted(p.labels())
        m1 = dict(zip(labels, rng.sample(range(300), len(labels))))
        m2 = dict(zip(labels, rng.sample(range(300), len(labels))))
        assert canonicalize(relabel(p, m1)) == canonicalize(relabel(p, m2))


def test_disjoint_copy():
    assert disjoint_copy(identity(3, 0), 4) == identity(3, 4)
    p = mn(4, 2)
    assert disjoint_copy(p, 0) == p
    other = disjoint_copy(p, len(p.labels()))
    assert not (p.labels() & other.labels())
    assert params(other) == params(p)
    with pytest.raises(ValueError):
        disjoint_copy(identity(3, 5), 1)


def test_stacking_shape_checks():
    with pytest.raises(ValueError):
        hstack([identity(2, 0), identity(3, 0)])
    with pytest.raises(ValueError):
        vstack([all_star(2, 2), all_star(2, 3)])
    assert hstack([identity(2, 0)]) == identity(2, 0)
