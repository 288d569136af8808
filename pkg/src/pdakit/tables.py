"""Rate-memory-subpacketization tradeoff tables and plot data.

The new-scheme rows are computed through the parameter calculus: prior
published family tuples (label counts included) are lifted by one another
and the result applied to a measured base PDA.  The prior arrays themselves
are not constructible here, only their parameter tuples are consumed, so
comparison rows from other papers are embedded as literal reference data.

All ratios are exact rationals; decimal rendering is fixed at four
fractional digits with round-half-even.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from .constructions import h_array, mn, odd_tiling
from .core import params
from .lifting import ParamTuple, lift_family_params, lifted_params, measure_family

__all__ = [
    "PRIOR_FAMILIES",
    "TradeoffRow",
    "format_decimal4",
    "new_scheme_rows",
    "table1_rows",
    "fig2_rows",
    "render_table1_csv",
    "render_fig2_csv",
]


def format_decimal4(x: Fraction) -> str:
    """Render an exact rational with 4 fractional digits, round half even."""
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN))


# Compatible-family tuples from earlier lifting literature, used as opaque
# inputs: (K, f)_{Z_member, Z_ref}^{family_size, ref_regularity} plus the
# member/reference label-set sizes the calculus needs.
PRIOR_FAMILIES = {
    "b6_3": ParamTuple(6, 6, 1, 5, 3, 6, member_labels=15, ref_labels=1),
    "b6_2": ParamTuple(6, 6, 1, 4, 2, 4, member_labels=15, ref_labels=3),
    "b8_2": ParamTuple(8, 8, 1, 5, 2, 4, member_labels=28, ref_labels=6),
    "b10_2": ParamTuple(10, 10, 1, 6, 2, 4, member_labels=45, ref_labels=10),
    "c3": ParamTuple(3, 3, 1, 3, 3, 6, member_labels=3, ref_labels=0),
    "t16": ParamTuple(16, 16, 6, 13, 2, 8, member_labels=40, ref_labels=6),
    "f4": ParamTuple(4, 4, 1, 3, 2, 4, member_labels=6, ref_labels=1),
}


@dataclass(frozen=True)
class TradeoffRow:
    scheme: str
    g: int
    k: int
    f: int
    z: int
    s: int
    memory_ratio: Fraction
    rate: Fraction

    def csv(self) -> str:
        return (
            f"{self.scheme},{self.g},{self.k},{self.f},{self.z},{self.s},"
            f"{format_decimal4(self.memory_ratio)},{format_decimal4(self.rate)}"
        )


def _row(scheme: str, p) -> TradeoffRow:
    return TradeoffRow(scheme, p.g, p.k, p.f, p.z, p.s, p.memory_ratio, p.rate)


def odd_family_tuple(g: int) -> ParamTuple:
    fam = odd_tiling(g)
    return measure_family([fam.p0, fam.p1], fam.pstar)


def new_scheme_rows() -> list:
    """The six computed rows: one odd-tiling lift and five family-lift chains."""
    pf = PRIOR_FAMILIES
    return [
        _row("odd-tiling-lift", lifted_params(params(h_array(2)), odd_family_tuple(11))),
        _row(
            "family-lift",
            lifted_params(params(mn(4, 2)), lift_family_params(pf["b6_3"], pf["b10_2"])),
        ),
        _row(
            "family-lift",
            lifted_params(params(mn(5, 2)), lift_family_params(pf["b6_3"], pf["b8_2"])),
        ),
        _row(
            "family-lift",
            lifted_params(params(h_array(5)), lift_family_params(pf["b6_2"], pf["b8_2"])),
        ),
        _row(
            "family-lift",
            lifted_params(params(h_array(4)), lift_family_params(pf["b8_2"], pf["b8_2"])),
        ),
        _row(
            "family-lift",
            lifted_params(params(h_array(4)), lift_family_params(pf["f4"], pf["t16"])),
        ),
    ]


def _reference_rows() -> dict:
    """Comparison rows as printed, keyed for interleaving.  These schemes
    are reference data, not constructed; the cheng2020 rate is stored as
    printed even though it differs from S/f."""
    f = Fraction
    return {
        "odd11": TradeoffRow("prior-lifting", 11, 22, 22, 20, 4, f(20, 22), f(4, 22)),
        "g12": TradeoffRow("prior-lifting", 12, 240, 960, 588, 7440, f(588, 960), f(7440, 960)),
        "cheng": TradeoffRow("cheng2020", 12, 240, 64, 60, 80, f(60, 64), f(1)),
        "huang": TradeoffRow("huang2021", 10, 240, 64, 48, 384, f(48, 64), f(384, 64)),
        "g8a": TradeoffRow("prior-lifting", 8, 240, 240, 78, 4860, f(78, 240), f(4860, 240)),
        "g8b": TradeoffRow("prior-lifting", 8, 256, 256, 80, 5632, f(80, 256), f(5632, 256)),
        "g16": TradeoffRow("prior-lifting", 16, 256, 256, 160, 1536, f(160, 256), f(1536, 256)),
    }


def table1_rows() -> list:
    new = new_scheme_rows()
    ref = _reference_rows()
    return [
        new[0],
        ref["odd11"],
        new[1],
        new[2],
        ref["g12"],
        ref["cheng"],
        ref["huang"],
        new[3],
        ref["g8a"],
        new[4],
        ref["g8b"],
        new[5],
        ref["g16"],
    ]


def render_table1_csv() -> str:
    lines = ["scheme,g,K,f,Z,S,MN,R"]
    lines.extend(row.csv() for row in table1_rows())
    return "\n".join(lines) + "\n"


# (M/N, R) point series for the 240-user comparison plot, as plotted.
_FIG2_POINTS = {
    "prior-lifting": [
        ("0", "240"),
        ("0.004166667", "119.5"),
        ("0.1083333", "71.33333"),
        ("0.09166667", "54.5"),
        ("0.4833333", "24.8"),
        ("0.371875", "25.125"),
        ("0.325", "20.25"),
        ("0.60625", "9.45"),
        ("0.6125", "7.75"),
        ("0.6458333", "5.3125"),
        ("0.775", "2.7"),
        ("0.8166667", "1.375"),
        ("0.9125", "0.4375"),
        ("0.9541667", "0.1375"),
        ("0.9791667", "0.04166667"),
        ("0.9916667", "0.0125"),
        ("0.9958333", "0.004166667"),
    ],
    "family-lift": [
        ("0.3083", "20.75"),
        ("0.4667", "10.6667"),
        ("0.6208", "5.6875"),
        ("0.7125", "2.875"),
    ],
    "huang2021": [("0.75", "6"), ("0.625", "15"), ("0.75", "20")],
    "cheng2020": [("0.9375", "1"), ("0.85", "3")],
    "cheng2021": [("0.88333", "1"), ("0.8375", "1")],
    "uncoded": [("0", "240"), ("1", "0")],
}


def fig2_rows(k: int = 240) -> list:
    """The MN rate curve sampled at every integer cache size plus the
    plotted comparison points: rows of (series, M/N, R)."""
    rows = []
    for x in range(k + 1):
        rows.append(
            (
                "mn",
                format_decimal4(Fraction(x, k)),
                format_decimal4(Fraction(k - x, 1 + x)),
            )
        )
    for series, points in _FIG2_POINTS.items():
        rows.extend((series, mn_val, r_val) for mn_val, r_val in points)
    return rows


def render_fig2_csv() -> str:
    lines = ["series,MN,R"]
    lines.extend(f"{series},{m},{r}" for series, m, r in fig2_rows())
    return "\n".join(lines) + "\n"
