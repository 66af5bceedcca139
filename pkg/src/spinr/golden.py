"""Pinned low-spin reference matrices and the golden verification suite.

The spin-1/2 and spin-1 R-matrices are classical; their entries, the k = 2
stable-class matrix, the attracting-class expansion and the change of basis
between them are fixed here as exact expressions.  These fixtures pin every
normalization and index convention of the construction: any convention drift
shows up as a golden failure, not as a silent sign change.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import MPoly, RatFun
from .report import Report
from .rmatrix import assemble_full, rblock_closed
from .stablebasis import S_inverse, S_matrix, SymMatrix, solve_change_of_basis, zbar_coeff

Z = MPoly.var("z")
PHI = MPoly.var("phi")
EPS = MPoly.var("eps")
ONE = MPoly.one()


def _c(value: int) -> MPoly:
    return MPoly.const(value)


def _rf(num: MPoly, den: MPoly | None = None) -> RatFun:
    return RatFun(num, den)


def spin_half_block() -> SymMatrix:
    """The 2 x 2 sector block of the cotangent-bundle-of-P1 case, generic eps."""
    den = EPS - Z
    return SymMatrix(
        [
            [_rf(EPS, den), _rf(Z, den)],
            [_rf(Z, den), _rf(EPS, den)],
        ]
    )


def spin_one_middle_block() -> SymMatrix:
    """The 3 x 3 sector block at k = 2, generic (z, phi, eps)."""
    den = (EPS - Z) * (PHI + EPS - Z)
    return SymMatrix(
        [
            [
                _rf(EPS * (PHI + EPS), den),
                _rf(Z * EPS, den),
                _rf(-(Z * (PHI - Z)), den),
            ],
            [
                _rf(_c(2) * Z * (PHI + EPS), den),
                _rf(PHI * EPS + PHI * Z + EPS * EPS + Z * Z, den),
                _rf(_c(2) * Z * (PHI + EPS), den),
            ],
            [
                _rf(-(Z * (PHI - Z)), den),
                _rf(Z * EPS, den),
                _rf(EPS * (PHI + EPS), den),
            ],
        ]
    )


def stable_matrix_k1() -> SymMatrix:
    """S at k = 1 (hand evaluation of the product ranges)."""
    return SymMatrix(
        [
            [_rf(ONE, EPS + Z), _rf(-EPS, Z * (EPS + Z))],
            [RatFun.zero(), _rf(ONE, Z)],
        ]
    )


def stable_inverse_k1() -> SymMatrix:
    return SymMatrix(
        [
            [_rf(EPS + Z), _rf(EPS)],
            [RatFun.zero(), _rf(Z)],
        ]
    )


def stable_matrix_k2() -> SymMatrix:
    """The printed 3 x 3 stable-class matrix at k = 2."""
    return SymMatrix(
        [
            [
                _rf(ONE, (EPS + Z) * (PHI + EPS + Z)),
                _rf(-EPS, (EPS + Z) * (PHI + Z) * (PHI + EPS + Z)),
                _rf(EPS * (PHI + EPS), Z * (EPS + Z) * (PHI + Z) * (PHI + EPS + Z)),
            ],
            [
                RatFun.zero(),
                _rf(ONE, (EPS + Z) * (PHI + Z)),
                _rf(_c(2) * (PHI + EPS), (EPS + Z) * (PHI - Z) * (PHI + Z)),
            ],
            [RatFun.zero(), RatFun.zero(), _rf(-ONE, Z * (PHI - Z))],
        ]
    )


def attracting_matrix_k2() -> SymMatrix:
    """The printed 3 x 3 attracting-class expansion at k = 2."""
    return SymMatrix(
        [
            [
                _rf(ONE, (EPS + Z) * (PHI + EPS + Z)),
                _rf(-ONE, (EPS + Z) * (PHI + Z)),
                _rf(ONE, Z * (PHI + Z)),
            ],
            [
                RatFun.zero(),
                _rf(ONE, (EPS + Z) * (PHI + Z)),
                _rf(_c(2), (PHI - Z) * (PHI + Z)),
            ],
            [RatFun.zero(), RatFun.zero(), _rf(-ONE, Z * (PHI - Z))],
        ]
    )


CHANGE_OF_BASIS_K2 = [[1, 1, 1], [0, 1, 2], [0, 0, 1]]


def spin_one_full_matrix() -> SymMatrix:
    """The assembled 9 x 9 spin-1 matrix, rational in z, basis lex(a, b)."""
    zp1 = Z + _c(1)
    zp2 = Z + _c(2)
    d1 = zp2
    d2 = zp1 * zp2
    a = _rf(_c(2), d1)
    b = _rf(-Z, d1)
    cc = _rf(_c(2), d2)
    dd = _rf(_c(-2) * Z, d2)
    ee = _rf(Z * (Z - _c(1)), d2)
    ff = _rf(Z * Z + Z + _c(2), d2)
    one = RatFun.one()
    o = RatFun.zero()
    grid = [
        [one, o, o, o, o, o, o, o, o],
        [o, a, o, b, o, o, o, o, o],
        [o, o, cc, o, dd, o, ee, o, o],
        [o, b, o, a, o, o, o, o, o],
        [o, o, dd, o, ff, o, dd, o, o],
        [o, o, o, o, o, a, o, b, o],
        [o, o, ee, o, dd, o, cc, o, o],
        [o, o, o, o, o, b, o, a, o],
        [o, o, o, o, o, o, o, o, one],
    ]
    labels = [(i // 3, i % 3) for i in range(9)]
    return SymMatrix(grid, labels, labels)


# ---------------------------------------------------------------------------
# golden suite
# ---------------------------------------------------------------------------


def _compare(report: Report, computed: SymMatrix, expected: SymMatrix) -> Report:
    for i, j in computed.mismatches(expected):
        report.fail(
            i=i,
            j=j,
            computed=str(computed.entries[i][j]),
            expected=str(expected.entries[i][j]),
        )
    return report


def golden_spin_half_block() -> Report:
    return _compare(
        Report("golden_spin_half_block", {"k": 1}),
        rblock_closed(1).matrix,
        spin_half_block(),
    )


def golden_spin_one_block() -> Report:
    return _compare(
        Report("golden_spin_one_block", {"k": 2}),
        rblock_closed(2).matrix,
        spin_one_middle_block(),
    )


def golden_stable_matrix_k1() -> Report:
    report = _compare(
        Report("golden_stable_matrix_k1", {"k": 1}), S_matrix(1), stable_matrix_k1()
    )
    return _compare(report, S_inverse(1), stable_inverse_k1())


def golden_stable_matrix_k2() -> Report:
    return _compare(
        Report("golden_stable_matrix_k2", {"k": 2}), S_matrix(2), stable_matrix_k2()
    )


def golden_attracting_matrix_k2() -> Report:
    report = Report("golden_attracting_matrix_k2", {"k": 2})
    expected = attracting_matrix_k2()
    for jp in range(3):
        for j in range(3):
            computed = zbar_coeff(2, j, jp).expand()
            if not computed.value_eq(expected.entries[j][jp]):
                report.fail(j=j, j_prime=jp, computed=str(computed))
    solved = solve_change_of_basis(2)
    if solved != [[Fraction(x) for x in row] for row in CHANGE_OF_BASIS_K2]:
        report.fail(
            reason="change-of-basis solve differs from pinned matrix",
            solved=[[str(x) for x in row] for row in solved],
        )
    return report


def golden_spin_one_full() -> Report:
    return _compare(
        Report("golden_spin_one_full", {"ell": 2}),
        assemble_full(2).matrix,
        spin_one_full_matrix(),
    )


GOLDEN_CHECKS = {
    "golden_spin_half_block": golden_spin_half_block,
    "golden_spin_one_block": golden_spin_one_block,
    "golden_stable_matrix_k1": golden_stable_matrix_k1,
    "golden_stable_matrix_k2": golden_stable_matrix_k2,
    "golden_attracting_matrix_k2": golden_attracting_matrix_k2,
    "golden_spin_one_full": golden_spin_one_full,
}


def golden_reports() -> list[Report]:
    return [check() for check in GOLDEN_CHECKS.values()]
