"""Localization expansions of attracting and stable classes at n = 2.

The two families of classes expand over the fixed-point basis with factored
rational-function coefficients (``class_Zbar`` and ``class_S``).  Collecting
the stable-class coefficients columnwise gives the upper triangular change of
basis ``S_matrix``; its inverse has the closed polynomial form ``S_inverse``.
Three verifications are provided:

* ``verify_inverse``  -- S^-1 S is the identity, entrywise and symbolically;
* ``verify_linrel``   -- each stable class is the binomial combination of the
                         attracting classes, and the change of basis between
                         them is re-derived from the vanishing condition at
                         phi = eps = 0 (triangular solve) instead of assumed;
* ``verify_residues`` -- every candidate simple pole of an entry of S^-1 S has
                         vanishing residue and the entry tends to delta_{ij'}
                         at z -> infinity.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactalg import (
    FactoredRat,
    LinForm,
    RatFun,
    factored_sum,
    limit_at_z_infinity,
    ratfun_to_latex,
    ratfun_to_str,
    residue_at,
)
from .report import Report


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def _forms(lo: int, hi: int, make: Callable[[int], LinForm]) -> list[tuple[LinForm, int]]:
    """The factor list [make(r) for r in lo..hi]; empty when hi < lo."""
    return [(make(r), 1) for r in range(lo, hi + 1)]


def _inv(pairs: list[tuple[LinForm, int]]) -> list[tuple[LinForm, int]]:
    return [(f, -e) for f, e in pairs]


# ---------------------------------------------------------------------------
# class expansions
# ---------------------------------------------------------------------------


def zbar_coeff(k: int, j: int, j_prime: int) -> FactoredRat:
    """Coefficient of fixed point j in the closed attracting class of j'."""
    if j > j_prime or j < 0 or j_prime > k:
        return FactoredRat.zero()
    pairs: list[tuple[LinForm, int]] = []
    pairs += _inv(_forms(0, k - j_prime - 1, lambda r: LinForm(1, r, 1)))
    pairs += _inv(_forms(k - 2 * j + 1, k - j, lambda r: LinForm(1, r, 0)))
    pairs += _inv(_forms(2 * j - k + 1, j_prime - k + j, lambda r: LinForm(-1, r, 0)))
    return FactoredRat(binom(j_prime, j), pairs)


def stable_coeff(k: int, j: int, j_prime: int) -> FactoredRat:
    """Coefficient of fixed point j in the stable class of j'; entry (j, j') of S."""
    if j > j_prime or j < 0 or j_prime > k:
        return FactoredRat.zero()
    pairs: list[tuple[LinForm, int]] = []
    pairs += _forms(j, j_prime - 1, lambda r: LinForm(0, r, 1))
    pairs += _inv(_forms(0, k - j - 1, lambda r: LinForm(1, r, 1)))
    pairs += _inv(_forms(k - 2 * j + 1, k - j, lambda r: LinForm(1, r, 0)))
    pairs += _inv(_forms(2 * j - k + 1, j_prime - k + j, lambda r: LinForm(-1, r, 0)))
    return FactoredRat(binom(j_prime, j), pairs)


def stable_coeff_merged(k: int, j: int, j_prime: int) -> FactoredRat:
    """Equivalent form of ``stable_coeff`` with the two z-products merged.

    Negating the running index of the (r*phi - z) product turns it into
    (r*phi + z) factors over the complementary range, at the cost of a sign;
    equality of the two forms is a unit test.
    """
    if j > j_prime or j < 0 or j_prime > k:
        return FactoredRat.zero()
    pairs: list[tuple[LinForm, int]] = []
    pairs += _forms(j, j_prime - 1, lambda r: LinForm(0, r, 1))
    pairs += _inv(_forms(0, k - j - 1, lambda r: LinForm(1, r, 1)))
    pairs += _inv(
        [
            (LinForm(1, r, 0), 1)
            for r in range(k - j - j_prime, k - j + 1)
            if r != k - 2 * j
        ]
    )
    sign = -1 if (j_prime - j) % 2 else 1
    return FactoredRat(sign * binom(j_prime, j), pairs)


def sinv_entry(k: int, i: int, j: int) -> FactoredRat:
    """Entry (i, j) of the closed-form inverse of S; a polynomial."""
    if i > j or i < 0 or j > k:
        return FactoredRat.zero()
    pairs: list[tuple[LinForm, int]] = []
    pairs += _forms(i, j - 1, lambda r: LinForm(0, r, 1))
    pairs += _forms(0, k - j - 1, lambda r: LinForm(1, r, 1))
    pairs += _forms(k + 1 - j - i, k - j, lambda r: LinForm(1, r, 0))
    return FactoredRat(binom(j, i), pairs)


def class_Zbar(k: int, j_prime: int) -> list[FactoredRat]:
    """Expansion of the closed attracting class of j' over fixed points 0..j'."""
    _check_column(k, j_prime)
    return [zbar_coeff(k, j, j_prime) for j in range(j_prime + 1)]


def class_S(k: int, j_prime: int) -> list[FactoredRat]:
    """Expansion of the stable class of j' over fixed points 0..j'."""
    _check_column(k, j_prime)
    return [stable_coeff(k, j, j_prime) for j in range(j_prime + 1)]


def _check_column(k: int, j_prime: int) -> None:
    if not 0 <= j_prime <= k:
        raise ValueError(f"need 0 <= j' <= k, got j'={j_prime}, k={k}")


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class SymMatrix:
    """Dense rectangular matrix of rational functions with index labels."""

    __slots__ = ("entries", "row_labels", "col_labels")

    def __init__(
        self,
        entries: Sequence[Sequence[RatFun]],
        row_labels: Sequence[object] | None = None,
        col_labels: Sequence[object] | None = None,
    ):
        self.entries: tuple[tuple[RatFun, ...], ...] = tuple(tuple(row) for row in entries)
        rows = len(self.entries)
        cols = len(self.entries[0]) if rows else 0
        if any(len(row) != cols for row in self.entries):
            raise ValueError("ragged matrix")
        self.row_labels = tuple(row_labels) if row_labels is not None else tuple(range(rows))
        self.col_labels = tuple(col_labels) if col_labels is not None else tuple(range(cols))
        if len(self.row_labels) != rows or len(self.col_labels) != cols:
            raise ValueError("label count does not match matrix shape")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, rc: tuple[int, int]) -> RatFun:
        return self.entries[rc[0]][rc[1]]

    @classmethod
    def identity(cls, n: int, labels: Sequence[object] | None = None) -> SymMatrix:
        grid = [
            [RatFun.one() if i == j else RatFun.zero() for j in range(n)] for i in range(n)
        ]
        return cls(grid, labels, labels)

    @classmethod
    def from_function(
        cls,
        rows: int,
        cols: int,
        fn: Callable[[int, int], RatFun],
        row_labels: Sequence[object] | None = None,
        col_labels: Sequence[object] | None = None,
    ) -> SymMatrix:
        return cls(
            [[fn(i, j) for j in range(cols)] for i in range(rows)], row_labels, col_labels
        )

    def map_entries(self, fn: Callable[[RatFun], RatFun]) -> SymMatrix:
        return SymMatrix(
            [[fn(e) for e in row] for row in self.entries], self.row_labels, self.col_labels
        )

    def flip_z(self) -> SymMatrix:
        return self.map_entries(lambda e: e.flip_z())

    def mul(self, other: SymMatrix) -> SymMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out: list[list[RatFun]] = []
        for i in range(self.rows):
            row: list[RatFun] = []
            for j in range(other.cols):
                acc = RatFun.zero()
                for m in range(self.cols):
                    a = self.entries[i][m]
                    b = other.entries[m][j]
                    if a.is_zero or b.is_zero:
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SymMatrix(out, self.row_labels, other.col_labels)

    def permute_rows(self, perm: Sequence[int]) -> SymMatrix:
        """Row i of the result is row perm[i] of the input."""
        return SymMatrix(
            [self.entries[p] for p in perm], [self.row_labels[p] for p in perm], self.col_labels
        )

    def value_eq(self, other: SymMatrix) -> bool:
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            a.value_eq(b) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def mismatches(self, other: SymMatrix) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.rows)
            for j in range(self.cols)
            if not self.entries[i][j].value_eq(other.entries[i][j])
        ]

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.entries[i][j].value_eq(1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def to_json(self) -> dict:
        return {
            "shape": [self.rows, self.cols],
            "row_labels": [str(l) for l in self.row_labels],
            "col_labels": [str(l) for l in self.col_labels],
            "entries": [[ratfun_to_str(e) for e in row] for row in self.entries],
        }

    def to_latex(self) -> str:
        body = " \\\\\n".join(
            " & ".join(ratfun_to_latex(e) for e in row) for row in self.entries
        )
        return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"

    def __repr__(self) -> str:
        return f"SymMatrix({self.rows}x{self.cols})"


def S_matrix(k: int) -> SymMatrix:
    """The upper triangular stable-class matrix, (k+1) x (k+1)."""
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    return SymMatrix.from_function(
        k + 1, k + 1, lambda j, jp: stable_coeff(k, j, jp).expand()
    )


def S_inverse(k: int) -> SymMatrix:
    """The closed-form inverse of S_matrix(k); entries are polynomials."""
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    return SymMatrix.from_function(k + 1, k + 1, lambda i, j: sinv_entry(k, i, j).expand())


# ---------------------------------------------------------------------------
# verifications
# ---------------------------------------------------------------------------


def _sinv_s_entry_terms(k: int, i: int, j_prime: int) -> list[FactoredRat]:
    """The factored summands of (S^-1 S)_{i j'}."""
    return [
        sinv_entry(k, i, j) * stable_coeff(k, j, j_prime)
        for j in range(i, j_prime + 1)
    ]


def verify_inverse(k: int) -> Report:
    """Check S_inverse(k) * S_matrix(k) == Id entrywise by value equality."""
    report = Report("inverse", {"k": k})
    product = S_inverse(k).mul(S_matrix(k))
    for i in range(k + 1):
        for j in range(k + 1):
            expected = 1 if i == j else 0
            if not product.entries[i][j].value_eq(expected):
                report.fail(i=i, j_prime=j, entry=ratfun_to_str(product.entries[i][j]))
    return report


def solve_change_of_basis(k: int) -> list[list[Fraction]]:
    """Re-derive the attracting-to-stable change of basis from first principles.

    Column j' is the unique combination of attracting classes 0..j' with top
    coefficient 1 whose off-diagonal fixed-point coefficients vanish at
    phi = eps = 0.  At that specialization every attracting coefficient is a
    rational multiple of z^-k, so the condition is a triangular rational
    linear system solved by back substitution.
    """
    zero_limits = [
        [_phi_eps_zero_value(zbar_coeff(k, j, m)) for m in range(k + 1)]
        for j in range(k + 1)
    ]
    cols: list[list[Fraction]] = []
    for jp in range(k + 1):
        c = [Fraction(0)] * (k + 1)
        c[jp] = Fraction(1)
        for j in range(jp - 1, -1, -1):
            # row j of (Zbar-limit) * c must vanish; Zbar-limit is upper triangular
            # with nonzero diagonal.
            acc = sum((zero_limits[j][m] * c[m] for m in range(j + 1, jp + 1)), Fraction(0))
            c[j] = -acc / zero_limits[j][j]
        cols.append(c)
    return [[cols[jp][j] for jp in range(k + 1)] for j in range(k + 1)]


def _phi_eps_zero_value(f: FactoredRat) -> Fraction:
    """Value of z^k * f at phi = eps = 0, z = 1 (each factor becomes +-z)."""
    if f.is_zero:
        return Fraction(0)
    value = f.scalar
    for form, exp in f.factors:
        if form.c_z == 0:
            raise ValueError(f"factor {form} vanishes at phi = eps = 0")
        value *= Fraction(form.c_z) ** exp
    return value


def verify_linrel(k: int) -> Report:
    """Check the binomial linear relations between stable and attracting classes.

    Also re-derives the change-of-basis matrix by the triangular solve of
    ``solve_change_of_basis`` and requires it to be the binomial matrix.
    """
    report = Report("linrel", {"k": k})
    for jp in range(k + 1):
        stable = class_S(k, jp)
        for j in range(jp + 1):
            combo = factored_sum(
                zbar_coeff(k, j, i).scale(binom(jp, i)) for i in range(j, jp + 1)
            )
            if not combo.value_eq(stable[j].expand()):
                report.fail(j=j, j_prime=jp, lhs=str(stable[j]), rhs=ratfun_to_str(combo))
    solved = solve_change_of_basis(k)
    expected = [[Fraction(binom(jp, j)) for jp in range(k + 1)] for j in range(k + 1)]
    if solved != expected:
        report.fail(
            reason="change-of-basis solve disagrees with binomial matrix",
            solved=[[str(x) for x in row] for row in solved],
        )
    else:
        report.details["change_of_basis"] = [[int(x) for x in row] for row in solved]
    return report


def candidate_poles(terms: Iterable[FactoredRat]) -> list[int]:
    """All integers n with a (z + n*phi) factor in some term's denominator.

    Collected syntactically from the factored form before expansion; complete
    by construction since denominators only ever contain such forms.
    """
    out: set[int] = set()
    for t in terms:
        for form, _ in t.den_items():
            if form.c_z == 1 and form.c_eps == 0:
                out.add(form.c_phi)
    return sorted(out)


def verify_residues(k: int, i: int, j_prime: int) -> Report:
    """Residue and large-z checks for the entry (i, j') of S^-1 S.

    Every candidate simple pole z = -n*phi must have zero residue, and the
    z -> infinity limit must be delta_{i j'} (checked by degree comparison).
    """
    if not 0 <= i <= j_prime <= k:
        raise ValueError(f"need 0 <= i <= j' <= k, got i={i}, j'={j_prime}, k={k}")
    report = Report("residues", {"k": k, "i": i, "j_prime": j_prime})
    terms = _sinv_s_entry_terms(k, i, j_prime)
    entry = factored_sum(terms)
    for n in candidate_poles(terms):
        res = residue_at(entry, n)
        if not res.is_zero:
            report.fail(pole=f"z = {-n}*phi", residue=ratfun_to_str(res))
    limit = limit_at_z_infinity(entry)
    expected = 1 if i == j_prime else 0
    if limit is None or not limit.value_eq(expected):
        report.fail(
            at="z -> infinity",
            expected=expected,
            limit="divergent" if limit is None else ratfun_to_str(limit),
        )
    return report


def verify_residues_all(k: int) -> Report:
    """Residue and large-z checks for every entry (i <= j') of S^-1 S."""
    report = Report("residues_all", {"k": k})
    for j_prime in range(k + 1):
        for i in range(j_prime + 1):
            sub = verify_residues(k, i, j_prime)
            if not sub.passed:
                report.failures.extend(
                    {**w, "i": i, "j_prime": j_prime} for w in sub.failures
                )
                report.passed = False
    return report
