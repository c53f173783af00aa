"""Exact linear solvers over the integers and over GF(2).

Both solvers decide solvability of A x = b and return either a solution or
a certificate of unsolvability.  Solutions are re-checked by substitution
before they are returned.  Certificates are separating functionals y on the
equations, re-checked against the original system:

* over GF(2): y has 0/1 entries, y.A = 0 and y.b = 1 (mod 2);
* over the integers: y has rational entries, y.A is integral while y.b is
  not, which no integer solution could satisfy.

The GF(2) solver packs each row into a single Python integer (coefficient
bits, an affine bit, and row-combination tracking bits).  The integer solver
runs a fraction-free echelon reduction (Hermite form) of the column lattice
with arbitrary-precision arithmetic, so divisibility obstructions are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int]]
Vector = Sequence[int]


class Ring(Enum):
    """Coefficient ring: arbitrary-precision integers, or GF(2)."""

    Z = "z"
    Z2 = "z2"

    def reduce(self, coefficient: int) -> int:
        return coefficient % 2 if self is Ring.Z2 else coefficient

    def describe(self) -> str:
        return "Z/2" if self is Ring.Z2 else "Z"


class VerificationError(RuntimeError):
    """An internally produced witness or certificate failed its re-check."""


@dataclass(frozen=True)
class Certificate:
    """Separating functional proving that A x = b has no solution."""

    ring: Ring
    multipliers: tuple[Fraction, ...] | tuple[int, ...]
    reason: str


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a linear solve: exactly one of solution / certificate."""

    solution: tuple[int, ...] | None
    certificate: Certificate | None

    @property
    def solvable(self) -> bool:
        return self.solution is not None


def mat_vec(matrix: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(row[j] * x[j] for j in range(len(x))) for row in matrix]


def check_solution(matrix: Matrix, rhs: Vector, x: Sequence[int], ring: Ring) -> bool:
    got = mat_vec(matrix, x)
    if ring is Ring.Z2:
        return all((g - r) % 2 == 0 for g, r in zip(got, rhs))
    return all(g == r for g, r in zip(got, rhs))


def check_certificate(matrix: Matrix, rhs: Vector, certificate: Certificate) -> bool:
    y = certificate.multipliers
    if len(y) != len(rhs):
        return False
    n = len(matrix[0]) if matrix else 0
    if certificate.ring is Ring.Z2:
        for j in range(n):
            if sum(y[i] * matrix[i][j] for i in range(len(y))) % 2 != 0:
                return False
        return sum(y[i] * rhs[i] for i in range(len(y))) % 2 == 1
    combo = [sum(Fraction(y[i]) * matrix[i][j] for i in range(len(y))) for j in range(n)]
    if any(c.denominator != 1 for c in combo):
        return False
    return sum(Fraction(y[i]) * rhs[i] for i in range(len(y))).denominator != 1


def solve_linear(
    matrix: Matrix, rhs: Vector, ring: Ring, width: int | None = None
) -> SolveResult:
    """Decide A x = b over the ring; result carries a verified witness or
    a verified certificate of unsolvability."""
    m = len(matrix)
    if len(rhs) != m:
        raise ValueError(f"matrix has {m} rows but right-hand side has {len(rhs)}")
    if m:
        n = len(matrix[0])
        if any(len(row) != n for row in matrix):
            raise ValueError("ragged matrix")
        if width is not None and width != n:
            raise ValueError(f"declared width {width} != row length {n}")
    else:
        n = width if width is not None else 0

    if ring is Ring.Z2:
        result = _solve_gf2(matrix, rhs, n)
    else:
        result = _solve_integers(matrix, rhs, n)

    if result.solution is not None:
        if not check_solution(matrix, rhs, result.solution, ring):
            raise VerificationError("solver returned a solution that fails substitution")
    else:
        assert result.certificate is not None
        if not check_certificate(matrix, rhs, result.certificate):
            raise VerificationError("solver returned a certificate that fails re-check")
    return result


# ---------------------------------------------------------------------------
# GF(2), bit-packed


def _lowest_bit(value: int) -> int:
    return (value & -value).bit_length() - 1


def _solve_gf2(matrix: Matrix, rhs: Vector, n: int) -> SolveResult:
    m = len(matrix)
    coeff_mask = (1 << n) - 1
    packed = []
    for i in range(m):
        bits = 0
        for j in range(n):
            if matrix[i][j] & 1:
                bits |= 1 << j
        if rhs[i] & 1:
            bits |= 1 << n
        bits |= 1 << (n + 1 + i)  # tracks which input rows were combined
        packed.append(bits)

    pivot_cols: list[int] = []
    pivot_rows: list[int] = []
    for row in packed:
        cur = row
        for col, prow in zip(pivot_cols, pivot_rows):
            if (cur >> col) & 1:
                cur ^= prow
        if cur & coeff_mask:
            col = _lowest_bit(cur & coeff_mask)
            for k in range(len(pivot_rows)):
                if (pivot_rows[k] >> col) & 1:
                    pivot_rows[k] ^= cur
            slot = 0
            while slot < len(pivot_cols) and pivot_cols[slot] < col:
                slot += 1
            pivot_cols.insert(slot, col)
            pivot_rows.insert(slot, cur)
        elif (cur >> n) & 1:
            multipliers = tuple((cur >> (n + 1 + i)) & 1 for i in range(m))
            return SolveResult(
                None, Certificate(Ring.Z2, multipliers, "inconsistent equation combination")
            )

    solution = [0] * n
    for col, prow in zip(pivot_cols, pivot_rows):
        solution[col] = (prow >> n) & 1  # free columns stay 0
    return SolveResult(tuple(solution), None)


def gf2_rank(matrix: Matrix) -> int:
    """Rank of a matrix over GF(2)."""
    rows = []
    for row in matrix:
        bits = 0
        for j, a in enumerate(row):
            if a & 1:
                bits |= 1 << j
        rows.append(bits)
    pivots: list[int] = []
    rank = 0
    for row in rows:
        cur = row
        for p in pivots:
            low = p & -p
            if cur & low:
                cur ^= p
        if cur:
            pivots.append(cur)
            pivots.sort(key=lambda v: v & -v)
            rank += 1
    return rank


def gf2_nullity(matrix: Matrix, width: int | None = None) -> int:
    n = width if width is not None else (len(matrix[0]) if matrix else 0)
    return n - gf2_rank(matrix)


# ---------------------------------------------------------------------------
# Integers, via Hermite-form reduction of the column lattice


def _axpy(target: list[list[int]], source: list[list[int]], factor: int) -> None:
    for part in (0, 1):
        trow, srow = target[part], source[part]
        for k in range(len(trow)):
            trow[k] += factor * srow[k]


def _negate(row: list[list[int]]) -> None:
    for part in (0, 1):
        row[part][:] = [-v for v in row[part]]


def _solve_integers(matrix: Matrix, rhs: Vector, n: int) -> SolveResult:
    m = len(matrix)
    # Lattice generators: the columns of the matrix, with composition
    # tracking so a reduction of b turns into a solution vector.
    rows: list[list[list[int]]] = [
        [[matrix[i][j] for i in range(m)], [1 if k == j else 0 for k in range(n)]]
        for j in range(n)
    ]

    pivots: list[int] = []
    h = 0
    for col in range(m):
        if not any(rows[r][0][col] for r in range(h, n)):
            continue
        while True:
            candidates = [r for r in range(h, n) if rows[r][0][col] != 0]
            r0 = min(candidates, key=lambda r: (abs(rows[r][0][col]), r))
            if r0 != h:
                rows[h], rows[r0] = rows[r0], rows[h]
            d = rows[h][0][col]
            others = [r for r in range(h + 1, n) if rows[r][0][col] != 0]
            if not others:
                break
            for r in others:
                q = rows[r][0][col] // d
                if q:
                    _axpy(rows[r], rows[h], -q)
            if not any(rows[r][0][col] for r in range(h + 1, n)):
                break
        if rows[h][0][col] < 0:
            _negate(rows[h])
        d = rows[h][0][col]
        for r in range(h):
            q = rows[r][0][col] // d
            if q:
                _axpy(rows[r], rows[h], -q)
        pivots.append(col)
        h += 1

    residual = list(rhs)
    solution = [0] * n
    failure: tuple[str, int, int] | None = None
    for idx, col in enumerate(pivots):
        value = residual[col]
        if value == 0:
            continue
        d = rows[idx][0][col]
        if value % d:
            failure = ("divisibility", idx, col)
            break
        q = value // d
        lattice, tracking = rows[idx]
        for t in range(m):
            residual[t] -= q * lattice[t]
        for t in range(n):
            solution[t] += q * tracking[t]

    if failure is None:
        bad = next((t for t in range(m) if residual[t] != 0), None)
        if bad is None:
            return SolveResult(tuple(solution), None)
        failure = ("outside-span", len([p for p in pivots if p < bad]), bad)

    return SolveResult(None, _integer_certificate(rows, pivots, residual, failure, m))


def _integer_certificate(
    rows: list[list[list[int]]],
    pivots: list[int],
    residual: list[int],
    failure: tuple[str, int, int],
    m: int,
) -> Certificate:
    """Build y with y.A integral and y.b non-integral from the failed
    reduction of b against the echelon lattice basis."""
    kind, idx, col = failure
    rho = residual[col]
    if kind == "divisibility":
        # y supported on pivot columns 0..idx; y.h_l = delta(l, idx).
        k = idx + 1
        target = [Fraction(1 if l == idx else 0) for l in range(k)]
        star = None
    else:
        # b has a nonzero coordinate at a non-pivot column; y gets an extra
        # entry 1/(2 rho) there, cancelled on the first idx lattice rows.
        k = idx
        star = Fraction(1, 2 * rho)
        target = [-star * rows[l][0][col] for l in range(k)]

    # Upper-triangular solve of P y_sub = target with P[l][j] = h_l[p_j].
    y_sub = [Fraction(0)] * k
    for l in range(k - 1, -1, -1):
        acc = target[l]
        for j in range(l + 1, k):
            acc -= Fraction(rows[l][0][pivots[j]]) * y_sub[j]
        y_sub[l] = acc / rows[l][0][pivots[l]]

    y = [Fraction(0)] * m
    for j in range(k):
        y[pivots[j]] = y_sub[j]
    if star is not None:
        y[col] = star
        reason = "right-hand side outside the column span"
    else:
        reason = f"divisibility failure at pivot column {col}"
    return Certificate(Ring.Z, tuple(y), reason)
