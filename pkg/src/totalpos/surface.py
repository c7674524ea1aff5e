"""Extended polynomial families and their null-sum basis.

Arithmetic happens in Q(i, sigma) with i^2 = -1 and sigma^2 = disc for a
nonnegative integer disc; scalars are quadruples p + q*i + r*sigma +
s*i*sigma.  When disc is a perfect square, sigma is substituted by its
integer value at construction, so the sigma components of every scalar
collapse to zero and the representation stays a field in all cases.

The family here extends the three-block family by parameter pairs: each
extra pair (a, b) of distinct rationals contributes the m polynomials
(z-a)^(m-i) (z-b)^(i-1).  A deterministic search finds pairs keeping the
whole family in general position, and the null-sum basis expresses every
family member as an exact linear combination of m fixed quadratic-field
polynomials whose squares sum to zero.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import SearchExhaustedError
from .families import coefficient_matrix, family_polys
from .matrices import ExactMatrix, GeneralPositionReport, determinant, maximal_minor_scan
from .poly import Polynomial
from .scalars import Rational, format_rational

__all__ = [
    "ExtScalar",
    "ext_rational",
    "ext_i",
    "ext_sigma",
    "ExtPolynomial",
    "weierstrass_h",
    "FamilyConstants",
    "constants_from_extras",
    "extended_family",
    "verify_extended_general_position",
    "SearchResult",
    "search_constants",
    "wronskian",
    "WeierstrassData",
    "hyperplane_coefficients",
]


def _square_root_if_square(disc: int) -> Optional[int]:
    if disc < 0:
        return None
    root = math.isqrt(disc)
    return root if root * root == disc else None


@dataclass(frozen=True)
class ExtScalar:
    """p + q*i + r*sigma + s*i*sigma with sigma^2 = disc >= 0."""

    re: Fraction
    im: Fraction
    sre: Fraction
    sim: Fraction
    disc: int

    def __post_init__(self):
        if isinstance(self.disc, bool) or not isinstance(self.disc, int) or self.disc < 0:
            raise ValueError("disc must be a nonnegative integer")
        re, im = Fraction(self.re), Fraction(self.im)
        sre, sim = Fraction(self.sre), Fraction(self.sim)
        root = _square_root_if_square(self.disc)
        if root is not None and (sre or sim):
            re, im, sre, sim = re + sre * root, im + sim * root, Fraction(0), Fraction(0)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "sre", sre)
        object.__setattr__(self, "sim", sim)

    def _check(self, other: "ExtScalar") -> None:
        if self.disc != other.disc:
            raise ValueError("scalars live in different extension fields")

    @property
    def is_zero(self) -> bool:
        return not (self.re or self.im or self.sre or self.sim)

    @property
    def is_rational(self) -> bool:
        return not (self.im or self.sre or self.sim)

    def __add__(self, other: "ExtScalar") -> "ExtScalar":
        self._check(other)
        return ExtScalar(
            self.re + other.re,
            self.im + other.im,
            self.sre + other.sre,
            self.sim + other.sim,
            self.disc,
        )

    def __neg__(self) -> "ExtScalar":
        return ExtScalar(-self.re, -self.im, -self.sre, -self.sim, self.disc)

    def __sub__(self, other: "ExtScalar") -> "ExtScalar":
        return self + (-other)

    def __mul__(self, other: "ExtScalar") -> "ExtScalar":
        self._check(other)
        # (x1 + y1*sigma)(x2 + y2*sigma) = (x1x2 + disc*y1y2) + (x1y2 + y1x2)*sigma
        # with x, y complex: (a+bi)(c+di) = (ac - bd) + (ad + bc)i.
        a, b, c, d = self.re, self.im, other.re, other.im
        p, q, r, s = self.sre, self.sim, other.sre, other.sim
        disc = self.disc
        re = a * c - b * d + disc * (p * r - q * s)
        im = a * d + b * c + disc * (p * s + q * r)
        sre = a * r - b * s + p * c - q * d
        sim = a * s + b * r + p * d + q * c
        return ExtScalar(re, im, sre, sim, disc)

    def _inverse(self) -> "ExtScalar":
        if self.is_zero:
            raise ZeroDivisionError("division by zero extension-field scalar")
        # 1/(x + y*sigma) = (x - y*sigma) / (x^2 - disc*y^2); the complex
        # denominator is nonzero because disc >= 0 is a non-square here
        # (square disc already collapsed y to 0 at construction).
        a, b = self.re, self.im
        p, q = self.sre, self.sim
        disc = self.disc
        den_re = a * a - b * b - disc * (p * p - q * q)
        den_im = 2 * (a * b - disc * p * q)
        norm = den_re * den_re + den_im * den_im
        inv_re, inv_im = den_re / norm, -den_im / norm
        conj = ExtScalar(a, b, -p, -q, disc)
        return conj * ExtScalar(inv_re, inv_im, 0, 0, disc)

    def __truediv__(self, other: "ExtScalar") -> "ExtScalar":
        self._check(other)
        return self * other._inverse()

    def to_quadruple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.re, self.im, self.sre, self.sim)

    def to_json_list(self) -> list[str]:
        return [format_rational(x) for x in self.to_quadruple()]

    def __repr__(self):
        return (
            f"ExtScalar({self.re}, {self.im}, {self.sre}, {self.sim}, "
            f"disc={self.disc})"
        )


def ext_rational(x: Rational | int, disc: int) -> ExtScalar:
    return ExtScalar(Fraction(x), Fraction(0), Fraction(0), Fraction(0), disc)


def ext_i(disc: int) -> ExtScalar:
    return ExtScalar(Fraction(0), Fraction(1), Fraction(0), Fraction(0), disc)


def ext_sigma(disc: int) -> ExtScalar:
    return ExtScalar(Fraction(0), Fraction(0), Fraction(1), Fraction(0), disc)


@dataclass(frozen=True)
class ExtPolynomial:
    """Polynomial with ExtScalar coefficients, ascending powers, trimmed."""

    disc: int
    coeffs: tuple[ExtScalar, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        for c in coeffs:
            if c.disc != self.disc:
                raise ValueError("coefficient from a different extension field")
        while coeffs and coeffs[-1].is_zero:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, disc: int) -> "ExtPolynomial":
        return cls(disc, ())

    @classmethod
    def from_rational(cls, poly: Polynomial, disc: int) -> "ExtPolynomial":
        return cls(disc, tuple(ext_rational(c, disc) for c in poly.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power: int) -> ExtScalar:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return ext_rational(0, self.disc)

    def _check(self, other: "ExtPolynomial") -> None:
        if self.disc != other.disc:
            raise ValueError("polynomials live in different extension fields")

    def __add__(self, other: "ExtPolynomial") -> "ExtPolynomial":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ExtPolynomial(
            self.disc,
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(n)),
        )

    def __neg__(self) -> "ExtPolynomial":
        return ExtPolynomial(self.disc, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ExtPolynomial") -> "ExtPolynomial":
        return self + (-other)

    def __mul__(self, other: "ExtPolynomial") -> "ExtPolynomial":
        self._check(other)
        if self.is_zero or other.is_zero:
            return ExtPolynomial.zero(self.disc)
        zero = ext_rational(0, self.disc)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ExtPolynomial(self.disc, tuple(out))

    def scale(self, factor: ExtScalar) -> "ExtPolynomial":
        if factor.disc != self.disc:
            raise ValueError("scale factor from a different extension field")
        return ExtPolynomial(self.disc, tuple(c * factor for c in self.coeffs))

    def derivative(self, order: int = 1) -> "ExtPolynomial":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        p = self
        for _ in range(order):
            p = ExtPolynomial(
                self.disc,
                tuple(
                    c * ext_rational(k, self.disc)
                    for k, c in enumerate(p.coeffs)
                )[1:],
            )
        return p

    def eval_at(self, point: Rational | int | ExtScalar) -> ExtScalar:
        acc = ext_rational(0, self.disc)
        if isinstance(point, ExtScalar):
            if point.disc != self.disc:
                raise ValueError("evaluation point lives in a different extension")
            x = point
        else:
            x = ext_rational(point, self.disc)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def weierstrass_h(m: int) -> list[ExtPolynomial]:
    """The m quadratic-field polynomials whose squares sum to zero and
    which form a basis of the degree <= m-1 polynomials.

    With t = m/2 and disc = t-1: entries 2l+1 and 2l+2 are
    z^l + z^(2t-l-1) and i(z^l - z^(2t-l-1)) for 0 <= l <= t-2; the last
    two are i*sigma*(z^(t-1) + z^t) and sigma*(z^(t-1) - z^t).  For m = 2
    every sigma factor vanishes, so the construction is rejected.
    """
    if m % 2 or m < 2:
        raise ValueError("m must be an even integer >= 2")
    if m == 2:
        raise ValueError(
            "m = 2 degenerates: the sigma-weighted entries vanish identically"
        )
    t = m // 2
    disc = t - 1
    one = ext_rational(1, disc)
    iu = ext_i(disc)
    sigma = ext_sigma(disc)

    def mono(power: int, coeff: ExtScalar) -> ExtPolynomial:
        zero = ext_rational(0, disc)
        return ExtPolynomial(disc, (zero,) * power + (coeff,))

    hs = []
    for l in range(t - 1):
        low, high = mono(l, one), mono(2 * t - l - 1, one)
        hs.append(low + high)
        hs.append((low - high).scale(iu))
    pair_sum = mono(t - 1, one) + mono(t, one)
    pair_diff = mono(t - 1, one) - mono(t, one)
    hs.append(pair_sum.scale(iu * sigma))
    hs.append(pair_diff.scale(sigma))
    return hs


@dataclass(frozen=True)
class FamilyConstants:
    """Parameter pairs (a_j, b_j), j = 1..t; the first pair is fixed at
    (0, 1) and all 2t values must be pairwise distinct."""

    pairs: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pairs = tuple(
            (Fraction(a), Fraction(b)) for a, b in self.pairs
        )
        if not pairs:
            raise ValueError("at least the fixed pair (0, 1) is required")
        if pairs[0] != (Fraction(0), Fraction(1)):
            raise ValueError("the first pair is fixed at (0, 1)")
        values = [v for pair in pairs for v in pair]
        if len(set(values)) != len(values):
            raise ValueError("family constants must be pairwise distinct")
        object.__setattr__(self, "pairs", pairs)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(v for pair in self.pairs for v in pair)


def constants_from_extras(
    extras: Iterable[tuple[Rational, Rational]],
) -> FamilyConstants:
    pairs = [(Fraction(0), Fraction(1))]
    pairs.extend((Fraction(a), Fraction(b)) for a, b in extras)
    return FamilyConstants(tuple(pairs))


def extended_family(m: int, constants: FamilyConstants) -> list[Polynomial]:
    """The 3t base polynomials followed by, for each extra pair (a, b),
    the m polynomials (z-a)^(m-i) (z-b)^(i-1), i = 1..m; the total is
    m(m+1)/2 polynomials of degree <= m-1.
    """
    t = m // 2
    if len(constants.pairs) != t:
        raise ValueError(f"need exactly {t} constant pairs for m = {m}")
    polys = list(family_polys(m))
    for a, b in constants.pairs[1:]:
        for i in range(1, m + 1):
            polys.append(
                Polynomial.linear_power(a, m - i) * Polynomial.linear_power(b, i - 1)
            )
    return polys


def verify_extended_general_position(
    m: int,
    constants: FamilyConstants,
    mode: str = "exhaustive",
    *,
    seed: Optional[int] = None,
    sample_count: Optional[int] = None,
    threads: Optional[int] = None,
    exhaustive_limit: int = 10**7,
) -> GeneralPositionReport:
    """Scan every m-subset of the extended family's coefficient matrix."""
    matrix = coefficient_matrix(extended_family(m, constants), m)
    return maximal_minor_scan(
        matrix,
        mode,
        seed=seed,
        sample_count=sample_count,
        threads=threads,
        exhaustive_limit=exhaustive_limit,
    )


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a constants search: the accepted pairs, the number of
    candidate pairs examined, and every rejected candidate with the
    stage (pair index j) and reason."""

    constants: FamilyConstants
    attempts: int
    rejected: tuple[tuple[int, tuple[Fraction, Fraction], str], ...]


def _candidate_values(bound: int, seed: int, retry_limit: int) -> Iterable[Fraction]:
    """Small integers ordered by magnitude, then seeded random rationals
    with numerator and denominator bounded."""
    for a in range(1, bound + 1):
        yield Fraction(-a)
        yield Fraction(a)
    rng = random.Random(seed)
    for _ in range(retry_limit):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        yield Fraction(num, den)


def search_constants(
    m: int,
    bound: int = 10,
    seed: int = 0,
    *,
    retry_limit: int = 512,
    candidates: Optional[Sequence[tuple[Rational, Rational]]] = None,
    threads: Optional[int] = None,
    exhaustive_limit: int = 10**7,
    sample_count: int = 10**5,
) -> SearchResult:
    """Find constant pairs keeping the extended family in general position.

    Pairs are fixed one stage at a time (pair j before pair j+1), each
    stage scanning all m-subsets of the family built so far; scans fall
    back to seeded sampling when the subset count exceeds the exhaustive
    limit.  Candidates come from `candidates` first (useful to force or
    to test specific pairs), then ordered small integers, then seeded
    random rationals, so the result is reproducible from (bound, seed).
    Exhausting the retry limit raises SearchExhaustedError carrying the
    partial result.
    """
    if m % 2 or m < 4:
        raise ValueError("m must be an even integer >= 4")
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    t = m // 2
    fixed: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(1))]
    attempts = 0
    rejected: list[tuple[int, tuple[Fraction, Fraction], str]] = []

    def stage_candidates() -> Iterable[tuple[Fraction, Fraction]]:
        if candidates is not None:
            for a, b in candidates:
                yield (Fraction(a), Fraction(b))
        # Pair values in order of the larger index so small combinations
        # come first; plain permutations() would spend the whole retry
        # budget on pairs sharing the first value.
        seen: list[Fraction] = []
        for v in _candidate_values(bound, seed, retry_limit):
            if v in seen:
                continue
            for u in seen:
                yield (u, v)
                yield (v, u)
            seen.append(v)

    for j in range(2, t + 1):
        found = None
        for a, b in stage_candidates():
            attempts += 1
            if attempts > retry_limit:
                raise SearchExhaustedError(
                    f"no passing constants within {retry_limit} candidates",
                    partial=SearchResult(
                        constants=FamilyConstants(tuple(fixed)),
                        attempts=attempts - 1,
                        rejected=tuple(rejected),
                    ),
                )
            used = {v for pair in fixed for v in pair}
            if a == b or a in used or b in used:
                rejected.append((j, (a, b), "duplicate-constant"))
                continue
            trial = FamilyConstants(tuple(fixed) + ((a, b),))
            # Scan the family truncated to the pairs fixed so far.
            report = _scan_partial(
                m, trial, threads=threads,
                exhaustive_limit=exhaustive_limit,
                seed=seed, sample_count=sample_count,
            )
            if report.ok:
                found = (a, b)
                break
            rejected.append((j, (a, b), "singular-subset"))
        if found is None:
            raise SearchExhaustedError(
                f"no passing constants within {retry_limit} candidates",
                partial=SearchResult(
                    constants=FamilyConstants(tuple(fixed)),
                    attempts=attempts,
                    rejected=tuple(rejected),
                ),
            )
        fixed.append(found)
    return SearchResult(
        constants=FamilyConstants(tuple(fixed)),
        attempts=attempts,
        rejected=tuple(rejected),
    )


def _scan_partial(
    m: int,
    trial: FamilyConstants,
    *,
    threads: Optional[int],
    exhaustive_limit: int,
    seed: int,
    sample_count: int,
) -> GeneralPositionReport:
    polys = list(family_polys(m))
    for a, b in trial.pairs[1:]:
        for i in range(1, m + 1):
            polys.append(
                Polynomial.linear_power(a, m - i) * Polynomial.linear_power(b, i - 1)
            )
    matrix = coefficient_matrix(polys, m)
    total = math.comb(matrix.rows, m)
    if total <= exhaustive_limit:
        return maximal_minor_scan(matrix, "exhaustive", threads=threads, fail_fast=True)
    return maximal_minor_scan(
        matrix,
        "sampled",
        seed=seed,
        sample_count=min(sample_count, total),
        threads=threads,
        fail_fast=True,
    )


def _ext_determinant(rows: list[list[ExtScalar]], disc: int) -> ExtScalar:
    """Exact Gaussian elimination over the quadruple field."""
    n = len(rows)
    mat = [row[:] for row in rows]
    det = ext_rational(1, disc)
    for col in range(n):
        pivot_row = next(
            (r for r in range(col, n) if not mat[r][col].is_zero), None
        )
        if pivot_row is None:
            return ext_rational(0, disc)
        if pivot_row != col:
            mat[col], mat[pivot_row] = mat[pivot_row], mat[col]
            det = -det
        pivot = mat[col][col]
        det = det * pivot
        for r in range(col + 1, n):
            if mat[r][col].is_zero:
                continue
            factor = mat[r][col] / pivot
            mat[r] = [
                mat[r][k] - factor * mat[col][k] for k in range(n)
            ]
    return det


def _ext_inverse(rows: list[list[ExtScalar]], disc: int) -> list[list[ExtScalar]]:
    n = len(rows)
    zero, one = ext_rational(0, disc), ext_rational(1, disc)
    aug = [
        row[:] + [one if i == j else zero for j in range(n)]
        for i, row in enumerate(rows)
    ]
    for col in range(n):
        pivot_row = next(
            (r for r in range(col, n) if not aug[r][col].is_zero), None
        )
        if pivot_row is None:
            raise RuntimeError("internal error: singular basis matrix")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv_p = aug[col][col]._inverse()
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r == col or aug[r][col].is_zero:
                continue
            factor = aug[r][col]
            aug[r] = [aug[r][k] - factor * aug[col][k] for k in range(2 * n)]
    return [row[n:] for row in aug]


PolyLike = Union[Polynomial, ExtPolynomial]


def wronskian(polys: Sequence[PolyLike], point: Rational | int):
    """Determinant of the derivative matrix (row v = v-th derivatives)
    evaluated at the point: Fraction for rational inputs, ExtScalar when
    any input carries extension-field coefficients."""
    if not polys:
        raise ValueError("wronskian needs at least one polynomial")
    if all(isinstance(p, Polynomial) for p in polys):
        n = len(polys)
        rows = [
            [p.derivative(v).eval_at(Fraction(point)) for p in polys]
            for v in range(n)
        ]
        return determinant(ExactMatrix.from_rows(rows))
    discs = {p.disc for p in polys if isinstance(p, ExtPolynomial)}
    if len(discs) != 1:
        raise ValueError("polynomials live in different extension fields")
    disc = discs.pop()
    lifted = [
        p if isinstance(p, ExtPolynomial) else ExtPolynomial.from_rational(p, disc)
        for p in polys
    ]
    n = len(lifted)
    rows = [
        [p.derivative(v).eval_at(point) for p in lifted] for v in range(n)
    ]
    return _ext_determinant(rows, disc)


@dataclass(frozen=True)
class WeierstrassData:
    """The null-sum basis h, the hyperplane coefficient rows c expressing
    each family polynomial in that basis, and the parameter values (the
    poles of the associated height differential)."""

    m: int
    constants: FamilyConstants
    h: tuple[ExtPolynomial, ...]
    c: tuple[tuple[ExtScalar, ...], ...]
    psi_roots: tuple[Fraction, ...]

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "constants": [
                [format_rational(a), format_rational(b)]
                for (a, b) in self.constants.pairs
            ],
            "h": [
                [coeff.to_json_list() for coeff in poly.coeffs] for poly in self.h
            ],
            "c": [[x.to_json_list() for x in row] for row in self.c],
            "psi_roots": [format_rational(x) for x in self.psi_roots],
        }


def hyperplane_coefficients(m: int, constants: FamilyConstants) -> WeierstrassData:
    """Express every extended-family polynomial exactly in the null-sum
    basis: row i solves sum_j c[i][j] * h[j] = f[i].  The h basis matrix
    is always invertible for even m >= 4."""
    hs = weierstrass_h(m)
    disc = hs[0].disc
    basis_rows = [
        [h.coefficient(k) for k in range(m)] for h in hs
    ]  # row j = coefficients of h_j
    inv = _ext_inverse(basis_rows, disc)  # column view: solves x * basis = target
    fs = extended_family(m, constants)
    zero = ext_rational(0, disc)
    c_rows = []
    for f in fs:
        target = [ext_rational(f.coefficient(k), disc) for k in range(m)]
        row = []
        for j in range(m):
            acc = zero
            for k in range(m):
                acc = acc + target[k] * inv[k][j]
            row.append(acc)
        c_rows.append(tuple(row))
    return WeierstrassData(
        m=m,
        constants=constants,
        h=tuple(hs),
        c=tuple(c_rows),
        psi_roots=constants.values,
    )
