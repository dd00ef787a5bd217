"""Matrices over a pair: doubled determinants, adjoints, Laplace expansion,
Cayley-Hamilton, quasi-identities and quasi-inverses.

Determinants are direct n!-track expansions split by permutation parity;
semiring pairs lack subtraction, so there is no elimination shortcut, and the
desk-scale caps keep the factorial growth in check.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .core import El, PairAlgebra, PairError, balances
from .instances import embed_doubled, make_doubled, project_doubled


class DimensionMismatch(PairError):
    pass


class CapExceeded(PairError):
    pass


class SingularInput(PairError):
    pass


class NonInvertibleDeterminant(PairError):
    pass


DEFAULT_DET_CAP = 8
CAYLEY_HAMILTON_CAP = 5
KRASNER_CAP = 4


def det_cap():
    return int(os.environ.get("PAIRLIN_CAP_N", DEFAULT_DET_CAP))


@dataclass(frozen=True)
class Matrix:
    alg: PairAlgebra
    entries: tuple

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DimensionMismatch("matrix dimensions must be positive")
        w = len(self.entries[0])
        for row in self.entries:
            if len(row) != w:
                raise DimensionMismatch("ragged rows")
            for e in row:
                self.alg.check(e)

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, rc):
        return self.entries[rc[0]][rc[1]]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return Matrix(self.alg, tuple(zip(*self.entries)))

    def submatrix(self, row_idx, col_idx):
        return Matrix(
            self.alg,
            tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx),
        )

    def minor(self, i, j):
        ri = [r for r in range(self.rows) if r != i]
        ci = [c for c in range(self.cols) if c != j]
        return self.submatrix(ri, ci)

    def is_tangible(self):
        alg = self.alg
        return all(
            alg.is_tangible(e) or e == alg.zero for row in self.entries for e in row
        )


def matrix(alg, rows) -> Matrix:
    return Matrix(alg, tuple(tuple(r) for r in rows))


def identity(alg, n) -> Matrix:
    return Matrix(
        alg,
        tuple(
            tuple(alg.one if i == j else alg.zero for j in range(n)) for i in range(n)
        ),
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    alg = a.alg
    return Matrix(
        alg,
        tuple(
            tuple(
                alg.sum(alg.mul(a[i, k], b[k, j]) for k in range(a.cols))
                for j in range(b.cols)
            )
            for i in range(a.rows)
        ),
    )


def mat_vec(a: Matrix, v) -> tuple:
    if a.cols != len(v):
        raise DimensionMismatch("vector length mismatch")
    alg = a.alg
    return tuple(
        alg.sum(alg.mul(a[i, k], v[k]) for k in range(a.cols)) for i in range(a.rows)
    )


def scalar_mat(alg, c, a: Matrix) -> Matrix:
    return Matrix(alg, tuple(tuple(alg.mul(c, e) for e in row) for row in a.entries))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    alg = a.alg
    return Matrix(
        alg,
        tuple(
            tuple(alg.add(a[i, j], b[i, j]) for j in range(a.cols))
            for i in range(a.rows)
        ),
    )


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return a.entries == b.entries


def embed_matrix(dalg, a: Matrix) -> Matrix:
    return Matrix(dalg, tuple(tuple(embed_doubled(dalg, e) for e in row) for row in a.entries))


def project_matrix(dalg, a: Matrix) -> Matrix:
    return Matrix(
        dalg.base,
        tuple(tuple(project_doubled(dalg, e) for e in row) for row in a.entries),
    )


# ---------------------------------------------------------------------------
# doubled determinants


@dataclass(frozen=True)
class DoubledDet:
    """Ordered pair of the even-track and odd-track sums."""

    alg: PairAlgebra
    det_plus: El
    det_minus: El

    def total(self) -> El:
        """det_plus + det_minus: the permanent."""
        return self.alg.add(self.det_plus, self.det_minus)

    def is_null_total(self) -> bool:
        return self.alg.is_null(self.total())

    def balanced(self) -> bool:
        return balances(self.alg, self.det_plus, self.det_minus)

    def as_doubled_element(self) -> El:
        return El(make_doubled(self.alg).id, (self.det_plus, self.det_minus))


_PERM_CACHE = {}


def _perms(n):
    if n not in _PERM_CACHE:
        ps = []
        for perm in itertools.permutations(range(n)):
            inv = sum(
                1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
            )
            ps.append((perm, inv & 1))
        _PERM_CACHE[n] = tuple(ps)
    return _PERM_CACHE[n]


def det_doubled(a: Matrix, cap=None) -> DoubledDet:
    """Exact parity-split track expansion.

    Permutations are folded in lexicographic order so the result is
    bit-identical however the work is partitioned.
    """
    if not a.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = a.rows
    if n > (cap if cap is not None else det_cap()):
        raise CapExceeded(f"determinant cap exceeded at n = {n}")
    alg = a.alg
    plus = alg.zero
    minus = alg.zero
    for perm, odd in _perms(n):
        track = alg.product(a[perm[c], c] for c in range(n))
        if odd:
            minus = alg.add(minus, track)
        else:
            plus = alg.add(plus, track)
    return DoubledDet(alg, plus, minus)


def permanent(a: Matrix, cap=None) -> El:
    """Sum of all tracks regardless of parity (= det_plus + det_minus)."""
    d = det_doubled(a, cap=cap)
    return d.total()


def is_singular(a: Matrix) -> bool:
    """Singularity per the balancing of the two determinant tracks."""
    d = det_doubled(a)
    return d.balanced()


def det_signed(a: Matrix) -> El:
    """det_plus (-) det_minus via the algebra's own negation map."""
    alg = a.alg
    if alg.negation is None:
        raise PairError(f"{alg.id} has no negation map; use det_doubled")
    d = det_doubled(a)
    return alg.add(d.det_plus, alg.negation(d.det_minus))


# ---------------------------------------------------------------------------
# adjoint and Laplace


def _dd_mul(dalg, x: El, y: El) -> El:
    (p1, n1), (p2, n2) = x.payload, y.payload
    base = dalg.base
    return El(
        dalg.id,
        (
            base.add(base.mul(p1, p2), base.mul(n1, n2)),
            base.add(base.mul(p1, n2), base.mul(n1, p2)),
        ),
    )


def _switch_pow(dalg, x: El, k: int) -> El:
    if k & 1:
        p, n = x.payload
        return El(dalg.id, (n, p))
    return x


def adjoint(a: Matrix, cap=None) -> Matrix:
    """Doubled adjoint: entry (i,j) is the (j,i) minor's doubled determinant,
    switch-adjusted by the parity of i+j."""
    if not a.is_square:
        raise DimensionMismatch("adjoint of a non-square matrix")
    n = a.rows
    dalg = make_doubled(a.alg)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if n == 1:
                dd = DoubledDet(a.alg, a.alg.one, a.alg.zero)
            else:
                dd = det_doubled(a.minor(j, i), cap=cap)
            cof = El(dalg.id, (dd.det_plus, dd.det_minus))
            row.append(_switch_pow(dalg, cof, i + j))
        out.append(tuple(row))
    return Matrix(dalg, tuple(out))


def laplace_expand(a: Matrix, row_set, cap=None) -> DoubledDet:
    """Generalized Laplace expansion along a set of rows.

    Contract: equals det_doubled(a) exactly, as a doubled element.
    """
    if not a.is_square:
        raise DimensionMismatch("laplace expansion of a non-square matrix")
    n = a.rows
    rows = tuple(sorted(row_set))
    if not rows or len(rows) >= n:
        raise DimensionMismatch("row set must be nonempty and proper")
    if n > (cap if cap is not None else det_cap()):
        raise CapExceeded(f"laplace cap exceeded at n = {n}")
    alg = a.alg
    dalg = make_doubled(alg)
    comp_rows = tuple(i for i in range(n) if i not in rows)
    m = len(rows)
    acc = El(dalg.id, (alg.zero, alg.zero))
    for cols in itertools.combinations(range(n), m):
        comp_cols = tuple(j for j in range(n) if j not in cols)
        d1 = det_doubled(a.submatrix(rows, cols), cap=cap)
        d2 = det_doubled(a.submatrix(comp_rows, comp_cols), cap=cap)
        term = _dd_mul(
            dalg,
            El(dalg.id, (d1.det_plus, d1.det_minus)),
            El(dalg.id, (d2.det_plus, d2.det_minus)),
        )
        term = _switch_pow(dalg, term, sum(rows) + sum(cols))
        acc = dalg.add(acc, term)
    p, q = acc.payload
    return DoubledDet(alg, p, q)


# ---------------------------------------------------------------------------
# Cayley-Hamilton


def char_poly_doubled(a: Matrix, cap=None):
    """Characteristic polynomial coefficients of lambda*I (-) A in the doubled
    pair: coefficient of lambda^(n-k) is switch^k of the sum of the k x k
    principal minors' doubled determinants."""
    if not a.is_square:
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    n = a.rows
    alg = a.alg
    dalg = make_doubled(alg)
    coeffs = [El(dalg.id, (alg.one, alg.zero))]
    for k in range(1, n + 1):
        acc = El(dalg.id, (alg.zero, alg.zero))
        for subset in itertools.combinations(range(n), k):
            d = det_doubled(a.submatrix(subset, subset), cap=cap)
            acc = dalg.add(acc, El(dalg.id, (d.det_plus, d.det_minus)))
        coeffs.append(_switch_pow(dalg, acc, k))
    return coeffs


def cayley_hamilton_check(a: Matrix, cap=CAYLEY_HAMILTON_CAP) -> bool:
    """f(A) entrywise null in the doubled pair, for f the characteristic
    polynomial of A."""
    n = a.rows
    if n > cap:
        raise CapExceeded(f"cayley-hamilton cap exceeded at n = {n}")
    alg = a.alg
    dalg = make_doubled(alg)
    coeffs = char_poly_doubled(a)
    ahat = embed_matrix(dalg, a)
    powers = [identity(dalg, n)]
    for _ in range(n):
        powers.append(mat_mul(powers[-1], ahat))
    total = None
    for k, c in enumerate(coeffs):
        term = scalar_mat(dalg, c, powers[n - k])
        total = term if total is None else mat_add(total, term)
    return all(doubled_entry_null(dalg, e) for row in total.entries for e in row)


def doubled_entry_null(dalg, e: El) -> bool:
    """Nullity of a doubled element: components balance in the base pair.

    make_doubled's null predicate already folds the balance rule in, so this
    is a readable alias.
    """
    return dalg.is_null(e)


# ---------------------------------------------------------------------------
# quasi-identities and quasi-inverses


def quasi_identity_check(m: Matrix) -> bool:
    """Diagonal 1, null off-diagonal, and M*M = M entrywise."""
    if not m.is_square:
        raise DimensionMismatch("quasi-identity check needs a square matrix")
    alg = m.alg
    for i in range(m.rows):
        for j in range(m.cols):
            if i == j:
                if m[i, j] != alg.one:
                    return False
            elif not alg.is_null(m[i, j]):
                return False
    return mat_eq(mat_mul(m, m), m)


@dataclass
class QuasiInverse:
    a_prime: Matrix
    a_tilde: Matrix
    left_identity: Matrix
    right_identity: Matrix
    verified: bool


def quasi_inverse(a: Matrix) -> QuasiInverse:
    """A' = |A|^{-1} adj A, projected to the base where a negation map exists,
    together with the quasi-identity verification and A~ = A'AA'."""
    if not a.is_square:
        raise DimensionMismatch("quasi-inverse of a non-square matrix")
    alg = a.alg
    d = det_doubled(a)
    if d.balanced():
        raise SingularInput("matrix is singular")
    adj = adjoint(a)
    if alg.negation is not None:
        dalg = adj.alg
        det = alg.add(d.det_plus, alg.negation(d.det_minus))
        if not alg.is_tangible(det):
            raise NonInvertibleDeterminant(f"determinant {det!r} is not tangible")
        if alg.tangible_inverse is None:
            raise NonInvertibleDeterminant(f"{alg.id} has no tangible inverses")
        inv = alg.tangible_inverse(det)
        a_prime = scalar_mat(alg, inv, project_matrix(dalg, adj))
        work = a
    else:
        dalg = adj.alg
        det = El(dalg.id, (d.det_plus, d.det_minus))
        if not dalg.is_tangible(det):
            raise NonInvertibleDeterminant("doubled determinant is not tangible")
        if dalg.tangible_inverse is None:
            raise NonInvertibleDeterminant(f"{dalg.id} has no tangible inverses")
        inv = dalg.tangible_inverse(det)
        a_prime = scalar_mat(dalg, inv, adj)
        work = embed_matrix(dalg, a)
    left = mat_mul(work, a_prime)
    right = mat_mul(a_prime, work)
    verified = quasi_identity_check(left) and quasi_identity_check(right)
    a_tilde = mat_mul(mat_mul(a_prime, work), a_prime)
    return QuasiInverse(a_prime, a_tilde, left, right, verified)


# ---------------------------------------------------------------------------
# Krasner determinants


def krasner_det_contains_zero(a: Matrix, cap=KRASNER_CAP) -> bool:
    """Whether some choice of coset representatives makes the classical
    field determinant vanish.  Exhaustive over representative choices."""
    alg = a.alg
    if not hasattr(alg, "krasner_field"):
        raise PairError(f"{alg.id} is not a Krasner quotient instance")
    if not a.is_square:
        raise DimensionMismatch("krasner determinant of a non-square matrix")
    n = a.rows
    if n > cap:
        raise CapExceeded(f"krasner enumeration cap exceeded at n = {n}")
    p = alg.krasner_field
    cosets = alg.krasner_cosets
    reps = []
    for row in a.entries:
        rrow = []
        for e in row:
            idx = e.payload.bit_length() - 1
            if e.payload != 1 << idx:
                raise PairError("krasner determinant needs tangible-or-zero entries")
            rrow.append(sorted(cosets[idx]))
        reps.append(rrow)
    for choice in itertools.product(
        *[reps[i][j] for i in range(n) for j in range(n)]
    ):
        grid = [choice[i * n : (i + 1) * n] for i in range(n)]
        det = 0
        for perm, odd in _perms(n):
            term = 1
            for c in range(n):
                term = (term * grid[perm[c]][c]) % p
            det = (det - term if odd else det + term) % p
        if det == 0:
            return True
    return False
