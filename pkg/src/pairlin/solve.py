"""Cramer's rule with balance verification, and the Jacobi iteration with
modulus-based convergence."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .core import El, PairError, balances
from .instances import embed_doubled, make_doubled, project_doubled
from .matrices import (
    DimensionMismatch,
    CapExceeded,
    Matrix,
    _perms,
    adjoint,
    det_doubled,
    det_cap,
    embed_matrix,
    mat_vec,
)


class NotDominantDiagonal(PairError):
    pass


class NonInvertibleDiagonal(PairError):
    pass


class NoConvergence(PairError):
    pass


class NoModulus(PairError):
    pass


@dataclass
class CramerResult:
    w: tuple  # vector over doubled(alg): adjoint(A) . v
    x: Optional[tuple]  # tangible solution when available
    balance_verified: bool
    x_verified: bool = False


def _doubled_balance(dalg, lhs: El, rhs: El) -> bool:
    # switch negation is declared unique on doubled pairs: X nabla Y iff
    # X (-) Y is null there
    p, n = rhs.payload
    return dalg.is_null(dalg.add(lhs, El(dalg.id, (n, p))))


def cramer_solve(a: Matrix, v) -> CramerResult:
    """w = adj(A) v in the doubled pair, with |A| v nabla A w verified
    componentwise; when |A| is tangible invertible and w projects tangibly,
    also the tangible solution x with A x nabla v."""
    if not a.is_square:
        raise DimensionMismatch("cramer needs a square matrix")
    if len(v) != a.rows:
        raise DimensionMismatch("right-hand side length mismatch")
    alg = a.alg
    dalg = make_doubled(alg)
    adj = adjoint(a)
    vhat = tuple(embed_doubled(dalg, e) for e in v)
    w = mat_vec(adj, vhat)
    d = det_doubled(a)
    det_el = El(dalg.id, (d.det_plus, d.det_minus))
    ahat = embed_matrix(dalg, a)
    aw = mat_vec(ahat, w)
    lhs = tuple(dalg.mul(det_el, ve) for ve in vhat)
    balance_verified = all(
        _doubled_balance(dalg, l, r) for l, r in zip(lhs, aw)
    )
    x = None
    x_verified = False
    if alg.negation is not None and alg.tangible_inverse is not None:
        det_base = alg.add(d.det_plus, alg.negation(d.det_minus))
        if alg.is_tangible(det_base):
            w_base = tuple(project_doubled(dalg, we) for we in w)
            if all(alg.is_tangible(e) or e == alg.zero for e in w_base):
                inv = alg.tangible_inverse(det_base)
                x = tuple(alg.mul(inv, e) for e in w_base)
                ax = mat_vec(a, x)
                x_verified = all(
                    balances(alg, l, r) for l, r in zip(ax, v)
                )
    return CramerResult(w, x, balance_verified, x_verified)


def cramer_unique_tangible_solution(a: Matrix, v, x) -> bool:
    """Exhaustive uniqueness check of A y nabla v over tangible-or-zero y.

    Only meant for small finite pairs (n <= 2): enumerates the whole of
    T0^n and counts solutions.
    """
    alg = a.alg
    if alg.tangibles is None or a.rows > 2:
        raise PairError("uniqueness scan needs a finite pair and n <= 2")
    t0 = (alg.zero,) + tuple(alg.tangibles)
    solutions = []
    for y in itertools.product(t0, repeat=a.rows):
        ay = mat_vec(a, y)
        if all(balances(alg, l, r) for l, r in zip(ay, v)):
            solutions.append(y)
    return solutions == [tuple(x)]


@dataclass
class DominantReport:
    tracks: list  # (permutation, modulus value)
    dominant: list  # permutations attaining the maximal modulus
    diagonal_dominant: bool
    two_counterexample: bool
    strictly_nonsingular: bool


def dominant_structure(a: Matrix, cap=None) -> DominantReport:
    """Enumerate all tracks and classify the mu-maximal ones."""
    if not a.is_square:
        raise DimensionMismatch("dominant structure needs a square matrix")
    alg = a.alg
    if alg.modulus is None:
        raise NoModulus(f"{alg.id} has no modulus")
    n = a.rows
    if n > (cap if cap is not None else det_cap()):
        raise CapExceeded(f"track enumeration cap exceeded at n = {n}")
    tracks = []
    for perm, odd in _perms(n):
        val = alg.product(a[perm[c], c] for c in range(n))
        tracks.append((perm, odd, alg.modulus(val), val))
    best = max(t[2] for t in tracks)
    dominant = [t for t in tracks if t[2] == best]
    ident = tuple(range(n))
    diagonal_dominant = any(t[0] == ident for t in dominant)
    two_counter = False
    for (p1, o1, _, v1), (p2, o2, _, v2) in itertools.combinations(dominant, 2):
        if o1 == o2 and alg.is_null(alg.add(v1, v2)):
            two_counter = True
            break
    if len(dominant) == 1:
        strict = True
    else:
        parities = {t[1] for t in dominant}
        total = alg.sum(t[3] for t in dominant)
        strict = len(parities) == 1 and alg.is_tangible(total)
    return DominantReport(
        [(t[0], t[2]) for t in tracks],
        [t[0] for t in dominant],
        diagonal_dominant,
        two_counter,
        strict,
    )


@dataclass
class JacobiState:
    d: Matrix
    n: Matrix
    iterates: list = field(default_factory=list)
    stabilized_at: Optional[int] = None
    x: Optional[tuple] = None
    balance_verified: bool = False
    mu_verified: bool = False


def jacobi_solve(a: Matrix, v, max_iter: Optional[int] = None) -> JacobiState:
    """Jacobi iteration x_{k+1} = lift(D^{-1} (N x_k + v)).

    Requires a modulus, a strictly nonsingular matrix with dominant diagonal,
    invertible tangible diagonal entries, and a registered tangible lift
    realizing modular descent (supertropical: ghosts drop to tangibles of the
    same value).  On stabilization verifies A x nabla v and the mu identity
    mu(x) = mu(|A|)^-1 mu(adj A v).
    """
    if not a.is_square:
        raise DimensionMismatch("jacobi needs a square matrix")
    if len(v) != a.rows:
        raise DimensionMismatch("right-hand side length mismatch")
    alg = a.alg
    if alg.modulus is None:
        raise NoModulus(f"{alg.id} has no modulus")
    if alg.tangible_lift is None:
        raise PairError(f"{alg.id} has no registered tangible lift")
    rep = dominant_structure(a)
    if not rep.diagonal_dominant or not rep.strictly_nonsingular:
        raise NotDominantDiagonal(
            "jacobi needs a strictly nonsingular matrix with dominant diagonal"
        )
    n = a.rows
    if max_iter is None:
        max_iter = 2 * n + 4
    diag = [a[i, i] for i in range(n)]
    if any(not alg.is_tangible(e) for e in diag) or alg.tangible_inverse is None:
        raise NonInvertibleDiagonal("diagonal entries must be tangible invertible")
    dinv = [alg.tangible_inverse(e) for e in diag]
    d_mat = Matrix(
        alg,
        tuple(
            tuple(diag[i] if i == j else alg.zero for j in range(n)) for i in range(n)
        ),
    )
    n_mat = Matrix(
        alg,
        tuple(
            tuple(alg.zero if i == j else a[i, j] for j in range(n)) for i in range(n)
        ),
    )
    state = JacobiState(d_mat, n_mat)
    x = tuple(alg.zero for _ in range(n))
    for k in range(1, max_iter + 1):
        nx = mat_vec(n_mat, x)
        rhs = tuple(alg.add(nx[i], v[i]) for i in range(n))
        nxt = tuple(alg.tangible_lift(alg.mul(dinv[i], rhs[i])) for i in range(n))
        if state.iterates and nxt == state.iterates[-1]:
            state.stabilized_at = k - 1
            break
        state.iterates.append(nxt)
        x = nxt
    if state.stabilized_at is None:
        raise NoConvergence(f"no stabilization within {max_iter} iterations")
    state.x = state.iterates[-1]
    ax = mat_vec(a, state.x)
    state.balance_verified = all(balances(alg, l, r) for l, r in zip(ax, v))
    # mu identity, checked exactly
    d = det_doubled(a)
    det_mu = alg.modulus(alg.add(d.det_plus, d.det_minus))
    dalg = make_doubled(alg)
    adj = adjoint(a)
    vhat = tuple(embed_doubled(dalg, e) for e in v)
    w = mat_vec(adj, vhat)
    ok = True
    for xi, wi in zip(state.x, w):
        p, q = wi.payload
        wmu = max(alg.modulus(p), alg.modulus(q))
        lhs = alg.modulus(xi)
        if wmu.is_bottom:
            ok = ok and lhs.is_bottom
        else:
            ok = ok and (not lhs.is_bottom) and lhs == det_mu.inv().mul(wmu)
    state.mu_verified = ok
    return state
