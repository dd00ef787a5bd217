"""Determinants, adjoints, Laplace expansion, Cayley-Hamilton, quasi-inverses."""

import itertools
import random

import pytest

from pairlin import (
    CapExceeded,
    adjoint,
    cayley_hamilton_check,
    det_doubled,
    identity,
    is_singular,
    krasner_det_contains_zero,
    laplace_expand,
    make_algebra,
    mat_mul,
    matrix,
    permanent,
    quasi_identity_check,
    quasi_inverse,
    st_tan,
)
from pairlin.matrices import det_signed, project_matrix
from pairlin.suites import clipped_counting_matrix, rand_supertropical_matrix

sign = make_algebra("sign")
st = make_algebra("supertropical")


def sgn(s):
    return sign.parse_literal(s)


def sign_mat(rows):
    return matrix(sign, [[sgn(x) for x in r] for r in rows])


# Independent oracle: raw dict arithmetic for the sign semiring, used to
# cross-check the library's track expansion on the fixtures.
_ADD = {}
_MUL = {}
for x in ("0", "1", "-1", "inf"):
    for y in ("0", "1", "-1", "inf"):
        if x == "0":
            _ADD[x, y] = y
        elif y == "0":
            _ADD[x, y] = x
        elif x == "inf" or y == "inf" or x != y:
            _ADD[x, y] = "inf"
        else:
            _ADD[x, y] = x
        if x == "0" or y == "0":
            _MUL[x, y] = "0"
        elif x == "inf" or y == "inf":
            _MUL[x, y] = "inf"
        else:
            _MUL[x, y] = str(int(x) * int(y))


def oracle_sign_tracks(rows):
    n = len(rows)
    plus, minus = "0", "0"
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        t = "1"
        for c in range(n):
            t = _MUL[t, rows[perm[c]][c]]
        if inv % 2:
            minus = _ADD[minus, t]
        else:
            plus = _ADD[plus, t]
    return plus, minus


class TestDetDoubled:
    def test_sign_comp_fixtures(self):
        # the two 3x3 minors singled out by the counterexample analysis
        for rows in (
            [["1", "1", "-1"], ["1", "-1", "1"], ["-1", "1", "1"]],
            [["1", "1", "1"], ["1", "-1", "1"], ["-1", "1", "1"]],
        ):
            a = sign_mat(rows)
            d = det_doubled(a)
            want = oracle_sign_tracks(rows)
            assert (d.det_plus.payload, d.det_minus.payload) == want
            assert d.total() == sgn("inf")
            assert is_singular(a)

    def test_identity_det(self):
        for alg in (sign, st, make_algebra("doubled:boolean")):
            d = det_doubled(identity(alg, 2))
            assert d.det_plus == alg.one and d.det_minus == alg.zero
            assert not is_singular(identity(alg, 2))

    def test_supertropical_2x2(self):
        a = matrix(st, [[st_tan(2), st_tan(0)], [st_tan(1), st_tan(3)]])
        d = det_doubled(a)
        assert d.det_plus == st_tan(5) and d.det_minus == st_tan(1)
        assert not is_singular(a)
        assert permanent(a) == st_tan(5)

    def test_1x1_minus_track_empty(self):
        a = matrix(st, [[st_tan(4)]])
        d = det_doubled(a)
        assert d.det_minus == st.zero

    def test_transpose_invariance(self):
        rng = random.Random(0)
        for _ in range(50):
            a = rand_supertropical_matrix(rng, 3, tangible=False)
            d, dt = det_doubled(a), det_doubled(a.transpose())
            assert (d.det_plus, d.det_minus) == (dt.det_plus, dt.det_minus)

    def test_row_sum_singularity(self):
        # one row equal to the sum of the others forces singularity
        rng = random.Random(1)
        for _ in range(50):
            a = rand_supertropical_matrix(rng, 3)
            rows = list(a.entries)
            rows[2] = tuple(
                st.add(rows[0][j], rows[1][j]) for j in range(3)
            )
            assert is_singular(matrix(st, rows))

    def test_det_product_balances(self):
        # det(AB) balances det(A) det(B) componentwise in the doubled pair
        from pairlin.instances import make_doubled
        from pairlin.core import El

        rng = random.Random(2)
        dst = make_doubled(st)
        for _ in range(50):
            a = rand_supertropical_matrix(rng, 3)
            b = rand_supertropical_matrix(rng, 3)
            dab = det_doubled(mat_mul(a, b)).as_doubled_element()
            da = det_doubled(a).as_doubled_element()
            dbb = det_doubled(b).as_doubled_element()
            prod = dst.mul(da, dbb)
            p, n = prod.payload
            q, m = dab.payload
            # X nabla Y in the doubled pair via the switch shortcut
            diff = dst.add(dab, El(dst.id, (n, p)))
            assert dst.is_null(diff)

    def test_cap_override(self, monkeypatch):
        monkeypatch.setenv("PAIRLIN_CAP_N", "2")
        a = matrix(st, [[st_tan(0)] * 3 for _ in range(3)])
        with pytest.raises(CapExceeded):
            det_doubled(a)

    def test_clipped_counting_permanent_null(self):
        a = clipped_counting_matrix()
        assert a.alg.is_null(permanent(a))

    def test_doubled_embedding_recovers_track_split(self):
        # switch-negation determinant of the embedded matrix = (det+, det-)
        from pairlin.instances import make_doubled
        from pairlin.matrices import embed_matrix

        rng = random.Random(8)
        dst = make_doubled(st)
        for _ in range(30):
            a = rand_supertropical_matrix(rng, 3)
            d = det_doubled(a)
            emb = det_signed(embed_matrix(dst, a))
            assert emb.payload == (d.det_plus, d.det_minus)


class TestAdjointAndLaplace:
    def test_supertropical_adjoint_fixture(self):
        a = matrix(st, [[st_tan(2), st_tan(0)], [st_tan(1), st_tan(3)]])
        adj = adjoint(a)
        dalg = adj.alg
        z = st.zero
        want = [
            [(st_tan(3), z), (z, st_tan(0))],
            [(z, st_tan(1)), (st_tan(2), z)],
        ]
        for i in range(2):
            for j in range(2):
                assert adj[i, j].payload == want[i][j]

    def test_identity_adjoint(self):
        adj = adjoint(identity(sign, 3))
        proj = project_matrix(adj.alg, adj)
        assert proj.entries == identity(sign, 3).entries

    def test_sign_all_ones_adjoint(self):
        a = sign_mat([["1", "1"], ["1", "1"]])
        adj = adjoint(a)
        z, o = sign.zero, sgn("1")
        assert adj[0, 0].payload == (o, z)
        assert adj[0, 1].payload == (z, o)
        assert adj[1, 0].payload == (z, o)
        assert adj[1, 1].payload == (o, z)

    def test_single_row_laplace_matches_det(self):
        rng = random.Random(3)
        for _ in range(100):
            a = rand_supertropical_matrix(rng, 4, tangible=False)
            d = det_doubled(a)
            for i in range(4):
                l = laplace_expand(a, (i,))
                assert (l.det_plus, l.det_minus) == (d.det_plus, d.det_minus)

    def test_two_row_laplace_matches_det(self):
        rng = random.Random(4)
        for _ in range(100):
            a = rand_supertropical_matrix(rng, 4, tangible=False)
            d = det_doubled(a)
            for rows in itertools.combinations(range(4), 2):
                l = laplace_expand(a, rows)
                assert (l.det_plus, l.det_minus) == (d.det_plus, d.det_minus)

    def test_adjoint_balances_det_times_identity(self):
        # |A| I nabla A adj(A), entrywise in the doubled pair
        from pairlin.instances import make_doubled
        from pairlin.matrices import embed_matrix
        from pairlin.core import El

        rng = random.Random(5)
        dst = make_doubled(st)
        for _ in range(25):
            a = rand_supertropical_matrix(rng, 3)
            adj = adjoint(a)
            prod = mat_mul(embed_matrix(dst, a), adj)
            d = det_doubled(a).as_doubled_element()
            ident = identity(dst, 3)
            for i in range(3):
                for j in range(3):
                    lhs = dst.mul(d, ident[i, j])
                    p, n = prod[i, j].payload
                    diff = dst.add(lhs, El(dst.id, (n, p)))
                    assert dst.is_null(diff)


class TestCayleyHamilton:
    def test_1x1(self):
        for alg, e in ((sign, sgn("-1")), (st, st_tan(5))):
            assert cayley_hamilton_check(matrix(alg, [[e]]))

    def test_sign_sample(self):
        rng = random.Random(6)
        for _ in range(100):
            a = sign_mat(
                [[rng.choice(("1", "-1", "0", "inf")) for _ in range(3)] for _ in range(3)]
            )
            assert cayley_hamilton_check(a)

    def test_supertropical_sample(self):
        rng = random.Random(7)
        for _ in range(100):
            a = rand_supertropical_matrix(rng, 3, tangible=False)
            assert cayley_hamilton_check(a)

    def test_cap(self):
        a = identity(sign, 4)
        with pytest.raises(CapExceeded):
            cayley_hamilton_check(a, cap=3)


class TestQuasi:
    def test_identity_is_quasi_identity(self):
        assert quasi_identity_check(identity(sign, 3))

    def test_superboolean_example(self):
        sb = make_algebra("superboolean")
        l = sb.parse_literal
        m = matrix(sb, [[l("1"), l("e")], [l("0"), l("1")]])
        assert quasi_identity_check(m)

    def test_tangible_off_diagonal_rejected(self):
        m = sign_mat([["1", "1"], ["0", "1"]])
        assert not quasi_identity_check(m)

    def test_supertropical_quasi_inverse(self):
        a = matrix(st, [[st_tan(2), st_tan(0)], [st_tan(1), st_tan(3)]])
        out = quasi_inverse(a)
        assert out.verified
        want = [[st_tan(-2), st_tan(-5)], [st_tan(-4), st_tan(-3)]]
        assert [list(r) for r in out.a_prime.entries] == want
        left = out.left_identity
        assert left[0, 0] == st.one and left[1, 1] == st.one
        assert st.is_null(left[0, 1]) and st.is_null(left[1, 0])

    def test_sign_generalized_permutation(self):
        a = sign_mat([["-1", "0"], ["0", "1"]])
        out = quasi_inverse(a)
        assert out.verified
        assert [list(r) for r in out.a_prime.entries] == [
            [sgn("-1"), sgn("0")],
            [sgn("0"), sgn("1")],
        ]

    def test_identity_quasi_inverse(self):
        out = quasi_inverse(identity(st, 3))
        assert out.verified
        assert out.a_prime.entries == identity(st, 3).entries
        assert out.a_tilde.entries == identity(st, 3).entries

    def test_singular_input_rejected(self):
        from pairlin.matrices import SingularInput

        a = matrix(st, [[st_tan(0), st_tan(0)], [st_tan(0), st_tan(0)]])
        with pytest.raises(SingularInput):
            quasi_inverse(a)


class TestKrasnerDet:
    def test_all_ones_coset_matrix(self):
        alg = make_algebra("krasner:5:4")
        c1 = alg.parse_literal("c1")
        a = matrix(alg, [[c1, c1], [c1, c1]])
        assert krasner_det_contains_zero(a)

    def test_identity_cosets(self):
        alg = make_algebra("krasner:5:4")
        a = identity(alg, 2)
        assert not krasner_det_contains_zero(a)

    def test_agrees_with_singularity(self):
        alg = make_algebra("krasner:5:4")
        t0 = (alg.zero,) + alg.tangibles
        for quad in itertools.product(t0, repeat=4):
            a = matrix(alg, [quad[0:2], quad[2:4]])
            assert krasner_det_contains_zero(a) == is_singular(a)

    def test_cap(self):
        alg = make_algebra("krasner:5:4")
        a = identity(alg, 5)
        with pytest.raises(CapExceeded):
            krasner_det_contains_zero(a, cap=4)
