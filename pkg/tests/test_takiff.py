"""Central extensions: bracket rules, odd form, cocycle, dual bases."""

import pytest

from whittak.exactlin import ONE, ZERO, I, Scalar, SparseVector
from whittak.superalg import build_gl, verify_algebra
from whittak.takiff import (
    build_takiff,
    cocycle_alpha_d,
    dual_bases,
    odd_form_prime,
    verify_hat_closure,
    verify_takiff,
)


def unit(alg, label):
    return SparseVector.unit(alg.labels.index(label))


def tak(m, n):
    a, rd = build_gl(m, n)
    return build_takiff(a, rd)


class TestBuild:
    def test_gl11_dimension_and_checks(self):
        t, hat = tak(1, 1)
        assert t.total.dim == 9
        rep = verify_takiff(t)
        assert rep.passed, rep.to_json()
        assert verify_hat_closure(t, hat).passed

    def test_gl10_heisenberg_like(self):
        # one even generator x with (x|x) = 1: [x.th, x.th] = z
        t, _ = tak(1, 0)
        assert t.total.dim == 3
        xbar = SparseVector.unit(t.theta(0))
        got = t.total.bracket(xbar, xbar)
        assert got == SparseVector.unit(t.z_index)
        assert verify_takiff(t).passed

    def test_z_central_everywhere(self):
        t, _ = tak(2, 1)
        z = SparseVector.unit(t.z_index)
        for b in range(t.total.dim):
            assert not t.total.bracket(z, SparseVector.unit(b))

    def test_form_required(self):
        a, rd = build_gl(1, 1)
        a.form = None
        with pytest.raises(ValueError):
            build_takiff(a, rd)

    def test_total_passes_verify_algebra_gl21(self):
        t, _ = tak(2, 1)
        assert t.total.dim == 19
        assert verify_algebra(t.total).passed


class TestOddForm:
    def test_one_vs_theta(self):
        t, _ = tak(1, 1)
        x = SparseVector.unit(t.one(t.base.labels.index("E_12")))
        y = SparseVector.unit(t.theta(t.base.labels.index("E_21")))
        assert odd_form_prime(t, x, y) == ONE

    def test_one_vs_one_vanishes(self):
        t, _ = tak(1, 1)
        for i in range(t.n1):
            for j in range(t.n1):
                assert odd_form_prime(t, SparseVector.unit(i), SparseVector.unit(j)) == ZERO

    def test_theta_vs_one_sign(self):
        # (E_21.th | E_12)' = (-1)^p(E_12) (E_21|E_12) = (-1)(-1) = 1
        t, _ = tak(1, 1)
        x = SparseVector.unit(t.theta(t.base.labels.index("E_21")))
        y = SparseVector.unit(t.one(t.base.labels.index("E_12")))
        assert odd_form_prime(t, x, y) == ONE

    def test_z_rejected(self):
        t, _ = tak(1, 1)
        with pytest.raises(ValueError):
            odd_form_prime(t, SparseVector.unit(t.z_index), SparseVector.unit(0))


class TestCocycle:
    def test_theta_theta(self):
        t, _ = tak(1, 1)
        x = SparseVector.unit(t.theta(t.base.labels.index("E_12")))
        y = SparseVector.unit(t.theta(t.base.labels.index("E_21")))
        assert cocycle_alpha_d(t, x, y) == ONE

    def test_one_side_vanishes(self):
        t, _ = tak(1, 1)
        for i in range(t.n1):
            for j in range(2 * t.n1):
                assert cocycle_alpha_d(t, SparseVector.unit(i), SparseVector.unit(j)) == ZERO

    def test_orthonormal_cartan_delta(self):
        t, _ = tak(1, 1)
        db = dual_bases(t.base, t.rd)
        for i, hi in enumerate(db.H):
            for j, hj in enumerate(db.H):
                want = ONE if i == j else ZERO
                assert cocycle_alpha_d(t, t.embed(hi, 1), t.embed(hj, 1)) == want


class TestDualBases:
    def test_gl11(self):
        a, rd = build_gl(1, 1)
        db = dual_bases(a, rd)
        e12 = SparseVector.unit(a.labels.index("E_12"))
        e21 = SparseVector.unit(a.labels.index("E_21"))
        assert db.E == [e12]
        assert db.F == [e21]
        assert a.form_pair(db.E[0], db.F[0]) == ONE
        # orthonormal Cartan needs an i on the odd-signature unit
        assert a.form_pair(db.H[0], db.H[0]) == ONE
        assert a.form_pair(db.H[1], db.H[1]) == ONE
        assert a.form_pair(db.H[0], db.H[1]) == ZERO

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2)])
    def test_pairing_is_identity(self, m, n):
        a, rd = build_gl(m, n)
        db = dual_bases(a, rd)
        assert db.q == a.dim
        for i in range(db.q):
            for j in range(db.q):
                want = ONE if i == j else ZERO
                assert a.form_pair(db.upper[i], db.lower[j]) == want

    def test_completeness_identity(self):
        # [s, u_i] = sum_j (u^j | [s, u_i]) u_j for a sample of s
        a, rd = build_gl(2, 1)
        db = dual_bases(a, rd)
        for s_idx in range(a.dim):
            s = SparseVector.unit(s_idx)
            for u in db.lower:
                br = a.bracket(s, u)
                recon = SparseVector()
                for j in range(db.q):
                    coeff = a.form_pair(db.upper[j], br)
                    if coeff:
                        recon = recon + db.lower[j].scale(coeff)
                assert recon == br
