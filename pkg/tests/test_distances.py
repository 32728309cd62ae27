import math

import numpy as np
import pytest

from longwalk import distances as D
from longwalk.errors import (
    DisconnectedKernel,
    IndexOutOfRange,
    NotAGInverse,
    NotALaplacian,
    NumericalInconsistency,
    ParameterOutOfRange,
)
from longwalk.generators import complete_graph, epsilon_family, path_graph, triangle_chain
from longwalk.graph import adjacency_matrix, laplacian_matrix, para_laplacian
from longwalk.linalg import delete_rows_cols, determinant, perron_eigenpair

from oracles import (
    K3_RESISTANCE,
    P3_LONGWALK,
    SQRT2,
    longwalk_pinv,
    rescaled_mp,
    rescaled_pinv,
    resistance_pinv,
    walk_distance_series,
)


def _pr(g):
    return perron_eigenpair(adjacency_matrix(g))


class TestWalkDistance:
    def test_p2_half(self):
        d = D.walk_distance(path_graph(2), t=0.5)
        assert d[0, 1] == pytest.approx(-math.log(0.5), abs=1e-14)
        assert d.method == "walk" and d.params == {"t": 0.5}

    def test_zero_diagonal(self, corpus):
        for g in corpus[:10]:
            pr = _pr(g)
            d = D.walk_distance(g, pr, 0.3 / pr.rho)
            assert np.all(np.diag(d.values) == 0)

    @pytest.mark.parametrize("frac", [0.05, 0.5, 0.95])
    def test_p3_cut_additivity(self, frac):
        g = path_graph(3)
        d = D.walk_distance(g, t=frac / math.sqrt(2))
        assert d[0, 1] + d[1, 2] == pytest.approx(d[0, 2], rel=1e-12)

    def test_against_power_series(self):
        g = triangle_chain(2, weight=0.7)
        t = 0.4 / _pr(g).rho
        np.testing.assert_allclose(D.walk_distance(g, t=t).values,
                                   walk_distance_series(adjacency_matrix(g), t), rtol=1e-11,
                                   atol=1e-13)

    @pytest.mark.parametrize("t", [0.0, -0.1, "bound", 2.0])
    def test_out_of_range(self, t):
        g = path_graph(3)
        pr = _pr(g)
        if t == "bound":
            t = 1.0 / pr.rho
        with pytest.raises(ParameterOutOfRange, match="0.707106781187"):
            D.walk_distance(g, pr, t)

    def test_positive(self, corpus):
        for g in corpus:
            pr = _pr(g)
            for frac in (0.1, 0.9):
                r = D.walk_matrix(g, pr, frac / pr.rho)
                assert np.all(r > 0)
                v = D.walk_distance(g, pr, frac / pr.rho).values
                assert np.all(v[~np.eye(g.n, dtype=bool)] > 0)

    def test_small_t_recovers_hops(self):
        from longwalk.graph import shortest_path_distance
        g = triangle_chain(3)
        hops = shortest_path_distance(g).values
        errs = []
        for t in (1e-3, 1e-6, 1e-9):
            d = D.walk_distance(g, t=t).values
            errs.append(np.abs(d / -math.log(t) - hops).max())
        assert errs[0] > errs[1] > errs[2] and errs[2] < 0.05


class TestLimitEstimate:
    def test_p2_analytic(self):
        d = D.long_walk_limit_estimate(path_graph(2), t=0.999)
        assert d[0, 1] == pytest.approx(-math.log(0.999) / 0.001, rel=1e-10)

    def test_p2_sequence_monotone(self):
        g = path_graph(2)
        vals = [D.long_walk_limit_estimate(g, t=1 - 2.0 ** -k)[0, 1] for k in range(1, 20)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] == pytest.approx(1.0, abs=1e-5)

    def test_diagonal(self, k3):
        assert np.all(np.diag(D.long_walk_limit_estimate(k3, t=0.4).values) == 0)


class TestLongWalkDet:
    def test_p2(self, p2):
        assert D.longwalk_det(p2)[0, 1] == pytest.approx(1.0, abs=1e-14)

    def test_p3(self, p3):
        d = D.longwalk_det(p3)
        for (i, j), val in P3_LONGWALK.items():
            assert d[i, j] == pytest.approx(val, abs=1e-13)
        assert d[0, 1] == pytest.approx(0.94281, abs=1e-5)

    def test_k3(self, k3):
        d = D.longwalk_det(k3).values
        np.testing.assert_allclose(d, K3_RESISTANCE * (1 - np.eye(3)), atol=1e-14)

    def test_against_pinv_oracle(self, corpus):
        for g in corpus[:15]:
            np.testing.assert_allclose(D.longwalk_det(g).values,
                                       longwalk_pinv(adjacency_matrix(g)), rtol=1e-8, atol=0)

    def test_ill_conditioned_tree_refused(self):
        # a near-zero bridge makes p decay by ~1e-6; distances span ~1e10
        edges = [(0, 1, 0.002882218696591776), (0, 2, 1.4067931986004867),
                 (1, 3, 0.8409928361656123), (2, 4, 1.76599522176088),
                 (1, 5, 0.9510028559390094), (5, 6, 0.21774542525374896),
                 (5, 7, 0.04377762459917278), (0, 8, 1.4966696448369514),
                 (3, 9, 1.7783584529073815), (2, 10, 0.3859456795058911),
                 (4, 11, 1.5307104247509646), (11, 12, 0.5765259643626444),
                 (11, 13, 1.598114358947913), (11, 14, 0.3606156344129836)]
        from longwalk.graph import build_graph
        g = build_graph(15, edges)
        pr = _pr(g)
        with pytest.raises(NumericalInconsistency):
            D.longwalk_det(g, pr)
        ref = rescaled_mp(adjacency_matrix(g), dps=60) / (g.n * pr.p_norm2 ** 2)
        np.testing.assert_allclose(D.longwalk_ginverse(g, pr).values, ref, rtol=1e-10)
        np.testing.assert_allclose(D.longwalk_submatrix(g, pr, 3, 8).values, ref, rtol=1e-10)

    def test_minor_relation_direct(self):
        """det((L_ii)_jj) / det(L_ii) equals the inverse diagonal entry."""
        g = triangle_chain(2, weight=1.3)
        lp = para_laplacian(g, _pr(g))
        m = D.minor_ratios(lp)
        for i in range(g.n):
            sub = delete_rows_cols(lp, [i], [i])
            den = determinant(sub.values)
            for j in range(g.n):
                if j != i:
                    num = determinant(delete_rows_cols(sub, [j], [j]).values)
                    assert m[i, j] == pytest.approx(num / den, rel=1e-12)

    def test_exact_formula_p3_direct(self):
        # det((L_00)_11) / (p'_1^2 det L_00) = sqrt2 / (3/2 * 1)
        g = path_graph(3)
        pr = _pr(g)
        lp = para_laplacian(g, pr)
        sub = delete_rows_cols(lp, [0], [0])
        num = determinant(delete_rows_cols(sub, [1], [1]).values)
        assert num == pytest.approx(SQRT2, abs=1e-13)
        assert pr.p_prime[1] ** 2 == pytest.approx(1.5, abs=1e-13)
        assert num / (pr.p_prime[1] ** 2 * determinant(sub.values)) == pytest.approx(
            2 * SQRT2 / 3, abs=1e-13)


class TestGInverse:
    def test_p2_by_hand(self, p2):
        g = np.array([[0.75, 0.25], [0.25, 0.75]])
        assert D.longwalk_ginverse(p2, linv=g)[0, 1] == pytest.approx(1.0, abs=1e-15)

    def test_h_route_equals_det(self, corpus):
        for g in corpus[:15]:
            pr = _pr(g)
            np.testing.assert_allclose(D.longwalk_ginverse(g, pr, D.build_h_matrix(g, pr)).values,
                                       D.longwalk_det(g, pr).values, rtol=1e-9, atol=0)

    def test_independent_of_ginverse(self, corpus):
        for g in corpus[:10]:
            pr = _pr(g)
            lp = para_laplacian(g, pr)
            q = pr.kernel_unit
            candidates = [
                None,
                D.build_h_matrix(g, pr),
                np.linalg.pinv(lp),
                np.linalg.inv(lp + 7.5 * np.outer(q, q)),
                D.submatrix_ginverse(lp, 0, g.n - 1),
            ]
            ref = D.longwalk_det(g, pr).values
            for c in candidates:
                np.testing.assert_allclose(D.longwalk_ginverse(g, pr, c).values, ref,
                                           rtol=1e-8, atol=0)

    def test_rejects_non_ginverse(self, p3):
        with pytest.raises(NotAGInverse):
            D.longwalk_ginverse(p3, linv=np.eye(3))

    def test_zvector(self, corpus):
        for g in corpus[:5]:
            pr = _pr(g)
            z = D.zvector(pr, 0, g.n - 1)
            assert np.count_nonzero(z) == 2
            assert abs(z @ pr.p_prime) <= 1e-12


class TestSubmatrix:
    def test_p2(self, p2):
        assert D.longwalk_submatrix(p2, u=0, v=0)[0, 1] == pytest.approx(1.0, abs=1e-15)

    def test_p3_all_choices(self, p3):
        ref = D.longwalk_det(p3).values
        for u in range(3):
            for v in range(3):
                d = D.longwalk_submatrix(p3, u=u, v=v)
                assert d.params == {"u": u, "v": v}
                np.testing.assert_allclose(d.values, ref, rtol=1e-9, atol=0)

    def test_bad_vertex(self, p3):
        with pytest.raises(IndexOutOfRange):
            D.longwalk_submatrix(p3, u=3)

    def test_embedding_is_ginverse(self, corpus):
        from longwalk.linalg import ginverse_residual
        g = corpus[0]
        lp = para_laplacian(g, _pr(g))
        full = D.submatrix_ginverse(lp, 1, 2)
        assert np.all(full[1] == 0) and np.all(full[:, 2] == 0)
        assert ginverse_residual(lp, full) <= 1e-9


class TestHMatrix:
    def test_p2(self, p2):
        np.testing.assert_allclose(D.build_h_matrix(p2), [[0, -0.5], [-0.5, 0]], atol=1e-15)

    def test_is_ginverse(self, corpus):
        for g in corpus:
            pr = _pr(g)
            lp = para_laplacian(g, pr)
            h = D.build_h_matrix(g, pr)
            assert np.all(np.diag(h) == 0)
            norm = np.abs(lp).sum(axis=1).max()
            assert np.abs(lp @ h @ lp - lp).sum(axis=1).max() <= 1e-9 * norm

    def test_relation_to_distance(self, corpus):
        for g in corpus[:10]:
            pr = _pr(g)
            h = D.build_h_matrix(g, pr)
            pp = pr.p_prime
            d = D.longwalk_det(g, pr).values
            off = ~np.eye(g.n, dtype=bool)
            np.testing.assert_allclose((-2 * h / np.outer(pp, pp))[off], d[off], rtol=1e-9)
            np.testing.assert_allclose(h, np.outer(pp, pp) * (-0.5 * d), rtol=1e-9, atol=1e-300)


class TestGPrime:
    def test_p2_fixed_point(self, p2):
        np.testing.assert_allclose(D.transform_gprime(p2), adjacency_matrix(p2), atol=1e-14)

    def test_p3(self, p3):
        a1 = D.transform_gprime(p3)
        assert a1[0, 1] == pytest.approx(3 * SQRT2 / 4, abs=1e-13)
        assert a1[1, 2] == pytest.approx(1.06066, abs=1e-5)

    def test_zero_pattern(self, corpus):
        for g in corpus[:10]:
            assert np.array_equal(D.transform_gprime(g) > 0, adjacency_matrix(g) > 0)

    def test_laplacian_identity(self, corpus):
        for g in corpus[:10]:
            pr = _pr(g)
            pmat = np.diag(pr.p_prime)
            lhs = pmat @ para_laplacian(g, pr) @ pmat
            assert np.abs(lhs - D.gprime_laplacian(g, pr)).max() <= 1e-10 * np.abs(lhs).max()

    def test_p3_route(self, p3):
        d = D.longwalk_via_gprime(p3)
        assert d[0, 1] == pytest.approx(2 * SQRT2 / 3, abs=1e-12)
        assert d[0, 2] == pytest.approx(4 * SQRT2 / 3, abs=1e-12)
        assert d.method == "longwalk-gprime"


class TestResistance:
    @pytest.mark.parametrize("mode", ["det", "ginv"])
    def test_fixtures(self, mode):
        assert D.resistance_distance(laplacian_matrix(path_graph(2)), mode)[0, 1] == \
            pytest.approx(1.0, abs=1e-14)
        assert D.resistance_distance(laplacian_matrix(path_graph(3)), mode)[0, 2] == \
            pytest.approx(2.0, abs=1e-14)
        np.testing.assert_allclose(D.resistance_distance(laplacian_matrix(complete_graph(3)),
                                                         mode).values,
                                   K3_RESISTANCE * (1 - np.eye(3)), atol=1e-14)

    def test_modes_agree_with_pinv(self, corpus):
        for g in corpus[:15]:
            lap = laplacian_matrix(g)
            ref = resistance_pinv(adjacency_matrix(g))
            for mode in ("det", "ginv"):
                np.testing.assert_allclose(D.resistance_distance(lap, mode).values, ref,
                                           rtol=1e-8, atol=0)

    def test_denominator_vertex(self, corpus):
        g = corpus[1]
        lap = laplacian_matrix(g)
        ref = D.resistance_distance(lap, "det", v=0).values
        for v in range(g.n):
            np.testing.assert_allclose(D.resistance_distance(lap, "det", v=v).values, ref,
                                       rtol=1e-10, atol=0)

    def test_not_laplacian(self):
        with pytest.raises(NotALaplacian):
            D.resistance_distance(np.eye(3))

    def test_disconnected(self):
        lap = np.array([[1.0, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1]])
        with pytest.raises(DisconnectedKernel):
            D.resistance_distance(lap, "det")

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            D.resistance_distance(laplacian_matrix(path_graph(2)), "pinv")


class TestRescaled:
    def test_k3(self, k3):
        np.testing.assert_allclose(D.rescaled_longwalk(k3).values,
                                   K3_RESISTANCE * (1 - np.eye(3)), atol=1e-13)

    def test_p2(self, p2):
        assert D.rescaled_longwalk(p2)[0, 1] == pytest.approx(1.0, abs=1e-14)

    def test_against_oracle(self, corpus):
        for g in corpus[:10]:
            np.testing.assert_allclose(D.rescaled_longwalk(g).values,
                                       rescaled_pinv(adjacency_matrix(g)), rtol=1e-8, atol=0)

    # Frozen from oracles.rescaled_mp (50 digits) on epsilon_family(5, eps); the
    # double-precision pinv oracle loses ~1e-8 here, the graph being near-disconnected.
    EPS_FAMILY = {1e-2: 0.9423982130578119, 1e-3: 0.9940239998228156, 1e-4: 0.9994002399999823}

    @pytest.mark.parametrize("eps", sorted(EPS_FAMILY))
    def test_epsilon_family_frozen(self, eps):
        got = D.rescaled_longwalk(epsilon_family(5, eps))[0, 1]
        assert got == pytest.approx(self.EPS_FAMILY[eps], rel=1e-11)

    def test_mp_oracle_reproduces_frozen(self):
        a = adjacency_matrix(epsilon_family(5, 1e-3))
        assert rescaled_mp(a)[0, 1] == pytest.approx(self.EPS_FAMILY[1e-3], rel=1e-14)


class TestDistanceMatrix:
    def test_build_symmetrizes_and_freezes(self):
        d = D.DistanceMatrix.build([[1.0, 2.0], [4.0, 1.0]], "x")
        np.testing.assert_array_equal(d.values, [[0, 3], [3, 0]])
        with pytest.raises(ValueError):
            d.values[0, 1] = 1.0
