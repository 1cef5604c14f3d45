import random
from itertools import combinations

import pytest

from lieprings.errors import NotOneParameter, PrecisionExhausted
from lieprings.homspace import coeff_table, default_precision, one_parameter, random_gamma, random_gamma_lattice
from lieprings.jacobi import compute_lambda, j_table, jacobi_basis_value, jacobi_value, y_one_param
from lieprings.padic import INF, make_context
from lieprings.verify import run_suite


def ctx_for(p, i=0):
    return make_context(p, default_precision(p, i))


def test_jacobi_value_alternating():
    rng = random.Random(2)
    ctx = ctx_for(7, 1)
    g = random_gamma_lattice(ctx, 1, rng)
    u, v, w = (ctx.elem([rng.randrange(ctx.q) for _ in range(6)], shift=1) for _ in range(3))
    assert jacobi_value(g, u, u, w).val() == INF
    assert (jacobi_value(g, u, v, w) + jacobi_value(g, v, u, w)).val() == INF
    assert jacobi_value(g, u, v, w) == jacobi_value(g, v, w, u)


def test_j_table_examples():
    ctx = ctx_for(7)
    J2 = j_table(coeff_table(one_parameter(ctx, 2, 0)))
    assert J2(0, 1, 2) == 4 and J2(0, 1, 5) == 5
    J3 = j_table(coeff_table(one_parameter(ctx, 3, 0)))
    assert J3(3, 4, 0) == 6 and J3(0, 1, 2) == 1
    for J in (J2, J3):
        assert all(J(j, j, l) == 0 for j in range(6) for l in range(6))


def test_leading_digit_example():
    ctx = ctx_for(7)
    g = one_parameter(ctx, 2, 0)
    val = jacobi_value(g, ctx.kappa(0), ctx.kappa(1), ctx.kappa(2))
    assert val.val() == 3 and val.leading_coeff(3) == 4


@pytest.mark.parametrize("seed", range(8))
def test_table_matches_actual_jacobi(seed):
    rng = random.Random(100 + seed)
    p = (5, 7, 11, 13)[seed % 4]
    i = rng.randrange(5)
    ctx = ctx_for(p, i)
    g = (random_gamma_lattice if seed % 2 else random_gamma)(ctx, i, rng)
    t = coeff_table(g)
    J = j_table(t)
    for j, k, l in combinations(g.window, 3):
        base = j + k + l + 2 * t.rho
        x = jacobi_basis_value(g, j, k, l)
        if J(j, k, l):
            assert x.val() == base and x.leading_coeff(base) == J(j, k, l)
        else:
            assert x.val() > base


def test_lambda_examples():
    r = compute_lambda(one_parameter(make_context(5, default_precision(5, 0)), 2, 0))
    assert (r.lam, r.y_main) == (3, 0)
    assert compute_lambda(one_parameter(ctx_for(7), 2, 0)).lam == 3
    r = compute_lambda(one_parameter(ctx_for(7, 3), 2, 3))
    assert r.lam == 14 and r.witness == (3, 4, 5)
    assert r.to_json() == {"p": 7, "i": 3, "rho": 0, "v": 0, "lambda": 14, "y": r.y_main, "witness": [3, 4, 5]}


@pytest.mark.parametrize("p,a,i", [(13, 4, 8), (11, 4, 10), (7, 3, 5)])
def test_y_equals_two_examples(p, a, i):
    assert y_one_param(one_parameter(ctx_for(p, i), a, i)) == 2


def test_y_p5_is_zero():
    for i in range(12):
        assert y_one_param(one_parameter(ctx_for(5, i), 2, i)) == 0


def test_y_one_param_rejects_mixed():
    rng = random.Random(4)
    g = random_gamma_lattice(ctx_for(11, 2), 2, rng)
    with pytest.raises(NotOneParameter):
        y_one_param(g)


@pytest.mark.parametrize("seed", range(6))
def test_shortcut_agrees_with_full_scan(seed):
    rng = random.Random(seed)
    p = (7, 11, 13)[seed % 3]
    i = rng.randrange(6)
    g = random_gamma_lattice(ctx_for(p, i), i, rng)
    a = compute_lambda(g)
    b = compute_lambda(g, shortcut=False)
    assert (a.lam, a.witness) == (b.lam, b.witness)


def test_precision_exhausted():
    with pytest.raises(PrecisionExhausted):
        compute_lambda(one_parameter(make_context(7, 2), 2, 3))


@pytest.mark.parametrize("suite", ["jlemma", "bounds"])
def test_suites(suite):
    rep = run_suite(suite, trials=15, seed=5)
    assert rep.ok, rep.failures[:1]
