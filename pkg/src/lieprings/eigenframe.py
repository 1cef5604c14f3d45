"""Computations in the sigma-eigenbasis e_x: weights, Gamma_gamma, and the mod-p functions f, g.

The f/g side is plain integer arithmetic mod p and serves as an
independent check on the p-adic evaluation of J_gamma on eigenvectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import IndexOutOfRange, NotOneParameter, PrecisionExhausted
from .homspace import HomGamma, a_range
from .jacobi import jacobi_value
from .padic import INF, KElem, PrimeCtx, eigenvector, galois


def discrete_log(x: int, r: int, p: int) -> int:
    """Least k >= 0 with r**k = x mod p (brute force)."""
    x %= p
    y = 1
    for k in range(p - 1):
        if y == x:
            return k
        y = y * r % p
    raise ValueError(f"{x} is not a power of {r} mod {p}")


@dataclass(frozen=True)
class WeightCtx:
    ctx: PrimeCtx

    @property
    def p(self) -> int:
        return self.ctx.p

    def k(self, a: int) -> int:
        return discrete_log(a, self.ctx.r, self.p)

    def l(self, a: int) -> int:
        return discrete_log(1 - a, self.ctx.r, self.p)

    def m(self, a: int, u: int, v: int) -> int:
        """m_a(u,v) = omega^(u k_a + v l_a) mod p^N."""
        ctx = self.ctx
        return pow(ctx.omega, (u * self.k(a) + v * self.l(a)) % ctx.d, ctx.q)

    def t(self, a: int, x: int, y: int) -> int:
        return (self.m(a, x, y) - self.m(a, y, x)) % self.ctx.q


@lru_cache(maxsize=None)
def weight_ctx(ctx: PrimeCtx) -> WeightCtx:
    return WeightCtx(ctx)


def weights(w: WeightCtx, a: int, u: int, v: int) -> tuple[int, int]:
    """(m_a(u,v), t_a(u,v))."""
    if a not in a_range(w.p):
        raise IndexOutOfRange(f"a={a} outside 2..{(w.p - 1) // 2}")
    return w.m(a, u, v), w.t(a, u, v)


def _l_r(w: WeightCtx, a: int, b: int, x: int, y: int, z: int) -> tuple[int, int]:
    q = w.ctx.q
    t, m = w.t, w.m
    left = t(b, x, y) * m(a, x + y, z) + t(b, y, z) * m(a, y + z, x) + t(b, z, x) * m(a, z + x, y)
    right = t(b, x, y) * m(a, z, x + y) + t(b, y, z) * m(a, x, y + z) + t(b, z, x) * m(a, y, z + x)
    return left % q, right % q


def gamma_capital(g: HomGamma, x: int, y: int, z: int) -> KElem:
    """Gamma_gamma(x,y,z), so that J_gamma(e_x, e_y, e_z) = Gamma_gamma(x,y,z) e_x e_y e_z."""
    ctx = g.ctx
    w = weight_ctx(ctx)
    p = ctx.p
    total = ctx.zero()
    for a, ca in g.coeffs.items():
        for b, cb in g.coeffs.items():
            left, right = _l_r(w, a, b, x, y, z)
            total = total + ca * galois(a, cb).scale(left) - ca * galois((1 - a) % p, cb).scale(right)
    return total


def eigen_jacobi(g: HomGamma, x: int, y: int, z: int) -> KElem:
    ctx = g.ctx
    return jacobi_value(g, eigenvector(ctx, x), eigenvector(ctx, y), eigenvector(ctx, z))


# -- one-parameter case: t1, t2 and the mod-p functions f, g ---------------


def _single(g: HomGamma) -> tuple[int, KElem]:
    if len(g.coeffs) != 1:
        raise NotOneParameter("expected gamma = c vartheta_a")
    ((a, c),) = g.coeffs.items()
    return a, c


def t1(g: HomGamma, x: int, y: int, z: int) -> KElem:
    a, c = _single(g)
    w = weight_ctx(g.ctx)
    ctx = g.ctx
    k, l = w.k(a), w.l(a)
    om = lambda e: pow(ctx.omega, e % ctx.d, ctx.q)
    s = om(2 * k * x + (k + l) * y + l * z) - om((k + l) * x + 2 * k * y + l * z)
    return (c * galois(a, c)).scale(s)


def t2(g: HomGamma, x: int, y: int, z: int) -> KElem:
    a, c = _single(g)
    w = weight_ctx(g.ctx)
    ctx = g.ctx
    k, l = w.k(a), w.l(a)
    om = lambda e: pow(ctx.omega, e % ctx.d, ctx.q)
    s = -om((k + l) * x + 2 * l * y + k * z) + om(2 * l * x + (k + l) * y + k * z)
    return (c * galois((1 - a) % ctx.p, c)).scale(s)


def f_value(a: int, p: int, xb: int, yb: int, zb: int) -> int:
    """Six-term f in the shifted variables xb = x - i etc., mod p."""
    b = (1 - a) % p
    ab = a * b % p

    def P(base, e):
        return pow(base, e, p)

    return (
        P(a, 2 * xb) * P(ab, yb) * P(b, zb)
        - P(ab, xb) * P(a, 2 * yb) * P(b, zb)
        + P(a, 2 * yb) * P(ab, zb) * P(b, xb)
        - P(ab, yb) * P(a, 2 * zb) * P(b, xb)
        + P(a, 2 * zb) * P(ab, xb) * P(b, yb)
        - P(ab, zb) * P(a, 2 * xb) * P(b, yb)
    ) % p


def g_value(a: int, p: int, xb: int, yb: int, zb: int) -> int:
    """Six-term g in the shifted variables, mod p."""
    b = (1 - a) % p
    ab = a * b % p

    def P(base, e):
        return pow(base, e, p)

    return (
        -P(ab, xb) * P(b, 2 * yb) * P(a, zb)
        + P(b, 2 * xb) * P(ab, yb) * P(a, zb)
        - P(ab, yb) * P(b, 2 * zb) * P(a, xb)
        + P(b, 2 * yb) * P(ab, zb) * P(a, xb)
        - P(ab, zb) * P(b, 2 * xb) * P(a, yb)
        + P(b, 2 * zb) * P(ab, xb) * P(a, yb)
    ) % p


def f_g(a: int, p: int, i: int, x: int, y: int, z: int) -> tuple[int, int, int]:
    """(f, g, E) mod p with E = a^{3i}(1-a)^{2i} f + a^{2i}(1-a)^{3i} g."""
    if a not in a_range(p):
        raise IndexOutOfRange(f"a={a} outside 2..{(p - 1) // 2}")
    if min(x, y, z) < i:
        raise ValueError("x, y, z must be >= i")
    f = f_value(a, p, x - i, y - i, z - i)
    gv = g_value(a, p, x - i, y - i, z - i)
    b = (1 - a) % p
    E = (pow(a, 3 * i, p) * pow(b, 2 * i, p) * f + pow(a, 2 * i, p) * pow(b, 3 * i, p) * gv) % p
    return f, gv, E


def f1_closed(a: int) -> int:
    return a * (1 - a) ** 2 * (2 * a - 1) * (a * a + a - 1)


def g1_closed(a: int) -> int:
    # expanding the six-term g(i, i+1, i+2) gives the factor (a-1), not (1-a)
    return a * a * (a - 1) * (2 * a - 1) * (a * a - 3 * a + 1)


def fg_factorization(a: int) -> int:
    """a^4 (1-a)^4 (2a-1)^3 (a^2+a-1)(a^2-3a+1), an integer."""
    return a**4 * (1 - a) ** 4 * (2 * a - 1) ** 3 * (a * a + a - 1) * (a * a - 3 * a + 1)


@dataclass(frozen=True)
class FGConstants:
    F1: int
    G1: int
    F2: int
    G2: int

    def determinant(self, p: int) -> int:
        return (self.F2 * self.G1 - self.F1 * self.G2) % p


def fg_constants(a: int, p: int) -> FGConstants:
    """F1, G1 from the closed forms and F2 = f(i,i+1,i+4), G2 = g(i,i+1,i+4) from the six-term sums."""
    if a not in a_range(p):
        raise IndexOutOfRange(f"a={a} outside 2..{(p - 1) // 2}")
    return FGConstants(
        f1_closed(a) % p,
        g1_closed(a) % p,
        f_value(a, p, 0, 1, 4),
        g_value(a, p, 0, 1, 4),
    )


# -- dual-path cross check ---------------------------------------------------


@dataclass(frozen=True)
class CrossCheck:
    x: int
    y: int
    z: int
    agree: bool
    discrepancy_val: float  # INF when the two paths agree to working precision
    membership_checked: bool = False
    membership_ok: bool = True

    @property
    def passed(self) -> bool:
        return self.agree and self.membership_ok


def crosscheck(g: HomGamma, x: int, y: int, z: int) -> CrossCheck:
    """Compare J_gamma on eigenvectors against Gamma_gamma e_x e_y e_z (and the P^(x+y+z+1) membership test for one parameter)."""
    ctx = g.ctx
    direct = eigen_jacobi(g, x, y, z)
    ex, ey, ez = (eigenvector(ctx, n) for n in (x, y, z))
    via_gamma = gamma_capital(g, x, y, z) * ex * ey * ez
    dv = (direct - via_gamma).val()
    agree = dv == INF
    if not g.is_one_parameter():
        return CrossCheck(x, y, z, agree, dv)
    (a,) = g.coeffs
    _, _, E = f_g(a, ctx.p, g.i, x, y, z)
    level = x + y + z + 1
    dval = direct.val()
    if dval == INF and direct.prec <= level:
        raise PrecisionExhausted("eigen-Jacobi value not known to the membership level")
    member = dval >= level
    return CrossCheck(x, y, z, agree, dv, True, member == (E == 0))
