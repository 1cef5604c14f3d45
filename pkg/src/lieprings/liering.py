"""The finite Lie ring L_{i,m}(gamma) = P^i / P^m with bracket gamma(x ^ y) + P^m.

Generators are g_j = kappa^(i+j) + P^m for j < d; g_j has additive order
p^(o_j) with o_j = max(0, ceil((m-i-j)/d)), and L is their direct sum.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import LieRingError, PrecisionExhausted
from .homspace import HomGamma
from .padic import vp


def generator_orders(d: int, i: int, m: int) -> tuple:
    return tuple(max(0, -(-(m - i - j) // d)) for j in range(d))


@dataclass(frozen=True, eq=False)
class LieRingPresentation:
    p: int
    i: int
    m: int
    orders: tuple
    brackets: tuple  # brackets[j][k] = coordinates of [g_j, g_k]
    theta_images: tuple = field(repr=False)  # coordinates of theta * g_j

    @property
    def d(self) -> int:
        return len(self.orders)

    @property
    def log_order(self) -> int:
        return sum(self.orders)

    @property
    def moduli(self) -> tuple:
        return tuple(self.p**o for o in self.orders)

    def element(self, coeffs) -> tuple:
        """Canonical element with the given generator coefficients."""
        return tuple(int(c) % n for c, n in zip(coeffs, self.moduli))

    def generator(self, j: int) -> tuple:
        return self.element(1 if k == j else 0 for k in range(self.d))

    def zero(self) -> tuple:
        return (0,) * self.d

    def add(self, x, y) -> tuple:
        return self.element(a + b for a, b in zip(x, y))

    def scale(self, n: int, x) -> tuple:
        return self.element(n * a for a in x)

    def bracket(self, x, y) -> tuple:
        acc = [0] * self.d
        B = self.brackets
        for j, xj in enumerate(x):
            if not xj:
                continue
            for k, yk in enumerate(y):
                if yk and j != k:
                    c = xj * yk
                    for n, b in enumerate(B[j][k]):
                        acc[n] += c * b
        return self.element(acc)

    def theta(self, x) -> tuple:
        """Multiplication by theta on P^i / P^m."""
        acc = [0] * self.d
        for j, xj in enumerate(x):
            if xj:
                for n, b in enumerate(self.theta_images[j]):
                    acc[n] += xj * b
        return self.element(acc)

    def well_defined(self) -> bool:
        """gamma(P^m ^ P^i) <= P^m, so that the structure constants define a bilinear map."""
        for j, o in enumerate(self.orders):
            for k in range(self.d):
                if j != k and any(self.scale(self.p**o, self.brackets[j][k])):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "i": self.i,
            "m": self.m,
            "orders": list(self.orders),
            "brackets": {
                f"{j},{k}": list(self.brackets[j][k]) for j, k in combinations(range(self.d), 2)
            },
        }


def build(g: HomGamma, m: int) -> LieRingPresentation:
    """Structure constants of L_{i,m}(gamma) in the kappa-power generators."""
    ctx, i, d = g.ctx, g.i, g.d
    if m <= i:
        raise ValueError(f"m must exceed i (got m={m}, i={i})")
    orders = generator_orders(d, i, m)
    if max(orders) > ctx.N:
        raise PrecisionExhausted(f"m={m} needs precision N >= {max(orders)}")
    moduli = tuple(ctx.p**o for o in orders)

    def reduce(vec):
        return tuple(int(c) % n for c, n in zip(vec, moduli))

    rows = []
    for j in range(d):
        row = []
        for k in range(d):
            if j == k:
                row.append((0,) * d)
                continue
            img = g.image(i + j, i + k)
            if img.prec < m:
                raise PrecisionExhausted(f"gamma image known mod P^{img.prec} < P^{m}")
            row.append(reduce(img.coords(i)))
        rows.append(tuple(row))
    theta_imgs = []
    top = tuple((-c) % ctx.q for c in ctx.kappa_min_poly[:d])  # kappa^d
    for j in range(d):
        v = [0] * d
        v[j] = 1
        if j + 1 < d:
            v[j + 1] += 1
        else:
            v = [a + b for a, b in zip(v, top)]
        theta_imgs.append(reduce(v))
    return LieRingPresentation(ctx.p, i, m, orders, tuple(rows), tuple(theta_imgs))


@dataclass(frozen=True)
class JacobiCheck:
    ok: bool
    witness: tuple | None = None  # generator indices (j, k, l)

    def __bool__(self):
        return self.ok


def jacobi_defect(L: LieRingPresentation, x, y, z) -> tuple:
    br, add = L.bracket, L.add
    return add(add(br(br(x, y), z), br(br(y, z), x)), br(br(z, x), y))


def check_jacobi(L: LieRingPresentation) -> JacobiCheck:
    gens = [L.generator(j) for j in range(L.d)]
    for j, k, l in combinations(range(L.d), 3):
        if any(jacobi_defect(L, gens[j], gens[k], gens[l])):
            return JacobiCheck(False, (j, k, l))
    return JacobiCheck(True)


# -- submodules of L via Howell forms over Z/p^E ----------------------------


def howell_form(rows, p: int, E: int) -> list:
    """Howell normal form of the row span of ``rows`` over Z/p^E.

    Pivots are powers of p; entries above a pivot p^k are reduced mod p^k.
    The span has order prod(p^(E - k)) over the pivots.
    """
    q = p**E
    pool = [tuple(c % q for c in r) for r in rows]
    pool = [r for r in pool if any(r)]
    if not pool:
        return []
    ncols = len(pool[0])
    out = []
    pivcols = []
    for col in range(ncols):
        cand = [r for r in pool if r[col]]
        if not cand:
            continue
        piv = min(cand, key=lambda r: vp(r[col], p))
        k = vp(piv[col], p)
        unit = piv[col] // p**k
        inv = pow(unit, -1, q)
        piv = tuple(c * inv % q for c in piv)
        rest = []
        for r in pool:
            if r[col]:
                f = r[col] // p**k
                r = tuple((a - f * b) % q for a, b in zip(r, piv))
            if any(r):
                rest.append(r)
        ann = tuple(c * p ** (E - k) % q for c in piv)
        if any(ann):
            rest.append(ann)
        pool = rest
        out.append(piv)
        pivcols.append(col)
    # reduce above pivots
    for n in range(len(out) - 1, -1, -1):
        col = pivcols[n]
        pk = out[n][col]
        for m in range(n):
            c = out[m][col]
            if c >= pk:
                f = c // pk
                out[m] = tuple((a - f * b) % q for a, b in zip(out[m], out[n]))
    return out


def howell_log_order(form, p: int, E: int) -> int:
    total = 0
    for r in form:
        piv = next(c for c in r if c)
        total += E - vp(piv, p)
    return total


class _Embedding:
    """L -> (Z/p^E)^d, x_j -> p^(E - o_j) x_j (an injective group homomorphism)."""

    def __init__(self, L: LieRingPresentation):
        self.L = L
        self.E = max(L.orders) if any(L.orders) else 0

    def up(self, x) -> tuple:
        p, E = self.L.p, self.E
        return tuple(c * p ** (E - o) for c, o in zip(x, self.L.orders))

    def down(self, row) -> tuple:
        p, E = self.L.p, self.E
        return self.L.element(c // p ** (E - o) if o else 0 for c, o in zip(row, self.L.orders))


@dataclass(frozen=True)
class CentralSeries:
    log_orders: tuple  # log_p |L_n| for n = 1, 2, ... until zero or stationary
    nilpotency_class: int | None  # None when the series stabilizes above zero

    @property
    def nilpotent(self) -> bool:
        return self.nilpotency_class is not None


def span_log_order(L: LieRingPresentation, elements) -> int:
    """log_p of the order of the additive subgroup generated by ``elements``."""
    emb = _Embedding(L)
    if emb.E == 0:
        return 0
    return howell_log_order(howell_form([emb.up(x) for x in elements], L.p, emb.E), L.p, emb.E)


def lower_central_series(L: LieRingPresentation) -> CentralSeries:
    """Orders of L = L_1 >= L_2 = [L, L] >= L_3 = [L_2, L] >= ... and the nilpotency class.

    The terms are nested, so equal orders mean the series is stationary; that
    happens for small i, where L need not be nilpotent.
    """
    emb = _Embedding(L)
    if emb.E == 0:
        return CentralSeries((0,), 0)
    p, E = L.p, emb.E
    gens = [L.generator(j) for j in range(L.d)]
    form = howell_form([emb.up(g) for g in gens], p, E)
    logs = [howell_log_order(form, p, E)]
    while logs[-1] > 0:
        elems = [emb.down(r) for r in form]
        form = howell_form([emb.up(L.bracket(x, g)) for x in elems for g in gens], p, E)
        logs.append(howell_log_order(form, p, E))
        if logs[-1] == logs[-2]:
            return CentralSeries(tuple(logs[:-1]), None)
        if logs[-1] > logs[-2]:
            raise LieRingError("lower central series term grew; bracket is not well defined")
    return CentralSeries(tuple(logs), len(logs) - 1)
