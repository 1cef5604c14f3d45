"""Homomorphisms gamma = sum c_a vartheta_a, their offset and leading-coefficient table."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Mapping

from .errors import IndexOutOfRange, InvalidGamma, ParseError, PrecisionExhausted
from .padic import INF, KElem, PrimeCtx, galois, make_context


def default_precision(p: int, i: int) -> int:
    """Coefficient precision N leaving room above the upper bound for lambda at level i."""
    d = p - 1
    return math.ceil((3 * (i + d) + 3 * d + 6) / d) + 2


def a_range(p: int) -> range:
    return range(2, (p - 1) // 2 + 1)


def theta_a_eval(a: int, x: KElem, y: KElem) -> KElem:
    """vartheta_a(x ^ y) = sigma_a(x) sigma_{1-a}(y) - sigma_{1-a}(x) sigma_a(y)."""
    p = x.ctx.p
    if a not in a_range(p):
        raise IndexOutOfRange(f"a={a} outside 2..{(p - 1) // 2}")
    b = (1 - a) % p
    return galois(a, x) * galois(b, y) - galois(b, x) * galois(a, y)


@dataclass(frozen=True, eq=False)
class HomGamma:
    """gamma = sum_a c_a vartheta_a restricted to P^i ^ P^i."""

    ctx: PrimeCtx
    i: int
    coeffs: Mapping[int, KElem]
    _images: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        p = self.ctx.p
        if self.i < 0:
            raise InvalidGamma(f"level i must be >= 0, got {self.i}")
        clean = {}
        for a, c in sorted(self.coeffs.items()):
            if a not in a_range(p):
                raise IndexOutOfRange(f"coefficient index a={a} outside 2..{(p - 1) // 2}")
            if c.ctx != self.ctx:
                raise InvalidGamma("coefficient from a different context")
            v = c.val()
            if v == INF:
                continue
            if v < 5 - p:
                raise InvalidGamma(f"val(c_{a}) = {v} < 5 - p = {5 - p}")
            clean[a] = c
        if not clean:
            raise InvalidGamma("gamma is the zero map")
        object.__setattr__(self, "coeffs", clean)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def d(self) -> int:
        return self.ctx.d

    @property
    def window(self) -> range:
        return range(self.i, self.i + self.ctx.d)

    @property
    def v(self) -> int:
        """val(gamma) = min val(c_a)."""
        return min(c.val() for c in self.coeffs.values())

    def is_one_parameter(self) -> bool:
        return len(self.coeffs) == 1 and self.v == 0

    def __call__(self, x: KElem, y: KElem) -> KElem:
        return gamma_eval(self, x, y)

    def scaled(self, c: KElem) -> "HomGamma":
        return HomGamma(self.ctx, self.i, {a: c * ca for a, ca in self.coeffs.items()})

    def image(self, j: int, k: int) -> KElem:
        """gamma(kappa^j ^ kappa^k), cached."""
        key = (j, k)
        out = self._images.get(key)
        if out is None:
            if (k, j) in self._images:
                out = -self._images[(k, j)]
            else:
                out = gamma_eval(self, self.ctx.kappa(j), self.ctx.kappa(k))
            self._images[key] = out
        return out

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "precision": self.ctx.N,
            "i": self.i,
            "coeffs": {str(a): c.to_literal() for a, c in self.coeffs.items()},
        }

    @classmethod
    def from_json(cls, obj: dict, precision: int | None = None, i: int | None = None) -> "HomGamma":
        try:
            p = int(obj["p"])
            level = int(obj["i"]) if i is None else i
            N = precision or int(obj.get("precision") or default_precision(p, level))
            ctx = make_context(p, N)
            coeffs = {int(a): ctx.from_literal(lit) for a, lit in obj["coeffs"].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad gamma description: {exc}") from exc
        return cls(ctx, level, coeffs)

    @classmethod
    def load(cls, path, **kw) -> "HomGamma":
        with open(path) as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(str(exc)) from exc
        return cls.from_json(obj, **kw)


def one_parameter(ctx: PrimeCtx, a: int, i: int, c: KElem | None = None) -> HomGamma:
    """gamma = c vartheta_a (c = 1 by default)."""
    return HomGamma(ctx, i, {a: ctx.one() if c is None else c})


def gamma_eval(g: HomGamma, x: KElem, y: KElem) -> KElem:
    total = None
    for a, c in g.coeffs.items():
        term = c * theta_a_eval(a, x, y)
        total = term if total is None else total + term
    return total


def _window_vals(g: HomGamma):
    for j in g.window:
        for k in g.window:
            if j < k:
                v = g.image(j, k).val()
                if v == INF:
                    raise PrecisionExhausted(
                        f"gamma(kappa^{j} ^ kappa^{k}) vanishes to precision {g.image(j, k).prec}"
                    )
                yield j, k, v


def check_surjective(g: HomGamma) -> tuple[bool, int]:
    """(surjective?, valuation of the image ideal); surjective iff the image is P^(2i+1)."""
    t = min(v for _, _, v in _window_vals(g))
    return t == 2 * g.i + 1, t


def offset(g: HomGamma) -> int:
    """rho(gamma) = min over the d-window of val(gamma(kappa^j ^ kappa^k)) - j - k."""
    return min(v - j - k for j, k, v in _window_vals(g))


@dataclass(frozen=True)
class CoeffTable:
    """Leading coefficients a(j,k) mod p on the window [i, i+d)^2, extended d-periodically."""

    p: int
    rho: int
    window_base: int
    entries: tuple  # entries[j - i][k - i]

    @property
    def d(self) -> int:
        return self.p - 1

    def reduce(self, j: int) -> int:
        return self.window_base + (j - self.window_base) % self.d

    def in_window(self, j: int) -> bool:
        return self.window_base <= j < self.window_base + self.d

    def a(self, j: int, k: int) -> int:
        i = self.window_base
        return self.entries[self.reduce(j) - i][self.reduce(k) - i]

    def c(self, k: int) -> int:
        return self.a(k + 1, k)

    def rows(self) -> list:
        return [list(r) for r in self.entries]


def coeff_table(g: HomGamma) -> CoeffTable:
    ok, t = check_surjective(g)
    if not ok:
        raise InvalidGamma(f"gamma is not surjective: image is P^{t}, expected P^{2 * g.i + 1}")
    rho = offset(g)
    rows = []
    for j in g.window:
        row = []
        for k in g.window:
            row.append(0 if j == k else g.image(j, k).leading_coeff(j + k + rho))
        rows.append(tuple(row))
    return CoeffTable(g.p, rho, g.i, tuple(rows))


def random_unit(ctx: PrimeCtx, rng: random.Random) -> KElem:
    q, p = ctx.q, ctx.p
    cs = [rng.randrange(q) for _ in range(ctx.d)]
    while cs[0] % p == 0:
        cs[0] = rng.randrange(q)
    return ctx.elem(cs)


def random_gamma(ctx: PrimeCtx, i: int, rng: random.Random) -> HomGamma:
    """Seeded random surjective gamma at level i.

    Each c_a is kappa**v_a times a random unit with v_a uniform in 5-p..3;
    the whole map is then rescaled by a power of kappa so that its image is
    exactly P^(2i+1).
    """
    p = ctx.p
    while True:
        coeffs = {a: random_unit(ctx, rng).mul_kappa(rng.randint(5 - p, 3)) for a in a_range(p)}
        g = HomGamma(ctx, i, coeffs)
        _, t = check_surjective(g)
        shift = 2 * i + 1 - t
        if shift == 0:
            return g
        if min(c.val() for c in coeffs.values()) + shift < 5 - p:
            continue  # cannot happen for gamma in H_i; kept as a guard
        return HomGamma(ctx, i, {a: c.mul_kappa(shift) for a, c in coeffs.items()})


def _nullspace_mod_p(rows: list, p: int) -> list:
    """Basis of {x : sum x_r rows[r] = 0 mod p}."""
    n = len(rows)
    if n == 0:
        return []
    ncols = len(rows[0])
    # eliminate on the transpose: columns of A^T are the rows
    mat = [[rows[r][c] % p for r in range(n)] for c in range(ncols)]
    pivots = []
    row = 0
    for col in range(n):
        sel = next((k for k in range(row, ncols) if mat[k][col]), None)
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = pow(mat[row][col], -1, p)
        mat[row] = [v * inv % p for v in mat[row]]
        for k in range(ncols):
            if k != row and mat[k][col]:
                f = mat[k][col]
                mat[k] = [(a - f * b) % p for a, b in zip(mat[k], mat[row])]
        pivots.append(col)
        row += 1
        if row == ncols:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        x = [0] * n
        x[fcol] = 1
        for r, pc in enumerate(pivots):
            x[pc] = (-mat[r][fcol]) % p
        basis.append(x)
    return basis


def hom_lattice_basis(ctx: PrimeCtx, i: int) -> list:
    """F_p-basis of the coefficient vectors (c_a) in P^(5-p)/P with image inside P^(2i+1).

    Each entry is a list of (a, t) -> digit pairs meaning c_a = sum digit * kappa^(5-p+t).
    Together with P * O^n these span every gamma in H_i.
    """
    key = ("homlattice", i)
    cached = ctx._cache.get(key)
    if cached is not None:
        return cached
    p, d = ctx.p, ctx.d
    s0 = 5 - p
    lo = 2 * i + 1 - d
    window = range(i, i + d)
    pairs = [(j, k) for j in window for k in window if j < k]
    images = {(a, j, k): theta_a_eval(a, ctx.kappa(j), ctx.kappa(k)) for a in a_range(p) for j, k in pairs}
    labels = [(a, t) for a in a_range(p) for t in range(1 - s0)]
    rows = []
    for a, t in labels:
        vec = []
        for j, k in pairs:
            # digits of kappa^s X are those of X moved up by s
            vec.extend(images[a, j, k].mul_kappa(s0 + t).kappa_digits(2 * i + 1, start=lo))
        rows.append(vec)
    basis = [[(labels[r], x[r]) for r in range(len(labels)) if x[r]] for x in _nullspace_mod_p(rows, p)]
    ctx._cache[key] = basis
    return basis


def random_gamma_lattice(ctx: PrimeCtx, i: int, rng: random.Random) -> HomGamma:
    """Seeded random surjective gamma drawn from the full coefficient lattice of H_i.

    Unlike :func:`random_gamma` this reaches maps whose coefficients have
    negative valuation through cancellation, so v and rho vary.
    """
    p, q = ctx.p, ctx.q
    basis = hom_lattice_basis(ctx, i)
    while True:
        coeffs = {a: random_unit(ctx, rng).mul_kappa(1) if rng.random() < 0.5 else ctx.zero() for a in a_range(p)}
        for vec in basis:
            w = rng.randrange(p)
            if not w:
                continue
            for (a, t), x in vec:
                coeffs[a] = coeffs[a] + ctx.kappa(5 - p + t).scale(w * x % p)
        try:
            g = HomGamma(ctx, i, coeffs)
        except InvalidGamma:
            continue
        _, t = check_surjective(g)
        if t < 2 * i + 1:
            raise InvalidGamma(f"lattice sample has image P^{t}, outside H_{i}")
        if t == 2 * i + 1:
            return g
        try:
            return HomGamma(ctx, i, {a: c.mul_kappa(2 * i + 1 - t) for a, c in g.coeffs.items()})
        except InvalidGamma:
            continue
