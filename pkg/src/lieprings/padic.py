"""Truncated arithmetic in Z_p[theta] and Q_p(theta), theta a primitive p-th root of unity.

Elements are stored in the kappa-power basis, kappa = theta - 1, which is a
uniformizer of the maximal order O.  An element is ``kappa**shift * A`` with
``A = sum(c_j kappa**j for j < d)`` and the ``c_j`` residues mod ``p**N``.
Because ``p*O = P**d``, the residues determine ``A`` modulo ``P**(d*N)``; each
element additionally carries an absolute precision ``prec`` (the element is
known modulo ``P**prec``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import (
    ContextMismatch,
    NotCoprime,
    NotPrime,
    ParseError,
    PrecisionExhausted,
    PrecisionTooSmall,
)

INF = math.inf

Vec = tuple  # tuple[int, ...] of length d, entries mod p**N


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def multiplicative_order(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ValueError("0 has no multiplicative order")
    k, y = 1, x
    while y != 1:
        y = y * x % p
        k += 1
    return k


def least_primitive_root(p: int) -> int:
    for r in range(2, p):
        if multiplicative_order(r, p) == p - 1:
            return r
    raise NotPrime(p)


def vp(n: int, p: int) -> int | float:
    """p-adic valuation of an integer (INF for 0)."""
    if n == 0:
        return INF
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def teichmuller(r: int, p: int, N: int) -> int:
    """(p-1)-th root of unity mod p**N congruent to r mod p (iterate x -> x**p)."""
    q = p**N
    x = r % q
    while True:
        y = pow(x, p, q)
        if y == x:
            return x
        x = y


@dataclass(frozen=True)
class PrimeCtx:
    """Arithmetic context for a prime ``p`` and coefficient precision ``N``.

    Use :func:`make_context` rather than calling this directly; it validates
    the input and shares one context object per ``(p, N)``.
    """

    p: int
    N: int
    d: int = field(init=False)
    M: int = field(init=False)
    q: int = field(init=False, repr=False)
    r: int = field(init=False)
    omega: int = field(init=False)
    kappa_min_poly: tuple = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        p, N = self.p, self.N
        d = p - 1
        q = p**N
        r = least_primitive_root(p)
        put = object.__setattr__
        put(self, "d", d)
        put(self, "M", d * N)
        put(self, "q", q)
        put(self, "r", r)
        put(self, "omega", teichmuller(r, p, N))
        # ((1+x)^p - 1)/x, constant term first
        put(self, "kappa_min_poly", tuple(comb(p, k + 1) for k in range(d + 1)))
        put(self, "_cache", {})

    # -- vector kernels (elements of O modulo p**N, kappa basis) ----------

    @property
    def _reduction(self) -> list:
        """Coefficient vectors of kappa**(d+t) for t = 0..d-2."""
        red = self._cache.get("reduction")
        if red is None:
            d, q = self.d, self.q
            top = [(-c) % q for c in self.kappa_min_poly[:d]]  # kappa^d
            red = [tuple(top)]
            for _ in range(d - 2):
                red.append(self._times_kappa(red[-1]))
            self._cache["reduction"] = red
        return red

    def _times_kappa(self, A: Sequence[int]) -> Vec:
        d, q = self.d, self.q
        top = A[d - 1]
        out = [0] + list(A[: d - 1])
        if top:
            phi = self.kappa_min_poly
            for k in range(d):
                out[k] = (out[k] - top * phi[k]) % q
        return tuple(out)

    def _raise_vec(self, A: Sequence[int], t: int) -> Vec:
        """Multiply by kappa**t (t >= 0) inside O."""
        if t == 0:
            return tuple(A)
        if t >= self.M:
            return (0,) * self.d
        if t < self.d:
            return self._mul_vec(A, tuple(1 if k == t else 0 for k in range(self.d)))
        return self._mul_vec(A, self._kappa_power_vec(t))

    def _kappa_power_vec(self, t: int) -> Vec:
        key = ("kpow", t)
        v = self._cache.get(key)
        if v is None:
            d = self.d
            if t < d:
                v = tuple(1 if k == t else 0 for k in range(d))
            elif t - d < d - 1:
                v = self._reduction[t - d]
            else:
                h = t // 2
                v = self._mul_vec(self._kappa_power_vec(h), self._kappa_power_vec(t - h))
            self._cache[key] = v
        return v

    def _mul_vec(self, A: Sequence[int], B: Sequence[int]) -> Vec:
        d, q = self.d, self.q
        prod = [0] * (2 * d - 1)
        for j, a in enumerate(A):
            if a:
                for k, b in enumerate(B):
                    if b:
                        prod[j + k] += a * b
        out = prod[:d]
        red = self._reduction
        for t in range(d - 1):
            c = prod[d + t]
            if c:
                row = red[t]
                for k in range(d):
                    out[k] += c * row[k]
        return tuple(x % q for x in out)

    def _div_kappa_vec(self, A: Sequence[int]) -> Vec:
        """Exact division by kappa of an element of O with c_0 = 0 mod p."""
        p, q, d = self.p, self.q, self.d
        c0 = A[0]
        if c0 % p:
            raise ValueError("element is not divisible by kappa")
        out = list(A[1:]) + [0]
        if c0:
            h = c0 // p
            phi = self.kappa_min_poly
            # p = -sum_{k>=1} phi_k kappa^k, so p/kappa = -sum_{k>=1} phi_k kappa^(k-1)
            for k in range(1, d + 1):
                out[k - 1] = (out[k - 1] - h * phi[k]) % q
        return tuple(out)

    def _inv_unit_vec(self, U: Sequence[int]) -> Vec:
        p, q, d = self.p, self.q, self.d
        c0 = U[0] % p
        if c0 == 0:
            raise ZeroDivisionError("not a unit of O")
        x = (pow(U[0], -1, q),) + (0,) * (d - 1)
        two = (2,) + (0,) * (d - 1)
        for _ in range(self.M.bit_length() + 1):
            ux = self._mul_vec(U, x)
            x = self._mul_vec(x, tuple((a - b) % q for a, b in zip(two, ux)))
        return x

    def _galois_data(self, j: int):
        """Images of kappa**k (k < d) under sigma_j, plus the unit u_j = sigma_j(kappa)/kappa."""
        key = ("gal", j)
        data = self._cache.get(key)
        if data is None:
            d, q = self.d, self.q
            # sigma_j(kappa) = kappa * u_j with u_j = sum_{n=1..j} C(j,n) kappa^(n-1),
            # a polynomial of degree j-1 < d
            unit = tuple(comb(j, n + 1) % q for n in range(d))
            sk = self._times_kappa(unit)
            imgs = [(1,) + (0,) * (d - 1)]
            for _ in range(1, d):
                imgs.append(self._mul_vec(imgs[-1], sk))
            data = (imgs, unit, self._inv_unit_vec(unit))
            self._cache[key] = data
        return data

    def _galois_unit_power(self, j: int, s: int) -> Vec:
        key = ("galpow", j, s)
        v = self._cache.get(key)
        if v is None:
            _, unit, inv = self._galois_data(j)
            base = unit if s >= 0 else inv
            n = abs(s)
            v = (1,) + (0,) * (self.d - 1)
            b = base
            while n:
                if n & 1:
                    v = self._mul_vec(v, b)
                n >>= 1
                if n:
                    b = self._mul_vec(b, b)
            self._cache[key] = v
        return v

    # -- element constructors ---------------------------------------------

    def elem(self, coeffs: Iterable[int], shift: int = 0, prec: int | None = None) -> "KElem":
        cs = tuple(int(c) % self.q for c in coeffs)
        if len(cs) != self.d:
            raise ValueError(f"expected {self.d} coefficients, got {len(cs)}")
        cap = shift + self.M
        return KElem(self, shift, cs, cap if prec is None else min(prec, cap))

    def zero(self) -> "KElem":
        return self.elem((0,) * self.d)

    def one(self) -> "KElem":
        return self.from_int(1)

    def from_int(self, n: int) -> "KElem":
        return self.elem((n,) + (0,) * (self.d - 1))

    def kappa(self, n: int = 1) -> "KElem":
        """kappa**n for any integer n (negative n gives an element of K)."""
        return self.elem((1,) + (0,) * (self.d - 1), shift=n)

    def theta(self) -> "KElem":
        return self.elem((1, 1) + (0,) * (self.d - 2))

    def from_theta_coeffs(self, coeffs: Sequence[int], shift: int = 0) -> "KElem":
        """kappa**shift * sum(b_n theta**n), converted to the kappa basis."""
        d, q = self.d, self.q
        acc = [0] * d
        tpow = (1,) + (0,) * (d - 1)
        th = self.theta().coeffs
        for b in coeffs:
            if b:
                acc = [(x + b * y) % q for x, y in zip(acc, tpow)]
            tpow = self._mul_vec(tpow, th)
        return self.elem(acc, shift=shift)

    def from_literal(self, lit: dict) -> "KElem":
        try:
            return self.elem(lit["coeffs"], shift=int(lit.get("shift", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad element literal {lit!r}: {exc}") from exc


@lru_cache(maxsize=None)
def make_context(p: int, N: int) -> PrimeCtx:
    """Build (or fetch) the arithmetic context for prime ``p >= 5`` at precision ``N``."""
    if not isinstance(p, int) or p < 5 or not is_prime(p):
        raise NotPrime(f"p must be a prime >= 5, got {p!r}")
    if N < 2:
        raise PrecisionTooSmall(f"precision N must be >= 2, got {N}")
    return PrimeCtx(p, N)


@dataclass(frozen=True, slots=True, eq=False)
class KElem:
    """Element ``kappa**shift * sum(coeffs[j] kappa**j)`` of K, known mod P**prec."""

    ctx: PrimeCtx
    shift: int
    coeffs: tuple
    prec: int

    def __repr__(self):
        return f"KElem(shift={self.shift}, coeffs={list(self.coeffs)}, prec={self.prec})"

    @property
    def known_prec(self) -> int:
        """Precision relative to the stored kappa shift."""
        return self.prec - self.shift

    def _coerce(self, other) -> "KElem":
        if isinstance(other, KElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        s = min(self.shift, other.shift)
        A = ctx._raise_vec(self.coeffs, self.shift - s)
        B = ctx._raise_vec(other.coeffs, other.shift - s)
        q = ctx.q
        return KElem(ctx, s, tuple((a + b) % q for a, b in zip(A, B)), min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        q = self.ctx.q
        return KElem(self.ctx, self.shift, tuple((-c) % q for c in self.coeffs), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        va = min(self.val(), self.prec)
        vb = min(other.val(), other.prec)
        shift = self.shift + other.shift
        prec = min(self.prec + vb, other.prec + va, shift + ctx.M)
        return KElem(ctx, shift, ctx._mul_vec(self.coeffs, other.coeffs), prec)

    __rmul__ = __mul__

    def scale(self, n: int) -> "KElem":
        """Multiply by a rational integer."""
        ctx = self.ctx
        q = ctx.q
        n %= q
        if n == 0:
            return KElem(ctx, self.shift, (0,) * ctx.d, self.shift + ctx.M)
        prec = min(self.prec + ctx.d * vp(n, ctx.p), self.shift + ctx.M)
        return KElem(ctx, self.shift, tuple(c * n % q for c in self.coeffs), prec)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).val() == INF

    __hash__ = None

    # -- valuation, digits -------------------------------------------------

    def val(self) -> int | float:
        """Valuation, or INF if the element vanishes modulo P**prec."""
        ctx = self.ctx
        d, p = ctx.d, ctx.p
        best = INF
        for j, c in enumerate(self.coeffs):
            if c:
                v = d * vp(c, p) + j
                if v < best:
                    best = v
        v = self.shift + best
        return v if v < self.prec else INF

    def is_zero(self) -> bool:
        return self.val() == INF

    def mul_kappa(self, t: int) -> "KElem":
        return KElem(self.ctx, self.shift + t, self.coeffs, self.prec + t)

    def div_kappa(self, t: int) -> "KElem":
        """Semantic value ``self * kappa**-t``; absolute precision drops by t."""
        return KElem(self.ctx, self.shift - t, self.coeffs, self.prec - t)

    def normalized(self) -> "KElem":
        """Same element with the stored shift equal to its valuation."""
        v = self.val()
        if v == INF or v == self.shift:
            return self
        ctx = self.ctx
        A = self.coeffs
        for _ in range(v - self.shift):
            A = ctx._div_kappa_vec(A)
        return KElem(ctx, v, A, self.prec)

    def coords(self, base: int) -> tuple:
        """Coefficients x_j with self = sum(x_j kappa**(base+j)) mod p**N.

        Requires ``val(self) >= base``.
        """
        v = self.val()
        if v < base:
            raise ValueError(f"valuation {v} below requested base {base}")
        ctx = self.ctx
        if self.shift >= base:
            return ctx._raise_vec(self.coeffs, self.shift - base)
        A = self.coeffs
        for _ in range(base - self.shift):
            A = ctx._div_kappa_vec(A)
        return A

    def kappa_digits(self, upto: int, start: int = 0) -> list:
        """Canonical digits b_n in 0..p-1, n in [start, upto), with self = sum b_n kappa**n mod P**upto."""
        if upto > self.prec:
            raise PrecisionExhausted(f"digit {upto - 1} requested, element known mod P^{self.prec}")
        ctx = self.ctx
        p = ctx.p
        out = [0] * max(upto - start, 0)
        v = self.val()
        if v == INF or v >= upto:
            return out
        if v < start:
            raise ValueError(f"element has valuation {v} < start {start}")
        e = self.normalized()
        A = e.coeffs
        pos = v
        q = ctx.q
        while pos < upto:
            b = A[0] % p
            out[pos - start] = b
            pos += 1
            if pos < upto:
                A = ctx._div_kappa_vec(((A[0] - b) % q,) + tuple(A[1:]))
        return out

    def leading_coeff(self, t: int) -> int:
        """Digit at position t, after checking that val(self) >= t."""
        if t >= self.prec:
            raise PrecisionExhausted(f"digit {t} requested, element known mod P^{self.prec}")
        v = self.val()
        if v < t:
            raise ValueError(f"valuation {v} < {t}")
        if v > t:
            return 0
        return self.normalized().coeffs[0] % self.ctx.p

    # -- serialization -----------------------------------------------------

    def to_literal(self) -> dict:
        return {"shift": self.shift, "coeffs": list(self.coeffs)}


def galois(j: int, a: KElem) -> KElem:
    """Apply sigma_j: theta -> theta**j."""
    ctx = a.ctx
    j %= ctx.p
    if j == 0:
        raise NotCoprime(f"{j} is not coprime to {ctx.p}")
    if j == 1:
        return a
    imgs, _, _ = ctx._galois_data(j)
    d, q = ctx.d, ctx.q
    acc = [0] * d
    for c, img in zip(a.coeffs, imgs):
        if c:
            for k in range(d):
                acc[k] += c * img[k]
    A = tuple(x % q for x in acc)
    if a.shift:
        A = ctx._mul_vec(A, ctx._galois_unit_power(j, a.shift))
    return KElem(ctx, a.shift, A, a.prec)


def eigenvector(ctx: PrimeCtx, x: int) -> KElem:
    """Eigenvector e_x of sigma = sigma_r with sigma(e_x) = omega**x e_x and val(e_x) = x.

    Obtained by averaging kappa**x over the Galois group; the leading
    kappa-digit of the result is 1.
    """
    if x < 0 or x >= ctx.M - ctx.d:
        raise PrecisionExhausted(f"eigenvector index {x} outside [0, {ctx.M - ctx.d})")
    key = ("eig", x)
    e = ctx._cache.get(key)
    if e is None:
        p, d, q = ctx.p, ctx.d, ctx.q
        kx = ctx.kappa(x)
        total = ctx.zero().mul_kappa(x)
        j = 1
        for m in range(d):
            w = pow(ctx.omega, (-x * m) % d, q)
            total = total + galois(j, kx).scale(w)
            j = j * ctx.r % p
        e = total.scale(pow(d, -1, q))
        if e.leading_coeff(x) != 1:
            e = e.scale(pow(e.leading_coeff(x), -1, q))
        ctx._cache[key] = e
    return e
