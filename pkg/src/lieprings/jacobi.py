"""Jacobi defects J_gamma, the mod-p table J(j,k,l) and the invariant lambda(gamma)."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import BoundViolation, NotOneParameter, PrecisionExhausted
from .homspace import CoeffTable, HomGamma, coeff_table, gamma_eval
from .padic import INF, KElem


def jacobi_value(g: HomGamma, u: KElem, v: KElem, w: KElem) -> KElem:
    return gamma_eval(g, gamma_eval(g, u, v), w) + gamma_eval(g, gamma_eval(g, v, w), u) + gamma_eval(
        g, gamma_eval(g, w, u), v
    )


def jacobi_basis_value(g: HomGamma, j: int, k: int, l: int) -> KElem:
    """J_gamma(kappa^j, kappa^k, kappa^l), reusing the cached first-level images."""
    ctx = g.ctx
    return (
        gamma_eval(g, g.image(j, k), ctx.kappa(l))
        + gamma_eval(g, g.image(k, l), ctx.kappa(j))
        + gamma_eval(g, g.image(l, j), ctx.kappa(k))
    )


@dataclass
class JTable:
    """J(j,k,l) mod p over the window, computed from a CoeffTable alone."""

    table: CoeffTable
    values: list  # values[j-i][k-i][l-i]
    extended: set = field(default_factory=set)  # a-lookups that left the window

    def __call__(self, j: int, k: int, l: int) -> int:
        t = self.table
        i = t.window_base
        return self.values[t.reduce(j) - i][t.reduce(k) - i][t.reduce(l) - i]

    def rows(self, span: int | None = None) -> list:
        """Rows J(j, j+1, l) for j, l in the window (rows j, columns l)."""
        t = self.table
        i = t.window_base
        span = t.d if span is None else span
        return [[self(j, j + 1, l) for l in range(i, i + span)] for j in range(i, i + span)]


def j_entry(t: CoeffTable, j: int, k: int, l: int, extended: set | None = None) -> int:
    rho = t.rho
    if extended is not None:
        for m in (j + k + rho, k + l + rho, l + j + rho):
            if not t.in_window(m) and m < t.window_base:
                extended.add(m)
    return (
        t.a(j, k) * t.a(j + k + rho, l) + t.a(k, l) * t.a(k + l + rho, j) + t.a(l, j) * t.a(l + j + rho, k)
    ) % t.p


def j_table(t: CoeffTable) -> JTable:
    w = range(t.window_base, t.window_base + t.d)
    ext: set = set()
    values = [[[j_entry(t, j, k, l, ext) for l in w] for k in w] for j in w]
    return JTable(t, values, ext)


@dataclass(frozen=True)
class LambdaReport:
    p: int
    i: int
    lam: int
    witness: tuple
    rho: int
    v: int
    lower_bound: int
    upper_bound: int

    @property
    def y_main(self) -> int:
        return self.lam - (3 * self.i + 13 - 2 * self.p)

    @property
    def y(self) -> int:
        return self.y_main

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "i": self.i,
            "rho": self.rho,
            "v": self.v,
            "lambda": self.lam,
            "y": self.y_main,
            "witness": list(self.witness),
        }


def lambda_bounds(g: HomGamma, rho: int) -> tuple[int, int]:
    i, d = g.i, g.d
    return 3 * i + 3 + 2 * g.v, 3 * i + 3 * d - 6 + 2 * rho


def compute_lambda(g: HomGamma, table: CoeffTable | None = None, shortcut: bool = True) -> LambdaReport:
    """lambda(gamma) with the lexicographically least witness triple.

    J_gamma is alternating and trilinear over Z_p and kappa^i..kappa^(i+d-1)
    is a Z_p-basis of P^i, so the ideal J(gamma) is generated by the values on
    strictly increasing basis triples.  A triple with J(j,k,l) != 0 mod p has
    valuation exactly j+k+l+2rho; the others have larger valuation and are
    only evaluated when they could still beat the current minimum.
    """
    t = coeff_table(g) if table is None else table
    rho = t.rho
    lower, upper = lambda_bounds(g, rho)
    if g.ctx.M + 2 * min(g.v, 0) <= upper + 1:
        raise PrecisionExhausted(
            f"precision N={g.ctx.N} too small for the upper bound {upper} (v={g.v})"
        )
    triples = list(combinations(g.window, 3))
    best = INF
    for j, k, l in triples:
        if j_entry(t, j, k, l):
            best = min(best, j + k + l + 2 * rho)

    found = []
    for j, k, l in triples:
        base = j + k + l + 2 * rho
        if shortcut and j_entry(t, j, k, l):
            found.append((base, (j, k, l)))
            continue
        if shortcut and base + 1 > best:
            continue
        val = jacobi_basis_value(g, j, k, l).val()
        if val == INF:
            raise PrecisionExhausted(f"J_gamma on {(j, k, l)} vanishes to working precision")
        found.append((val, (j, k, l)))
    if not found:
        raise BoundViolation("no Jacobi defect found; lambda would be infinite")
    lam, witness = min(found)
    if not lower <= lam <= upper:
        raise BoundViolation(f"lambda={lam} outside [{lower}, {upper}] for p={g.p}, i={g.i}")
    if lam < 3 * g.i + 13 - 2 * g.p:
        raise BoundViolation(f"lambda={lam} below 3i+13-2p")
    return LambdaReport(g.p, g.i, lam, witness, rho, g.v, lower, upper)


def y_one_param(g: HomGamma, report: LambdaReport | None = None) -> int:
    """y = lambda - (3i+3) for gamma = c vartheta_a with c a unit."""
    if not g.is_one_parameter():
        raise NotOneParameter("gamma must be a unit multiple of a single vartheta_a")
    rep = compute_lambda(g) if report is None else report
    y = rep.lam - (3 * g.i + 3)
    if y not in (0, 1, 2):
        raise BoundViolation(f"one-parameter y={y} outside {{0,1,2}}")
    if g.p == 5 and y != 0:
        raise BoundViolation(f"p=5 requires y=0, got {y}")
    return y
