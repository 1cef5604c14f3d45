"""Acceptance criteria 1-9; each prints one PASS/FAIL line with its runtime.

Run with ``pytest tests/test_acceptance.py -v -s`` or ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lieprings import cli  # noqa: E402
from lieprings.eigenframe import f_value, fg_factorization, g_value  # noqa: E402
from lieprings.errors import BoundViolation  # noqa: E402
from lieprings.homspace import a_range, default_precision, one_parameter  # noqa: E402
from lieprings.jacobi import compute_lambda  # noqa: E402
from lieprings.padic import galois, is_prime, make_context  # noqa: E402
from lieprings.verify import (  # noqa: E402
    check_liering,
    run_suite,
    sample_gamma,
    sample_liering_gamma,
    trial_seed,
)
from oracles import oracle_val, random_coords, theta_to_kappa  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
SEED = 20240601

Y2_CASES = [
    (7, 2, 3), (7, 3, 2), (7, 3, 5), (11, 4, 10),
    (13, 2, 4), (13, 4, 2), (13, 4, 5), (13, 4, 8), (13, 4, 11),
    (13, 5, 4), (13, 6, 3), (13, 6, 9),
]


def lam_row(p, a, i):
    return compute_lambda(one_parameter(make_context(p, default_precision(p, i)), a, i))


# -- criteria: each returns (ok, detail) -------------------------------------


def crit1(tmp):
    bad = []
    for kind in ("atable", "jtable"):
        for a in (2, 3):
            out = Path(tmp) / f"{kind}{a}.txt"
            code = cli.main([kind, "--p", "7", "--a", str(a), "--i", "0", "--out", str(out)])
            if code or out.read_bytes() != (GOLDEN / f"p7_{kind}_theta{a}_i0.txt").read_bytes():
                bad.append(f"{kind} a={a}")
    return not bad, "4/4 matrices identical" if not bad else "mismatch: " + ", ".join(bad)


def crit2(tmp):
    bad = []
    for i in range(12):
        r = lam_row(5, 2, i)
        if r.lam != 3 * i + 3 or r.y_main != 0:
            bad.append((i, r.lam))
    return not bad, "12 rows, lambda = 3i+3, y = 0" if not bad else f"bad rows {bad}"


def crit3(tmp):
    ys = {}
    for p in (7, 11, 13):
        for a in a_range(p):
            for i in range(14):
                ys[p, a, i] = lam_row(p, a, i).lam - (3 * i + 3)
    missing = [c for c in Y2_CASES if ys[c] != 2]
    out_of_range = [k for k, y in ys.items() if y not in (0, 1, 2)]
    ok = not missing and not out_of_range
    return ok, f"{len(ys)} rows; listed y=2 cases {len(Y2_CASES) - len(missing)}/{len(Y2_CASES)}; y outside 0..2: {len(out_of_range)}"


def crit4(tmp):
    violations = []
    n = 0
    for p in (5, 7, 11, 13):
        for t in range(100):
            rng = random.Random(trial_seed(SEED, 1000 * p + t))
            g = sample_gamma(rng, (p,))
            n += 1
            try:
                rep = compute_lambda(g)
            except BoundViolation as exc:
                violations.append((p, t, str(exc)))
                continue
            chain = (3 * g.i + 13 - 2 * p, rep.lower_bound, rep.lam, rep.upper_bound)
            if not all(x <= y for x, y in zip(chain, chain[1:])):
                violations.append((p, t, chain))
    return not violations, f"{n} gamma, {len(violations)} violations" + (f": {violations[:2]}" if violations else "")


def crit5(tmp):
    reps = [run_suite(s, 100, SEED) for s in ("lem53", "lem56", "lem59", "jlemma")]
    ok = all(r.ok for r in reps)
    return ok, "; ".join(r.summary() for r in reps)


def crit6(tmp):
    rep = run_suite("crosscheck", 50, SEED)
    return rep.ok, rep.summary() + ("" if rep.ok else f" first failure {rep.failures[0]}")


def crit7(tmp):
    # closed forms exactly as quoted for the criterion
    def F1(a):
        return a * (1 - a) ** 2 * (2 * a - 1) * (a * a + a - 1)

    def G1(a):
        return a * a * (1 - a) * (2 * a - 1) * (a * a - 3 * a + 1)

    f_bad, g_bad, fact_bad, total, flips = [], [], [], 0, 0
    for p in (p for p in range(5, 32) if is_prime(p)):
        for a in a_range(p):
            total += 1
            f1, g1 = f_value(a, p, 0, 1, 2), g_value(a, p, 0, 1, 2)
            f2, g2 = f_value(a, p, 0, 1, 4), g_value(a, p, 0, 1, 4)
            if F1(a) % p != f1:
                f_bad.append((p, a))
            if G1(a) % p != g1:
                g_bad.append((p, a))
                flips += (-G1(a)) % p == g1
            if (f2 * g1 - f1 * g2) % p != fg_factorization(a) % p:
                fact_bad.append((p, a))
    ok = not (f_bad or g_bad or fact_bad)
    detail = (
        f"{total} (p,a) pairs; F1 closed form mismatches {len(f_bad)}; "
        f"G1 closed form mismatches {len(g_bad)}"
        + (f", {flips} of them exact sign flips (six-term g = -closed form)" if g_bad else "")
        + f"; factorization mismatches {len(fact_bad)}"
    )
    return ok, detail


def crit8(tmp):
    fails = []
    big = 0
    for t in range(20):
        rng = random.Random(trial_seed(SEED, t))
        g = sample_liering_gamma(rng)
        big += g.i > g.p - 1
        fails += check_liering(g)
    return not fails, f"20 instances ({big} with i > p-1), {len(fails)} failures" + (f": {fails[:1]}" if fails else "")


def crit9(tmp):
    bad = 0
    n = 0
    for p in (5, 7):
        N = 3
        ctx = make_context(p, N)
        rng = random.Random(trial_seed(SEED, p))
        elems = []
        for t in range(200):
            if t % 2:
                cs = random_coords(rng, p, N)
                x = ctx.elem(cs)
            else:
                bs = [rng.randrange(p**N) * p ** rng.randrange(N) for _ in range(p - 1)]
                cs = theta_to_kappa(bs, p, N)
                x = ctx.from_theta_coeffs(bs)
            n += 1
            bad += x.val() != oracle_val(cs, p, N)
            elems.append(x)
        for x, y in zip(elems, elems[1:]):
            xy = x * y
            s = x.val() + y.val()
            if s < xy.prec and xy.val() != s:
                bad += 1
            for j in range(1, p):
                bad += galois(j, x).val() != x.val()
    return not bad, f"{n} elements vs membership oracle, mul and galois checks: {bad} failures"


CRITERIA = [
    (1, "golden p=7 tables", crit1, 1.0),
    (2, "p=5 lambda = 3i+3, y = 0", crit2, 5.0),
    (3, "experiment lists and y in {0,1,2}", crit3, 60.0),
    (4, "bound sandwich on random gamma", crit4, 120.0),
    (5, "table identity suites", crit5, None),
    (6, "dual-path agreement", crit6, 60.0),
    (7, "closed-form identities", crit7, 5.0),
    (8, "Lie ring boundary and class", crit8, 120.0),
    (9, "valuation kernel oracle", crit9, 10.0),
]


def evaluate(num, tmp):
    _, name, fn, limit = CRITERIA[num - 1]
    t0 = time.perf_counter()
    ok, detail = fn(tmp)
    dt = time.perf_counter() - t0
    timely = limit is None or dt < limit
    budget = f" < {limit:g} s" if limit is not None else ""
    status = "PASS" if ok and timely else "FAIL"
    line = f"criterion {num} [{name}]: {status} ({dt:.2f} s{budget}) {detail}"
    if not timely:
        line += " (over time budget)"
    return ok and timely, line


@pytest.mark.parametrize("num", [c[0] for c in CRITERIA])
def test_criterion(num, tmp_path, capsys):
    ok, line = evaluate(num, tmp_path)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    import tempfile

    results = []
    with tempfile.TemporaryDirectory() as tmp:
        for num, *_ in CRITERIA:
            ok, line = evaluate(num, tmp)
            print(line, flush=True)
            results.append(ok)
    sys.exit(0 if all(results) else 1)
