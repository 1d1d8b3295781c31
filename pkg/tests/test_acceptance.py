"""Acceptance criteria 1-7, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or directly as
``python3 tests/test_acceptance.py``.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from bifourier.bicomplex import E1, E2, ONE, ZERO, Bicomplex, IdempotentPair, from_idempotent, inverse, to_idempotent
from bifourier.parser import evaluate, lower_to_rational, parse, parse_spectrum, render_spectrum
from bifourier.rational import find_poles, residue_exp_kernel
from bifourier.transform import (
    RegionOfConvergence,
    exp_abs,
    forward_transform,
    inverse_at_zero,
    inverse_transform,
    roc_contains_four,
    roc_contains_idem,
)

from corpus import CORPUS, random_expressions
from oracles import contour_residue, exp_abs_spectrum, exp_kernel
from samplers import random_proper_rational

EXAMPLE2 = "0.5*(1/(w + 2 + i1/1) - 1/(w - 2 + i1/1))"


def _dist(x: Bicomplex, y) -> float:
    return max(abs(a - b) for a, b in zip(x.components(), Bicomplex.coerce(y).components()))


def report(number: int, title: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})")
    assert ok, detail


def test_criterion_1_two_sided_exponential():
    start = time.perf_counter()
    F = parse_spectrum("2/(1 + w^2)")
    worst = 0.0
    for t in np.linspace(-5, 5, 101):
        got = inverse_transform(F, float(t))
        err = _dist(got, math.exp(-abs(t)))
        worst = max(worst, err)
    at_zero = _dist(inverse_at_zero(F), ONE)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and at_zero <= 1e-6 and elapsed < 1.0
    report(1, "exp(-|t|) from 2/(1+w^2)", ok, f"max err {worst:.2e}, f(0) err {at_zero:.2e}, {elapsed:.3f}s")


def test_criterion_2_causal_damped_sine():
    start = time.perf_counter()
    F = parse_spectrum(EXAMPLE2)
    causal = max(_dist(inverse_transform(F, float(t)), ZERO) for t in np.linspace(-5, -0.05, 100))
    worst = 0.0
    for t in np.linspace(0.05, 5, 100):
        want = math.exp(-t) * math.sin(2 * t)
        worst = max(worst, _dist(inverse_transform(F, float(t)), want))
    at_zero = _dist(inverse_at_zero(F), ZERO)
    elapsed = time.perf_counter() - start
    ok = causal <= 1e-12 and worst <= 1e-9 and at_zero <= 1e-6 and elapsed < 1.0
    report(2, "causal exp(-t)sin(2t)", ok,
           f"t<0 max {causal:.2e}, t>0 err {worst:.2e}, f(0) {at_zero:.2e}, {elapsed:.3f}s")


def _interior_points(rng, count, roc):
    points = []
    while len(points) < count:
        p1 = complex(rng.uniform(-3, 3), rng.uniform(-0.9, 0.9))
        p2 = complex(rng.uniform(-3, 3), rng.uniform(-0.9, 0.9))
        w = from_idempotent(IdempotentPair(p1, p2))
        if roc_contains_idem(roc, w):
            points.append(w)
    return points


def test_criterion_3_forward_round_trip():
    start = time.perf_counter()
    f = exp_abs(1.0)
    rng = np.random.default_rng(2024)
    worst = 0.0
    for w in _interior_points(rng, 20, f.decay.roc()):
        got = to_idempotent(forward_transform(f, w))
        want = [exp_abs_spectrum(1.0, p) for p in to_idempotent(w)]
        worst = max(worst, *(abs(a - b) for a, b in zip(got, want)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 10.0
    report(3, "forward transform of exp(-|t|)", ok, f"max component err {worst:.2e}, {elapsed:.2f}s")


def test_criterion_4_algebra():
    rng = np.random.default_rng(4)
    hom = 0.0
    inv = 0.0
    for _ in range(10_000):
        x = Bicomplex(*rng.uniform(-10, 10, 4))
        y = Bicomplex(*rng.uniform(-10, 10, 4))
        lhs = to_idempotent(x * y)
        px, py = to_idempotent(x), to_idempotent(y)
        for got, want in ((lhs.p1, px.p1 * py.p1), (lhs.p2, px.p2 * py.p2)):
            hom = max(hom, abs(got - want) / abs(want))
        p = to_idempotent(x)
        if min(abs(p.p1), abs(p.p2)) > 1e-6:
            inv = max(inv, _dist(inverse(x) * x, ONE))
    identities = E1 * E1 == E1 and E2 * E2 == E2 and E1 * E2 == ZERO and E1 + E2 == ONE
    ok = hom <= 1e-12 and inv <= 1e-12 and identities
    report(4, "bicomplex algebra", ok, f"homomorphism rel {hom:.2e}, inverse {inv:.2e}, identities {identities}")


def test_criterion_5_roc_equivalence():
    rng = np.random.default_rng(5)
    n = 100_000
    disagree = 0
    boundary = 0
    for k in range(n):
        if k % 2:
            alpha, beta = rng.uniform(0.01, 3, 2)
            comps = rng.uniform(-4, 4, 4)
        else:
            # dyadic values make the strict inequalities land exactly on the boundary
            alpha, beta = rng.integers(1, 12, 2) / 4
            comps = rng.integers(-16, 17, 4) / 4
        roc = RegionOfConvergence(float(alpha), float(beta))
        w = Bicomplex(*map(float, comps))
        four, idem = roc_contains_four(roc, w), roc_contains_idem(roc, w)
        disagree += four != idem
        p = to_idempotent(w)
        boundary += any(q.imag in (-roc.alpha, roc.beta) for q in p)
    report(5, "ROC predicates agree", disagree == 0,
           f"{n} samples, {disagree} disagreements, {boundary} on the boundary")


def test_criterion_6_residues():
    rng = np.random.default_rng(6)
    worst = 0.0
    worst_sum = 0.0
    sums = 0
    for _ in range(50):
        r = random_proper_rational(rng)
        t = float(rng.uniform(-2, 2))
        ps = find_poles(r)
        for q in ps:
            others = [abs(o.location - q.location) for o in ps if o is not q]
            rho = min([1e-2] + [d / 2 for d in others])
            want = contour_residue(exp_kernel(r, t), q.location, rho)
            worst = max(worst, abs(residue_exp_kernel(r, q, t) - want) / abs(want))
        if r.den.degree - r.num.degree >= 2:
            worst_sum = max(worst_sum, abs(sum(residue_exp_kernel(r, q, 0.0) for q in ps)))
            sums += 1
    ok = worst <= 1e-8 and worst_sum <= 1e-10 and sums > 0
    report(6, "residues vs contour integrals", ok,
           f"max rel err {worst:.2e}, max residue sum {worst_sum:.2e} over {sums} rationals")


def _max_coeff_gap(F, G):
    gap = 0.0
    for a, b in zip(F, G):
        if (a.num.degree, a.den.degree) != (b.num.degree, b.den.degree):
            return math.inf
        for x, y in zip(a.num.coeffs + a.den.coeffs, b.num.coeffs + b.den.coeffs):
            gap = max(gap, abs(x - y) / max(1.0, abs(y)))
    return gap


def _eval_gap(src, ws):
    node = parse(src)
    F = lower_to_rational(node)
    gap = 0.0
    for w in ws:
        try:
            direct = to_idempotent(evaluate(node, float(w)))
        except ZeroDivisionError:
            continue
        # relative to the bicomplex magnitude, the accuracy floor of direct evaluation
        scale = max(abs(direct.p1), abs(direct.p2), 1e-300)
        for a, b in zip(direct, to_idempotent(F(float(w)))):
            gap = max(gap, abs(a - b) / scale)
    return gap


def test_criterion_7_parser():
    rng = np.random.default_rng(7)
    round_trip = max(_max_coeff_gap(parse_spectrum(render_spectrum(parse_spectrum(s))), parse_spectrum(s))
                     for s in CORPUS)
    sources = list(CORPUS)
    for src in random_expressions(77, 100):
        try:
            parse_spectrum(src)
        except ArithmeticError:
            continue
        sources.append(src)
    evaluation = max(_eval_gap(s, rng.uniform(-5, 5, 100)) for s in sources)
    ok = len(CORPUS) >= 30 and round_trip <= 1e-12 and evaluation <= 1e-9
    report(7, "DSL round trip and evaluation", ok,
           f"{len(CORPUS)} corpus, coeff gap {round_trip:.2e}, eval rel gap {evaluation:.2e} over {len(sources)} exprs")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
