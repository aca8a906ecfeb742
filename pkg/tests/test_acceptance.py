"""Acceptance criteria 1-9, exact arithmetic throughout.

Each test prints one ``PASS``/``FAIL`` line; run with ``pytest -s`` or ``-v``
to see them alongside the pytest report.
"""
import time
from fractions import Fraction

import pytest

from mshopf.effective import (
    check_antimorphism,
    check_combinatorial_lemma,
    check_effective_corollary,
    delta_character,
    random_delta_characters,
)
from mshopf.graphs import bubble
from mshopf.hopf import H
from mshopf.renorm import ToyAmplitude, useful_counterterms
from mshopf.verify import (
    GeneratorConfig,
    biped_free_quadrupeds,
    generator_set,
    suite_forest,
    suite_hopf,
    suite_oracle,
    sunset_report,
)
from mshopf.wick import oracle_insertions, oracle_N, oracle_sigma

CFG = GeneratorConfig(max_loops=3, rho=3, max_vertices=4)


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail

    return emit


def _summary(checks):
    return "; ".join(c.line() for c in checks)


def test_1_hopf_axioms(report):
    start = time.perf_counter()
    n = len(generator_set(CFG))
    built = time.perf_counter()
    checks = suite_hopf(CFG)
    elapsed = time.perf_counter() - start
    ok = all(c.ok for c in checks) and elapsed < 60
    report(1, ok, f"{_summary(checks)}; {n} generators built in {built - start:.1f}s, {elapsed:.1f}s total")


def test_2_forest_lemma(report):
    checks = suite_forest(CFG)
    report(2, all(c.ok for c in checks), _summary(checks))


def test_3_antipode_oracle(report):
    gens = biped_free_quadrupeds(CFG)
    bad = [G for G in gens if H.antipode(G) != H.antipode_by_forests(G)]
    report(3, not bad and len(gens) > 0, f"{len(gens) - len(bad)}/{len(gens)} biped-free quadrupeds")


def test_4_sunset_morphism(report):
    lines, ok = [], True
    for rho in (2, 3):
        rep, total = sunset_report(rho)
        coeffs = sorted((c for r in rep for c in r.coefficients), reverse=True)
        ok &= coeffs == [6, 3, 3, 1] and total == (rho + 1) ** 3
        lines.append(f"ρ={rho} coefficients {coeffs} total {total}")
    report(4, ok, "; ".join(lines))


def test_5_combinatorial_lemma(report):
    res = check_combinatorial_lemma(bubble(), bubble(), source="oracle")
    b = bubble()
    w_b = Fraction(oracle_N(b), oracle_sigma(b))
    parts = []
    for g, w, n in res.terms:
        assert w == Fraction(oracle_N(g), oracle_sigma(g))
        assert n == oracle_insertions(b, b, g)
        parts.append(f"{w}×{n}")
    ok = res.lhs == res.rhs == Fraction(9, 2) and res.rhs == w_b * w_b * 2
    report(5, ok, f"{' + '.join(parts)} = {res.lhs}; {w_b}×{w_b}×2 = {res.rhs}")


def test_6_oracle_concordance(report):
    checks = suite_oracle(CFG)
    report(6, all(c.ok for c in checks), _summary(checks))


def test_7_counterterm_equivalence(report):
    gens = biped_free_quadrupeds(CFG)
    assert all(G.loops <= 3 for G in gens)
    lines, ok = [], True
    for model in ("toy", "symbols"):
        A = ToyAmplitude(model)
        ta = A.tau_amplitude()
        good = sum(useful_counterterms(G, A) == ta(H.antipode(G)) for G in gens)
        ok &= good == len(gens)
        lines.append(f"{model} {good}/{len(gens)}")
    report(7, ok, "; ".join(lines))


def test_8_antimorphism(report):
    lines, ok = [], True
    for rho in (1, 2):
        pairs = random_delta_characters(rho, 3, 10, seed=rho)
        good = sum(
            check_antimorphism(delta_character(g1, a), delta_character(g2, b), rho, 3)
            for (g1, a), (g2, b) in pairs
        )
        ok &= good == len(pairs) == 10
        lines.append(f"ρ={rho} {good}/10")
    report(8, ok, "; ".join(lines))


def test_9_effective_corollary(report):
    res = check_effective_corollary(ToyAmplitude("toy"), rho=1, order=3)
    rows = [f"λ^{n}: {b == e}" for n, b, e in res.coefficients()]
    ok = res.holds and all(b == e for _, b, e in res.coefficients())
    report(9, ok, ", ".join(rows))
