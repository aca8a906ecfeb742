"""Invariant suites over oracle-generated graph sets.

Each suite returns a list of :class:`Check` records, one per property, with
the first counterexample kept for reporting.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .graphs import AssignedGraph, FeynmanGraph, automorphism_order, external_labelings, loop_number
from .hopf import (
    H,
    as_generator,
    check_antipode,
    check_coassociativity,
    check_counit,
    check_grading,
    check_pi_ck_morphism,
    pi_ck,
    pi_ck_report,
)
from .multiscale import check_forest
from .wick import catalog, double_factorial, enumerate_pairings


@dataclass
class Check:
    name: str
    passed: int = 0
    total: int = 0
    counterexample: object = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def record(self, ok: bool, example=None):
        self.total += 1
        if ok:
            self.passed += 1
        elif self.counterexample is None:
            self.counterexample = example

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: {self.passed}/{self.total}{extra}"


@dataclass(frozen=True)
class GeneratorConfig:
    max_loops: int = 3
    rho: int = 3
    max_vertices: int = 4
    n_ext: tuple[int, ...] = (2, 4)
    self_loops: bool = False
    biped_free: bool = False


def unassigned_generators(cfg: GeneratorConfig = GeneratorConfig()) -> list[FeynmanGraph]:
    """Connected 1PI oracle classes with at least one edge, within the loop bound."""
    filters = ["one_pi"] + ([] if cfg.self_loops else ["no_self_loops"])
    if cfg.biped_free:
        filters.append("biped_free")
    out = []
    for n in cfg.n_ext:
        for c in catalog(cfg.max_vertices, n, filters):
            g = c.graph.to_feynman()
            if g.edges and loop_number(g) <= cfg.max_loops:
                out.append(g)
    return out


@lru_cache(maxsize=None)
def generator_set(cfg: GeneratorConfig = GeneratorConfig()) -> tuple[AssignedGraph, ...]:
    """Every canonical assigned graph over :func:`unassigned_generators` with scales ≤ ρ."""
    gens = set()
    for g in unassigned_generators(cfg):
        for mu in itertools.product(range(cfg.rho + 1), repeat=len(g.edges)):
            gens.add(as_generator(g.assign(mu)))
    return tuple(sorted(gens, key=lambda x: x.key))


def biped_free_quadrupeds(cfg: GeneratorConfig = GeneratorConfig()) -> tuple[AssignedGraph, ...]:
    sub = GeneratorConfig(cfg.max_loops, cfg.rho, cfg.max_vertices, (4,), cfg.self_loops, True)
    return generator_set(sub)


# ---------------------------------------------------------------------------
# suites


def suite_hopf(cfg: GeneratorConfig = GeneratorConfig()) -> list[Check]:
    checks = {k: Check(k) for k in ("coassociativity", "counit", "antipode", "grading")}
    fns = {
        "coassociativity": check_coassociativity,
        "counit": check_counit,
        "antipode": check_antipode,
        "grading": check_grading,
    }
    for G in generator_set(cfg):
        for k, fn in fns.items():
            checks[k].record(fn(G), G)
    return list(checks.values())


def suite_forest(cfg: GeneratorConfig = GeneratorConfig()) -> list[Check]:
    c = Check("forest lemma")
    for G in generator_set(cfg):
        c.record(check_forest(G), G)
    return [c]


def suite_antipode(cfg: GeneratorConfig = GeneratorConfig()) -> list[Check]:
    c = Check("recursive antipode = forest sum")
    for G in biped_free_quadrupeds(cfg):
        c.record(H.antipode(G) == H.antipode_by_forests(G), G)
    return [c]


def suite_morphism(cfg: GeneratorConfig = GeneratorConfig()) -> list[Check]:
    from .gntrees import check_gn_grading, check_pi_gn_morphism, check_pi_rt_morphism
    from .multiscale import gn_tree

    gn, rt, grading = Check("π_GN intertwines"), Check("π_RT intertwines"), Check("GN grading")
    for G in generator_set(cfg):
        T = gn_tree(G)
        gn.record(check_pi_gn_morphism(G), G)
        rt.record(check_pi_rt_morphism(T), G)
        grading.record(check_gn_grading(T), G)
    ck = Check("π_CK intertwines")
    for g in unassigned_generators(cfg):
        ck.record(check_pi_ck_morphism(g, min(cfg.rho, 2)), g)
    return [gn, rt, grading, ck]


def sunset_report(rho: int):
    from .graphs import sunset

    rep = pi_ck_report(sunset(), rho)
    total = sum(int(c) for _, c in pi_ck(sunset(), rho).items())
    return rep, total


def suite_sunset(cfg: GeneratorConfig = GeneratorConfig()) -> list[Check]:
    c = Check("sunset π_CK coefficients {6,3,3,1} and totals (ρ+1)^3")
    for rho in (2, 3):
        rep, total = sunset_report(rho)
        coeffs = sorted((x for r in rep for x in r.coefficients), reverse=True)
        c.record(coeffs == [6, 3, 3, 1] and total == (rho + 1) ** 3, (rho, rep, total))
    return [c]


def suite_renorm(cfg: GeneratorConfig = GeneratorConfig()) -> list[Check]:
    from .algebra import convolve
    from .polynomials import Poly
    from .renorm import (
        ToyAmplitude,
        check_coaction,
        counterterm_character,
        renormalized_amplitude,
        renormalized_by_forests,
        useful_counterterms,
    )

    cu_eq, ur_eq, coact, inverse_law = (
        Check("C_U recursion = τA∘S"),
        Check("A_UR coaction form = forest form"),
        Check("coaction axioms"),
        Check("C_U ∗ τA = ε"),
    )
    gens = biped_free_quadrupeds(cfg)
    for model in ("toy", "symbols"):
        A = ToyAmplitude(model)
        ta = A.tau_amplitude()
        inv = convolve(counterterm_character(A), ta)
        for G in gens:
            cu_eq.record(useful_counterterms(G, A) == ta(H.antipode(G)), (model, G))
            ur_eq.record(renormalized_amplitude(G, A) == renormalized_by_forests(G, A), (model, G))
            inverse_law.record(inv(G) == Poly(), (model, G))
    for G in gens:
        coact.record(check_coaction(G), G)
    return [cu_eq, ur_eq, coact, inverse_law]


def suite_oracle(cfg: GeneratorConfig = GeneratorConfig()) -> list[Check]:
    conc, totals = Check("graph-core σ, N = oracle σ, N"), Check("pairing totals = (2m-1)!!")
    for v in range(0, cfg.max_vertices + 1):
        for n in (0, 2, 4):
            u = enumerate_pairings(v, n)
            totals.record(u.total == double_factorial(4 * v + n - 1), (v, n))
            for c in u.classes:
                g = c.graph.to_feynman()
                ok = automorphism_order(g) == c.sigma and external_labelings(g) == c.n_labelings
                conc.record(ok, (v, n, c.graph))
    return [conc, totals]


def suite_effective(cfg: GeneratorConfig = GeneratorConfig(), pairs: int = 10, seed: int = 0) -> list[Check]:
    from .effective import (
        check_antimorphism,
        check_combinatorial_lemma,
        check_effective_corollary,
        delta_character,
        random_delta_characters,
    )
    from .graphs import bubble
    from .renorm import ToyAmplitude

    anti = Check("Ψ(β)∘Ψ(α) = Ψ(α∗β), order 3")
    for rho in (1, 2):
        for (g1, a), (g2, b) in random_delta_characters(rho, 3, pairs, seed):
            anti.record(check_antimorphism(delta_character(g1, a), delta_character(g2, b), rho, 3), (g1, g2))
    lemma = Check("combinatorial lemma, bubble into bubble")
    res = check_combinatorial_lemma(bubble(), bubble())
    lemma.record(res.holds and res.lhs == Fraction(9, 2), (res.lhs, res.rhs))
    cor = Check("bare = effective series, ρ=1, order 3")
    for model in ("toy", "local"):
        r = check_effective_corollary(ToyAmplitude(model), 1, 3)
        cor.record(r.holds, model)
    return [anti, lemma, cor]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "hopf": suite_hopf,
    "forest": suite_forest,
    "antipode": suite_antipode,
    "morphism": suite_morphism,
    "sunset": suite_sunset,
    "renorm": suite_renorm,
    "oracle": suite_oracle,
    "effective": suite_effective,
}


def run_suite(name: str, cfg: GeneratorConfig = GeneratorConfig()) -> tuple[list[Check], float]:
    start = time.perf_counter()
    if name == "all":
        out = []
        for k in SUITES:
            out += SUITES[k](cfg)
    else:
        out = SUITES[name](cfg)
    return out, time.perf_counter() - start
