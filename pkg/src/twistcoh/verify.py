"""The end-to-end verification driver behind ``twistcoh verify``."""

from __future__ import annotations

import itertools
import platform
import random
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .arith import (
    BivariatePoly,
    LaurentPoly,
    cyclo_inverse,
    cyclotomic,
    cyclotomic_field,
    q_binomial,
    q_factorial,
    qt_double_factorial,
    qt_primed_binomial,
    qt_primed_binomial_product,
    reduce_mod_cyclotomic,
    specialize,
)
from .coxeter import (
    INF,
    affine_a_graph,
    affine_b_graph,
    affine_c_graph,
    dihedral_graph,
    enumerate_weighted_poincare,
    euler_characteristic_kfin,
    exceptional_graph,
    minimal_coset_reps,
    path_graph,
    random_two_dimensional_graph,
    type_b_graph,
    type_d_graph,
)
from .groebner import GROEBNER_N_BOUND, verify_lemma_ideali1, verify_lemma_ideali2
from .homology import betti_at_point, cohomology_modules, cyclotomic_candidates
from .oracle import (
    compare,
    compare_ratio_table,
    compare_type_a,
    perturb_prediction,
    predicted_betti,
    predicted_mod_phi,
    ratio_theorem_table,
)
from .salvetti import (
    build_complex,
    coboundary_coefficient,
    coboundary_ratio,
    filtration_quotient,
    gamma_basis,
    reduce_complex_mod_phi,
    type_a_over_q,
)
from .shapiro import (
    check_braid_relations,
    check_conjugation_equivalence,
    check_pure_braid_abelian,
    induced_representation,
    tym_representation,
)

SCHEMA = "twistcoh.verify/1"
MAX_N = 10

TOGGLES = (
    "arith",
    "poincare",
    "complexes",
    "snf",
    "ratio",
    "betti",
    "type_a",
    "representations",
    "ideals",
    "euler",
)


@dataclass
class VerifyConfig:
    n_max: int = 6
    m_max: int | None = None
    seed: int = 0
    workers: int = 1
    betti_points: int = 20
    random_graphs: int = 10
    perturb_oracle: bool = False
    perturb_matrix: bool = False
    enabled: dict = field(default_factory=lambda: {k: True for k in TOGGLES})

    def validate(self):
        if not 1 <= self.n_max <= MAX_N:
            raise ValueError(f"n_max must lie in 1..{MAX_N}")
        if self.m_max is not None and not 1 <= self.m_max <= self.n_max:
            raise ValueError("m_max must lie in 1..n_max")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        unknown = set(self.enabled) - set(TOGGLES)
        if unknown:
            raise ValueError(f"unknown check toggles: {sorted(unknown)}")

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "m_max": self.m_max,
            "seed": self.seed,
            "workers": self.workers,
            "betti_points": self.betti_points,
            "random_graphs": self.random_graphs,
            "perturb_oracle": self.perturb_oracle,
            "perturb_matrix": self.perturb_matrix,
            "enabled": dict(self.enabled),
        }


@dataclass
class CheckRecord:
    name: str
    params: dict
    passed: bool
    details: dict
    seconds: float

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "details": self.details,
            "seconds": round(self.seconds, 3),
        }


@dataclass
class VerificationReport:
    metadata: dict
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "metadata": self.metadata,
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
        }

    def to_text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = [f"twistcoh verify  n_max={self.metadata['config']['n_max']}  seed={self.metadata['config']['seed']}"]
        for c in self.checks:
            lines.append(f"{c.name:<{width}}  {c.status}  {c.seconds:7.2f}s  {_summary(c)}")
        lines.append(f"overall: {self.status}")
        return "\n".join(lines)


def _summary(c: CheckRecord) -> str:
    d = c.details
    if not c.passed and "failures" in d and d["failures"]:
        return f"first failure: {d['failures'][0]}"
    if "error" in d:
        return d["error"]
    return d.get("summary", "")


# ---------------------------------------------------------------------------
# individual checks; each returns (passed, details)


def check_arith(cfg: VerifyConfig):
    failures = []
    t = BivariatePoly.monomial(1, 0, 1)
    q = BivariatePoly.monomial(1, 1, 0)
    if str(cyclotomic(6)) != "1 - q + q^2":
        failures.append("Phi_6")
    if q_binomial(4, 2).coeffs != (1, 1, 2, 1, 1):
        failures.append("q-binomial(4,2)")
    for m in range(2, 13):
        fld = cyclotomic_field(m)
        z = fld.gen()
        if z ** m != fld.one:
            failures.append(f"z^{m} != 1 in K_{m}")
        x = z + 2
        if x * cyclo_inverse(x) != fld.one:
            failures.append(f"inverse in K_{m}")
    for m in range(1, 7):
        for i in range(m + 1):
            if qt_primed_binomial(m, i) != qt_primed_binomial_product(m, i):
                failures.append(f"primed binomial ({m},{i})")
    if reduce_mod_cyclotomic(1 + t * q, 2).to_string() != "1 - t":
        failures.append("reduction of 1+tq mod Phi_2")
    if specialize(q ** -1 * t, 2, 3) != Fraction(3, 2):
        failures.append("specialization")
    if qt_double_factorial(2) != (1 + q) * (1 + t) * (1 + t * q):
        failures.append("[4]!!")
    return not failures, {"failures": failures, "summary": "ring identities and closed forms"}


def check_poincare(cfg: VerifyConfig):
    n_top = min(cfg.n_max, 6)
    failures = []
    for n in range(1, n_top + 1):
        w = enumerate_weighted_poincare(n)
        if w != qt_double_factorial(n):
            failures.append(f"Poincare series n={n}")
        reps, gen = minimal_coset_reps(n)
        if len(reps) != 2 ** n:
            failures.append(f"coset count n={n}")
        if gen * BivariatePoly.from_univariate(q_factorial(n), "q") != w:
            failures.append(f"coset factorization n={n}")
    return not failures, {"failures": failures, "summary": f"n <= {n_top}"}


def check_complexes(cfg: VerifyConfig):
    failures = []
    n_top = cfg.n_max
    for family in ("A", "B"):
        for n in range(1, n_top + 1):
            cx = build_complex(family, n, check=False)
            if not cx.d_squared_is_zero():
                failures.append(f"d^2 != 0 family {family} n={n}")
    for n in range(1, min(n_top, 8) + 1):
        for k in range(n):
            for g in gamma_basis(n, k):
                for j in range(1, n + 1):
                    if g[j - 1] == "0":
                        for family in ("A", "B"):
                            if coboundary_coefficient(n, g, j, family) != coboundary_ratio(n, g, j, family):
                                failures.append(f"coefficient {family} n={n} {g} j={j}")
    for n in range(1, n_top + 1):
        cx = build_complex("B", n, check=False)
        for s in range(n + 1):
            _, rep = filtration_quotient(n, s, cx)
            if not rep.matches:
                failures.append(f"filtration n={n} s={s}: {rep.mismatches[:1]}")
    return not failures, {"failures": failures, "summary": f"n <= {n_top}"}


def snf_job(n: int, m: int, perturb_oracle: bool = False, perturb_matrix: bool = False, seed: int = 0) -> dict:
    """One (n, m) comparison; module-level so a process pool can run it."""
    cx = build_complex("B", n)
    red = reduce_complex_mod_phi(cx, m)
    perturbed = None
    if perturb_matrix:
        # negative control: scale one nonzero entry of the top coboundary by (t + 2)
        mat = red.matrices[-1]
        one = LaurentPoly.one(red.zero.field, "t")
        tt = LaurentPoly.monomial(red.zero.field, 1, 1, "t")
        for r, row in enumerate(mat):
            for c, x in enumerate(row):
                if x:
                    row[c] = x * (tt + one + one)
                    perturbed = [n - 1, r, c]
                    break
            if perturbed:
                break
    # cohomology is meaningless unless d o d = 0 on the reduced complex
    broken = red.d_squared_failures()
    computed = cohomology_modules(red)
    pred = predicted_mod_phi(n, m)
    if perturb_oracle:
        pred = perturb_prediction(pred, random.Random(seed * 1000 + n * 31 + m))
    rep = compare(computed, pred)
    status, message = rep.status, rep.message()
    if broken:
        k, r, c = broken[0]
        status = "FAIL"
        message = f"FAIL d^{k + 1} o d^{k} != 0 at entry ({r}, {c}); " + message
    out = {
        "n": n,
        "m": m,
        "status": status,
        "message": message,
        "free_ranks": [d.free_rank for d in computed],
        "computed": [d.to_json() for d in computed],
    }
    if perturbed:
        out["perturbed_entry"] = perturbed
    if broken:
        out["d_squared_failure"] = list(broken[0])
    if m == 2 and not perturb_oracle and not perturb_matrix:
        r2 = compare_ratio_table(computed, ratio_theorem_table(n))
        out["ratio_status"] = r2.status
        out["ratio_message"] = r2.message()
    return out


def _snf_jobs(cfg: VerifyConfig, pool):
    m_top = cfg.m_max or cfg.n_max
    jobs = [(n, m) for n in range(1, cfg.n_max + 1) for m in range(1, min(n, m_top) + 1)]
    args = [(n, m, cfg.perturb_oracle, cfg.perturb_matrix, cfg.seed) for n, m in jobs]
    if pool is None:
        return [snf_job(*a) for a in args]
    return list(pool.map(snf_job, *zip(*args)))


def check_snf(cfg: VerifyConfig, results: list):
    failures = [f"n={r['n']} m={r['m']}: {r['message']}" for r in results if r["status"] != "PASS"]
    failures += [f"n={r['n']} m={r['m']}: free rank {r['free_ranks']}" for r in results if any(r["free_ranks"])]
    located = {f"{r['n']},{r['m']}": {"perturbed": r["perturbed_entry"], "d_squared": r.get("d_squared_failure")}
               for r in results if "perturbed_entry" in r}
    return not failures, {
        "failures": failures,
        "perturbations": located,
        "jobs": len(results),
        "summary": f"{len(results)} (n, m) pairs",
        "table": [[r["n"], r["m"], r["status"]] for r in results],
    }


def check_ratio(cfg: VerifyConfig, results: list):
    rows = [r for r in results if r["m"] == 2 and "ratio_status" in r]
    # n = 1 has no m = 2 job; its q = -1 computation is done here directly
    failures = [f"n={r['n']}: {r['ratio_message']}" for r in rows if r["ratio_status"] != "PASS"]
    cx = build_complex("B", 1)
    r1 = compare_ratio_table(cohomology_modules(reduce_complex_mod_phi(cx, 2)), ratio_theorem_table(1))
    if not r1.passed:
        failures.append(f"n=1: {r1.message()}")
    # consistency of the two closed forms at m = 2, independent of any computation
    for n in range(1, MAX_N + 1):
        pred = predicted_mod_phi(n, 2)
        table = ratio_theorem_table(n)
        for k in range(n + 1):
            exp = sum(f.span() for f in table.degree(k))
            got = sum(pred.degree(k).values())
            if exp != got:
                failures.append(f"closed forms disagree at n={n}, degree {k}")
    return not failures, {"failures": failures, "summary": f"n <= {cfg.n_max} computed, n <= {MAX_N} closed forms"}


def check_betti(cfg: VerifyConfig):
    rng = random.Random(cfg.seed)
    failures = []
    points = []
    for n in range(1, min(cfg.n_max, 6) + 1):
        cx = build_complex("B", n)
        for _ in range(cfg.betti_points):
            q0, t0 = _random_point(n, rng)
            got = betti_at_point(cx, q0, t0)
            exp = predicted_betti(n, q0, t0)
            points.append([n, str(q0), str(t0), got])
            if got != exp:
                failures.append(f"n={n} (q,t)=({q0},{t0}): computed {got}, predicted {exp}")
    return not failures, {"failures": failures, "points": points, "summary": f"{len(points)} points"}


def _random_point(n: int, rng: random.Random):
    """Seeded points, about half of them on the support of the predicted cohomology."""
    q0 = rng.choice([Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 3), Fraction(3, 2)])
    r = rng.random()
    if r < 0.4:
        t0 = -q0 ** (1 - n)
    elif r < 0.7:
        t0 = Fraction(rng.choice([1, -1]))
    else:
        t0 = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 5]))
    return q0, t0


def check_type_a(cfg: VerifyConfig):
    failures = []
    a_top = max(1, min(cfg.n_max - 1, 7))
    for a in range(1, a_top + 1):
        comp = cohomology_modules(type_a_over_q(a), cyclotomic_candidates(a + 1))
        rep = compare_type_a(a, comp)
        if not rep.passed:
            failures.append(f"a={a}: {rep.message()}")
    return not failures, {"failures": failures, "summary": f"a <= {a_top}"}


def check_representations(cfg: VerifyConfig):
    failures = []
    n_top = min(cfg.n_max, 6)
    for n in range(1, n_top + 1):
        if not check_braid_relations(tym_representation(n)):
            failures.append(f"braid relations (u-matrices) n={n}")
        if not check_braid_relations(induced_representation(n)):
            failures.append(f"braid relations (induced) n={n}")
        if not check_conjugation_equivalence(n):
            failures.append(f"conjugation identity n={n}")
        if check_conjugation_equivalence(n, BivariatePoly.monomial(1, -2, 1)):
            failures.append(f"wrong substitution accepted n={n}")
    for n in range(1, min(cfg.n_max, 4) + 1):
        if not check_pure_braid_abelian(tym_representation(n)):
            failures.append(f"pure braid images do not commute n={n}")
    return not failures, {"failures": failures, "summary": f"n <= {n_top}"}


def check_ideals(cfg: VerifyConfig):
    failures = []
    reports = []
    for n in range(1, min(cfg.n_max, GROEBNER_N_BOUND) + 1):
        r = verify_lemma_ideali1(n)
        reports.append(r.to_json())
        if not r.passed:
            failures.append(f"product decomposition n={n}: {r.details}")
        for k in range(2, n + 1):
            if n % k == 0:
                r = verify_lemma_ideali2(n, k)
                reports.append(r.to_json())
                if not r.passed:
                    failures.append(f"multiplication map n={n} k={k}: {r.details}")
    return not failures, {"failures": failures, "lemmas": len(reports), "summary": f"{len(reports)} lemma instances"}


def _finite_type_graphs(max_rank: int):
    out = []
    for n in range(1, max_rank + 1):
        out.append(path_graph(n))
        if n >= 2:
            out.append(type_b_graph(n))
        if n >= 4:
            out.append(type_d_graph(n))
    for name, rank in (("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4), ("H3", 3), ("H4", 4)):
        if rank <= max_rank:
            out.append(exceptional_graph(name))
    if max_rank >= 2:
        for m in range(5, 13):
            out.append(dihedral_graph(m))
    return out


def check_euler(cfg: VerifyConfig):
    failures = []
    n_top = min(cfg.n_max, 8)
    for n in range(2, n_top + 1):
        for name, g in (("A~", affine_a_graph(n)), ("B~", affine_b_graph(n) if n >= 3 else None),
                        ("C~", affine_c_graph(n))):
            if g is None:
                continue
            if euler_characteristic_kfin(g) != (-1) ** n:
                failures.append(f"{name}_{n}")
    rng = random.Random(cfg.seed + 1)
    for _ in range(cfg.random_graphs):
        n = rng.randint(3, 6)
        g = random_two_dimensional_graph(n, rng)
        m = sum(1 for i, j in itertools.combinations(g.vertices, 2) if g.label(i, j) != INF)
        if euler_characteristic_kfin(g) != 1 - n + m:
            failures.append(f"two-dimensional graph {g.to_text()!r}")
    for g in _finite_type_graphs(n_top):
        if euler_characteristic_kfin(g) != 0:
            failures.append(f"finite type {g.to_text()!r}")
    return not failures, {"failures": failures, "summary": f"affine rank <= {n_top + 1}"}


# ---------------------------------------------------------------------------


def _timed(name, params, fn, *args) -> CheckRecord:
    start = time.perf_counter()
    try:
        passed, details = fn(*args)
    except Exception as exc:  # any crash becomes a FAIL with diagnostics
        passed = False
        details = {"error": f"{type(exc).__name__}: {exc}", "traceback": traceback.format_exc(limit=5)}
    return CheckRecord(name, params, passed, details, time.perf_counter() - start)


def run_verify(cfg: VerifyConfig) -> VerificationReport:
    """Run the enabled checks in dependency order."""
    cfg.validate()
    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    checks: list[CheckRecord] = []
    on = dict(cfg.enabled)
    if cfg.perturb_oracle or cfg.perturb_matrix:
        # the q = -1 comparison has no negative-control variant
        on["ratio"] = False
    params = {"n_max": cfg.n_max}

    def failed(name):
        return any(c.name == name and not c.passed for c in checks)

    if on.get("arith", True):
        checks.append(_timed("arith", {}, check_arith, cfg))
    if on.get("poincare", True):
        checks.append(_timed("poincare", {"n_max": min(cfg.n_max, 6)}, check_poincare, cfg))
    if on.get("complexes", True):
        checks.append(_timed("complexes", params, check_complexes, cfg))

    snf_results = None
    if on.get("snf", True) or on.get("ratio", True):
        if failed("complexes"):
            for name in ("snf", "ratio"):
                if on.get(name, True):
                    checks.append(CheckRecord(name, params, False, {"error": "dependency 'complexes' failed"}, 0.0))
        else:
            start = time.perf_counter()
            try:
                if cfg.workers > 1:
                    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                        snf_results = _snf_jobs(cfg, pool)
                else:
                    snf_results = _snf_jobs(cfg, None)
                elapsed = time.perf_counter() - start
                if on.get("snf", True):
                    rec = _timed("snf", {**params, "m_max": cfg.m_max or cfg.n_max}, check_snf, cfg, snf_results)
                    rec.seconds += elapsed
                    checks.append(rec)
                if on.get("ratio", True):
                    checks.append(_timed("ratio", params, check_ratio, cfg, snf_results))
            except Exception as exc:
                for name in ("snf", "ratio"):
                    if on.get(name, True) and not any(c.name == name for c in checks):
                        checks.append(CheckRecord(name, params, False, {"error": f"{type(exc).__name__}: {exc}"},
                                                  time.perf_counter() - start))
    if on.get("betti", True):
        checks.append(_timed("betti", {"n_max": min(cfg.n_max, 6), "seed": cfg.seed}, check_betti, cfg))
    if on.get("type_a", True):
        checks.append(_timed("type_a", params, check_type_a, cfg))
    if on.get("representations", True):
        checks.append(_timed("representations", params, check_representations, cfg))
    if on.get("ideals", True):
        checks.append(_timed("ideals", {"n_max": min(cfg.n_max, GROEBNER_N_BOUND)}, check_ideals, cfg))
    if on.get("euler", True):
        checks.append(_timed("euler", {"seed": cfg.seed}, check_euler, cfg))

    metadata = {
        "version": __version__,
        "python": platform.python_version(),
        "started": started,
        "config": cfg.to_json(),
        "effective_checks": [c.name for c in checks],
    }
    return VerificationReport(metadata, checks)
