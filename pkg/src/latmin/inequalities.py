"""Executable checks for the counting inequalities, plus a seeded corpus.

Every check returns structured InequalityReport values.  These inequalities
are proved theorems, so a "violated" verdict on any instance means an
implementation bug; the batch runner treats violations as data and dumps the
offending instance for replay.

Tolerance policy: quantities derived from exact counts/volumes are compared
with tol 1e-9 (they are evaluated in IEEE doubles); Monte Carlo quantities
use a guard band of 4 standard errors + 1e-9 and are marked "inconclusive"
rather than "violated" inside the band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import List, Sequence, Tuple

from .enumeration import (DEFAULT_BUDGET, effective_sections, h0_hat, h0_hat_sef,
                          span_rank, strictly_effective_sections)
from .errors import ConfigError
from .minima import euler_characteristic, successive_minima
from .norms import (NormedModule, make_ellipsoid, make_normed_module,
                    make_polymax, twist)
from .rng import DetRNG, derive

EXACT_TOL = 1e-9


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    mode: str               # "exact" or "interval"
    instance_digest: str
    tol: float
    verdict: str            # "holds" | "violated" | "inconclusive"


def _report(name: str, lhs: float, rhs: float, digest: str,
            stderr: float = 0.0) -> InequalityReport:
    slack = rhs - lhs
    if stderr:
        mode = "interval"
        tol = 4.0 * stderr + EXACT_TOL
    else:
        mode = "exact"
        tol = EXACT_TOL
    if slack < -tol:
        verdict = "violated"
    elif mode == "interval" and slack < tol:
        verdict = "inconclusive"
    else:
        verdict = "holds"
    return InequalityReport(name, lhs, rhs, slack, slack >= -tol, mode,
                            digest, tol, verdict)


def _xlogx(n: int) -> float:
    # 0 log 0 = 0 by convention
    return n * math.log(n) if n > 0 else 0.0


LOG2 = math.log(2.0)
LOG3 = math.log(3.0)


def check_norm_scaling(module: NormedModule, alpha,
                       budget: int = DEFAULT_BUDGET) -> List[InequalityReport]:
    """Scaling bounds for h0 and h0_sef under a twist by -alpha."""
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ConfigError("alpha must be nonnegative")
    digest = module.digest()
    r = module.rank
    shrunk = twist(module, -alpha)
    h0 = h0_hat(module, budget)
    h0a = h0_hat(shrunk, budget)
    sef = h0_hat_sef(module, budget)
    sefa = h0_hat_sef(shrunk, budget)
    err = r * float(alpha) + r * LOG3
    return [
        _report("scaling-closed-lower", h0a, h0, digest),
        _report("scaling-closed-upper", h0, h0a + err, digest),
        _report("scaling-sef-lower", sefa, sef, digest),
        _report("scaling-sef-upper", sef, sefa + err, digest),
    ]


def check_sef_gap(module: NormedModule,
                  budget: int = DEFAULT_BUDGET) -> List[InequalityReport]:
    """h0_sef <= h0 <= h0_sef + r log 3."""
    digest = module.digest()
    h0 = h0_hat(module, budget)
    sef = h0_hat_sef(module, budget)
    return [
        _report("sef-gap-lower", sef, h0, digest),
        _report("sef-gap-upper", h0, sef + module.rank * LOG3, digest),
    ]


def check_filtration(module: NormedModule, alphas: Sequence,
                     budget: int = DEFAULT_BUDGET) -> List[InequalityReport]:
    """Filtration bounds over 0 = a_0 <= a_1 <= ... <= a_n."""
    alphas = [Fraction(a) for a in alphas]
    if not alphas or alphas[0] != 0:
        raise ConfigError("filtration must start at alpha_0 = 0")
    if any(b < a for a, b in zip(alphas, alphas[1:])):
        raise ConfigError("filtration alphas must be nondecreasing")
    digest = module.digest()
    ranks = []
    for a in alphas:
        sections = effective_sections(twist(module, -a), budget)
        ranks.append(span_rank(sections.vectors))
    r0 = ranks[0]
    h0 = h0_hat(module, budget)
    h0n = h0_hat(twist(module, -alphas[-1]), budget)
    sef = h0_hat_sef(module, budget)
    sefn = h0_hat_sef(twist(module, -alphas[-1]), budget)
    steps = [float(b - a) for a, b in zip(alphas, alphas[1:])]
    upper_sum = sum(ranks[i] * steps[i] for i in range(len(steps)))
    lower_sum = sum(ranks[i + 1] * steps[i] for i in range(len(steps)))
    up_err = 4.0 * _xlogx(r0) + 2.0 * r0 * LOG3
    low_err = 2.0 * _xlogx(r0) + r0 * LOG3
    return [
        _report("filtration-upper", h0, h0n + upper_sum + up_err, digest),
        _report("filtration-lower", lower_sum - low_err, h0, digest),
        _report("filtration-upper-sef", sef, sefn + upper_sum + up_err, digest),
        _report("filtration-lower-sef", lower_sum - low_err, sef, digest),
    ]


def check_second_minima(module: NormedModule, samples: int = 100_000,
                        seed: int = 0,
                        budget: int = DEFAULT_BUDGET) -> List[InequalityReport]:
    """Minkowski window: r log 2 - log r! <= chi - sum mu_i <= r log 2."""
    digest = module.digest()
    r = module.rank
    chi = euler_characteristic(module, samples, seed)
    minima = successive_minima(module, budget)
    gap = chi.value - sum(minima.mus)
    return [
        _report("minima-window-lower", r * LOG2 - math.lgamma(r + 1), gap,
                digest, chi.stderr),
        _report("minima-window-upper", gap, r * LOG2, digest, chi.stderr),
    ]


def check_gs_count(module: NormedModule,
                   budget: int = DEFAULT_BUDGET) -> List[InequalityReport]:
    """|h0 - sum max(mu_i, 0)| <= r log 3 + 2 r log r, and the sef variant."""
    digest = module.digest()
    r = module.rank
    minima = successive_minima(module, budget)
    summax = sum(max(m, 0.0) for m in minima.mus)
    bound = r * LOG3 + 2.0 * _xlogx(r)
    h0 = h0_hat(module, budget)
    sef = h0_hat_sef(module, budget)
    return [
        _report("minima-count", abs(h0 - summax), bound, digest),
        _report("minima-count-sef", abs(sef - summax), bound, digest),
    ]


def check_minkowski_count(module: NormedModule, samples: int = 100_000,
                          seed: int = 0,
                          budget: int = DEFAULT_BUDGET) -> InequalityReport:
    """chi <= h0 + r log 2."""
    digest = module.digest()
    chi = euler_characteristic(module, samples, seed)
    h0 = h0_hat(module, budget)
    return _report("minkowski-count", chi.value, h0 + module.rank * LOG2,
                   digest, chi.stderr)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 100
    rank_min: int = 1
    rank_max: int = 3
    norm_families: tuple = ("ellipsoid", "polymax")
    alpha_min: Fraction = Fraction(0)
    alpha_max: Fraction = Fraction(3)
    twist_lo: Fraction = Fraction(-1, 2)
    twist_hi: Fraction = Fraction(1, 2)
    filtration_max_len: int = 4
    budget: int = DEFAULT_BUDGET
    samples: int = 20_000

    def validate(self) -> None:
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not (1 <= self.rank_min <= self.rank_max <= 8):
            raise ConfigError("ranks must satisfy 1 <= rank_min <= rank_max <= 8")
        if not self.norm_families:
            raise ConfigError("at least one norm family required")
        for fam in self.norm_families:
            if fam not in ("ellipsoid", "polymax"):
                raise ConfigError(f"unknown norm family {fam!r}")


def random_module(seed: int, config: SuiteConfig) -> NormedModule:
    """Deterministic random instance: family, rank and norm data from seed."""
    rng = DetRNG(seed, 0xA11CE)
    rank = rng.randint(config.rank_min, config.rank_max)
    family = rng.choice(sorted(config.norm_families))
    if family == "ellipsoid":
        a = [[rng.randint(-3, 3) for _ in range(rank)] for _ in range(rank)]
        gram = [[sum(a[k][i] * a[k][j] for k in range(rank)) + (i == j)
                 for j in range(rank)] for i in range(rank)]
        spec = make_ellipsoid(gram)
    else:
        # diagonally dominant square part keeps the enclosing box small
        rows = []
        for k in range(rank):
            diag = Fraction(rng.randint(1, 4), rng.randint(1, 4))
            row = [diag * Fraction(rng.randint(-2, 2), 8 * rank)
                   for _ in range(rank)]
            row[k] = diag
            rows.append(row)
        for _ in range(rng.randint(0, 2)):
            rows.append([Fraction(rng.randint(-2, 2), rng.randint(1, 3))
                         for _ in range(rank)])
        spec = make_polymax(rows)
    module = make_normed_module(rank, spec)
    if rng.randint(0, 1):
        module = twist(module, rng.fraction(config.twist_lo, config.twist_hi))
    return module


# boundary-tight witnesses always included in the corpus
def witness_modules() -> List[NormedModule]:
    z1 = make_normed_module(1, make_polymax([["1/1"]]))
    box = make_normed_module(2, make_polymax([["1/4", "0/1"], ["0/1", "1/1"]]))
    return [z1, box]


def _run_checks(module: NormedModule, alpha: Fraction, alphas, config: SuiteConfig,
                seed: int) -> List[InequalityReport]:
    reports = []
    reports += check_norm_scaling(module, alpha, config.budget)
    reports += check_sef_gap(module, config.budget)
    reports += check_filtration(module, alphas, config.budget)
    reports += check_second_minima(module, config.samples, seed, config.budget)
    reports += check_gs_count(module, config.budget)
    reports.append(check_minkowski_count(module, config.samples, seed, config.budget))
    return reports


def run_suite(config: SuiteConfig) -> dict:
    """Run all checks over the seeded corpus; violations are returned as data."""
    config.validate()
    stats: dict = {}
    violations: list = []
    skipped = 0

    def record(rep: InequalityReport, module: NormedModule) -> None:
        s = stats.setdefault(rep.name, {"checked": 0, "holds": 0, "violations": 0,
                                        "inconclusive": 0, "min_slack": None})
        s["checked"] += 1
        if rep.verdict == "violated":
            s["violations"] += 1
            violations.append({"report": asdict(rep),
                               "instance": module.to_json()})
        elif rep.verdict == "inconclusive":
            s["inconclusive"] += 1
        else:
            s["holds"] += 1
        if s["min_slack"] is None or rep.slack < s["min_slack"]:
            s["min_slack"] = rep.slack

    jobs: List[Tuple[NormedModule, Fraction, list]] = []
    for i, wit in enumerate(witness_modules()):
        jobs.append((wit, Fraction(1), [Fraction(0), Fraction(1)]))
    for t in range(config.trials):
        mod = random_module(derive(config.seed, t), config)
        rng = DetRNG(config.seed, t, 0xC0FFEE)
        alpha = rng.fraction(config.alpha_min, config.alpha_max, 8)
        n = rng.randint(0, max(config.filtration_max_len - 1, 0))
        alphas = [Fraction(0)]
        for _ in range(n):
            alphas.append(alphas[-1] + rng.fraction(Fraction(0), Fraction(3, 4), 8))
        jobs.append((mod, alpha, alphas))

    from .errors import EnumerationBudgetExceeded
    for idx, (mod, alpha, alphas) in enumerate(jobs):
        try:
            for rep in _run_checks(mod, alpha, alphas, config, config.seed):
                record(rep, mod)
        except EnumerationBudgetExceeded:
            skipped += 1

    summary = {
        "suite": "counting",
        "trials": config.trials,
        "seed": config.seed,
        "instances": len(jobs),
        "skipped": skipped,
        "total_violations": sum(s["violations"] for s in stats.values()),
        "inequalities": {name: stats[name] for name in sorted(stats)},
        "violation_dumps": violations,
    }
    return summary
