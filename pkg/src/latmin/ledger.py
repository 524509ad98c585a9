"""Abstract reduction ledgers and closed-form bound evaluators.

A Ledger records the arithmetic shadow of a degree-reduction sequence: per
step a Q-degree d_i, a Q-rank r_i, an absolute minimum c_i >= 0 and a
nonnegative intersection slack.  The geometric construction itself is out of
scope; its arithmetic consequences (derived self-intersections, chained
count bounds, closed-form constants) are all mechanically checkable here.

All evaluation is double precision; comparisons use tolerance 1e-9.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, asdict
from typing import List, Tuple

from .errors import ConfigError, InfeasibleLedger, PreconditionViolated
from .inequalities import InequalityReport, _report
from .minima import log_unit_ball_volume
from .rng import DetRNG

MODES = ("positive-genus", "genus-zero", "clifford-hyperelliptic",
         "clifford-nonhyperelliptic")

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)
LOG2PI = math.log(2.0 * math.pi)

_FEAS_TOL = 1e-12


@dataclass(frozen=True)
class LedgerStep:
    d: int        # deg over Q (already multiplied by kappa)
    r: int        # h^0 over Q
    c: float      # absolute minimum, >= 0
    slack: float  # nonnegative intersection term


@dataclass(frozen=True)
class Ledger:
    g: int
    kappa: int
    steps: Tuple[LedgerStep, ...]
    L2_0: float
    mode: str

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"unknown ledger mode {self.mode!r}")
        if self.g < 0 or self.kappa < 1:
            raise ConfigError("need g >= 0 and kappa >= 1")
        if not self.steps:
            raise ConfigError("ledger needs at least one step")
        if self.L2_0 < 0:
            raise ConfigError("L2_0 must be nonnegative")
        prev_d = None
        for i, s in enumerate(self.steps):
            if s.d <= 0 or s.r <= 0:
                raise ConfigError(f"step {i}: d and r must be positive")
            if s.c < 0 or s.slack < 0:
                raise ConfigError(f"step {i}: c and slack must be nonnegative")
            if prev_d is not None and s.d >= prev_d:
                raise ConfigError(f"step {i}: degrees must strictly decrease")
            prev_d = s.d
            if self.mode == "positive-genus":
                if s.r > s.d:
                    raise ConfigError(f"step {i}: positive genus needs r <= d")
            elif self.mode == "genus-zero":
                if s.r != s.d + self.kappa:
                    raise ConfigError(f"step {i}: genus zero needs r = d + kappa")
            else:
                if s.r > s.d / 2 + self.kappa:
                    raise ConfigError(f"step {i}: Clifford needs r <= d/2 + kappa")

    def to_json(self) -> dict:
        return {"g": self.g, "kappa": self.kappa, "mode": self.mode,
                "L2_0": self.L2_0,
                "steps": [asdict(s) for s in self.steps]}

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def ledger_from_json(data: dict) -> Ledger:
    try:
        steps = tuple(LedgerStep(int(s["d"]), int(s["r"]), float(s["c"]),
                                 float(s["slack"])) for s in data["steps"])
        ledger = Ledger(int(data["g"]), int(data["kappa"]), steps,
                        float(data["L2_0"]), str(data["mode"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad ledger JSON: {exc}") from exc
    ledger.validate()
    return ledger


def derived_intersections(ledger: Ledger) -> Tuple[List[float], List[float]]:
    """Forward sequences L_i^2 and L_i'^2 = L_i^2 - 2 d_i c_i."""
    ledger.validate()
    l2 = [ledger.L2_0]
    l2p = []
    for i, s in enumerate(ledger.steps):
        prime = l2[i] - 2.0 * s.d * s.c
        if prime < -_FEAS_TOL:
            raise InfeasibleLedger(f"L'_{i}^2 = {prime} < 0")
        l2p.append(prime)
        nxt = prime - s.slack
        if nxt < -_FEAS_TOL:
            raise InfeasibleLedger(f"L_{i + 1}^2 = {nxt} < 0")
        if i + 1 < len(ledger.steps):
            l2.append(nxt)
    return l2, l2p


def onestep_chain(ledger: Ledger, j: int) -> Tuple[InequalityReport, InequalityReport]:
    """Intersection chain at step j plus the evaluated count-side bound.

    The count bound treats the terminal section count as 0 (the reduction's
    endpoint), so its numeric value is sum r_i c_i + 4 r_0 log r_0 +
    2 r_0 log 3 over i <= j; it is carried in the second report's lhs/rhs.
    """
    if not (0 <= j < len(ledger.steps)):
        raise ConfigError(f"step index {j} out of range")
    l2, l2p = derived_intersections(ledger)
    digest = ledger.digest()
    lhs = l2p[j] + 2.0 * sum(s.d * s.c for s in ledger.steps[: j + 1])
    first = _report("chain-intersection", lhs, ledger.L2_0, digest)
    r0 = ledger.steps[0].r
    value = (sum(s.r * s.c for s in ledger.steps[: j + 1])
             + 4.0 * r0 * math.log(r0) + 2.0 * r0 * LOG3)
    second = _report("chain-count-bound", value, value, digest)
    return first, second


def sum_ci_bound(ledger: Ledger) -> InequalityReport:
    """c_0 + sum c_i <= L^2 / d_0 (must hold for every feasible ledger)."""
    derived_intersections(ledger)
    lhs = ledger.steps[0].c + sum(s.c for s in ledger.steps)
    rhs = ledger.L2_0 / ledger.steps[0].d
    return _report("sum-ci", lhs, rhs, ledger.digest())


def trivial_bound(r_minus: int, deg_LQ: int, L2: float) -> float:
    """(r_minus / deg) * L^2 + r_minus log 3."""
    if r_minus < 1 or deg_LQ < 1:
        raise PreconditionViolated("need r_minus >= 1 and deg >= 1")
    if L2 < 0:
        raise PreconditionViolated("L2 must be nonnegative")
    return (r_minus / deg_LQ) * L2 + r_minus * LOG3


def theorem_b_bound(g: int, d_circ: int, kappa: int, L2: float) -> float:
    """Closed-form count bound: L2/2 + 4d log(3d) for g > 0, and the
    (1/2 + 1/d)-coefficient variant with r = (d + 1) kappa for g = 0."""
    if kappa < 1 or L2 < 0:
        raise PreconditionViolated("need kappa >= 1 and L2 >= 0")
    if g > 0:
        if d_circ <= 1:
            raise PreconditionViolated("g > 0 needs d_circ > 1")
        d = d_circ * kappa
        return 0.5 * L2 + 4.0 * d * math.log(3.0 * d)
    if g == 0:
        if d_circ <= 0:
            raise PreconditionViolated("g = 0 needs d_circ > 0")
        r = (d_circ + 1) * kappa
        return (0.5 + 1.0 / d_circ) * L2 + 4.0 * r * math.log(3.0 * r)
    raise PreconditionViolated("genus must be nonnegative")


def theorem_c_bound(d_circ: int, kappa: int, eps: int, L2: float) -> float:
    """(1/4 + eps/(2 d_circ)) L2 + 4d log(3d) with d = d_circ * kappa."""
    if d_circ <= 1:
        raise PreconditionViolated("theorem C needs d_circ > 1")
    if eps not in (1, 2):
        raise PreconditionViolated("eps must be 1 or 2")
    if kappa < 1 or L2 < 0:
        raise PreconditionViolated("need kappa >= 1 and L2 >= 0")
    d = d_circ * kappa
    return (0.25 + eps / (2.0 * d_circ)) * L2 + 4.0 * d * math.log(3.0 * d)


def theorem_d_bound(g: int, kappa: int, eps: int, omega2: float) -> float:
    """Canonical-bundle case; identical to theorem_c_bound at d_circ = 2g-2."""
    if g <= 1:
        raise PreconditionViolated("theorem D needs g > 1")
    if eps not in (1, 2):
        raise PreconditionViolated("eps must be 1 or 2")
    if kappa < 1 or omega2 < 0:
        raise PreconditionViolated("need kappa >= 1 and omega2 >= 0")
    d = (2 * g - 2) * kappa
    return ((g + eps - 1) / (4.0 * (g - 1))) * omega2 + 4.0 * d * math.log(3.0 * d)


def deg_one_bound(g: int, kappa: int, L2: float) -> float:
    """Degree-one case: L2 + kappa log 3 (g > 0) or L2 + 5 kappa log 3 (g = 0)."""
    if kappa < 1 or L2 < 0 or g < 0:
        raise PreconditionViolated("need kappa >= 1, L2 >= 0, g >= 0")
    if g > 0:
        return L2 + kappa * LOG3
    return L2 + 5.0 * kappa * LOG3


def chi_ok(g: int, r1: int, r2: int, absD: float) -> float:
    """r1 log V(g) + r2 log V(2g) - (g/2) log |D_K|."""
    if g < 1 or r1 < 0 or r2 < 0 or absD < 1:
        raise PreconditionViolated("need g >= 1, r1, r2 >= 0, absD >= 1")
    return (r1 * log_unit_ball_volume(g) + r2 * log_unit_ball_volume(2 * g)
            - 0.5 * g * math.log(absD))


def stirling_check(g: int, r1: int, r2: int) -> InequalityReport:
    """r1 log V(g) + r2 log V(2g) >= (r/2) log(2 pi) - (r/2) log r."""
    if g < 1 or r1 < 0 or r2 < 0 or r1 + r2 < 1:
        raise PreconditionViolated("need g >= 1 and at least one embedding")
    r = g * (r1 + 2 * r2)
    lhs = 0.5 * r * LOG2PI - 0.5 * r * math.log(r)
    rhs = r1 * log_unit_ball_volume(g) + r2 * log_unit_ball_volume(2 * g)
    return _report("stirling-chi-ok", lhs, rhs, f"g{g}-r1{r1}-r2{r2}")


def noether_chi_fal(omega2: float, delta: float, g: int, kappa: int) -> float:
    """chi_Fal = (omega^2 + delta)/12 - (1/3) g kappa log(2 pi)."""
    return (omega2 + delta) / 12.0 - (g * kappa / 3.0) * LOG2PI


@dataclass(frozen=True)
class ArithmeticContext:
    g: int
    kappa: int
    eps: int
    absD: float
    r1: int
    r2: int
    omega2: float
    delta: float
    gamma: float

    def validate(self) -> None:
        if self.g < 2:
            raise PreconditionViolated("context needs g >= 2")
        if self.kappa < 1 or self.r1 < 0 or self.r2 < 0:
            raise ConfigError("need kappa >= 1 and r1, r2 >= 0")
        if self.r1 + 2 * self.r2 != self.kappa:
            raise ConfigError("embedding split must satisfy r1 + 2 r2 = kappa")
        if self.eps not in (1, 2):
            raise ConfigError("eps must be 1 or 2")
        if self.absD < 1:
            raise ConfigError("absD must be >= 1")
        if self.omega2 < 0:
            raise ConfigError("omega2 must be nonnegative")


# exact integer coefficients of C(g, K) = 2g log|D_K| + 18 d log d + 25 d
C_LOG_ABSD_PER_G = 2
C_DLOGD = 18
C_D = 25


def c_constant(g: int, kappa: int, absD: float) -> float:
    d = (2 * g - 2) * kappa
    return (C_LOG_ABSD_PER_G * g * math.log(absD)
            + C_DLOGD * d * math.log(d) + C_D * d)


@dataclass(frozen=True)
class CorollaryEReport:
    c_value: float
    rhs_omega: float       # (2 + 3 eps/(g-1)) omega^2 + 12 gamma + 3 C
    rhs_chi: float         # (8 + 4 eps/(g-1+eps)) chi_Fal + (4(g-1)/(g-1+eps)) gamma + C
    delta: float
    holds_omega: bool
    holds_chi: bool


def corollary_e(ctx: ArithmeticContext) -> CorollaryEReport:
    """Evaluate both closed-form upper bounds on delta_X."""
    ctx.validate()
    g, eps = ctx.g, ctx.eps
    c = c_constant(g, ctx.kappa, ctx.absD)
    rhs_omega = (2.0 + 3.0 * eps / (g - 1)) * ctx.omega2 + 12.0 * ctx.gamma + 3.0 * c
    chi_fal = noether_chi_fal(ctx.omega2, ctx.delta, g, ctx.kappa)
    rhs_chi = ((8.0 + 4.0 * eps / (g - 1 + eps)) * chi_fal
               + (4.0 * (g - 1) / (g - 1 + eps)) * ctx.gamma + c)
    return CorollaryEReport(c, rhs_omega, rhs_chi, ctx.delta,
                            ctx.delta <= rhs_omega + 1e-9,
                            ctx.delta <= rhs_chi + 1e-9)


def asymptotic_margin_per_d() -> float:
    """Limit of the per-unit-d margin in the 25d absorption as g -> infinity."""
    return 25.0 - 16.0 * LOG3 - 2.0 * LOG2PI


def verify_constant_chain(g_max: int, kappa_max: int) -> List[InequalityReport]:
    """Check the constant-absorption steps on the full (g, kappa) grid.

    Three absorptions, all independent of |D_K| (the log|D_K| coefficients
    cancel exactly), reported with the minimum slack over the grid:
      (i)   12 C' + 4r log 2pi <= 54 d log d + 61 d
      (ii)   4 C' + 4r log 2pi <= 18 d log d + 25 d
      (iii)  4d log(3d) + r log 2 + (r/2) log(r/(2 pi)) <= (9/2) d log d + 4 d log 3
    with C' = (9/2) d log d + 4 d log 3 (absD = 1), d = (2g-2) kappa, r = g kappa.
    """
    if g_max < 2 or kappa_max < 1:
        raise PreconditionViolated("need g_max >= 2 and kappa_max >= 1")
    mins = {"i": None, "ii": None, "iii": None}
    vals = {}
    min_margin_ii_per_d = None
    for g in range(2, g_max + 1):
        for kappa in range(1, kappa_max + 1):
            d = (2 * g - 2) * kappa
            r = g * kappa
            dlogd = d * math.log(d)
            cprime = 4.5 * dlogd + 4.0 * d * LOG3
            s_i = (54.0 * dlogd + 61.0 * d) - (12.0 * cprime + 4.0 * r * LOG2PI)
            s_ii = (18.0 * dlogd + 25.0 * d) - (4.0 * cprime + 4.0 * r * LOG2PI)
            s_iii = (cprime
                     - (4.0 * d * math.log(3.0 * d) + r * LOG2
                        + 0.5 * r * math.log(r) - 0.5 * r * LOG2PI))
            for key, s in (("i", s_i), ("ii", s_ii), ("iii", s_iii)):
                if mins[key] is None or s < mins[key]:
                    mins[key] = s
                    vals[key] = (g, kappa)
            margin = s_ii / d
            if min_margin_ii_per_d is None or margin < min_margin_ii_per_d:
                min_margin_ii_per_d = margin
    digest = f"grid-g{g_max}-k{kappa_max}"
    reports = [
        _report("chain-absorb-12cprime", -mins["i"], 0.0, digest),
        _report("chain-absorb-4cprime", -mins["ii"], 0.0, digest),
        _report("chain-absorb-into-cprime", -mins["iii"], 0.0, digest),
    ]
    # per-unit-d margin of (ii), attached for reporting
    reports.append(_report("chain-margin-ii-per-d", 0.0,
                           min_margin_ii_per_d, digest))
    return reports


@dataclass(frozen=True)
class SimulationParams:
    mode: str
    kappa: int = 1
    g: int | None = None
    n_min: int = 0
    n_max: int = 3
    deg0_max: int = 12
    c_max: float = 2.0
    slack_max: float = 2.0


def simulate_reduction(seed: int, params: SimulationParams) -> Ledger:
    """Deterministic admissible ledger from a seed.

    Degrees strictly decrease, ranks satisfy the mode constraint, and L2_0 is
    chosen large enough that both the derived intersections and the summed-c
    bound are feasible by construction.
    """
    if params.mode not in MODES:
        raise ConfigError(f"unknown mode {params.mode!r}")
    rng = DetRNG(seed, 0x1ED6E2)
    kappa = params.kappa
    if params.g is not None:
        g = params.g
    elif params.mode == "genus-zero":
        g = 0
    elif params.mode == "positive-genus":
        g = rng.randint(1, 5)
    else:
        g = rng.randint(2, 6)
    n = rng.randint(params.n_min, params.n_max)
    deg0 = rng.randint(max(2, n + 2), max(params.deg0_max, n + 3))
    candidates = list(range(1, deg0))
    picks = []
    for _ in range(n):
        picks.append(candidates.pop(rng.randint(0, len(candidates) - 1)))
    degs = sorted([deg0] + picks, reverse=True)

    steps = []
    for deg in degs:
        d = deg * kappa
        if params.mode == "positive-genus":
            r = rng.randint(1, d)
        elif params.mode == "genus-zero":
            r = d + kappa
        elif params.mode == "clifford-hyperelliptic":
            r = rng.randint(1, d // 2 + kappa)
        else:  # clifford-nonhyperelliptic: strong Clifford bound
            r = rng.randint(1, max(1, (d + kappa) // 2))
        c = round(rng.u01() * params.c_max, 6)
        slack = round(rng.u01() * params.slack_max, 6)
        steps.append(LedgerStep(d, r, c, slack))

    need_chain = 2.0 * sum(s.d * s.c for s in steps) + sum(s.slack for s in steps)
    need_sumci = steps[0].d * (steps[0].c + sum(s.c for s in steps))
    l2 = max(need_chain, need_sumci) + round(rng.u01() * 5.0, 6)
    ledger = Ledger(g, kappa, tuple(steps), l2, params.mode)
    ledger.validate()
    return ledger


def theorem_chain_check(ledger: Ledger) -> InequalityReport:
    """The chained reduction bound never exceeds the closed-form bound.

    The chained value takes the terminal count as 0: V = sum r_i c_i +
    4 r_0 log r_0 + 2 r_0 log 3.  The closed form is theorem_b_bound for
    positive genus / genus zero and theorem_c_bound for the Clifford modes.
    """
    ledger.validate()
    derived_intersections(ledger)
    d0 = ledger.steps[0].d
    if d0 % ledger.kappa:
        raise ConfigError("d_0 must be a multiple of kappa")
    d_circ = d0 // ledger.kappa
    r0 = ledger.steps[0].r
    value = (sum(s.r * s.c for s in ledger.steps)
             + 4.0 * r0 * math.log(r0) + 2.0 * r0 * LOG3)
    if ledger.mode == "positive-genus":
        if ledger.g < 1:
            raise PreconditionViolated("positive-genus ledger needs g >= 1")
        bound = theorem_b_bound(ledger.g, d_circ, ledger.kappa, ledger.L2_0)
    elif ledger.mode == "genus-zero":
        bound = theorem_b_bound(0, d_circ, ledger.kappa, ledger.L2_0)
    else:
        eps = 2 if ledger.mode == "clifford-hyperelliptic" else 1
        bound = theorem_c_bound(d_circ, ledger.kappa, eps, ledger.L2_0)
    return _report("theorem-chain", value, bound, ledger.digest())
