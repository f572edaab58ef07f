"""Cross-checks of the closed forms against independent numerical routes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .beamline import LoopSettings, path_factor
from .crystal import CrystalParams, diffract_amp, transmit_amp
from .errors import DomainError
from .intensity import (
    FORWARD_PREFACTOR,
    QuadratureConfig,
    Spectrum,
    fringe_mean,
    k0_closed,
    k0_oracle,
    kg_closed,
    kg_oracle,
    mean_sin_power,
    y_integral,
)
from .visibility import (
    solve_balance_absorber,
    visibility_double,
    visibility_double_phase,
    visibility_numeric,
    visibility_single,
)

__all__ = ["CheckResult", "VerifyReport", "random_settings", "run_verify"]

DEFAULT_SEED = 20060301
EPSILONS = (0.0, 0.01, 0.05)


@dataclass
class CheckResult:
    name: str
    worst: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.worst <= self.tolerance)


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self):
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            extra = f"  {c.detail}" if c.detail else ""
            yield f"{status}  {c.name:<28s} worst={c.worst:.3e}  tol={c.tolerance:.1e}{extra}"


def random_settings(n: int, seed: int = DEFAULT_SEED):
    """``n`` reproducible ``(LoopSettings, Spectrum)`` draws.

    Phases uniform on ``[0, 2 pi)``; absorptions uniform on ``[0, 3]`` with a
    one-in-ten chance of an opaque beam; bandwidth from :data:`EPSILONS`.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        chi_d, chi_f = rng.uniform(0.0, 2 * math.pi, size=2)
        alphas = [math.inf if rng.random() < 0.1 else float(rng.uniform(0.0, 3.0))
                  for _ in range(2)]
        eps = float(rng.choice(EPSILONS))
        out.append((LoopSettings(float(chi_d), float(chi_f), *alphas), Spectrum(eps)))
    return out


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _oracle_cases(samples: int, seed: int):
    opaque = LoopSettings(alpha_d=math.inf, alpha_f=math.inf)
    return [(LoopSettings(), Spectrum()), (opaque, Spectrum())] + random_settings(samples, seed)


def check_oracle(direction: str, samples: int, seed: int, tol: float,
                 q: QuadratureConfig) -> CheckResult:
    closed, oracle = ((k0_closed, k0_oracle) if direction == "forward"
                      else (kg_closed, kg_oracle))
    worst, where = 0.0, None
    for s, spec in _oracle_cases(samples, seed):
        err = _rel(oracle(s, spec, q), closed(s, spec))
        if err > worst:
            worst, where = err, s
    detail = f"at {where}" if worst > tol else ""
    return CheckResult(f"oracle_{direction}", worst, tol, detail)


def check_unitarity() -> CheckResult:
    worst = 0.0
    for abar in (0.1, 1.0, math.pi, 100.0):
        p = CrystalParams.from_abar(abar)
        for y in np.linspace(-50.0, 50.0, 2001):
            total = transmit_amp(y, p).modulus_squared + diffract_amp(y, p).modulus_squared
            worst = max(worst, abs(total - 1.0))
    return CheckResult("unitarity", worst, 1e-12)


def check_mean_values() -> CheckResult:
    targets = {2: math.pi / 2, 3: 3 * math.pi / 8, 4: 5 * math.pi / 16}
    ints = {n: y_integral(lambda y, n=n: (1.0 + y * y) ** -n) for n in targets}
    worst = max(_rel(ints[n], targets[n]) for n in targets)
    rebuilt = (float(mean_sin_power(2)) * ints[2] - 2 * float(mean_sin_power(3)) * ints[3]
               + float(mean_sin_power(4)) * ints[4])
    worst = max(worst, _rel(rebuilt, FORWARD_PREFACTOR))
    return CheckResult("mean_value_integrals", worst, 1e-12)


def check_monochromatic(samples: int, seed: int) -> CheckResult:
    worst = 0.0
    mono = Spectrum(0.0)
    for s, _ in random_settings(samples, seed):
        bracket = path_factor(s.chi_f, s.alpha_f) + path_factor(s.chi_d, s.alpha_d) + 1.0
        expected = FORWARD_PREFACTOR * abs(bracket) ** 2
        worst = max(worst, abs(k0_closed(s, mono) - expected))
    return CheckResult("monochromatic_reduction", worst, 1e-12)


def check_scan(n_phase: int = 16) -> CheckResult:
    worst = 0.0
    for chi_f in np.linspace(0.0, math.pi, n_phase, endpoint=False):
        for t in (0.05, 0.3, 0.7, 1.0):
            r = visibility_numeric(float(chi_f), t)
            worst = max(worst, abs(r.value - visibility_double_phase(t, float(chi_f))))
            worst = max(worst, abs(r.argmax_chi_d - 0.5 * chi_f))
    return CheckResult("scan_vs_formula", worst, 1e-9)


def check_balance(samples: int, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    for _ in range(samples):
        alpha_d = float(rng.uniform(0.0, 3.0))
        chi_d = float(rng.uniform(0.0, 2 * math.pi))
        eps = float(rng.choice(EPSILONS))
        alpha_f = solve_balance_absorber(alpha_d, chi_d, eps)
        spec = Spectrum(eps)
        m0 = fringe_mean(lambda c: k0_closed(LoopSettings(chi_d, c, alpha_d, alpha_f), spec), eps)
        mg = fringe_mean(lambda c: kg_closed(LoopSettings(chi_d, c, alpha_d, alpha_f), spec), eps)
        worst = max(worst, _rel(m0, mg))
    return CheckResult("balance_closure", worst, 1e-9)


def check_reductions() -> CheckResult:
    worst = 0.0
    for t in np.linspace(0.01, 1.0, 100):
        t = float(t)
        worst = max(worst,
                    abs(visibility_double_phase(t, 0.0) - visibility_double(t)),
                    abs(visibility_double_phase(t, 2 * math.pi / 3) - visibility_single(t)))
    return CheckResult("reduction_identities", worst, 1e-12)


def run_verify(tol: float = 1e-5, samples: int = 100, seed: int = DEFAULT_SEED,
               q: QuadratureConfig | None = None) -> VerifyReport:
    """Run every cross-check.

    ``tol`` is the relative tolerance of the oracle comparisons; the other
    checks are algebraic identities and keep their own fixed tolerances.
    """
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    q = q or QuadratureConfig()
    q.validate()
    report = VerifyReport()
    report.checks.append(check_oracle("forward", samples, seed, tol, q))
    report.checks.append(check_oracle("diffracted", samples, seed, tol, q))
    report.checks.append(check_unitarity())
    report.checks.append(check_mean_values())
    report.checks.append(check_monochromatic(samples, seed))
    report.checks.append(check_scan())
    report.checks.append(check_balance(min(samples, 12), seed))
    report.checks.append(check_reductions())
    return report
