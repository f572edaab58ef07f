"""Data tables for the published figures and for user-defined sweeps."""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .beamline import LoopSettings, absorption_from_transmission
from .errors import DomainError, UndefinedFringeError
from .intensity import Spectrum, k0_closed, kg_closed
from .visibility import (
    AbsorptionMode,
    solve_balance_absorber,
    solve_unit_visibility_phase,
    visibility_double,
    visibility_double_phase,
    visibility_single,
)

__all__ = ["Table", "FIGURE_IDS", "SWEEP_VARIABLES", "SweepSpec", "render_figure",
           "run_sweep", "format_number"]

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8a", "fig8b", "fig8c")
SWEEP_VARIABLES = ("chi_d", "chi_f", "t_d", "alpha_d", "alpha_f", "i_incoh")

# Transmissions labelling the curve families of the unit-visibility figures;
# each is paired with its matched phase chi_f.
FAMILY_T = (1.0, 0.5, 0.25, 0.1)
FIG8_CHI_F = 2.824


def format_number(v: float) -> str:
    """Nine significant digits, no negative zero."""
    if math.isnan(v):
        return "nan"
    s = format(v, ".9g")
    return "0" if s in ("-0", "0") else s


def _fmt_param(v: float) -> str:
    return "inf" if math.isinf(v) else format_number(v)


@dataclass
class Table:
    name: str
    columns: list
    rows: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def column(self, i) -> np.ndarray:
        if isinstance(i, str):
            i = self.columns.index(i)
        return np.array([r[i] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format_number(v) for v in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        def num(v):
            return None if math.isnan(v) else float(format_number(v))

        params = {k: _fmt_param(v) if isinstance(v, float) else v
                  for k, v in self.params.items()}
        # one row per line keeps large tables diffable
        rows = ",\n".join("  " + json.dumps([num(v) for v in row]) for row in self.rows)
        return (f'{{"name": {json.dumps(self.name)},\n'
                f' "params": {json.dumps(params)},\n'
                f' "columns": {json.dumps(self.columns)},\n'
                f' "rows": [\n{rows}\n ]}}\n')

    def render(self, fmt: str = "csv") -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise DomainError(f"unknown format {fmt!r}")


def _label(quantity: str, **params) -> str:
    inner = ";".join(f"{k}={_fmt_param(float(v))}" for k, v in params.items())
    return f"{quantity}[{inner}]"


def _intensity_table(name, xname, xs, settings_at, eps, params) -> Table:
    spec = Spectrum(eps)
    cols = [xname, _label("K0", **params), _label("KG", **params)]
    rows = []
    for x in xs:
        s = settings_at(float(x))
        rows.append((float(x), k0_closed(s, spec), kg_closed(s, spec)))
    return Table(name, cols, rows, dict(params))


def _chi_f_table(name: str, alpha_f: float) -> Table:
    # 200 fringes either side of zero: wide enough for the 1% bandwidth
    # envelope to decay, so column means are the true mean levels.
    xs = np.linspace(-200 * math.pi, 200 * math.pi, 6401)
    eps = 0.01
    params = dict(chi_d=0.0, alpha_d=0.0, alpha_f=alpha_f, eps=eps)
    return _intensity_table(name, "chi_f", xs,
                            lambda x: LoopSettings(0.0, x, 0.0, alpha_f), eps, params)


def _fig8(name: str, t_d: float, chi_f: float) -> Table:
    xs = np.linspace(0.0, 2 * math.pi, 1001)
    alpha_d = absorption_from_transmission(t_d)
    params = dict(t_d=t_d, chi_f=chi_f, alpha_f=0.0, eps=0.0)
    return _intensity_table(name, "chi_d", xs,
                            lambda x: LoopSettings(x, chi_f, alpha_d, 0.0), 0.0, params)


def _t_grid() -> np.ndarray:
    return np.linspace(0.0, 1.0, 101)


def _fig4() -> Table:
    cols = ["t_d", "V_sto1", "V_det1", "V_sto2", "V_det2"]
    rows = [(t, visibility_single(t, "sto"), visibility_single(t, "det"),
             visibility_double(t, "sto"), visibility_double(t, "det"))
            for t in map(float, _t_grid())]
    return Table("fig4", cols, rows)


def _family_vs_t(name: str, mode: str) -> Table:
    phases = [solve_unit_visibility_phase(t) for t in FAMILY_T]
    cols = ["t_d"] + [_label(f"V_{mode}2", chi_f=c) for c in phases]
    rows = [(t, *(visibility_double_phase(t, c, mode) for c in phases))
            for t in map(float, _t_grid())]
    return Table(name, cols, rows, {"mode": mode})


def _fig6() -> Table:
    xs = np.linspace(0.0, 2 * math.pi, 361)
    cols = ["chi_f"] + [_label("V_sto2", t_d=t) for t in FAMILY_T]
    rows = [(float(c), *(visibility_double_phase(t, float(c), "sto") for t in FAMILY_T))
            for c in xs]
    return Table("fig6", cols, rows, {"mode": "sto"})


def render_figure(fig_id: str) -> Table:
    """Data behind one of the published figures, with the caption's parameters."""
    if fig_id == "fig2":
        return _chi_f_table("fig2", 0.0)
    if fig_id == "fig3":
        return _chi_f_table("fig3", solve_balance_absorber(0.0, 0.0, 0.01))
    if fig_id == "fig4":
        return _fig4()
    if fig_id == "fig5":
        return _family_vs_t("fig5", "sto")
    if fig_id == "fig6":
        return _fig6()
    if fig_id == "fig7":
        return _family_vs_t("fig7", "det")
    if fig_id == "fig8a":
        return _fig8("fig8a", 1.0, 0.0)
    if fig_id == "fig8b":
        return _fig8("fig8b", 0.1, 0.0)
    if fig_id == "fig8c":
        return _fig8("fig8c", 0.1, FIG8_CHI_F)
    raise DomainError(f"unknown figure id {fig_id!r}; choose from {', '.join(FIGURE_IDS)}")


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep of a single parameter, others held fixed.

    ``settings`` carries the fixed phases and absorptions; a sweep over
    ``t_d`` overrides ``alpha_d``.
    """

    variable: str
    start: float
    stop: float
    steps: int
    settings: LoopSettings = LoopSettings()
    epsilon: float = 0.01
    i_incoh: float = 0.0
    mode: AbsorptionMode = AbsorptionMode.STOCHASTIC

    def validate(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise DomainError(f"unknown sweep variable {self.variable!r}")
        if not isinstance(self.steps, int) or self.steps < 2:
            raise DomainError(f"steps must be an integer >= 2, got {self.steps}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise DomainError("sweep bounds must be finite")
        xs = self.grid()
        if not self.start < self.stop or np.any(np.diff(xs) <= 0):
            raise DomainError(f"need from < to with distinct grid points, got "
                              f"[{self.start}, {self.stop}] in {self.steps} steps")
        if self.variable == "t_d" and not (0 <= self.start and self.stop <= 1):
            raise DomainError("t_d sweep must stay inside [0, 1]")
        if self.variable in ("alpha_d", "alpha_f", "i_incoh") and self.start < 0:
            raise DomainError(f"{self.variable} sweep must start at >= 0")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def point(self, x: float):
        """Settings and background at grid value ``x``."""
        s = self.settings
        fields = dict(chi_d=s.chi_d, chi_f=s.chi_f, alpha_d=s.alpha_d, alpha_f=s.alpha_f)
        i_incoh = self.i_incoh
        if self.variable == "t_d":
            fields["alpha_d"] = absorption_from_transmission(x)
        elif self.variable == "i_incoh":
            i_incoh = x
        else:
            fields[self.variable] = x
        return LoopSettings(**fields), i_incoh


def run_sweep(spec: SweepSpec) -> Table:
    """Evaluate ``K0``, ``K_G`` and the fringe visibility along a sweep.

    The visibility column is the contrast of the forward fringe in ``chi_d``
    at the remaining fixed settings, with background ``i_incoh`` in
    monochromatic fringe units; ``nan`` marks an undefined fringe.
    """
    spec.validate()
    mode = AbsorptionMode.parse(spec.mode)
    eps = Spectrum(spec.epsilon)
    rows = []
    for x in map(float, spec.grid()):
        s, i_incoh = spec.point(x)
        try:
            v = visibility_double_phase(s.t_d, s.chi_f, mode, i_incoh, s.alpha_f)
        except UndefinedFringeError:
            v = math.nan
        rows.append((x, k0_closed(s, eps), kg_closed(s, eps), v))
    params = dict(chi_d=spec.settings.chi_d, chi_f=spec.settings.chi_f,
                  alpha_d=spec.settings.alpha_d, alpha_f=spec.settings.alpha_f,
                  eps=spec.epsilon, i_incoh=spec.i_incoh, mode=mode.value)
    params.pop(spec.variable, None)
    if spec.variable == "t_d":
        params.pop("alpha_d")
    numeric = {k: v for k, v in params.items() if k != "mode"}
    cols = [spec.variable, _label("K0", **numeric), _label("KG", **numeric),
            _label(f"V_{mode.value}", **numeric)]
    return Table(f"sweep_{spec.variable}", cols, rows, params)
