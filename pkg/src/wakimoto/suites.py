"""Named verification suites: sample generation plus the checks, one report each.

These are what ``wakimoto verify <suite>`` runs; tests call them directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .affine import check_affine
from .core import Params, delta_gap, fmt_scalar
from .heisenberg import check_heisenberg
from .intertwiner import (
    PhiEngine,
    SingularMode,
    check_d_intertwining,
    check_hminus_corollary,
    check_kz,
    check_phi_commutators,
    check_singular,
    compare_formula_solve,
    singular_vector,
    solve_singular,
)
from .partitions import BetaTable, beta_recurrence_check
from .report import VerificationReport
from .sampling import oracle_pairs, sample_basis, sample_vectors, verma_words
from .sl2 import dual_basis
from .virasoro import check_d_vs_L0, check_lbar_lemmas, check_mixed_brackets, check_virasoro


class SuiteError(ValueError):
    """Parameters that make a suite meaningless (reported as a usage error)."""


@dataclass
class Settings:
    range: int | None = None
    window: int | None = None
    samples: int | None = None
    seed: int = 0
    m_range: tuple[int, ...] = (-1, 0, 1, 2)
    degree: int = 5
    max_n: int = 8
    mode: str = "solve"
    oracle_pairs: int = 100
    central_charge: Fraction | None = None
    extra: dict = field(default_factory=dict)


# default range / window / samples per suite
DEFAULTS = {
    "heisenberg": {"range": 4, "samples": 20},
    "affine": {"range": 3, "samples": 12},
    "lbar": {"range": 4, "samples": 20},
    "virasoro": {"range": 3, "samples": 20},
    "mixed": {"range": 3, "samples": 12},
    "d-vs-l0": {"samples": 50},
    "beta": {},
    "singular": {},
    "phi": {"range": 3, "window": 4, "samples": 6},
    "kz": {"window": 4, "samples": 6},
}

# b_level used when none is given: "kappa" means b_level = kappa
DEFAULT_B_LEVEL = {
    "heisenberg": "1",
    "affine": "kappa",
    "lbar": "1",
    "virasoro": "1",
    "mixed": "1",
    "d-vs-l0": "1",
    "beta": "kappa",
    "singular": "kappa",
    "phi": "kappa",
    "kz": "1",
}

SUITES = tuple(DEFAULTS)


def _get(settings: Settings, suite: str, name: str):
    value = getattr(settings, name)
    return DEFAULTS[suite].get(name) if value is None else value


def _need_kappa(params: Params, suite: str) -> None:
    if params.kappa == 0:
        raise SuiteError(f"suite {suite} needs kappa != 0 (it goes through the Verma/Wakimoto identification)")


def run_heisenberg(params: Params, s: Settings) -> VerificationReport:
    R, n = _get(s, "heisenberg", "range"), _get(s, "heisenberg", "samples")
    rep = check_heisenberg(R, sample_vectors(s.seed, n), params, oracle_pairs=oracle_pairs(s.seed + 1, s.oracle_pairs))
    rep.settings.update({"seed": s.seed, "oracle_pairs": s.oracle_pairs})
    return rep


def run_affine(params: Params, s: Settings) -> VerificationReport:
    R, n = _get(s, "affine", "range"), _get(s, "affine", "samples")
    rep = check_affine(R, sample_vectors(s.seed, n), params, psi_words=verma_words(s.seed + 1, 50))
    rep.settings["seed"] = s.seed
    return rep


def run_lbar(params: Params, s: Settings) -> VerificationReport:
    R, n = _get(s, "lbar", "range"), _get(s, "lbar", "samples")
    rep = check_lbar_lemmas(R, sample_vectors(s.seed, n))
    rep.settings["seed"] = s.seed
    return rep


def run_virasoro(params: Params, s: Settings) -> VerificationReport:
    R, n = _get(s, "virasoro", "range"), _get(s, "virasoro", "samples")
    rep = check_virasoro(R, sample_vectors(s.seed, n), params, s.central_charge)
    rep.settings["seed"] = s.seed
    return rep


def run_mixed(params: Params, s: Settings) -> VerificationReport:
    R, n = _get(s, "mixed", "range"), _get(s, "mixed", "samples")
    rep = check_mixed_brackets(R, sample_vectors(s.seed, n), params)
    rep.settings["seed"] = s.seed
    return rep


def run_d_vs_l0(params: Params, s: Settings) -> VerificationReport:
    n = _get(s, "d-vs-l0", "samples")
    rep = check_d_vs_L0(sample_vectors(s.seed, n), params)
    rep.settings["seed"] = s.seed
    return rep


def run_beta(params: Params, s: Settings) -> VerificationReport:
    _need_kappa(params, "beta")
    table = BetaTable.from_formula(params.m_weight, params.kappa, s.max_n, params.beta1)
    rep = beta_recurrence_check(table)
    doubled = beta_recurrence_check(table, scale=2)
    rep.tier2["closed_form_satisfies_level_2kappa_recurrence"] = doubled.passed
    rep.tier2["level_2kappa_violations"] = doubled.checks["m*beta(pi-k)+k*n_k*kappa*beta(pi)=0"].failures
    return rep


def run_singular(params: Params, s: Settings) -> VerificationReport:
    _need_kappa(params, "singular")
    degree = s.degree
    mode = SingularMode(s.mode)
    rep = VerificationReport("singular", params, {"degree": degree, "mode": mode.value})
    sols = solve_singular(degree, params)
    dim = rep.check("SOLVE solution space has dimension 1")
    dim.record(len(sols) == 1, lambda: {"dimension": len(sols)})
    rep.tier2["solve_dimension"] = len(sols)
    if mode is SingularMode.SOLVE and len(sols) != 1:
        return rep
    v = singular_vector(mode, degree, params)
    rep.merge(check_singular(v, degree, params))
    hminus = check_hminus_corollary(v, params)
    rep.tier2["hminus_corollary"] = {
        "summary": hminus.summary_lines(),
        "partial_sum_over_vsharp_by_z": hminus.tier2["partial_sum_over_vsharp_by_z"],
    }
    if len(sols) == 1:
        rep.tier2["formula_vs_solve"] = compare_formula_solve(degree, params)
    return rep


def _phi_samples(s: Settings, suite: str):
    return sample_basis(s.seed, _get(s, suite, "samples"), max_modes=2, index_range=2)


def run_phi(params: Params, s: Settings) -> VerificationReport:
    _need_kappa(params, "phi")
    R, window = _get(s, "phi", "range"), _get(s, "phi", "window")
    samples = _phi_samples(s, "phi")
    engine = PhiEngine(params, s.mode)
    rep = check_phi_commutators(range(-R, R + 1), dual_basis(params.m_weight), samples, window, params, engine)
    gap = delta_gap(params)
    rep.merge(check_d_intertwining(gap, samples, window, params, engine), prefix="d-intertwining:")
    neg = rep.check("d-intertwining rejects Delta_gap +- 1")
    for shift in (1, -1):
        bad = check_d_intertwining(gap + shift, samples, window, params, engine)
        neg.record(not bad.passed, lambda: {"delta_try": fmt_scalar(gap + shift)})
    rep.settings["seed"] = s.seed
    return rep


def run_kz(params: Params, s: Settings) -> VerificationReport:
    _need_kappa(params, "kz")
    window = _get(s, "kz", "window")
    samples = _phi_samples(s, "kz")
    engine = PhiEngine(params, s.mode)
    rep = check_kz(list(s.m_range), dual_basis(params.m_weight), samples, window, params, engine)
    rep.settings["seed"] = s.seed
    return rep


RUNNERS: dict[str, Callable[[Params, Settings], VerificationReport]] = {
    "heisenberg": run_heisenberg,
    "affine": run_affine,
    "lbar": run_lbar,
    "virasoro": run_virasoro,
    "mixed": run_mixed,
    "d-vs-l0": run_d_vs_l0,
    "beta": run_beta,
    "singular": run_singular,
    "phi": run_phi,
    "kz": run_kz,
}


def run_suite(name: str, params: Params, settings: Settings | None = None) -> VerificationReport:
    if name not in RUNNERS:
        raise SuiteError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return RUNNERS[name](params, settings or Settings())
