"""Reproducible experiment drivers.

Each experiment is a pure function of its configuration: the random stream
for every grid point is derived from (config seed, point indices), rows are
emitted in fixed loop order, and the summary is a pure function of the rows
(recomputed from them in the tests).  Reruns therefore produce byte-identical
CSV output.

Thread count comes from the HANKELLAB_THREADS environment variable or the
"threads" config key; parallelism only distributes independent grid points
and does not change any result.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import yaml

from . import reporting
from .bilinear import (BHTParams, bht_fourier, bht_mu_fourier,
                       link_identity_check, pv_quadrature,
                       translation_covariance_check)
from .errors import ParameterError
from .hankel import (TruncationSpec, hankel_apply, matrix_section,
                     multilinear_truncated_apply, truncated_apply,
                     column_truncation_apply, beta_zero_identity_check,
                     beta_minus_one_identity_check)
from .opnorm import (lebesgue_constant, ratio_search_qp, section_norm_2_2,
                     sn_extremal_lower_bound)
from .spaces import (hardy_norm, lipschitz_norm, modulated_norm_ratio,
                     random_symbol, reduce_symbol)
from .trigpoly import (Grid, TrigPoly, coeff_distance, eval_grid, flip,
                       multiply, random_poly, tail_projection)

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "EXPERIMENT_NAMES",
    "default_config",
    "run_experiment",
    "run_identity_suite",
    "run_bht_consistency",
    "run_truncation_uniformity",
    "run_log_growth",
    "run_constant_stability",
    "run_lemma_lipschitz_sweep",
]

LEBESGUE_TARGET = 4.0 / np.pi ** 2

DEFAULTS = {
    "identity_suite": {
        "seeds": 50,
        "max_degree": 32,
        "residual_tol": 1e-10,
        "kl_pairs": [[1, 2], [2, 1], [-1, 2], [3, -1]],
        "nu_grid": [-2.5, -0.5, 0.5, 1.0, 2.0],
        "gamma_grid": [-4.0, -1.5, 0.0, 2.0, 3.5],
    },
    "bht_consistency": {
        "grid": 1 << 14,
        "seeds": 3,
        "max_degree": 32,
        "kl_pairs": [[1, 1], [1, 2], [2, 1], [-1, 2], [3, -1], [-2, 3]],
        "mu_policy": "all",
        "rel_tol": 1e-6,
        "cross_grid": 512,
        "cross_degree": 8,
        "cross_tol": 1e-11,
    },
    "truncation_uniformity": {
        "section_size": 512,
        "seeds": 20,
        "alpha": 0.005,
        "max_block": 9,
        "beta_grid": [-3.0, -2.0, -0.5, 0.5, 1.0, 2.0],
        "gamma_min": -64,
        "gamma_max": 64,
        "slope_tol": 0.05,
        "beta_zero_gammas": [-64, -32, -16, 0, 1, 4, 16, 32, 64],
        "beta_zero_tol": 1e-10,
        "norm_tol": 1e-9,
        "sweep_tol": 1e-6,
        "spot_points": [[1.0, 8.0], [-2.0, 8.0]],
        "spot_alpha": 1.0,
        "spot_degree": 16,
        "spot_samples": 24,
    },
    "log_growth": {
        "alpha": 0.5,
        "extremal_n_max": 8,          # N = 4 * 2^n for n = 1..n_max
        "lebesgue_powers": [4, 5, 6, 7, 8, 9, 10, 11, 12],
        "ratio_rel_tol": 0.05,
        "r2_min": 0.9,
        "l1_tol": 1e-6,
        "section_symbol_alpha": 0.5,
        "section_symbol_max_block": 8,
        "section_size": 256,
        "section_N_step": 32,
    },
    "constant_stability": {
        "alpha": 0.5,
        "q": 1.0,
        "p": 2.0,
        "seeds": 20,
        "f_degree": 24,
        "symbol_max_block": 5,
        "bands": {
            "A": [[1, 1], [2, 1], [3, 1], [1, 2], [1, 3], [3, 2]],
            "B": [[-1, 2], [-1, 3], [-2, 5], [-3, 5]],
            "C": [[-2, 1], [-3, 1], [-3, 2], [-5, 3]],
        },
        "exploratory": [[-9, 8], [-8, 9]],
        "spread_tol": 0.10,
    },
    "lemma_lipschitz_sweep": {
        "N_grid": [8, 16, 32, 64, 128, 256, 512, 1024],
        "M_factors": [0.0, 0.5, 1.0, 4.0],
        "seeds": 20,
        "alphas": [0.5, 1.0],
        "symbol_max_block": 10,
        "ratio_tol": 10.0,
        "trend_tol": 0.1,
    },
}

EXPERIMENT_NAMES = tuple(sorted(DEFAULTS))

COLUMNS = {
    "identity_suite": ("identity", "seed", "params", "residual"),
    "bht_consistency": ("variant", "k", "l", "mu", "seed", "grid",
                        "rel_error"),
    "truncation_uniformity": ("kind", "beta", "gamma", "seed", "value"),
    "log_growth": ("kind", "N", "value", "extra"),
    "constant_stability": ("band", "k", "l", "mu", "seed", "ratio"),
    "lemma_lipschitz_sweep": ("alpha", "N", "M", "seed", "ratio"),
}


@dataclass
class ExperimentConfig:
    """A fully-defaulted, validated experiment configuration."""
    experiment: str
    seed: int = 2026
    threads: int = 0            # 0 = use HANKELLAB_THREADS or 1
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in DEFAULTS:
            raise ParameterError(
                f"unknown experiment {self.experiment!r}; "
                f"choose from {', '.join(EXPERIMENT_NAMES)}")
        merged = dict(DEFAULTS[self.experiment])
        unknown = set(self.params) - set(merged)
        if unknown:
            raise ParameterError(
                f"unknown config keys for {self.experiment}: "
                f"{', '.join(sorted(unknown))}")
        merged.update(self.params)
        self.params = merged
        self.seed = int(self.seed)
        self.threads = int(self.threads)
        self._validate()

    def _validate(self):
        p = self.params
        if self.experiment == "truncation_uniformity":
            for b in p["beta_grid"]:
                if abs(b) < 0.1 or abs(b + 1.0) < 0.1:
                    raise ParameterError(
                        "beta grid must avoid the excluded neighborhoods of "
                        f"0 and -1 (radius 0.1); got beta={b}")
            if not p["beta_grid"]:
                raise ParameterError("beta grid must be nonempty")
        if self.experiment == "bht_consistency":
            for k, l in p["kl_pairs"]:
                BHTParams(k, l, 0)    # raises on bad pairs
        if self.experiment == "constant_stability":
            for band, pairs in p["bands"].items():
                for k, l in pairs:
                    BHTParams(k, l, 0)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        name = d.pop("experiment", None)
        if name is None:
            raise ParameterError("config needs an 'experiment' key")
        seed = d.pop("seed", 2026)
        threads = d.pop("threads", 0)
        return cls(name, seed=seed, threads=threads, params=d)

    @classmethod
    def from_yaml(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            data = yaml.safe_load(fh) or {}
        if not isinstance(data, dict):
            raise ParameterError("config file must hold a mapping")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {"experiment": self.experiment, "seed": self.seed,
                "threads": self.threads, **self.params}

    def worker_count(self) -> int:
        if self.threads > 0:
            return self.threads
        env = os.environ.get("HANKELLAB_THREADS", "").strip()
        if env.isdigit() and int(env) > 0:
            return int(env)
        return 1


@dataclass
class ExperimentReport:
    experiment: str
    config: dict
    columns: tuple
    rows: list
    summary: dict
    passed: bool
    wall_clock: float

    def write(self, out_dir):
        os.makedirs(out_dir, exist_ok=True)
        base = os.path.join(out_dir, self.experiment)
        reporting.write_rows_csv(base + "_rows.csv", self.columns, self.rows)
        reporting.write_summary_json(base + "_summary.json", {
            "experiment": self.experiment,
            "config": self.config,
            "summary": self.summary,
            "passed": self.passed,
            "wall_clock_seconds": self.wall_clock,
        })
        self._write_charts(out_dir)
        return base + "_summary.json"

    def _write_charts(self, out_dir):
        base = os.path.join(out_dir, self.experiment)
        try:
            if self.experiment == "log_growth":
                ext = [(r[1], r[2]) for r in self.rows if r[0] == "extremal"]
                if len(ext) >= 2:
                    reporting.write_svg_line(
                        base + "_extremal.svg",
                        [math.log(n) for n, _ in ext], [v for _, v in ext],
                        title="partial-sum lower bound vs ln N",
                        xlabel="ln N", ylabel="ratio")
                leb = [(r[1], r[2]) for r in self.rows if r[0] == "lebesgue"]
                if len(leb) >= 2:
                    reporting.write_svg_line(
                        base + "_lebesgue.svg",
                        [math.log(n) for n, _ in leb], [v for _, v in leb],
                        title="Lebesgue constant vs ln N",
                        xlabel="ln N", ylabel="L_N")
            elif self.experiment == "truncation_uniformity":
                betas = sorted({r[1] for r in self.rows if r[0] == "ratio"})
                for b in betas:
                    pts = {}
                    for _, beta, gamma, _, value in (
                            r for r in self.rows if r[0] == "ratio"):
                        if beta == b:
                            pts.setdefault(gamma, []).append(value)
                    gs = sorted(pts)
                    ys = [float(np.mean(pts[g])) for g in gs]
                    tag = repr(b).replace("-", "m").replace(".", "p")
                    reporting.write_svg_line(
                        f"{base}_beta_{tag}.svg",
                        [math.log1p(abs(g)) for g in gs], ys,
                        title=f"mean section ratio, beta={b}",
                        xlabel="log(1+|gamma|)", ylabel="ratio")
            elif self.experiment == "lemma_lipschitz_sweep":
                per_n = {}
                for alpha, N, M, seed, ratio in self.rows:
                    per_n[N] = max(per_n.get(N, 0.0), ratio)
                ns = sorted(per_n)
                if len(ns) >= 2:
                    reporting.write_svg_line(
                        base + "_sup.svg",
                        [math.log(n) for n in ns], [per_n[n] for n in ns],
                        title="modulated norm ratio sup vs ln N",
                        xlabel="ln N", ylabel="sup ratio")
        except (OSError, ValueError):
            pass    # charts are best-effort; rows and summary are the record


def _rng(*parts):
    """Deterministic per-point generator; parts may be negative ints."""
    return np.random.default_rng([int(p) % (1 << 32) for p in parts])


def _map_ordered(fn, items, threads):
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def default_config(experiment: str, seed: int = 2026) -> ExperimentConfig:
    return ExperimentConfig(experiment, seed=seed)


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    return _RUNNERS[config.experiment](config)


def _report(config, rows, summarize) -> ExperimentReport:
    summary, passed = summarize(config.params, rows)
    return ExperimentReport(
        experiment=config.experiment,
        config=config.to_dict(),
        columns=COLUMNS[config.experiment],
        rows=rows,
        summary=summary,
        passed=passed,
        wall_clock=0.0,
    )


# ---------------------------------------------------------------------------
# identity_suite
# ---------------------------------------------------------------------------

def run_identity_suite(config: ExperimentConfig) -> ExperimentReport:
    t0 = time.perf_counter()
    p = config.params
    rows = []
    kl = [tuple(map(int, pair)) for pair in p["kl_pairs"]]
    link_kl = [(k, l) for k, l in kl if k + l > 0 and l != 0]
    nu_grid = [float(v) for v in p["nu_grid"]]
    gamma_grid = [float(g) for g in p["gamma_grid"]]
    maxdeg = int(p["max_degree"])

    for s in range(int(p["seeds"])):
        rng = _rng(config.seed, 11, s)
        deg_b = int(rng.integers(1, maxdeg + 1))
        deg_f = int(rng.integers(1, maxdeg + 1))
        b = random_poly(rng, deg_b)
        f = random_poly(rng, deg_f)

        N = int(rng.integers(0, deg_b + deg_f + 2))
        rows.append(("beta_zero", s, f"N={N}",
                     beta_zero_identity_check(b, N, f)))

        N1 = int(rng.integers(1, deg_b + 3))
        rows.append(("beta_minus_one", s, f"N={N1}",
                     beta_minus_one_identity_check(b, N1, f)))

        Nc = int(rng.integers(0, deg_f + 2))
        lhs = column_truncation_apply(b, Nc, f)
        rhs = hankel_apply(b, tail_projection(f, Nc))
        rows.append(("column", s, f"N={Nc}", coeff_distance(lhs, rhs)))

        arity = 2 if s % 2 == 0 else 3
        nu = nu_grid[s % len(nu_grid)]
        gamma = gamma_grid[s % len(gamma_grid)]
        fs = [random_poly(rng, int(rng.integers(1, 11)))
              for _ in range(arity)]
        spec_multi = TruncationSpec((nu,) * arity, gamma)
        spec_lin = TruncationSpec((nu,), gamma)
        prod = fs[0]
        for g in fs[1:]:
            prod = multiply(prod, g)
        lhs = multilinear_truncated_apply(b, spec_multi, fs)
        rhs = truncated_apply(b, spec_lin, prod)
        rows.append(("multilinear_reduction", s,
                     f"n={arity},nu={nu},gamma={gamma}",
                     coeff_distance(lhs, rhs)))

        k, l = link_kl[s % len(link_kl)]
        gl = int(rng.integers(-4, 5))
        rows.append(("link", s, f"k={k},l={l},gamma_l={gl}",
                     link_identity_check(b, f, k, l, gl)))

        k2, l2 = kl[s % len(kl)]
        mu = int(rng.integers(-abs(l2), abs(l2) + 1))
        y = float(rng.uniform(0.0, 2.0 * np.pi))
        b_gen = random_poly(rng, deg_b, min_freq=-deg_b)
        rows.append(("translation", s, f"k={k2},l={l2},mu={mu}",
                     translation_covariance_check(
                         b_gen, f, BHTParams(k2, l2, mu), y)))
    report = _report(config, rows, summarize_identity_suite)
    report.wall_clock = time.perf_counter() - t0
    return report


def summarize_identity_suite(params, rows):
    tol = float(params["residual_tol"])
    per = {}
    for identity, _, _, residual in rows:
        per[identity] = max(per.get(identity, 0.0), float(residual))
    max_res = max(per.values()) if per else 0.0
    passed = bool(per) and max_res <= tol
    return ({"per_identity": per, "max_residual": max_res,
             "residual_tol": tol, "rows": len(rows)}, passed)


# ---------------------------------------------------------------------------
# bht_consistency
# ---------------------------------------------------------------------------

def _rel_sup_error(values, reference):
    scale = max(float(np.abs(reference).max()), 1.0)
    return float(np.abs(values - reference).max()) / scale


def run_bht_consistency(config: ExperimentConfig) -> ExperimentReport:
    t0 = time.perf_counter()
    p = config.params
    G = int(p["grid"])
    maxdeg = int(p["max_degree"])
    seeds = int(p["seeds"])
    rows = []
    cases = []
    for k, l in (tuple(map(int, pair)) for pair in p["kl_pairs"]):
        cases.append(("plain_kl", k, l, 0))
        mus = range(-abs(l), abs(l) + 1) if p["mu_policy"] == "all" else (0,)
        for mu in mus:
            cases.append(("mu_form", k, l, mu))

    def run_case(case):
        variant, k, l, mu = case
        out = []
        for s in range(seeds):
            rng = _rng(config.seed, 23, k, l, mu,
                       0 if variant == "plain_kl" else 1, s)
            deg_b = int(rng.integers(4, maxdeg + 1))
            deg_f = int(rng.integers(4, maxdeg + 1))
            b = random_poly(rng, deg_b, min_freq=-deg_b)
            params = BHTParams(k, l, mu)
            if variant == "plain_kl":
                f = random_poly(rng, deg_f, min_freq=-deg_f)
                four = bht_fourier(b, f, k, l)
            else:
                f = random_poly(rng, deg_f)
                four = bht_mu_fourier(b, f, params)
            quad = pv_quadrature(b, f, params, G, variant=variant)
            ref = eval_grid(four, Grid(G))
            out.append((variant, k, l, mu, s, G,
                        _rel_sup_error(quad, ref)))
        return out

    for chunk in _map_ordered(run_case, cases, config.worker_count()):
        rows.extend(chunk)

    # fft vs direct cross-validation at a small grid
    Gs = int(p["cross_grid"])
    for idx, (k, l) in enumerate([tuple(map(int, pair))
                                  for pair in p["kl_pairs"]][:2]):
        rng = _rng(config.seed, 29, idx)
        deg = int(p["cross_degree"])
        b = random_poly(rng, deg, min_freq=-deg)
        f = random_poly(rng, deg)
        params = BHTParams(k, l, min(1, abs(l)))
        qf = pv_quadrature(b, f, params, Gs, variant="mu_form", method="fft")
        qd = pv_quadrature(b, f, params, Gs, variant="mu_form",
                           method="direct")
        rows.append(("fft_vs_direct", k, l, params.mu, idx, Gs,
                     _rel_sup_error(qd, qf)))

    report = _report(config, rows, summarize_bht_consistency)
    report.wall_clock = time.perf_counter() - t0
    return report


def summarize_bht_consistency(params, rows):
    rel_tol = float(params["rel_tol"])
    cross_tol = float(params["cross_tol"])
    per = {}
    for variant, *_rest, err in rows:
        per[variant] = max(per.get(variant, 0.0), float(err))
    main_max = max(per.get("plain_kl", 0.0), per.get("mu_form", 0.0))
    cross_max = per.get("fft_vs_direct", 0.0)
    passed = (bool(per) and main_max <= rel_tol and cross_max <= cross_tol
              and "plain_kl" in per and "mu_form" in per)
    return ({"per_variant": per, "max_rel_error": main_max,
             "cross_check_max": cross_max, "rel_tol": rel_tol,
             "cross_tol": cross_tol, "rows": len(rows)}, passed)


# ---------------------------------------------------------------------------
# truncation_uniformity
# ---------------------------------------------------------------------------

def run_truncation_uniformity(config: ExperimentConfig) -> ExperimentReport:
    t0 = time.perf_counter()
    p = config.params
    S = int(p["section_size"])
    seeds = int(p["seeds"])
    alpha = float(p["alpha"])
    betas = [float(b) for b in p["beta_grid"]]
    gammas = list(range(int(p["gamma_min"]), int(p["gamma_max"]) + 1))
    norm_tol = float(p["norm_tol"])
    sweep_tol = float(p.get("sweep_tol", norm_tol))
    m_idx = np.arange(S, dtype=np.float64)[:, None]
    n_idx = np.arange(S, dtype=np.float64)[None, :]

    def per_seed(s):
        b = random_symbol(alpha, int(p["max_block"]), [config.seed, 31, s])
        H = matrix_section(b, None, S, S).entries
        full = section_norm_2_2(H, tol=norm_tol, seed=[config.seed, 37, s])
        out = []
        for beta in betas:
            spec = TruncationSpec((beta,), 0.0)
            v = full.witness
            for gamma in gammas:
                W = spec.weights(m_idx - beta * n_idx - gamma)
                if W.all():
                    # identical matrices; nothing to iterate
                    out.append(("ratio", beta, gamma, s, 1.0))
                    continue
                est = section_norm_2_2(W * H, tol=sweep_tol, v0=v)
                if est.witness is not None and est.value > 0:
                    v = est.witness
                out.append(("ratio", beta, gamma, s,
                            est.value / full.value))
        for gamma in [int(g) for g in p["beta_zero_gammas"]]:
            W = (m_idx - gamma >= -1e-9)
            if W.all():
                ratio = 1.0     # identical matrices; nothing to iterate
            else:
                est = section_norm_2_2(W * H, tol=norm_tol, v0=full.witness)
                ratio = est.value / full.value
            out.append(("beta_zero", 0.0, gamma, s, ratio))
        return out

    rows = []
    chunks = _map_ordered(per_seed, range(seeds), config.worker_count())
    # interleave rows in (beta, gamma, seed) order for stable output
    collected = [r for chunk in chunks for r in chunk]
    order = {("ratio", b): i for i, b in enumerate(betas)}
    rows = sorted(
        collected,
        key=lambda r: (0 if r[0] == "ratio" else 1,
                       order.get((r[0], r[1]), 0), r[2], r[3]))

    # lower-bound spot checks for the (2/3, 2) pairing, alpha = 1 symbols
    for idx, (beta, gamma) in enumerate(
            [(float(x), float(g)) for x, g in p["spot_points"]]):
        b = random_symbol(float(p["spot_alpha"]), 5, [config.seed, 41, idx])
        spec = TruncationSpec((beta,), gamma)
        deg = int(p["spot_degree"])
        trunc = ratio_search_qp(
            lambda f: truncated_apply(b, spec, f), 2.0 / 3.0, 2.0, deg,
            samples=int(p["spot_samples"]), seed=[config.seed, 43, idx])
        fullop = ratio_search_qp(
            lambda f: hankel_apply(b, f), 2.0 / 3.0, 2.0, deg,
            samples=int(p["spot_samples"]), seed=[config.seed, 43, idx])
        rows.append(("spot_truncated", beta, gamma, idx, trunc.value))
        rows.append(("spot_full", beta, gamma, idx, fullop.value))

    report = _report(config, rows, summarize_truncation_uniformity)
    report.wall_clock = time.perf_counter() - t0
    return report


def summarize_truncation_uniformity(params, rows):
    slope_tol = float(params["slope_tol"])
    bz_tol = float(params["beta_zero_tol"])
    per_beta = {}
    data = {}
    for kind, beta, gamma, seed, value in rows:
        if kind == "ratio":
            data.setdefault(float(beta), []).append(
                (math.log1p(abs(float(gamma))), float(value)))
    all_pass = bool(data)
    for beta, pts in sorted(data.items()):
        xs = np.array([x for x, _ in pts])
        ys = np.array([y for _, y in pts])
        slope, intercept, r2 = reporting.linear_fit(xs, ys)
        resid = ys - slope * xs - intercept
        sxx = float(np.sum((xs - xs.mean()) ** 2))
        dof = max(len(xs) - 2, 1)
        stderr = math.sqrt(float(np.sum(resid ** 2)) / dof / sxx)
        ok = abs(slope) <= slope_tol
        all_pass = all_pass and ok
        per_beta[repr(beta)] = {
            "sup_ratio": float(ys.max()),
            "min_ratio": float(ys.min()),
            "slope": slope,
            "intercept": intercept,
            "r2": r2,
            "slope_stderr": stderr,
            "slope_ci95": [slope - 1.96 * stderr, slope + 1.96 * stderr],
            "passed": ok,
        }
    bz = [float(v) for kind, _, _, _, v in rows if kind == "beta_zero"]
    bz_max = max(bz) if bz else 1.0
    bz_ok = bool(bz) and bz_max <= 1.0 + bz_tol
    all_pass = all_pass and bz_ok
    spots = {f"{kind}:beta={beta},gamma={gamma}": float(v)
             for kind, beta, gamma, _, v in rows
             if kind.startswith("spot_")}
    return ({"per_beta": per_beta, "slope_tol": slope_tol,
             "beta_zero_max_ratio": bz_max, "beta_zero_tol": bz_tol,
             "beta_zero_passed": bz_ok, "spot_lower_bounds": spots,
             "rows": len(rows)}, all_pass)


# ---------------------------------------------------------------------------
# log_growth
# ---------------------------------------------------------------------------

def run_log_growth(config: ExperimentConfig) -> ExperimentReport:
    t0 = time.perf_counter()
    p = config.params
    alpha = float(p["alpha"])
    rows = []
    for n in range(1, int(p["extremal_n_max"]) + 1):
        N = 4 * (1 << n)
        rows.append(("extremal", N, sn_extremal_lower_bound(N, alpha), 0.0))
    for j in [int(v) for v in p["lebesgue_powers"]]:
        N = 1 << j
        L = lebesgue_constant(N)
        rows.append(("lebesgue", N, L, L / math.log(N)))
    # exploratory: Pi_{-1,N} section-norm decay for one fixed symbol
    S = int(p["section_size"])
    b = random_symbol(float(p["section_symbol_alpha"]),
                      int(p["section_symbol_max_block"]),
                      [config.seed, 47])
    H = matrix_section(b, None, S, S).entries
    full = section_norm_2_2(H, tol=1e-9, seed=[config.seed, 53])
    m_idx = np.arange(S)[:, None]
    n_idx = np.arange(S)[None, :]
    v = full.witness
    for N in range(0, S + 1, int(p["section_N_step"])):
        W = (m_idx + n_idx >= N).astype(float)   # Pi_{-1,N} mask
        est = section_norm_2_2(W * H, tol=1e-9, v0=v)
        if est.witness is not None and est.value > 0:
            v = est.witness
        rows.append(("pi_minus1", N, est.value / full.value, 0.0))
    report = _report(config, rows, summarize_log_growth)
    report.wall_clock = time.perf_counter() - t0
    return report


def summarize_log_growth(params, rows):
    r2_min = float(params["r2_min"])
    rel_tol = float(params["ratio_rel_tol"])
    l1_tol = float(params["l1_tol"])
    ext = [(n, v) for kind, n, v, _ in rows if kind == "extremal"]
    leb = [(n, v, e) for kind, n, v, e in rows if kind == "lebesgue"]
    out = {}
    ok_a = ok_b = ok_c = False
    if len(ext) >= 2:
        slope, intercept, r2 = reporting.linear_fit(
            [math.log(n) for n, _ in ext], [v for _, v in ext])
        ok_a = slope > 0 and r2 >= r2_min
        out["extremal"] = {"slope": slope, "intercept": intercept,
                           "r2": r2, "r2_min": r2_min, "passed": ok_a}
    if leb:
        slope, intercept, _ = reporting.linear_fit(
            [math.log(n) for n, _, _ in leb], [v for _, v, _ in leb]) \
            if len(leb) >= 2 else (0.0, 0.0, 0.0)
        n_max, L_max, ratio_max = max(leb)
        rel_err = abs(ratio_max - LEBESGUE_TARGET) / LEBESGUE_TARGET
        ok_b = rel_err <= rel_tol
        l1_closed = 1.0 / 3.0 + 2.0 * math.sqrt(3.0) / math.pi
        l1_err = abs(lebesgue_constant(1) - l1_closed)
        ok_c = l1_err <= l1_tol
        out["lebesgue"] = {
            "fitted_slope": slope,
            "target": LEBESGUE_TARGET,
            "N_max": n_max,
            "ratio_at_N_max": ratio_max,
            "ratio_rel_error": rel_err,
            "ratio_rel_tol": rel_tol,
            "ratio_passed": ok_b,
            "L1_abs_error": l1_err,
            "L1_passed": ok_c,
        }
    pim = [(n, v) for kind, n, v, _ in rows if kind == "pi_minus1"]
    if pim:
        out["pi_minus1"] = {"max_ratio": max(v for _, v in pim),
                            "min_ratio": min(v for _, v in pim)}
    passed = ok_a and ok_b and ok_c
    return (out, passed)


# ---------------------------------------------------------------------------
# constant_stability
# ---------------------------------------------------------------------------

def run_constant_stability(config: ExperimentConfig) -> ExperimentReport:
    t0 = time.perf_counter()
    p = config.params
    alpha, q, pp = float(p["alpha"]), float(p["q"]), float(p["p"])
    seeds = int(p["seeds"])

    corpus = []
    for s in range(seeds):
        b = random_symbol(alpha, int(p["symbol_max_block"]),
                          [config.seed, 61, s])
        rng = _rng(config.seed, 67, s)
        f = random_poly(rng, int(p["f_degree"]))
        corpus.append((b, f, lipschitz_norm(b, alpha).value,
                       hardy_norm(f, q).value))

    cases = []
    for band, pairs in sorted(p["bands"].items()):
        for k, l in pairs:
            cases.append((band, int(k), int(l)))
    for k, l in p["exploratory"]:
        cases.append(("exploratory", int(k), int(l)))

    def run_case(case):
        band, k, l = case
        out = []
        for mu in range(-abs(l), abs(l) + 1):
            params = BHTParams(k, l, mu)
            for s, (b, f, lip_b, hardy_f) in enumerate(corpus):
                g = bht_mu_fourier(b, f, params)
                if not g.is_analytic:
                    # k + l < 0 sends the output to non-positive
                    # frequencies; |g| on the circle is flip-invariant.
                    g = flip(g)
                num = hardy_norm(g, pp).value if not g.is_zero else 0.0
                out.append((band, k, l, mu, s, num / (lip_b * hardy_f)))
        return out

    rows = []
    for chunk in _map_ordered(run_case, cases, config.worker_count()):
        rows.extend(chunk)
    report = _report(config, rows, summarize_constant_stability)
    report.wall_clock = time.perf_counter() - t0
    return report


def summarize_constant_stability(params, rows):
    spread_tol = float(params["spread_tol"])
    sups = {}
    for band, k, l, mu, _s, ratio in rows:
        key = (band, k, l)
        sups.setdefault(key, {})
        sups[key][mu] = max(sups[key].get(mu, 0.0), float(ratio))
    per_kl = {}
    bands = {}
    all_ok = bool(sups)
    for (band, k, l), per_mu in sorted(sups.items()):
        vals = list(per_mu.values())
        spread = (max(vals) - min(vals)) / min(vals) if min(vals) > 0 \
            else math.inf
        ok = spread <= spread_tol
        if band != "exploratory":
            all_ok = all_ok and ok
        per_kl[f"{band}:k={k},l={l}"] = {
            "sup_per_mu": {str(m): v for m, v in sorted(per_mu.items())},
            "mu_spread": spread,
            "passed": ok if band != "exploratory" else None,
        }
        if band != "exploratory":
            bands.setdefault(band, []).append((k / l, max(vals)))
    band_summary = {}
    for band, pts in sorted(bands.items()):
        mx = max(v for _, v in pts)
        mn = min(v for _, v in pts)
        trend = 0.0
        if len(pts) >= 2:
            trend, _, _ = reporting.linear_fit([x for x, _ in pts],
                                               [v for _, v in pts])
        band_summary[band] = {"max_sup": mx, "min_sup": mn,
                              "band_ratio": mx / mn if mn > 0 else math.inf,
                              "trend_slope": trend}
    return ({"per_kl": per_kl, "bands": band_summary,
             "spread_tol": spread_tol, "rows": len(rows)}, all_ok)


# ---------------------------------------------------------------------------
# lemma_lipschitz_sweep
# ---------------------------------------------------------------------------

def run_lemma_lipschitz_sweep(config: ExperimentConfig) -> ExperimentReport:
    t0 = time.perf_counter()
    p = config.params
    rows = []
    alphas = [float(a) for a in p["alphas"]]
    n_grid = [int(n) for n in p["N_grid"]]
    factors = [float(x) for x in p["M_factors"]]
    seeds = int(p["seeds"])

    def per_alpha(alpha):
        out = []
        symbols = {}
        for s in range(seeds):
            b = random_symbol(alpha, int(p["symbol_max_block"]),
                              [config.seed, 71, s])
            symbols[s] = b
        for N in n_grid:
            for fac in factors:
                M = int(round(fac * N))
                for s in range(seeds):
                    out.append((alpha, N, M, s,
                                modulated_norm_ratio(symbols[s], alpha, N, M)))
        return out

    for chunk in _map_ordered(per_alpha, alphas, config.worker_count()):
        rows.extend(chunk)
    report = _report(config, rows, summarize_lemma_lipschitz_sweep)
    report.wall_clock = time.perf_counter() - t0
    return report


def summarize_lemma_lipschitz_sweep(params, rows):
    ratio_tol = float(params["ratio_tol"])
    trend_tol = float(params["trend_tol"])
    sup = 0.0
    argmax = None
    per_n = {}
    xs_n, ys, xs_m = [], [], []
    for alpha, N, M, seed, ratio in rows:
        ratio = float(ratio)
        if ratio > sup:
            sup = ratio
            argmax = {"alpha": alpha, "N": int(N), "M": int(M),
                      "seed": int(seed)}
        per_n[int(N)] = max(per_n.get(int(N), 0.0), ratio)
        xs_n.append(math.log(int(N)))
        xs_m.append(math.log1p(abs(int(M))))
        ys.append(ratio)
    slope_n = slope_m = 0.0
    if len(ys) >= 2:
        slope_n, _, _ = reporting.linear_fit(xs_n, ys)
        slope_m, _, _ = reporting.linear_fit(xs_m, ys)
    ok = (bool(rows) and sup <= ratio_tol
          and slope_n <= trend_tol and slope_m <= trend_tol)
    return ({"sup_ratio": sup, "argmax": argmax,
             "sup_per_N": {str(n): v for n, v in sorted(per_n.items())},
             "trend_slope_ln_N": slope_n, "trend_slope_ln_M": slope_m,
             "ratio_tol": ratio_tol, "trend_tol": trend_tol,
             "rows": len(rows)}, ok)


_RUNNERS = {
    "identity_suite": run_identity_suite,
    "bht_consistency": run_bht_consistency,
    "truncation_uniformity": run_truncation_uniformity,
    "log_growth": run_log_growth,
    "constant_stability": run_constant_stability,
    "lemma_lipschitz_sweep": run_lemma_lipschitz_sweep,
}

SUMMARIZERS = {
    "identity_suite": summarize_identity_suite,
    "bht_consistency": summarize_bht_consistency,
    "truncation_uniformity": summarize_truncation_uniformity,
    "log_growth": summarize_log_growth,
    "constant_stability": summarize_constant_stability,
    "lemma_lipschitz_sweep": summarize_lemma_lipschitz_sweep,
}
