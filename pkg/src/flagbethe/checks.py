"""
Registry of named verification checks and the runner that turns a
configuration into report cells.

Every check carries an anchor tag naming the statement it verifies. A run
expands the configuration into cells (one per weight, or one per (N, n) for
checks that range over all weights at once), executes them in sorted order
and returns one ``CheckReport`` per cell.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import bethe, cohomology, geometric, quasiexp, tensor
from .outcome import EXACT, LIMIT, CheckOutcome
from .poly import Rat

DEFAULT_ZONE = (100, 1000, 10000)
APPENDIX_TMAX = 2


class UsageError(ValueError):
    """Invalid configuration: unknown check, malformed mode string, bad weight."""


class ResourceLimit(Exception):
    """Raised by a cell that would exceed its size budget."""


# -- configuration ------------------------------------------------------------------


def parse_weight(text) -> tuple | None:
    if text is None or text == "":
        return None
    if isinstance(text, (tuple, list)):
        return tuple(int(x) for x in text)
    try:
        return tuple(int(x) for x in str(text).split(","))
    except ValueError as exc:
        raise UsageError(f"bad weight {text!r}; expected comma-separated integers") from exc


def _rat(text: str) -> Rat:
    try:
        f = Fraction(text.strip())
    except ValueError as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc
    return Rat(f.numerator, f.denominator)


def parse_k_mode(text: str):
    """'symbolic' | 'values=v1,v2,..' | 'zone=c1,c2,..' -> (kind, values)."""
    text = (text or "symbolic").strip()
    if text == "symbolic":
        return "symbolic", ()
    kind, sep, rest = text.partition("=")
    if not sep or kind not in ("values", "zone") or not rest:
        raise UsageError(f"bad k-mode {text!r}; use symbolic, values=v1,v2 or zone=c1,c2")
    vals = tuple(_rat(v) for v in rest.split(","))
    if kind == "zone" and any(c <= 1 for c in vals):
        raise UsageError("zone scales must be > 1")
    return kind, vals


def parse_z_mode(text: str):
    """'symbolic' | 'seed=s' -> (kind, seed)."""
    text = (text or "symbolic").strip()
    if text == "symbolic":
        return "symbolic", None
    kind, sep, rest = text.partition("=")
    if kind != "seed" or not sep:
        raise UsageError(f"bad z-mode {text!r}; use symbolic or seed=s")
    try:
        return "seed", int(rest)
    except ValueError as exc:
        raise UsageError(f"seed must be an integer, got {rest!r}") from exc


@dataclass
class CheckConfig:
    check: str
    N: int
    n: int
    lam: tuple | None = None
    jmax: int = 4
    k_mode: str = "symbolic"
    z_mode: str = "symbolic"
    degree_bound: int = 4
    report: str | None = None

    def validate(self) -> None:
        if self.N < 1 or self.n < 1:
            raise UsageError("N and n must be positive")
        if self.jmax < 0 or self.degree_bound < 0:
            raise UsageError("jmax and degree bound must be nonnegative")
        if self.lam is not None:
            if len(self.lam) != self.N or sum(self.lam) != self.n or min(self.lam) < 0:
                raise UsageError(f"weight {self.lam} does not have N={self.N} parts summing to n={self.n}")
        kind, vals = parse_k_mode(self.k_mode)
        if kind == "values" and len(vals) != self.N:
            raise UsageError(f"k-mode values needs {self.N} numbers")
        parse_z_mode(self.z_mode)
        resolve_checks(self.check)

    @property
    def seed(self) -> int:
        kind, seed = parse_z_mode(self.z_mode)
        return 0 if seed is None else seed

    @property
    def k(self):
        return parse_k_mode(self.k_mode)

    def zone(self):
        kind, vals = self.k
        return vals if kind == "zone" else tuple(Rat(c) for c in DEFAULT_ZONE)

    def k_values(self):
        """Numeric K if given; None for symbolic (zone modes fall back to symbolic)."""
        kind, vals = self.k
        return vals if kind == "values" else None


@dataclass
class CheckReport:
    check: str
    anchor: str
    parameters: dict
    status: str
    evidence: str
    witnesses: list
    details: dict
    timing: dict

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "parameters": self.parameters,
            "status": self.status,
            "evidence": self.evidence,
            "witnesses": self.witnesses,
            "details": self.details,
            "timing": self.timing,
        }

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), ensure_ascii=False)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float):
        return x if math.isfinite(x) else str(x)
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)


# -- registry -------------------------------------------------------------------------


@dataclass
class CheckSpec:
    name: str
    anchor: str
    summary: str
    run: Callable
    scope: str = "weight"  # weight | dominant | global
    aliases: tuple = ()
    evidence: str = EXACT
    paper_proved: bool = True
    budget: Callable | None = None

    def catalog_entry(self) -> dict:
        return {"check": self.name, "anchor": self.anchor, "summary": self.summary,
                "scope": self.scope, "paper_proved": self.paper_proved}


REGISTRY: dict[str, CheckSpec] = {}


def register(name, anchor, summary, scope="weight", aliases=(), evidence=EXACT, paper_proved=True, budget=None):
    def deco(fn):
        REGISTRY[name] = CheckSpec(name, anchor, summary, fn, scope, tuple(aliases), evidence, paper_proved, budget)
        return fn

    return deco


def list_checks() -> list[dict]:
    return [REGISTRY[k].catalog_entry() for k in sorted(REGISTRY)]


def resolve_checks(name: str) -> list[CheckSpec]:
    if name == "all":
        return [REGISTRY[k] for k in sorted(REGISTRY)]
    if name in REGISTRY:
        return [REGISTRY[name]]
    for spec in REGISTRY.values():
        if name in spec.aliases:
            return [spec]
    raise UsageError(f"unknown check {name!r}; run 'verify list' for the catalog")


def _max_dim(limit: int):
    def budget(cfg, lam):
        d = tensor.multinomial(lam) if lam is not None else cfg.N ** cfg.n
        if d > limit:
            return f"weight space of dimension {d} exceeds the budget {limit} for this check"
        return None

    return budget


def _zvals(cfg):
    return tensor.generic_point(cfg.n, cfg.seed)


def _k_label(cfg) -> str:
    kind, vals = cfg.k
    return "symbolic" if kind != "values" else "values=" + ",".join(str(v) for v in vals)


# -- tensor module ----------------------------------------------------------------


@register("section-2.3-current-algebra-relations", "Section 2.3 (current algebra action)",
          "commutation relations of gl_N[t] and S_n-equivariance of the action on random elements",
          scope="global", aliases=("gl-relations",))
def _check_relations(cfg, lam):
    rel = tensor.current_relations_check(cfg.N, cfg.n, rmax=3, seed=cfg.seed)
    eqv = tensor.sn_equivariance_check(cfg.N, cfg.n, rmax=2, seed=cfg.seed)
    return {"rmax": 3, "seed": cfg.seed}, _merge([rel, eqv])


@register("corollary-3.4-contravariance", "Corollary 3.4",
          "S((e_ij t^r) x, y) = S(x, (e_ji t^r) y) for the plain and the (+,-) Shapovalov pairings",
          scope="global", aliases=("contravariance",), budget=_max_dim(81))
def _check_contravariance(cfg, lam):
    return {"rmax": 2, "seed": cfg.seed}, cohomology.contravariance_check(cfg.N, cfg.n, 2, cfg.seed)


@register("theorem-3.5-nondegenerate", "Theorem 3.5",
          "the S_{+-} pairing of graded bases of V+/J+ and (1/D)V-/J- has rank N^n",
          scope="global", aliases=("nondegeneracy",), budget=_max_dim(81))
def _check_nondegenerate(cfg, lam):
    return {}, cohomology.nondegeneracy_check(cfg.N, cfg.n)


# -- Bethe operators ------------------------------------------------------------------


_FAMILIES: dict = {}


def _family(N: int, jmax: int, K=None):
    key = (N, jmax, K)
    if key not in _FAMILIES:
        base = _FAMILIES.get((N, jmax, None))
        if base is None:
            base = _FAMILIES[(N, jmax, None)] = bethe.expand_universal_operator(N, jmax)
        _FAMILIES[key] = base if K is None else base.with_K(K)
    return _FAMILIES[key]


@register("theorem-2.4-commutativity", "Theorem 2.4",
          "[B_ij, B_kl] vanishes on V_lam; B_ij commute with U(h), and with U(gl_N) at K = 0",
          aliases=("commutativity",), budget=_max_dim(12))
def _check_commutativity(cfg, lam):
    K = cfg.k_values()
    fam = _family(cfg.N, cfg.jmax, K)
    parts = [bethe.commutativity_check(fam, lam)]
    parts.append(bethe.weight_commutation_check(fam, lam, [(i, i) for i in range(1, cfg.N + 1)]))
    small = tensor.multinomial(lam) <= 6
    if small:
        zero = _family(cfg.N, cfg.jmax, tuple(Rat(0) for _ in range(cfg.N)))
        gens = [(a, b) for a in range(1, cfg.N + 1) for b in range(1, cfg.N + 1) if a != b]
        parts.append(bethe.weight_commutation_check(zero, lam, gens))
    return {"jmax": cfg.jmax, "K": _k_label(cfg), "gl_N_at_K0": small}, _merge(parts)


@register("lemma-2.5-asymptotics", "Lemma 2.5",
          "normalized B^K_ij converge to sum_{m>=i} e_mm t^{j-1} in the zone K_i = c^{N+1-i}",
          aliases=("asymptotics",), evidence=LIMIT, budget=_max_dim(12))
def _check_asymptotics(cfg, lam):
    fam = _family(cfg.N, cfg.jmax)
    zv = _zvals(cfg)
    scales = cfg.zone()
    orders = [tuple(range(1, cfg.N + 1))]
    if cfg.N == 2:
        orders.append((2, 1))
    outs = []
    for order in orders:
        o = bethe.asymptotic_limit_check(fam, lam, scales, zv, order)
        o.details = {"order=" + ",".join(map(str, order)): o.details}
        outs.append(o)
    return {"jmax": cfg.jmax, "zone": [str(c) for c in scales], "z": f"seed={cfg.seed}"}, _merge(outs)


@register("lemma-2.7-central", "Lemma 2.7",
          "sum_i e_ii t^r acts as multiplication by sum_s z_s^r",
          aliases=("central",))
def _check_central(cfg, lam):
    return {"rmax": cfg.jmax}, bethe.central_check(cfg.N, lam, cfg.jmax)


# -- flag cohomology --------------------------------------------------------------------


@register("lemma-3.2-well-defined", "Lemma 3.2",
          "relation generators restrict to zero; i+ and i- images of a basis have rank d_lam")
def _check_well_defined(cfg, lam):
    return {"z": f"seed={cfg.seed}"}, cohomology.well_defined_check(lam, _zvals(cfg))


@register("eq-3.2-localization", "Eq. (3.2)",
          "localization integrals of basis products are symmetric polynomials",
          aliases=("localization",))
def _check_localization(cfg, lam):
    return {}, cohomology.localization_check(lam)


@register("section-3.2-poincare-rank", "Section 3.2 (Poincare pairing)",
          "the Poincare pairing matrix modulo J_H has full rank d_lam",
          aliases=("poincare-rank",))
def _check_poincare(cfg, lam):
    return {}, cohomology.poincare_rank_check(lam)


@register("corollary-3.3-shapovalov-integral", "Corollary 3.3",
          "S_{+-}(i+ h, i- g) equals the integral of h g on basis pairs",
          aliases=("shapovalov",))
def _check_shapovalov(cfg, lam):
    return {}, cohomology.shapovalov_integral_check(lam)


@register("theorem-3.4-xi-intertwining", "Theorem 3.4",
          "i+- o xi(e_ii t^r) = (e_ii t^r) o i+-, and each basis class acts as its limit Bethe element",
          aliases=("xi-intertwining",))
def _check_xi(cfg, lam):
    return {"rmax": 4}, cohomology.xi_intertwining_check(lam, 4)


@register("corollary-3.7-graded-character", "Corollary 3.7 / Eq. (3.6)",
          "graded character of the singular part of (1/D)V-/J- against the closed form",
          scope="dominant", aliases=("graded-character",))
def _check_character(cfg, lam):
    return {}, cohomology.graded_character_check(lam)


@register("corollary-3.8-rho-singular-character", "Corollary 3.8",
          "graded character of the rho^- singular classes in H(C) against the closed form and the tensor side",
          scope="dominant", aliases=("rho-singular-character",))
def _check_rho_character(cfg, lam):
    got = geometric.rho_singular_character(lam)
    kernel = tensor.singular_character("minus", lam)
    literal = cohomology.graded_character_formula(lam)
    fmt = cohomology._fmt_char
    wit = []
    if got != literal:
        wit.append(f"rho^- singular character {fmt(got)} != formula {fmt(literal)}")
    if got != kernel:
        wit.append(f"rho^- singular character {fmt(got)} != tensor kernel character {fmt(kernel)}")
    details = {"rho_character": fmt(got), "kernel": fmt(kernel), "formula": fmt(literal),
               "matches_kernel": got == kernel}
    return {}, CheckOutcome(not wit, wit, EXACT, details)


# -- quasi-exponentials -----------------------------------------------------------------


def _qe_family(cfg, lam):
    K = cfg.k_values()
    if K is not None and len(set(K)) != len(K):
        raise UsageError("k-mode values must be pairwise distinct")
    return quasiexp.QuasiExponentialFamily(lam, K)


@register("eq-4.6-kernel", "Eq. (4.6)",
          "the fundamental operator annihilates each quasi-exponential to truncation order",
          aliases=("kernel",))
def _check_kernel(cfg, lam):
    return {"jmax": cfg.jmax, "K": _k_label(cfg)}, quasiexp.kernel_check(_qe_family(cfg, lam), cfg.jmax)


@register("eq-4.8-factorization", "Eq. (4.8)",
          "the fundamental operator factors through Wronskians of tails",
          aliases=("factorization",))
def _check_factorization(cfg, lam):
    return {"jmax": cfg.jmax, "K": _k_label(cfg)}, quasiexp.factorization_check(_qe_family(cfg, lam), cfg.jmax)


@register("eq-4.10-wk-limit", "Eq. (4.10)",
          "A^K_s tend to A^infty_s in the zone; discrepancy shrinks at least 5x per decade",
          aliases=("wk-limit",), evidence=LIMIT)
def _check_wk(cfg, lam):
    scales = cfg.zone()
    discs = [quasiexp.wk_limit_discrepancy(lam, c) for c in scales]
    ratios = bethe.sweep_ratios(discs)
    ok = bethe.ratios_ok(ratios, 5.0, math.inf)
    details = {"discrepancies": [float(d) for d in discs], "ratios": ratios}
    wit = [] if ok else [f"ratios {ratios}"]
    return {"zone": [str(c) for c in scales]}, CheckOutcome(ok, wit, LIMIT, details)


@register("lemma-4.3-module-structure", "Lemma 4.3",
          "eta(A^infty_s) acts on H_lam as sigma_s(z)",
          aliases=("eta-module",))
def _check_lemma43(cfg, lam):
    return {}, quasiexp.lemma43_check(lam)


@register("lemma-4.4-asymptotics", "Lemma 4.4",
          "normalized F^K_ij converge to the coefficients of sum_{m>=i} p_m'/p_m",
          aliases=("f-asymptotics",), evidence=LIMIT)
def _check_lemma44(cfg, lam):
    scales = cfg.zone()
    discs = [quasiexp.lemma44_discrepancy(lam, c, cfg.jmax) for c in scales]
    ratios = bethe.sweep_ratios(discs)
    ok = bethe.ratios_ok(ratios)
    details = {"discrepancies": [float(d) for d in discs], "ratios": ratios}
    wit = [] if ok else [f"ratios {ratios}"]
    return {"jmax": cfg.jmax, "zone": [str(c) for c in scales]}, CheckOutcome(ok, wit, LIMIT, details)


def _langlands(sign):
    def run(cfg, lam):
        scales = cfg.zone()
        fam = _family(cfg.N, cfg.jmax)
        out = quasiexp.langlands_limit_check(lam, sign, scales, cfg.jmax, _zvals(cfg), fam)
        return {"jmax": cfg.jmax, "zone": [str(c) for c in scales], "z": f"seed={cfg.seed}"}, out

    return run


register("theorem-4.5-limit-plus", "Theorem 4.5",
         "eta o tau^{K+} and eta o mu^{K+} tend to xi+ and (i+)^{-1}",
         aliases=("limit-plus",), evidence=LIMIT, budget=_max_dim(12))(_langlands(1))
register("theorem-4.8-limit-minus", "Theorem 4.8",
         "eta o tau^{K-} and eta o mu^{K-} tend to xi- and (i-)^{-1}",
         aliases=("limit-minus",), evidence=LIMIT, budget=_max_dim(12))(_langlands(-1))


@register("theorem-4.10-singular-case", "Theorem 4.10",
          "lowest singular vector degree and transport of relations between B^{K=0}_ij v- and F_ij",
          scope="dominant", aliases=("singular-case",), budget=_max_dim(12))
def _check_singular(cfg, lam):
    return {"degree_bound": cfg.degree_bound}, quasiexp.singular_case_check(lam, cfg.degree_bound)


# -- appendix ---------------------------------------------------------------------------


def _appendix(sign):
    def run(cfg, lam):
        parts = []
        for d in geometric.DIRECTIONS:
            for a in range(1, cfg.N):
                for j in range(APPENDIX_TMAX + 1):
                    parts.append(geometric.diagram_check(sign, d, a, j, lam))
                    parts.append(geometric.descent_check(sign, d, a, j, lam))
        out = _merge(parts)
        out.details = {"cells": len(parts), "paper_proved": geometric.paper_proved(sign)}
        return {"tmax": APPENDIX_TMAX, "sign": sign}, out

    return run


register("appendix-A.1-diagram", "Theorem A.1",
         "rho^- localization operators intertwine i- with e_{a,a+1} t^j and e_{a+1,a} t^j, also modulo J_H",
         aliases=("rho-minus",))(_appendix("-"))
register("appendix-A.2-diagram", "Theorem A.2",
         "rho^+ localization operators intertwine i+ with e_{a,a+1} t^j and e_{a+1,a} t^j, also modulo J_H",
         aliases=("rho-plus",), paper_proved=False)(_appendix("+"))


@register("appendix-serre-relation", "Appendix (transported gl_N[t] relations)",
          "[rho(e_{a,a+1} t^j), rho(e_{a+1,a} t^k)] acts as xi(e_aa t^{j+k}) - xi(e_{a+1,a+1} t^{j+k})",
          aliases=("serre",))
def _check_serre(cfg, lam):
    parts = []
    for s in geometric.SIGNS:
        for a in range(1, cfg.N):
            parts.append(geometric.current_relation_check(s, a, lam, 1))
    return {"jmax": 1}, _merge(parts)


# -- runner -----------------------------------------------------------------------------


def _merge(outcomes) -> CheckOutcome:
    if len(outcomes) == 1:
        return outcomes[0]
    wit, parts = [], []
    evidence = EXACT
    for o in outcomes:
        wit.extend(o.witnesses)
        if o.details:
            parts.append(o.details)
        if o.evidence != EXACT:
            evidence = o.evidence
    details = {"parts": parts} if parts else {}
    return CheckOutcome(all(o.passed for o in outcomes), wit, evidence, details)


def _cells(spec: CheckSpec, cfg: CheckConfig):
    if spec.scope == "global":
        return [None]
    if cfg.lam is not None:
        return [cfg.lam]
    weights = tensor.dominant_weights(cfg.N, cfg.n) if spec.scope == "dominant" else tensor.all_weights(cfg.N, cfg.n)
    return list(weights)


def _base_parameters(cfg, lam) -> dict:
    p = {"N": cfg.N, "n": cfg.n}
    if lam is not None:
        p["lambda"] = list(lam)
    return p


def run_cell(spec: CheckSpec, cfg: CheckConfig, lam) -> CheckReport:
    params = _base_parameters(cfg, lam)
    t0 = time.perf_counter()
    reason = None
    if spec.scope == "dominant" and lam is not None and not tensor.is_dominant(lam):
        reason = f"weight {tuple(lam)} is not dominant"
    elif spec.budget is not None:
        reason = spec.budget(cfg, lam)
    if reason is not None:
        return CheckReport(spec.name, spec.anchor, params, "skipped", spec.evidence,
                           [reason], {}, {"seconds": 0.0})
    try:
        extra, outcome = spec.run(cfg, lam)
    except ResourceLimit as exc:
        return CheckReport(spec.name, spec.anchor, params, "skipped", spec.evidence, [str(exc)], {},
                           {"seconds": round(time.perf_counter() - t0, 3)})
    params.update(extra)
    status = "pass" if outcome.passed else "fail"
    wit = list(outcome.witnesses)
    if status == "fail" and not wit:
        wit = ["check reported failure without a witness"]
    details = dict(outcome.details)
    if not spec.paper_proved:
        details["paper_proved"] = False
    return CheckReport(spec.name, spec.anchor, params, status, outcome.evidence or spec.evidence, wit, details,
                       {"seconds": round(time.perf_counter() - t0, 3)})


def _sort_key(rep: CheckReport):
    return (rep.check, json.dumps(_jsonable(rep.parameters), sort_keys=True))


def run(cfg: CheckConfig) -> list[CheckReport]:
    cfg.validate()
    reports = []
    for spec in resolve_checks(cfg.check):
        for lam in _cells(spec, cfg):
            reports.append(run_cell(spec, cfg, lam))
    reports.sort(key=_sort_key)
    return reports


def write_report(reports, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rep in reports:
            fh.write(rep.to_json() + "\n")


__all__ = [
    "CheckConfig",
    "CheckReport",
    "CheckSpec",
    "REGISTRY",
    "UsageError",
    "list_checks",
    "parse_k_mode",
    "parse_weight",
    "parse_z_mode",
    "resolve_checks",
    "run",
    "write_report",
]
