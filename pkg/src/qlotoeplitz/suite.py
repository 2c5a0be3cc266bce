"""Run configuration, check orchestration and report assembly.

A config is a JSON object::

    {
      "instance": {"kind": "free_monoid", "rank": 2},
      "fesspe": [["a", "b"]],          # candidate sets, element literals
      "radius": 3,                      # default ball radius
      "radii": {"commutation": 2},      # per-check overrides
      "checks": ["all"],                # or a list of names from CHECKS
      "seed": 0,
      "exhaustive_limit": 10000000,      # larger case spaces are sampled
      "out": "report.json"              # optional
    }
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from .algebra import check_expectation, check_graded, check_ring_axioms
from .axioms import check_axioms, check_join, check_labels, check_lub_in_P, check_translated_joins
from .indicator import check_product_rule, fesspe_report, verify_chi_formula
from .inner import (check_commutation, check_intertwining, check_partitions, verify_ideal_J,
                    verify_rank_one_system, verify_sum_to_identity)
from .monomials import check_monomial_laws, check_monomial_oracle, check_nica
from .qlo import QLOInstance, UnsupportedCapability, make_instance
from .report import FAIL, FLAGGED, PASS, SKIPPED, CheckReport, skipped
from .spectrum import MAX_BALL, census
from .truncation import check_commutant, check_matrix_oracle


class ConfigError(ValueError):
    pass


# name -> stage; stages run in this order
CHECKS = {
    "qlo-axioms": "qlo", "qlo-join": "qlo", "qlo-labels": "qlo", "qlo-lub": "qlo", "lub-products": "qlo",
    "fesspe": "fesspe",
    "nica": "monomial", "monomial-oracle": "monomial", "monomial-laws": "monomial",
    "ring-axioms": "lemma", "graded": "lemma", "expectation": "lemma",
    "indicator-product-rule": "lemma", "chi-formula": "lemma", "commutation": "lemma",
    "intertwining": "lemma", "sum-to-identity": "lemma", "rank-one": "lemma",
    "ideal-J": "lemma", "partition": "lemma", "commutant": "lemma", "matrix-oracle": "lemma",
    "spectrum": "spectrum",
}
PROBE_LIMIT = 200_000  # probe instances are sampled sooner: their balls are dense grids
STAGES = ["qlo", "fesspe", "monomial", "lemma", "spectrum"]
NEEDS_FESSPE = {"chi-formula", "commutation", "intertwining", "sum-to-identity", "rank-one", "ideal-J"}


@dataclass
class RunConfig:
    instance: dict
    fesspe: list = field(default_factory=list)
    radius: int = 3
    radii: dict = field(default_factory=dict)
    checks: list = field(default_factory=lambda: ["all"])
    seed: int = 0
    exhaustive_limit: int = 10_000_000
    out: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> RunConfig:
        if not isinstance(d, dict):
            raise ConfigError("config must be an object")
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        if "instance" not in d:
            raise ConfigError("config needs an 'instance' record")
        cfg = cls(**d)
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path: str) -> RunConfig:
        try:
            with open(path, encoding="utf-8") as fh:
                d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        except OSError as exc:
            raise ConfigError(f"{path}: {exc.strerror}") from None
        return cls.from_dict(d)

    def validate(self) -> None:
        try:
            self.inst = make_instance(self.instance)
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from None
        for name, r in [("radius", self.radius), *self.radii.items()]:
            if not isinstance(r, int) or isinstance(r, bool) or r <= 0:
                raise ConfigError(f"radius for {name!r} must be a positive integer, got {r!r}")
        bad = set(self.radii) - set(CHECKS)
        if bad:
            raise ConfigError(f"radii given for unknown checks {sorted(bad)}")
        names = list(CHECKS) if self.checks in (["all"], "all") else list(self.checks)
        bad = [c for c in names if c not in CHECKS]
        if bad:
            raise ConfigError(f"unknown checks {bad}; expected names from {list(CHECKS)}")
        self.enabled = list(dict.fromkeys(names))
        self.candidates = [self.parse_candidate(F) for F in self.fesspe]

    def parse_candidate(self, F) -> list:
        if not isinstance(F, list) or not F:
            raise ConfigError(f"FESSPE candidate must be a non-empty list, got {F!r}")
        inst = self.inst
        out = []
        for a in F:
            try:
                x = inst.parse(str(a))
            except ValueError as exc:
                raise ConfigError(f"FESSPE element {a!r}: {exc}") from None
            if x == inst.identity():
                raise ConfigError("FESSPE candidates must avoid the identity")
            out.append(x)
        return out

    def radius_for(self, check: str) -> int:
        return self.radii.get(check, self.radius)


@dataclass
class RunReport:
    config: dict
    reports: list
    timing: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return any(r.verdict == FAIL for r in self.reports)

    def counts(self) -> dict:
        c = {PASS: 0, FAIL: 0, FLAGGED: 0, SKIPPED: 0}
        for r in self.reports:
            c[r.verdict] += 1
        return c

    def to_dict(self, timing=False) -> dict:
        d = {"config": self.config, "summary": self.counts(),
             "reports": [r.to_dict() for r in self.reports]}
        if timing:
            d["timing_seconds"] = {k: round(v, 3) for k, v in self.timing.items()}
        return d

    def render(self, fmt="text", timing=False) -> str:
        if fmt == "structured":
            return json.dumps(self.to_dict(timing), indent=2, sort_keys=False) + "\n"
        lines = [r.line() for r in self.reports]
        for r in self.reports:
            if r.verdict in (FAIL, FLAGGED) and r.witnesses:
                lines.append(f"  first witness for {r.check}: {json.dumps(r.witnesses[0], sort_keys=True)}")
        if timing:
            lines += [f"  time {k}: {v:.3f}s" for k, v in self.timing.items()]
        c = self.counts()
        lines.append(f"summary: {c[PASS]} pass, {c[FAIL]} fail, {c[FLAGGED]} flagged, {c[SKIPPED]} skipped")
        return "\n".join(lines) + "\n"


def _runner(check: str, inst: QLOInstance, F, n: int, limit, rng):
    """Zero-argument callable producing the report for one check."""
    point_radius = 2 * n
    small = min(n, 2)
    return {
        "qlo-axioms": lambda: check_axioms(inst, n, limit, rng),
        "qlo-join": lambda: check_join(inst, n, limit, rng),
        "qlo-labels": lambda: check_labels(inst, n, limit, rng),
        "qlo-lub": lambda: check_lub_in_P(inst, n),
        "lub-products": lambda: check_translated_joins(inst, n, True, limit, rng),
        "nica": lambda: check_nica(inst, n, point_radius),
        "monomial-oracle": lambda: check_monomial_oracle(inst, n, point_radius, limit, rng),
        "monomial-laws": lambda: check_monomial_laws(inst, small, limit, rng),
        "ring-axioms": lambda: check_ring_axioms(inst, n, 30, rng),
        "graded": lambda: check_graded(inst, small),
        "expectation": lambda: check_expectation(inst, small),
        "indicator-product-rule": lambda: check_product_rule(inst, n),
        "chi-formula": lambda: verify_chi_formula(inst, F, n),
        "commutation": lambda: check_commutation(inst, F, n, point_radius, limit, rng),
        "intertwining": lambda: check_intertwining(inst, F, n),
        "sum-to-identity": lambda: verify_sum_to_identity(inst, F, n),
        "rank-one": lambda: verify_rank_one_system(inst, F, small, n, limit, rng),
        "ideal-J": lambda: verify_ideal_J(inst, F, small, limit, rng),
        "partition": lambda: check_partitions(inst, n),
        "commutant": lambda: check_commutant(inst),
        "matrix-oracle": lambda: check_matrix_oracle(inst, n, 20, rng),
        "spectrum": lambda: census(inst, _spectrum_radius(inst, n)),
    }[check]


def _spectrum_radius(inst, n):
    while n > 0 and len(inst.enumerate_ball(n)) > MAX_BALL:
        n -= 1
    return n


def run(config: RunConfig, clock=time.perf_counter) -> RunReport:
    """Run enabled checks in stage order; checks needing a FESSPE are skipped without one."""
    inst = config.inst
    probe = not inst.supports_complete_enumeration
    rng = random.Random(config.seed)
    limit = min(config.exhaustive_limit, PROBE_LIMIT) if probe else config.exhaustive_limit
    reports: list = []
    timing: dict = {}
    F = None
    fesspe_reason = "no FESSPE candidate given"
    for stage in STAGES:
        if stage == "fesspe":
            F, fesspe_reason = _fesspe_stage(config, reports, timing, clock, probe)
            continue
        for check in (c for c in config.enabled if CHECKS[c] == stage):
            if check in NEEDS_FESSPE and F is None:
                reports.append(skipped(check, inst.describe(), fesspe_reason))
                continue
            if check == "spectrum" and not inst.supports_complete_enumeration:
                reports.append(skipped(check, inst.describe(), "instance balls are finite grids, "
                                       "not complete down-sets; spectrum census unsupported"))
                continue
            t0 = clock()
            try:
                rep = _runner(check, inst, F, config.radius_for(check), limit, rng)()
            except UnsupportedCapability as exc:
                rep = skipped(check, inst.describe(), str(exc))
            timing[check] = clock() - t0
            if probe and rep.verdict == FAIL:
                rep.verdict = FLAGGED
                rep.reason = (rep.reason + "; " if rep.reason else "") + \
                    "probe instance: violations reported for inspection, not asserted"
            reports.append(rep)
    return RunReport(_echo(config), reports, timing)


def _fesspe_stage(config, reports, timing, clock, probe):
    """Returns the first verified candidate (or None) and a skip reason."""
    if "fesspe" not in config.enabled:
        F = config.candidates[0] if config.candidates else None
        return F, "FESSPE stage disabled and no candidate given"
    inst = config.inst
    if not config.candidates:
        reports.append(skipped("fesspe", inst.describe(), "no FESSPE candidate given"))
        return None, "no FESSPE candidate given"
    n = config.radius_for("fesspe")
    t0 = clock()
    subs = [fesspe_report(inst, F, n, probe=probe) for F in config.candidates]
    timing["fesspe"] = clock() - t0
    found = next((F for F, r in zip(config.candidates, subs) if r.verdict == PASS), None)
    if len(subs) == 1:
        rep = subs[0]
    else:
        rep = CheckReport("fesspe", inst.describe(), {"radius": str(n)}, cases=sum(r.cases for r in subs))
        rep.parameters["candidates"] = [{**r.parameters, "verdict": r.verdict} for r in subs]
        if found is None:
            for r in subs:
                for w in r.witnesses:
                    rep.fail({"F": r.parameters["F"], **w})
            if probe:
                rep.verdict = FLAGGED
                rep.reason = subs[0].reason
    reports.append(rep)
    if found is None:
        return None, "FESSPE check did not verify any candidate"
    return found, ""


def _echo(config: RunConfig) -> dict:
    return {"instance": config.inst.config(), "fesspe": [[config.inst.format(a) for a in F]
                                                         for F in config.candidates],
            "radius": config.radius, "radii": dict(sorted(config.radii.items())),
            "checks": config.enabled, "seed": config.seed, "exhaustive_limit": config.exhaustive_limit}
