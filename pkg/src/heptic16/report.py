"""Verdict report: each step of the argument as a section with claimed and computed values."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from math import comb

from . import __version__
from .curve import (assemble_system, conclude_i_zero, hilbert_genus,
                    initial_ideal, load_printed_curve, load_printed_ideal,
                    load_syzygies, match_report, printed_generators,
                    residuals, solve_curve)
from .dimension import (castelnuovo_bound, enumerate_obstructed_strata,
                        required_estimate)
from .exact_core import ModularConfig, rank
from .gins import enumerate_sequences, k_split
from .monomials import GREVLEX, format_monomial
from .rewriting import (RULE_1, GeneratorTree, QuadricOnly, apply_rule,
                        bound_after, min_forced_rewritings)
from .singularities import (DEFAULT_TRUNCATION, RamificationType,
                            catalog_audit, expected_codim_alt,
                            lemma_verdict, linearized_rank_conditions,
                            load_catalog, quadruple_point_codim,
                            ramification_codim, residue_checks,
                            weakly_increasing_types)

MATCH, MISMATCH, INCONCLUSIVE = "match", "mismatch", "inconclusive"


def load_manifest() -> dict[str, str]:
    text = resources.files("heptic16").joinpath("data").joinpath("flag_manifest.json").read_text()
    return json.loads(text)["flag_only"]


FLAG_ONLY = load_manifest()


@dataclass
class Section:
    id: str
    claim: str
    claimed_value: object
    computed_value: object
    status: str
    evidence: dict = field(default_factory=dict)
    claimed_source: str = "claimed"  # "claimed" or "derived"

    @property
    def flag_only(self) -> bool:
        return self.id in FLAG_ONLY

    @property
    def severity(self) -> str:
        if self.status == MATCH:
            return "ok"
        if self.flag_only:
            return "warning"
        return "error" if self.status == MISMATCH else "inconclusive"

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "claim": self.claim,
            "claimed_value": {"value": self.claimed_value, "provenance": self.claimed_source},
            "computed_value": {"value": self.computed_value, "provenance": "derived"},
            "status": self.status,
            "severity": self.severity,
            "flag_only": self.flag_only,
            "evidence": self.evidence,
        }


def compare(a, b) -> str:
    return MATCH if a == b else MISMATCH


def holds(cond: bool) -> str:
    return MATCH if cond else MISMATCH


@dataclass
class RunConfig:
    seed: int = 0
    primes: int = 2
    exact: bool = False
    truncation: int = DEFAULT_TRUNCATION
    max_depth: int = 16
    syzygies: str = "u3"
    catalog: str | None = None

    def modular(self) -> ModularConfig:
        return ModularConfig.from_seed(self.seed, self.primes, self.exact)


@dataclass
class VerdictReport:
    sections: list[Section]
    metadata: dict

    def exit_code(self) -> int:
        sev = {s.severity for s in self.sections}
        if "error" in sev:
            return 1
        if "inconclusive" in sev:
            return 2
        return 0

    def warnings(self) -> list[Section]:
        return [s for s in self.sections if s.severity == "warning"]

    def as_dict(self) -> dict:
        return {"metadata": self.metadata, "sections": [s.as_dict() for s in self.sections],
                "exit_code": self.exit_code()}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        out = ["# metadata"]
        out += [f"{k}: {v}" for k, v in sorted(self.metadata.items())]
        for s in self.sections:
            tag = {"ok": "ok  ", "warning": "WARN", "error": "FAIL", "inconclusive": "????"}[s.severity]
            out.append(f"[{tag}] {s.id}: {s.claim}")
            out.append(f"       claimed {s.claimed_value!r} ({s.claimed_source}), computed {s.computed_value!r}: {s.status}")
        out.append(f"exit code {self.exit_code()}")
        return "\n".join(out) + "\n"


def metadata(cfg: RunConfig) -> dict:
    m = cfg.modular()
    return {"seed": cfg.seed, "primes": list(m.primes), "exact": cfg.exact, "truncation": cfg.truncation,
            "max_depth": cfg.max_depth, "syzygies": cfg.syzygies,
            "catalog": cfg.catalog or "bundled", "version": __version__}


# ---------------------------------------------------------------------------
# P^5


def run_p5(cfg: RunConfig) -> list[Section]:
    out = []
    g = castelnuovo_bound(16, 5)
    out.append(Section("p5.castelnuovo", "genus bound for degree 16 curves spanning P^5", 21, g, compare(g, 21)))
    strata = enumerate_obstructed_strata(16, 5)
    low = strata[0]
    out.append(Section("p5.min_codim", "obstructed splitting strata (a1+a2 >= 9) have codimension >= 7", 7, low[1],
                       compare(low[1], 7), {"minimiser": list(low[0].a), "strata": len(strata)}))
    fails = [list(s.a) for s, c in strata if g > required_estimate(5, c)]
    out.append(Section("p5.strata_check", "g+i <= 21 <= 14 + codim on every obstructed stratum", True, not fails,
                       holds(not fails), {"tightest": f"{g} <= {required_estimate(5, low[1])} at {list(low[0].a)}",
                                          "failures": fails}))
    checks = residue_checks(15, 21)
    bad = [c.g for c in checks if not c.ok]
    out.append(Section("p5.residue", "i = 0 and 15 <= g <= 21 closed by g <= 14 + min(3g, 9)", True, not bad,
                       holds(not bad), {f"g={c.g}": f"{c.g} <= {c.required}" for c in checks}))
    out.append(Section("p5.verdict", "no nonlinear rational degree-16 curves span P^5 on a general heptic",
                       True, all(s.status == MATCH for s in out), holds(all(s.status == MATCH for s in out))))
    return out


# ---------------------------------------------------------------------------
# P^4


def curve_certificate(cfg: RunConfig):
    m = cfg.modular()
    printed = load_printed_curve()
    I = initial_ideal(printed, 7, GREVLEX, m)
    return printed, I, conclude_i_zero(I.ideal, printed, seed=cfg.seed, cfg=m)


def run_p4(cfg: RunConfig, cert=None) -> list[Section]:
    out = []
    g = castelnuovo_bound(16, 4)
    out.append(Section("p4.castelnuovo", "genus bound for degree 16 curves spanning P^4", 30, g, compare(g, 30)))
    strata = enumerate_obstructed_strata(16, 4)
    low = strata[0]
    out.append(Section("p4.min_codim", "the least obstructed stratum is (5,4,4,3) of codimension 1", [[5, 4, 4, 3], 1],
                       [list(low[0].a), low[1]], compare((low[0].a, low[1]), ((5, 4, 4, 3), 1)),
                       {"strata": len(strata), "codim_one": [list(s.a) for s, c in strata if c == 1]}))
    if cert is None:
        out.append(Section("p4.certificate", "a generic curve in the (5,4,4,3) stratum has i = 0", "i=0", None,
                           INCONCLUSIVE, {"reason": "no curve certificate supplied"}))
    else:
        c = cert[2]
        out.append(Section("p4.certificate", "a generic curve in the (5,4,4,3) stratum has i = 0", "i=0", c.status,
                           MATCH if c.status == "i=0" else INCONCLUSIVE,
                           {"max_generator_degree": c.regularity, "borel_fixed": c.borel_fixed}))
    cert_ok = out[-1].status == MATCH
    bound = required_estimate(4, 2)
    out.append(Section("p4.threshold", "with i != 0 the stratum codimension is >= 2, so 30 <= 28 + 2",
                       True, g <= bound if cert_ok else None, holds(g <= bound) if cert_ok else INCONCLUSIVE,
                       {"castelnuovo": g, "required": bound}))
    out.append(Section("p4.residue", "i = 0 and 28 <= g <= 30 closed by the codimension-2 singular locus",
                       True, g <= bound, holds(g <= bound), {"required": f"{g} <= 28 + 2"}))
    planes = 3 * (6 - 3)  # dim G(3, 6)
    conditions = comb(7 + 2, 2)
    out.append(Section("plane.bezout", "no degree-16 plane curve on a general heptic (its plane would lie in X)",
                       True, conditions > planes, holds(conditions > planes),
                       {"plane_family_dim": planes, "conditions_for_plane_in_X": conditions}))
    done = [s for s in out if s.id != "plane.bezout"]
    ok = all(s.status == MATCH for s in done)
    out.append(Section("p4.verdict", "no nonlinear rational degree-16 curves span P^4 on a general heptic", True,
                       ok, MATCH if ok else (INCONCLUSIVE if any(s.status == INCONCLUSIVE for s in done) else MISMATCH)))
    return out


# ---------------------------------------------------------------------------
# P^3


def run_p3(cfg: RunConfig) -> list[Section]:
    out = []
    g = castelnuovo_bound(16, 3)
    out.append(Section("p3.castelnuovo", "genus bound for degree 16 curves spanning P^3", 49, g, compare(g, 49)))
    reports = enumerate_sequences()
    two, more = k_split(reports)
    k2 = [list(r.sequence.lam) for r in two]
    k2_g = two[0].g_lambda if len(two) == 1 else None
    out.append(Section("p3.k2", "the only k=2 section gin is (9,7), with g_lambda = 49", [[[9, 7]], 49], [k2, k2_g],
                       compare((k2, k2_g), ([[9, 7]], 49)), {"h0_cone_at_9": two[0].h0_at_9 if two else None}))
    top = max(more, key=lambda r: r.g_lambda)
    out.append(Section("p3.k3_genus", "section gins with k >= 3 have g_lambda <= 31", 31, top.g_lambda,
                       holds(top.g_lambda <= 31),
                       {"maximiser": list(top.sequence.lam),
                        "all": {",".join(map(str, r.sequence.lam)): r.g_lambda for r in more}}))
    start = two[0].ideal
    quad = min_forced_rewritings(start, QuadricOnly(), max_depth=cfg.max_depth)
    after_quad = bound_after(apply_rule(GeneratorTree.from_ideal(start), (2, 0, 0), RULE_1), 49)
    out.append(Section("p3.quadric", "removing the quadric costs one rewriting: g+i <= 48", 48, after_quad,
                       compare(after_quad, 48), {"bfs_quadric_only": quad.as_dict()}))
    res = min_forced_rewritings(start, max_depth=cfg.max_depth)
    if res.status == "found":
        status = compare(res.count, 9)
        value = res.count
    else:
        status, value = INCONCLUSIVE, None
    borel = min_forced_rewritings(start, max_depth=cfg.max_depth, require_borel=True)
    out.append(Section("p3.rewriting_count", "at least nine rewritings are forced", 9, value, status,
                       {"search": res.as_dict(), "borel_constrained": borel.status,
                        "bound_with_computed_count": None if value is None else f"49 - {value} = {49 - value}"}))
    final = 49 - 9
    out.append(Section("p3.final_bound", "49 - 9 = 40 <= 42", 40, final,
                       holds(final == 40 and final <= required_estimate(3)), {"required": required_estimate(3)}))
    ok = all(s.status == MATCH or s.flag_only for s in out)
    out.append(Section("p3.verdict", "no rational degree-16 curves span P^3 on a general heptic", True, ok,
                       holds(ok)))
    return out


# ---------------------------------------------------------------------------
# the explicit curve


def run_curve(cfg: RunConfig, cert=None) -> list[Section]:
    m = cfg.modular()
    out = []
    syz = load_syzygies(cfg.syzygies)
    M = assemble_system(syz)
    rk = rank(M, m)
    evidence = {"reading": syz.name, "shape": list(M.shape)}
    if cfg.syzygies == "u3":
        evidence["literal_t3_rank"] = rank(assemble_system(load_syzygies("t3")), m)
    out.append(Section("curve.system", "the 84 x 85 syzygy system has rank 84 and a one-dimensional kernel",
                       [84, 1], [rk, M.ncols - rk], compare((rk, M.ncols - rk), (84, 1)), evidence))
    printed = load_printed_curve()
    if M.ncols - rk != 1:
        out.append(Section("curve.residuals", "the solved curve satisfies all four syzygies", True, None,
                           INCONCLUSIVE, {"reason": "kernel is not one-dimensional"}))
        solved = None
    else:
        solved = solve_curve(syz, m)
        zero = all(r.is_zero() for r in residuals(syz, solved))
        out.append(Section("curve.residuals", "the solved curve satisfies all four syzygies", True, zero, holds(zero)))
        rep = match_report(solved, printed)
        out.append(Section("curve.printed_match", "solved coefficients equal the 85 printed ones up to scale", 85,
                           rep["matches"], compare(rep["matches"], 85),
                           {"scalar": rep["scalar"], "mismatches": len(rep["mismatches"]),
                            "printed_curve_residuals": [str(r) for r in residuals(syz, printed) if not r.is_zero()]}))
    if cert is None:
        cert = curve_certificate(cfg)
    _, I, c = cert
    low = [I.slice_dims[k] for k in (1, 2, 3, 4)]
    genus = hilbert_genus(printed, range(5, 9), m)
    consistent = len(set(genus.values())) == 1
    out.append(Section("curve.hilbert", "ideal dimensions 0/0/0/5 in degrees 1..4 and one Hilbert polynomial 16m+1-g",
                       [[0, 0, 0, 5], 0], [low, genus[5] if consistent else None],
                       compare((low, genus[5] if consistent else None), ([0, 0, 0, 5], 0)),
                       {"genus_by_degree": {str(k): v for k, v in genus.items()},
                        "slice_dims": {str(k): v for k, v in I.slice_dims.items()}}, "derived"))
    target = load_printed_ideal()
    extra = [format_monomial(g) for g in I.ideal.gens if g not in target.gens]
    missing = [format_monomial(g) for g in target.gens if g not in I.ideal.gens]
    listed = printed_generators()
    out.append(Section("curve.generators", "the revlex initial ideal has the 29 printed generators", len(listed),
                       len(I.ideal), holds(not extra and not missing and len(listed) == len(I.ideal)),
                       {"extra": extra, "missing": missing, "degree_counts": {
                           str(d): len(I.ideal.gens_in_degree(d)) for d in range(1, I.ideal.max_degree() + 1)}}))
    out.append(Section("curve.i_zero", "minimal generators in degree <= 5 give i = 0", [5, "i=0"],
                       [c.regularity, c.status], compare((c.regularity, c.status), (5, "i=0")), c.as_dict()))
    if solved is not None:
        J = initial_ideal(solved, 7, GREVLEX, m)
        sc = conclude_i_zero(J.ideal, solved, seed=cfg.seed, cfg=m)
        out.append(Section("curve.solved_ideal", "the curve solved from the syzygies has generators in degree <= 5",
                           5, J.ideal.max_degree(), holds(J.ideal.max_degree() <= 5),
                           {"slice_dims": {str(k): v for k, v in J.slice_dims.items()},
                            "certificate": sc.status, "generators": len(J.ideal)}))
    return out


# ---------------------------------------------------------------------------
# singularities and ramification


def run_delta(cfg: RunConfig) -> list[Section]:
    m = cfg.modular()
    out = []
    catalog = load_catalog(cfg.catalog)
    for line in catalog_audit(catalog, cfg.truncation, m):
        status = compare(line.computed, line.expected) if line.oracle_ok else MISMATCH
        out.append(Section(f"delta.{line.name}", f"delta of {line.name}", line.expected, line.computed, status,
                           {k: v for k, v in line.as_dict().items()
                            if k not in ("name", "expected_delta", "computed_delta", "match")}))
    types = list(weakly_increasing_types(5, 8))
    strict = [rt for rt in types if rt.strictly_increasing()]
    eq_bad = [list(rt.r) for rt in strict if linearized_rank_conditions(rt, m) != ramification_codim(rt)]
    ties = [(rt, linearized_rank_conditions(rt, m)) for rt in types if not rt.strictly_increasing()]
    out.append(Section("ramification.schubert", "fixing a ramification type imposes sum(r_i - i) linear conditions",
                       True, not eq_bad, holds(not eq_bad),
                       {"strictly_increasing_checked": len(strict), "failures": eq_bad}))
    over = [list(rt.r) for rt, k in ties if k > ramification_codim(rt)]
    under = [list(rt.r) for rt, k in ties if k < ramification_codim(rt)]
    out.append(Section("ramification.ties", "the same count holds for weakly increasing types with repeated orders",
                       True, not over and not under, holds(not over and not under),
                       {"types_with_ties": len(ties), "more_conditions": len(over), "fewer_conditions": len(under),
                        "examples": {"more": over[:3], "fewer": under[:3]}}))
    sample = RamificationType((3, 4, 5, 6, 7))
    out.append(Section("ramification.alt_formula", "expected codimension sum r_i - C(n,2)",
                       expected_codim_alt(sample), ramification_codim(sample),
                       compare(expected_codim_alt(sample), ramification_codim(sample)),
                       {"type": list(sample.r), "difference": "n"}))
    fixed, varied = quadruple_point_codim(5, 4, 5, 4)
    out.append(Section("quadruple.codim", "quadruple point: codimension 20 fixed, 11 varied, and 11 >= 9",
                       [20, 11], [fixed, varied], compare((fixed, varied, varied >= 9), (20, 11, True))))
    checks = residue_checks(1, 21)
    bad = [c.g for c in checks if not c.ok]
    out.append(Section("lemma.min3g9", "required codimension min(3g, 9): 9 at g = 3, closing g <= 21", 9,
                       lemma_verdict(3), compare(lemma_verdict(3), 9) if not bad else MISMATCH,
                       {"g_failing": bad}))
    return out


# ---------------------------------------------------------------------------


def run_all(cfg: RunConfig | None = None) -> VerdictReport:
    cfg = cfg or RunConfig()
    cert = curve_certificate(cfg)
    sections = run_p5(cfg) + run_p4(cfg, cert) + run_p3(cfg) + run_curve(cfg, cert) + run_delta(cfg)
    return VerdictReport(sections, metadata(cfg))


RUNNERS = {
    "verify-p5": lambda cfg: run_p5(cfg),
    "verify-p4": lambda cfg: run_p4(cfg, curve_certificate(cfg)),
    "verify-p3": lambda cfg: run_p3(cfg),
    "curve-cert": lambda cfg: run_curve(cfg),
    "delta-audit": lambda cfg: run_delta(cfg),
}


def run(command: str, cfg: RunConfig) -> VerdictReport:
    if command == "all":
        return run_all(cfg)
    return VerdictReport(RUNNERS[command](cfg), metadata(cfg))
