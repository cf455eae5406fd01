"""End-to-end orchestration: saturate, run-time filter, score, report.

Two modes:

* ``fixpoint`` — saturate to the full fixpoint, then numerically filter
  and rank every derived fact.
* ``filtered`` — per round, only facts that pass the run-time filter and
  are judged interesting re-enter the fact list; everything else is
  discarded for the rest of the run.

A ``fails`` verdict on an unconditional derived fact aborts the run: the
engine promises to generate logical consequences only, so an empirical
counterexample means a bad rule or a bug, never a valid outcome.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .construction import Construction, initial_facts
from .engine import (DerivationDag, DerivationNode, SaturationResult,
                     derive_round, saturate)
from .facts import Fact, FactSet
from .numeric import (DEFAULT_TOL, DegenerateModelError, Verdict, eval_condition,
                      eval_fact, sample_models)
from .rules import Rule
from .scoring import MetricConfig, ScoreCard, filter_interesting, score_all


class SoundnessViolationError(RuntimeError):
    """An unconditional derived fact failed numeric verification."""

    def __init__(self, fact: Fact, seed: int, rule: str):
        super().__init__(
            f"soundness violation: {fact} (rule {rule}) fails on seed {seed}")
        self.fact = fact
        self.seed = seed
        self.rule = rule


@dataclass(frozen=True)
class PipelineConfig:
    mode: str = "fixpoint"  # fixpoint | filtered
    max_rounds: int = 10
    max_facts: int = 100000
    seeds: int = 5
    tol: float = DEFAULT_TOL
    master_seed: int = 0
    metrics: MetricConfig = field(default_factory=MetricConfig)
    strict_sides: bool = False


@dataclass
class FactRecord:
    fact: Fact
    round: int
    rule: Optional[str]          # None for hypotheses
    premises: Tuple[Fact, ...]
    verdict: str
    score: ScoreCard
    interesting: bool


@dataclass
class Report:
    construction: str
    rules_digest: str
    mode: str
    rounds: int
    stop_reason: str
    records: List[FactRecord]
    discarded: Dict[str, int]    # tautologies / empirically_false / conditional_failed
    seeds: int
    master_seed: int


def rules_digest(rules: List[Rule]) -> str:
    text = "\n".join(str(r) for r in sorted(rules, key=lambda r: r.name))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _filter_derived(fact: Fact, node: DerivationNode, models, tol: float):
    """Run-time filter one derived fact.

    Returns "ok", "conditional_failed" or "empirically_false"; raises
    SoundnessViolationError when an unconditional fact is false.
    """
    for m in models:
        for kind, args in node.conditions:
            if not eval_condition(m, kind, args, tol):
                return "conditional_failed"
    for m in models:
        if not eval_fact(m, fact, tol):
            if node.conditional:
                return "empirically_false"
            raise SoundnessViolationError(fact, m.seed, node.rule)
    return "ok"


def _build_records(facts: FactSet, dag: DerivationDag, d0: FactSet,
                   cfg: PipelineConfig) -> Tuple[List[FactRecord], Dict[Fact, ScoreCard]]:
    scores = score_all(facts, dag, list(d0), cfg.metrics)
    interesting = {f for f, _ in filter_interesting(scores, cfg.metrics)}
    records = []
    for f in facts.sorted_facts():
        node = dag.node(f)
        records.append(FactRecord(
            fact=f,
            round=facts.generation(f),
            rule=node.rule if node else None,
            premises=node.premises if node else (),
            verdict="holds",
            score=scores[f],
            interesting=f in interesting,
        ))
    return records, scores


def run_pipeline(construction: Construction, rules: List[Rule],
                 cfg: PipelineConfig) -> Report:
    d0 = initial_facts(construction)
    models = sample_models(construction, cfg.seeds, cfg.master_seed)
    discarded = {"tautologies": 0, "empirically_false": 0, "conditional_failed": 0}

    if cfg.mode == "fixpoint":
        sat = saturate(d0, rules, cfg.max_rounds, cfg.max_facts,
                       strict_sides=cfg.strict_sides)
        discarded["tautologies"] = sat.dropped_tautologies
        kept = FactSet()
        dag = DerivationDag()
        removed = set()
        for f in sat.facts.sorted_facts():
            node = sat.dag.node(f)
            if node is None:
                kept.add(f, 0)
                continue
            # a surviving fact must not depend on a discarded one
            if any(p in removed for p in node.premises):
                removed.add(f)
                discarded["conditional_failed"] += 1
                continue
            status = _filter_derived(f, node, models, cfg.tol)
            if status == "ok":
                kept.add(f, node.round)
                dag.add(f, node)
            else:
                removed.add(f)
                discarded[status] += 1
        records, _ = _build_records(kept, dag, d0, cfg)
        return Report(construction.source(), rules_digest(rules), cfg.mode,
                      sat.rounds, sat.stop_reason, records, discarded,
                      cfg.seeds, cfg.master_seed)

    if cfg.mode != "filtered":
        raise ValueError(f"unknown mode {cfg.mode!r}")

    # filtered mode: only interesting survivors re-enter the fact list
    facts = d0.copy()
    dag = DerivationDag()
    blocked = set()  # discarded facts never come back within a run
    rounds = 0
    stop = "budget"
    for r in range(1, cfg.max_rounds + 1):
        candidates, n_taut, _ = derive_round(facts, dag, rules, r,
                                             strict_sides=cfg.strict_sides)
        discarded["tautologies"] += n_taut
        survivors = []
        for d in candidates:
            if d.fact in blocked:
                continue
            node = DerivationNode(d.rule, d.premises, r, d.conditions)
            status = _filter_derived(d.fact, node, models, cfg.tol)
            if status != "ok":
                blocked.add(d.fact)
                discarded[status] += 1
                continue
            survivors.append((d, node))
        if not survivors:
            stop = "fixpoint"
            rounds = r - 1
            break
        # score candidates against the current fact list, keep interesting ones
        trial = facts.copy()
        trial_dag = DerivationDag()
        for f, node in dag.nodes.items():
            trial_dag.add(f, node)
        for d, node in survivors:
            trial.add(d.fact, r)
            trial_dag.add(d.fact, node)
        scores = score_all(trial, trial_dag, list(d0), cfg.metrics)
        interesting = {f for f, _ in filter_interesting(scores, cfg.metrics)}
        added = 0
        for d, node in survivors:
            if d.fact in interesting:
                facts.add(d.fact, r)
                dag.add(d.fact, node)
                added += 1
            else:
                blocked.add(d.fact)
        rounds = r
        if added == 0:
            stop = "fixpoint"
            break
        if len(facts) >= cfg.max_facts:
            stop = "budget"
            break
    records, _ = _build_records(facts, dag, d0, cfg)
    return Report(construction.source(), rules_digest(rules), cfg.mode,
                  rounds, stop, records, discarded, cfg.seeds, cfg.master_seed)


def _round9(x: float) -> float:
    return float(f"{x:.9g}")


def report_to_dict(report: Report) -> dict:
    facts = []
    for rec in report.records:
        facts.append({
            "fact": str(rec.fact),
            "round": rec.round,
            "rule": rec.rule,
            "premises": [str(p) for p in rec.premises],
            "verdict": rec.verdict,
            "interesting": rec.interesting,
            "raw": {k: _round9(v) for k, v in rec.score.raw.items()},
            "normalized": {k: _round9(v) for k, v in rec.score.normalized.items()},
            "aggregate": _round9(rec.score.aggregate),
        })
    return {
        "construction": report.construction,
        "rules_digest": report.rules_digest,
        "mode": report.mode,
        "rounds": report.rounds,
        "stop_reason": report.stop_reason,
        "seeds": report.seeds,
        "master_seed": report.master_seed,
        "discarded": dict(report.discarded),
        "facts": facts,
    }


def emit_report(report: Report, fmt: str = "json") -> str:
    """Serialize the report; identical inputs yield identical bytes."""
    if fmt == "json":
        return json.dumps(report_to_dict(report), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")

    lines = []
    lines.append(f"mode: {report.mode}  rounds: {report.rounds}  "
                 f"stop: {report.stop_reason}")
    lines.append(f"rules: {report.rules_digest}  seeds: {report.seeds}  "
                 f"master_seed: {report.master_seed}")
    d = report.discarded
    lines.append(f"discarded: tautologies={d['tautologies']} "
                 f"empirically_false={d['empirically_false']} "
                 f"conditional_failed={d['conditional_failed']}")
    lines.append("")
    lines.append("rank  aggregate  fact")
    ranked = sorted((r for r in report.records if not r.score.hypothesis),
                    key=lambda r: (-r.score.aggregate, str(r.fact)))
    for i, rec in enumerate(ranked, 1):
        star = "*" if rec.interesting else " "
        lines.append(f"{i:4d} {star} {rec.score.aggregate:8.6f}  {rec.fact}")
    lines.append("")
    lines.append("derivations:")
    for rec in ranked:
        prem = ", ".join(str(p) for p in rec.premises)
        lines.append(f"  {rec.fact} <= {rec.rule}[{prem}]  (round {rec.round})")
    return "\n".join(lines) + "\n"
