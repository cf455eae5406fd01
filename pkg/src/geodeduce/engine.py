"""Breadth-first forward chaining to a fixpoint, with derivation recording.

Each round applies every rule to the facts of the previous round,
canonicalizes the conclusions, drops tautologies / degenerate facts /
duplicates, and commits the survivors in canonical-form lexicographic
order.  The first derivation of a fact wins; later ones are ignored.
Both naive and semi-naive evaluation are provided and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .facts import Fact, FactSet, canonicalize, is_degenerate, is_tautology
from .rules import Pattern, Rule, SideCondition, is_variable
from .facts import orbit

# a grounded numeric side condition: (kind, point names)
GroundCondition = Tuple[str, Tuple[str, ...]]


@dataclass(frozen=True)
class DerivationNode:
    """How one derived fact was obtained."""

    rule: str
    premises: Tuple[Fact, ...]
    round: int
    # numeric side conditions accumulated along the whole derivation
    conditions: Tuple[GroundCondition, ...] = ()

    @property
    def conditional(self) -> bool:
        return bool(self.conditions)


class DerivationDag:
    """Append-only map from derived fact to its (unique) derivation node."""

    def __init__(self) -> None:
        self.nodes: Dict[Fact, DerivationNode] = {}

    def add(self, fact: Fact, node: DerivationNode) -> None:
        if fact in self.nodes:
            raise ValueError(f"second derivation for {fact}")
        self.nodes[fact] = node

    def __contains__(self, fact: Fact) -> bool:
        return fact in self.nodes

    def node(self, fact: Fact) -> Optional[DerivationNode]:
        return self.nodes.get(fact)

    def ancestors(self, fact: Fact) -> Set[Fact]:
        """Derived facts (DAG nodes) in the ancestor closure, fact included."""
        out: Set[Fact] = set()
        stack = [fact]
        while stack:
            f = stack.pop()
            node = self.nodes.get(f)
            if node is None or f in out:
                continue
            out.add(f)
            stack.extend(node.premises)
        return out

    def leaf_ancestors(self, fact: Fact) -> Set[Fact]:
        """Hypothesis facts reachable from fact; {fact} if it is one."""
        if fact not in self.nodes:
            return {fact}
        leaves: Set[Fact] = set()
        seen: Set[Fact] = set()
        stack = [fact]
        while stack:
            f = stack.pop()
            if f in seen:
                continue
            seen.add(f)
            node = self.nodes.get(f)
            if node is None:
                leaves.add(f)
            else:
                stack.extend(node.premises)
        return leaves


@dataclass(frozen=True)
class Derivation:
    fact: Fact
    rule: str
    premises: Tuple[Fact, ...]
    conditions: Tuple[GroundCondition, ...]


def _unify(pattern: Pattern, variant: Tuple[str, ...], binding: Dict[str, str]):
    """Extend binding so pattern args match this orbit variant, or None."""
    out = dict(binding)
    for pat, val in zip(pattern.args, variant):
        if is_variable(pat):
            if out.setdefault(pat, val) != val:
                return None
        elif pat != val:
            return None
    return out


def _match_premise(pattern: Pattern, fact: Fact, binding: Dict[str, str]):
    """All binding extensions under which pattern matches fact up to symmetry."""
    seen = set()
    for variant in orbit(fact):
        b = _unify(pattern, variant, binding)
        if b is not None:
            key = tuple(sorted(b.items()))
            if key not in seen:
                seen.add(key)
                yield b


def _distinct_ok(rule: Rule, binding: Dict[str, str]) -> bool:
    for side in rule.side_conditions:
        if side.kind == "distinct":
            a, b = (binding.get(x, x) for x in side.args)
            if a == b:
                return False
    return True


def _ground(args: Tuple[str, ...], binding: Dict[str, str]) -> Tuple[str, ...]:
    return tuple(binding.get(a, a) for a in args)


def _join(rule: Rule, candidate_lists: List[List[Fact]]):
    """Backtracking join over premise slots; yields (binding, facts used)."""

    def rec(i: int, binding: Dict[str, str], used: Tuple[Fact, ...]):
        if i == len(rule.premises):
            yield binding, used
            return
        for fact in candidate_lists[i]:
            for b in _match_premise(rule.premises[i], fact, binding):
                yield from rec(i + 1, b, used + (fact,))

    yield from rec(0, {}, ())


def match_rule(rule: Rule, facts: FactSet) -> List[Dict[str, str]]:
    """All bindings satisfying the premises, deduplicated by canonical
    conclusion; symbolic distinct() conditions already enforced and
    tautological/degenerate conclusions dropped."""
    lists = [sorted(facts.by_pred(p.pred), key=str) for p in rule.premises]
    out: Dict[Fact, Dict[str, str]] = {}
    for binding, _used in _join(rule, lists):
        if not _distinct_ok(rule, binding):
            continue
        concl = canonicalize(Fact(rule.conclusion.pred,
                                  _ground(rule.conclusion.args, binding)))
        if is_tautology(concl) or is_degenerate(concl):
            continue
        out.setdefault(concl, binding)
    return [out[k] for k in sorted(out, key=str)]


def _round_candidates(rule: Rule, facts: FactSet, dag: DerivationDag,
                      round_index: int, strategy: str,
                      strict_sides: bool) -> Iterable[Derivation]:
    """All conclusions rule can draw this round from facts of earlier rounds."""

    def usable(f: Fact) -> bool:
        if not strict_sides:
            return True
        node = dag.node(f)
        return node is None or not node.conditional

    preds = [p.pred for p in rule.premises]
    pools = {pred: [f for f in sorted(facts.by_pred(pred), key=str) if usable(f)]
             for pred in set(preds)}

    slot_plans: List[List[List[Fact]]]
    if strategy == "naive" or round_index == 1:
        slot_plans = [[pools[p] for p in preds]]
    else:
        # semi-naive: slot i drawn from the previous round's delta,
        # earlier slots from strictly older facts, later slots from all
        delta = {f for f in facts if facts.generation(f) == round_index - 1}
        old = {f for f in facts if facts.generation(f) < round_index - 1}
        slot_plans = []
        for i in range(len(preds)):
            plan = []
            for j, pred in enumerate(preds):
                if j < i:
                    plan.append([f for f in pools[pred] if f in old])
                elif j == i:
                    plan.append([f for f in pools[pred] if f in delta])
                else:
                    plan.append(pools[pred])
            slot_plans.append(plan)

    for lists in slot_plans:
        for binding, used in _join(rule, lists):
            if not _distinct_ok(rule, binding):
                continue
            concl = canonicalize(Fact(rule.conclusion.pred,
                                      _ground(rule.conclusion.args, binding)))
            conds: List[GroundCondition] = [
                (s.kind, _ground(s.args, binding)) for s in rule.numeric_sides]
            for prem in used:
                node = dag.node(prem)
                if node is not None:
                    conds.extend(node.conditions)
            conditions = tuple(sorted(set(conds)))
            yield Derivation(concl, rule.name, used, conditions)


def derive_round(facts: FactSet, dag: DerivationDag, rules: List[Rule],
                 round_index: int, strategy: str = "semi_naive",
                 strict_sides: bool = False):
    """Collect this round's new derivations plus drop counters.

    Returns (derivations sorted by canonical form, n_tautologies, n_degenerate);
    at most one derivation per new fact, chosen deterministically.
    """
    best: Dict[Fact, Derivation] = {}
    n_taut = n_degen = 0
    for rule in sorted(rules, key=lambda r: r.name):
        for d in _round_candidates(rule, facts, dag, round_index, strategy,
                                   strict_sides):
            if d.fact in facts:
                continue
            if is_tautology(d.fact):
                n_taut += 1
                continue
            if is_degenerate(d.fact):
                n_degen += 1
                continue
            key = (d.rule, tuple(str(p) for p in d.premises))
            cur = best.get(d.fact)
            if cur is None or key < (cur.rule, tuple(str(p) for p in cur.premises)):
                best[d.fact] = d
    ordered = [best[f] for f in sorted(best, key=str)]
    return ordered, n_taut, n_degen


@dataclass
class SaturationResult:
    facts: FactSet
    dag: DerivationDag
    stop_reason: str  # fixpoint | budget
    rounds: int
    dropped_tautologies: int = 0
    dropped_degenerate: int = 0


def saturate(d0: FactSet, rules: List[Rule], max_rounds: int = 10,
             max_facts: int = 100000, strategy: str = "semi_naive",
             strict_sides: bool = False) -> SaturationResult:
    """Run forward chaining until a fixpoint or a budget is hit."""
    assert max_rounds > 0 and max_facts > 0
    facts = d0.copy()
    dag = DerivationDag()
    n_taut = n_degen = 0
    rounds = 0
    stop = "budget"
    for r in range(1, max_rounds + 1):
        new, t, g = derive_round(facts, dag, rules, r, strategy, strict_sides)
        n_taut += t
        n_degen += g
        if not new:
            stop = "fixpoint"
            rounds = r - 1
            break
        for d in new:
            facts.add(d.fact, r)
            dag.add(d.fact, DerivationNode(d.rule, d.premises, r, d.conditions))
        rounds = r
        if len(facts) >= max_facts:
            stop = "budget"
            break
    return SaturationResult(facts, dag, stop, rounds, n_taut, n_degen)
