"""Rule files: named implications from fact patterns to a conclusion.

Grammar (one rule per line, ``#`` starts a comment)::

    rule <name>: atom {, atom} {, side} => atom

Atoms are ``pred(X,...)`` with uppercase identifiers as variables;
lowercase identifiers are point constants.  Side conditions are
``distinct(X,Y)``, ``non_collinear(X,Y,Z)`` and
``distinct_lines(X,Y,U,V)``: distinct is decided symbolically at match
time, the other two are attached to derived facts and checked by the
numeric run-time filter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple

from .facts import ARITIES

SIDE_ARITIES = {"distinct": 2, "non_collinear": 3, "distinct_lines": 4}

_ATOM = re.compile(r"\s*([a-z_]+)\s*\(\s*([^()]*?)\s*\)\s*$")
_ID = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")
_HEAD = re.compile(r"\s*rule\s+([A-Za-z][A-Za-z0-9_]*)\s*:\s*(.*)$")


class RuleParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def is_variable(token: str) -> bool:
    return token[0].isupper()


@dataclass(frozen=True)
class Pattern:
    """A fact pattern: predicate plus variable/constant arguments."""

    pred: str
    args: Tuple[str, ...]

    def variables(self) -> set:
        return {a for a in self.args if is_variable(a)}

    def __str__(self) -> str:
        return f"{self.pred}({','.join(self.args)})"


@dataclass(frozen=True)
class SideCondition:
    kind: str
    args: Tuple[str, ...]

    def variables(self) -> set:
        return {a for a in self.args if is_variable(a)}

    def __str__(self) -> str:
        return f"{self.kind}({','.join(self.args)})"


@dataclass(frozen=True)
class Rule:
    name: str
    premises: Tuple[Pattern, ...]
    conclusion: Pattern
    side_conditions: Tuple[SideCondition, ...]

    @property
    def numeric_sides(self) -> Tuple[SideCondition, ...]:
        return tuple(s for s in self.side_conditions if s.kind != "distinct")

    def __str__(self) -> str:
        body = ", ".join([str(p) for p in self.premises]
                         + [str(s) for s in self.side_conditions])
        return f"rule {self.name}: {body} => {self.conclusion}"


def _parse_atom(text: str, lineno: int):
    m = _ATOM.match(text)
    if not m:
        raise RuleParseError(f"cannot parse atom {text.strip()!r}", lineno)
    pred, argtext = m.group(1), m.group(2)
    args = tuple(a.strip() for a in argtext.split(",")) if argtext.strip() else ()
    for a in args:
        if not _ID.match(a):
            raise RuleParseError(f"bad identifier {a!r} in {text.strip()!r}", lineno)
    return pred, args


def _split_atoms(text: str) -> List[str]:
    """Split on commas that sit outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return parts


def parse_rules(text: str) -> List[Rule]:
    """Parse a rule file; names must be unique, conclusions range-restricted."""
    rules: List[Rule] = []
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEAD.match(line)
        if not m:
            raise RuleParseError("expected 'rule <name>: ... => ...'", lineno)
        name, rest = m.group(1), m.group(2)
        if name in names:
            raise RuleParseError(f"duplicate rule name {name!r}", lineno)
        if "=>" not in rest:
            raise RuleParseError("missing '=>'", lineno)
        body_text, concl_text = rest.split("=>", 1)

        premises: List[Pattern] = []
        sides: List[SideCondition] = []
        for atom_text in _split_atoms(body_text):
            pred, args = _parse_atom(atom_text, lineno)
            if pred in SIDE_ARITIES:
                if len(args) != SIDE_ARITIES[pred]:
                    raise RuleParseError(
                        f"{pred} expects {SIDE_ARITIES[pred]} arguments", lineno)
                sides.append(SideCondition(pred, args))
            elif pred in ARITIES:
                if len(args) != ARITIES[pred]:
                    raise RuleParseError(
                        f"{pred} expects {ARITIES[pred]} arguments", lineno)
                premises.append(Pattern(pred, args))
            else:
                raise RuleParseError(f"unknown predicate {pred!r}", lineno)
        if not premises:
            raise RuleParseError("rule needs at least one premise", lineno)

        pred, args = _parse_atom(concl_text, lineno)
        if pred not in ARITIES:
            raise RuleParseError(f"unknown conclusion predicate {pred!r}", lineno)
        if len(args) != ARITIES[pred]:
            raise RuleParseError(f"{pred} expects {ARITIES[pred]} arguments", lineno)
        conclusion = Pattern(pred, args)

        bound = set().union(*(p.variables() for p in premises))
        for v in sorted(conclusion.variables() - bound):
            raise RuleParseError(f"variable {v} in conclusion not bound by premises",
                                 lineno)
        for s in sides:
            for v in sorted(s.variables() - bound):
                raise RuleParseError(
                    f"variable {v} in side condition not bound by premises", lineno)

        names.add(name)
        rules.append(Rule(name, tuple(premises), conclusion, tuple(sides)))
    return rules
