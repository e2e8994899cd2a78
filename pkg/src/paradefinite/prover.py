"""Backward proof search with reversible two-sided sequent rules.

Every rule is invertible with respect to the matrix of each logic, so a
sequent is valid iff every premise is, and any open atomic leaf reached by
the search yields a countermodel for the root. Each rule lowers the
sequent's complexity, so the search terminates. The four logics share one
rule set; they differ only in which closure conditions are enabled:
LNC closes ``p, ~p |-`` and LEM closes ``|- p, ~p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import NonAtomicSequentError
from .semantics import LogicId, TruthValue
from .syntax import (
    FALSUM,
    NOT_FALSUM,
    And,
    Atom,
    Falsum,
    Formula,
    Implies,
    Not,
    Or,
    Sequent,
    atoms_of,
    formula_to_tree,
    is_literal,
    sequent_to_tree,
)

LEFT, RIGHT = "left", "right"

Premise = tuple[tuple[Formula, ...], tuple[Formula, ...]]


def shape(f: Formula) -> tuple[str, ...]:
    """Main connective, looking one level under a negation."""
    return f.shape


@dataclass(frozen=True)
class Rule:
    """A sequent rule read bottom-up.

    The rule applies to a formula on ``side`` whose :func:`shape` starts
    with ``pattern``. ``premises(principal)`` returns one (added-left, added-right)
    pair per premise; the principal formula itself is removed from its side,
    so a single empty pair just drops it.
    """

    name: str
    side: str
    pattern: tuple[str, ...]
    premises: Callable[[Formula], list[Premise]] = field(repr=False)

    def matches(self, f: Formula) -> bool:
        return shape(f)[: len(self.pattern)] == self.pattern

    def apply(self, s: Sequent, principal: Formula) -> list[Sequent]:
        if self.side == LEFT:
            left, right = s.left - {principal}, s.right
        else:
            left, right = s.left, s.right - {principal}
        return [Sequent(left.union(add_l), right.union(add_r)) for add_l, add_r in self.premises(principal)]


def _is(tag):
    return (tag,)


def _neg_of(tag):
    return ("not", tag)


_CONNECTIVE_RULES = [
    # stated directions
    Rule("R&", RIGHT, _is("and"), lambda f: [((), (f.left,)), ((), (f.right,))]),
    Rule("L|", LEFT, _is("or"), lambda f: [((f.left,), ()), ((f.right,), ())]),
    Rule("R->", RIGHT, _is("implies"), lambda f: [((f.left,), (f.right,))]),
    Rule("L~~", LEFT, _neg_of("not"), lambda f: [((f.operand.operand,), ())]),
    Rule(
        "L~&", LEFT, _neg_of("and"),
        lambda f: [((Not(f.operand.left),), ()), ((Not(f.operand.right),), ())],
    ),
    Rule(
        "R~|", RIGHT, _neg_of("or"),
        lambda f: [((), (Not(f.operand.left),)), ((), (Not(f.operand.right),))],
    ),
    Rule(
        "L~->", LEFT, _neg_of("implies"),
        lambda f: [((f.operand.left, Not(f.operand.right)), ())],
    ),
    # duals
    Rule("L&", LEFT, _is("and"), lambda f: [((f.left, f.right), ())]),
    Rule("R|", RIGHT, _is("or"), lambda f: [((), (f.left, f.right))]),
    Rule("L->", LEFT, _is("implies"), lambda f: [((), (f.left,)), ((f.right,), ())]),
    Rule("R~~", RIGHT, _neg_of("not"), lambda f: [((), (f.operand.operand,))]),
    Rule(
        "R~&", RIGHT, _neg_of("and"),
        lambda f: [((), (Not(f.operand.left), Not(f.operand.right)))],
    ),
    Rule(
        "L~|", LEFT, _neg_of("or"),
        lambda f: [((Not(f.operand.left), Not(f.operand.right)), ())],
    ),
    Rule(
        "R~->", RIGHT, _neg_of("implies"),
        lambda f: [((), (f.operand.left,)), ((), (Not(f.operand.right),))],
    ),
]

_INERT_RULES = [
    Rule("R#", RIGHT, _is("falsum"), lambda f: [((), ())]),
    Rule("L~#", LEFT, _neg_of("falsum"), lambda f: [((), ())]),
]

_GENERAL_NEGATION_RULES = [
    Rule("R~", RIGHT, _is("not"), lambda f: [((f.operand,), ())]),
    Rule("L~", LEFT, _is("not"), lambda f: [((), (f.operand,))]),
]

_RULES = tuple(_CONNECTIVE_RULES + _INERT_RULES)
_CL_GENERAL_RULES = tuple(
    [r for r in _CONNECTIVE_RULES if "~" not in r.name]
    + [_INERT_RULES[0]]
    + _GENERAL_NEGATION_RULES
)


def rule_set(logic: LogicId) -> list[Rule]:
    """The 14 connective rules plus the two inert removals (``#`` on the
    right, ``~#`` on the left). Identical for every logic."""
    return list(_RULES)


def _index(rules):
    return {(r.side, r.pattern): r for r in rules}


@dataclass(frozen=True)
class ClosureReason:
    kind: str  # overlap | falsum-left | not-falsum-right | lnc | lem
    formula: Optional[Formula] = None

    def __str__(self):
        return self.kind if self.formula is None else f"{self.kind} {self.formula}"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.formula is not None:
            out["formula"] = formula_to_tree(self.formula)
        return out


@dataclass(frozen=True)
class ProofNode:
    sequent: Sequent
    closure: Optional[ClosureReason] = None
    rule: Optional[str] = None
    principal: Optional[Formula] = None
    children: tuple = ()

    @property
    def is_leaf(self) -> bool:
        return self.rule is None

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def leaves(self):
        if self.is_leaf:
            yield self
        for c in self.children:
            yield from c.leaves()

    def to_text(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.is_leaf:
            tag = f"closed: {self.closure}" if self.closure else "open"
            return f"{pad}{self.sequent}    [{tag}]"
        lines = [f"{pad}{self.sequent}    [{self.rule}: {self.principal}]"]
        lines.extend(c.to_text(indent + 1) for c in self.children)
        return "\n".join(lines)

    def to_json(self) -> dict:
        out = {"sequent": sequent_to_tree(self.sequent)}
        if self.is_leaf:
            out["closure"] = self.closure.to_json() if self.closure else None
        else:
            out["rule"] = self.rule
            out["principal"] = formula_to_tree(self.principal)
            out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass(frozen=True)
class ProofResult:
    """Outcome of a proof search.

    Valid results carry the closed proof tree; invalid ones carry the open
    atomic leaf that was reached and the countermodel read off it.
    """

    logic: Optional[LogicId]
    sequent: Sequent
    valid: bool
    proof: Optional[ProofNode] = None
    countermodel: Optional[dict] = None
    open_leaf: Optional[Sequent] = None

    @property
    def is_valid(self) -> bool:
        return self.valid


def _literal_atoms(side, want_negated):
    out = set()
    for f in side:
        if want_negated and type(f) is Not and type(f.operand) is Atom:
            out.add(f.operand.name)
        elif not want_negated and type(f) is Atom:
            out.add(f.name)
    return out


def _closure(s: Sequent, lnc: bool, lem: bool) -> Optional[ClosureReason]:
    common = s.left & s.right
    if common:
        return ClosureReason("overlap", min(common, key=lambda f: f.key))
    if FALSUM in s.left:
        return ClosureReason("falsum-left")
    if NOT_FALSUM in s.right:
        return ClosureReason("not-falsum-right")
    if lnc:
        both = _literal_atoms(s.left, False) & _literal_atoms(s.left, True)
        if both:
            return ClosureReason("lnc", Atom(min(both)))
    if lem:
        both = _literal_atoms(s.right, False) & _literal_atoms(s.right, True)
        if both:
            return ClosureReason("lem", Atom(min(both)))
    return None


def closure(logic: LogicId, s: Sequent) -> Optional[ClosureReason]:
    """Closure reason for an atomic sequent, or None if the leaf is open.

    Checked in order: overlap, ``#`` on the left, ``~#`` on the right, then
    LNC and LEM when the logic keeps them.
    """
    if not s.is_atomic():
        raise NonAtomicSequentError(f"closure needs an atomic sequent, got {s}")
    return _closure(s, logic.lnc, logic.lem)


def _general_closure(s: Sequent) -> Optional[ClosureReason]:
    common = s.left & s.right
    if common:
        return ClosureReason("overlap", min(common, key=lambda f: f.key))
    if FALSUM in s.left:
        return ClosureReason("falsum-left")
    return None


def leaf_countermodel(leaf: Sequent, atoms: list[str], logic: LogicId) -> dict:
    """Read a valuation off an open atomic leaf.

    Atoms absent from the leaf get ``n`` where the carrier has it, else ``f``;
    neither is designated.
    """
    pos_l = _literal_atoms(leaf.left, False)
    neg_l = _literal_atoms(leaf.left, True)
    pos_r = _literal_atoms(leaf.right, False)
    neg_r = _literal_atoms(leaf.right, True)
    default = TruthValue.n if TruthValue.n in logic.carrier else TruthValue.f
    v = {}
    for p in atoms:
        if p in pos_l and p in neg_l:
            v[p] = TruthValue.b
        elif p in pos_l:
            v[p] = TruthValue.t
        elif p in neg_l:
            v[p] = TruthValue.f
        elif p in pos_r and p in neg_r:
            v[p] = TruthValue.n
        elif p in pos_r:
            v[p] = TruthValue.f
        elif p in neg_r:
            v[p] = TruthValue.t
        else:
            v[p] = default
    return v


def _general_countermodel(leaf: Sequent, atoms: list[str]) -> dict:
    pos_l = _literal_atoms(leaf.left, False)
    return {p: TruthValue.t if p in pos_l else TruthValue.f for p in atoms}


_TAGS = ("atom", "falsum", "not", "and", "or", "implies")
_SHAPES = [(t,) for t in _TAGS] + [("not", t) for t in _TAGS]


class _Search:
    def __init__(self, rules, close, select):
        index = _index(rules)
        # resolve every (side, shape) once; a full shape wins over its prefix
        self.table = {}
        for side in (LEFT, RIGHT):
            for sh in _SHAPES:
                r = index.get((side, sh)) or index.get((side, sh[:1]))
                if r is not None:
                    self.table[side, sh] = r
        self.close = close
        self.select = select

    def rule_for(self, f: Formula, side: str) -> Optional[Rule]:
        return self.table.get((side, f.shape))

    def principal(self, s: Sequent):
        table = self.table
        left = [f for f in s.left if (LEFT, f.shape) in table]
        right = [f for f in s.right if (RIGHT, f.shape) in table]
        pick = self.select(left, right)
        if pick is None:
            return None
        side, f = pick
        return f, table[side, f.shape]

    def run(self, s: Sequent):
        """Return (node, open_leaf). ``open_leaf`` is None iff all branches close."""
        pick = self.principal(s)
        if pick is None:
            reason = self.close(s)
            return ProofNode(s, closure=reason), (None if reason else s)
        f, rule = pick
        children = []
        for premise in rule.apply(s, f):
            node, open_leaf = self.run(premise)
            children.append(node)
            if open_leaf is not None:
                return ProofNode(s, rule=rule.name, principal=f, children=tuple(children)), open_leaf
        return ProofNode(s, rule=rule.name, principal=f, children=tuple(children)), None


def _key(f):
    return f.key


def leftmost(left, right):
    """Least formula in canonical order, left side first."""
    if left:
        return LEFT, min(left, key=_key)
    if right:
        return RIGHT, min(right, key=_key)
    return None


def rightmost(left, right):
    """Greatest formula in canonical order, right side first."""
    if right:
        return RIGHT, max(right, key=_key)
    if left:
        return LEFT, max(left, key=_key)
    return None


STRATEGIES = {"leftmost": leftmost, "rightmost": rightmost}


def prove(
    logic: LogicId,
    s: Sequent,
    *,
    lnc: Optional[bool] = None,
    lem: Optional[bool] = None,
    strategy: str = "leftmost",
) -> ProofResult:
    """Decide ``s`` in ``logic``.

    ``lnc`` / ``lem`` override the logic's closure flags; the countermodel
    carrier then follows the overridden flags.
    """
    lnc = logic.lnc if lnc is None else lnc
    lem = logic.lem if lem is None else lem
    effective = LogicId.from_flags(lnc, lem)
    search = _Search(_RULES, lambda leaf: _closure(leaf, lnc, lem), STRATEGIES[strategy])
    node, open_leaf = search.run(s)
    if open_leaf is None:
        return ProofResult(logic, s, True, proof=node)
    cm = leaf_countermodel(open_leaf, atoms_of(s), effective)
    return ProofResult(logic, s, False, proof=node, countermodel=cm, open_leaf=open_leaf)


def prove_cl_general(s: Sequent, *, strategy: str = "leftmost") -> ProofResult:
    """Decide ``s`` in CL using the general negation rules
    (``~A`` moves to the other side) and no LNC/LEM closures."""
    search = _Search(_CL_GENERAL_RULES, _general_closure, STRATEGIES[strategy])
    node, open_leaf = search.run(s)
    if open_leaf is None:
        return ProofResult(LogicId.CL, s, True, proof=node)
    cm = _general_countermodel(open_leaf, atoms_of(s))
    return ProofResult(LogicId.CL, s, False, proof=node, countermodel=cm, open_leaf=open_leaf)


def classify(s: Sequent) -> dict[LogicId, bool]:
    return {logic: prove(logic, s).valid for logic in LogicId}
