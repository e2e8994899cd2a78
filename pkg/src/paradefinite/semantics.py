"""Matrix semantics for CL, LP, K3 and BDL, plus the brute-force
consequence oracle.

All four matrices are restrictions of one four-valued matrix on
``{t, b, n, f}``: conjunction and disjunction are meet and join of the truth
order, negation swaps ``t``/``f`` and fixes ``b``/``n``, and
``a -> c`` is ``c`` when ``a`` is designated and ``t`` otherwise.
The designated values are ``t`` and ``b`` (whichever the carrier contains).
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from .errors import MissingAtomError, ResourceBoundError
from .syntax import Atom, Falsum, Formula, Not, Sequent, atoms_of

DEFAULT_ATOM_CAP = 8
ATOM_CAP_ENV = "PARADEFINITE_MAX_ATOMS"


def default_atom_cap() -> int:
    raw = os.environ.get(ATOM_CAP_ENV)
    return int(raw) if raw else DEFAULT_ATOM_CAP


class TruthValue(enum.Enum):
    """Belnap's four values, as (told true, told false) pairs."""

    t = (True, False)
    b = (True, True)
    n = (False, False)
    f = (False, True)

    @property
    def told_true(self) -> bool:
        return self.value[0]

    @property
    def told_false(self) -> bool:
        return self.value[1]

    @classmethod
    def from_pair(cls, told_true: bool, told_false: bool) -> "TruthValue":
        return cls((told_true, told_false))

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"TruthValue.{self.name}"


T, B, N, F = TruthValue.t, TruthValue.b, TruthValue.n, TruthValue.f

#: enumeration order of values inside every carrier
VALUE_ORDER = (T, B, N, F)


def meet(x: TruthValue, y: TruthValue) -> TruthValue:
    return TruthValue.from_pair(x.told_true and y.told_true, x.told_false or y.told_false)


def join(x: TruthValue, y: TruthValue) -> TruthValue:
    return TruthValue.from_pair(x.told_true or y.told_true, x.told_false and y.told_false)


def truth_leq(x: TruthValue, y: TruthValue) -> bool:
    return meet(x, y) is x


def negate(x: TruthValue) -> TruthValue:
    return TruthValue.from_pair(x.told_false, x.told_true)


def implies(x: TruthValue, y: TruthValue) -> TruthValue:
    return y if x.told_true else T


class LogicId(enum.Enum):
    """The four logics, keyed by which of LNC and LEM they keep."""

    CL = (True, True)
    LP = (False, True)
    K3 = (True, False)
    BDL = (False, False)

    @property
    def lnc(self) -> bool:
        return self.value[0]

    @property
    def lem(self) -> bool:
        return self.value[1]

    @classmethod
    def from_flags(cls, lnc: bool, lem: bool) -> "LogicId":
        return cls((bool(lnc), bool(lem)))

    @classmethod
    def parse(cls, name: str) -> "LogicId":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown logic {name!r}; choose from cl, lp, k3, bdl") from None

    @property
    def carrier(self) -> tuple[TruthValue, ...]:
        # LNC removes the glut b, LEM removes the gap n.
        return tuple(
            v for v in VALUE_ORDER if not (v is B and self.lnc) and not (v is N and self.lem)
        )

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Matrix:
    logic: LogicId
    carrier: tuple
    designated: frozenset
    neg: Mapping
    conj: Mapping
    disj: Mapping
    impl: Mapping
    falsum: TruthValue

    def is_designated(self, v: TruthValue) -> bool:
        return v in self.designated


def _build(logic: LogicId) -> Matrix:
    carrier = logic.carrier
    pairs = list(itertools.product(carrier, repeat=2))
    return Matrix(
        logic=logic,
        carrier=carrier,
        designated=frozenset(v for v in carrier if v.told_true),
        neg={a: negate(a) for a in carrier},
        conj={(a, c): meet(a, c) for a, c in pairs},
        disj={(a, c): join(a, c) for a, c in pairs},
        impl={(a, c): implies(a, c) for a, c in pairs},
        falsum=F,
    )


_MATRICES = {logic: _build(logic) for logic in LogicId}


def logic_matrix(logic: LogicId) -> Matrix:
    return _MATRICES[logic]


Valuation = Mapping[str, TruthValue]


def evaluate(m: Matrix, v: Valuation, f: Formula) -> TruthValue:
    t = type(f)
    if t is Atom:
        try:
            return v[f.name]
        except KeyError:
            raise MissingAtomError(f.name) from None
    if t is Falsum:
        return m.falsum
    if t is Not:
        return m.neg[evaluate(m, v, f.operand)]
    table = {"and": m.conj, "or": m.disj, "implies": m.impl}[f.tag]
    return table[evaluate(m, v, f.left), evaluate(m, v, f.right)]


def valuations(logic: LogicId, atoms: list[str]) -> Iterator[dict[str, TruthValue]]:
    """All valuations of ``atoms`` into the carrier.

    The first atom varies slowest; values run t, b, n, f (as available).
    """
    for values in itertools.product(logic.carrier, repeat=len(atoms)):
        yield dict(zip(atoms, values))


def _check_cap(atoms, cap):
    cap = default_atom_cap() if cap is None else cap
    if len(atoms) > cap:
        raise ResourceBoundError("number of atoms", len(atoms), cap)


def refutes(m: Matrix, v: Valuation, s: Sequent) -> bool:
    """True iff ``v`` designates all of the left side and none of the right."""
    des = m.designated
    return all(evaluate(m, v, f) in des for f in s.left) and not any(
        evaluate(m, v, f) in des for f in s.right
    )


def countermodel(
    logic: LogicId, s: Sequent, cap: Optional[int] = None
) -> Optional[dict[str, TruthValue]]:
    """First refuting valuation in enumeration order, or None if valid."""
    atoms = atoms_of(s)
    _check_cap(atoms, cap)
    m = logic_matrix(logic)
    for v in valuations(logic, atoms):
        if refutes(m, v, s):
            return v
    return None


def matrix_consequence(logic: LogicId, s: Sequent, cap: Optional[int] = None) -> bool:
    return countermodel(logic, s, cap) is None


@dataclass(frozen=True)
class TableRow:
    valuation: dict
    value: TruthValue
    designated: bool


def truth_table(logic: LogicId, f: Formula, cap: Optional[int] = None) -> list[TableRow]:
    atoms = atoms_of(f)
    _check_cap(atoms, cap)
    m = logic_matrix(logic)
    rows = []
    for v in valuations(logic, atoms):
        value = evaluate(m, v, f)
        rows.append(TableRow(v, value, value in m.designated))
    return rows


def format_truth_table(f: Formula, rows: list[TableRow]) -> str:
    """Aligned text table; designated rows are marked with ``*``."""
    atoms = list(rows[0].valuation) if rows else []
    head = [*atoms, str(f), ""]
    body = [[str(r.valuation[a]) for a in atoms] + [str(r.value), "*" if r.designated else ""] for r in rows]
    widths = [max(len(row[i]) for row in [head, *body]) for i in range(len(head))]
    lines = []
    for row in [head, *body]:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    lines.insert(1, "  ".join("-" * w for w in widths[:-1]))
    return "\n".join(lines)


def table_rows_to_json(rows: list[TableRow]) -> list[dict]:
    return [
        {
            "valuation": {a: str(v) for a, v in r.valuation.items()},
            "value": str(r.value),
            "designated": r.designated,
        }
        for r in rows
    ]


class ConsequenceOracle:
    """Memoised matrix consequence over a fixed atom list.

    Each formula is evaluated once per valuation and stored as a bitmask of
    the valuations that designate it (bit i = i-th valuation in enumeration
    order), so deciding a sequent is a few integer operations. Used by the
    exhaustive test harness; agrees with :func:`matrix_consequence`.
    """

    def __init__(self, logic: LogicId, atoms: list[str]):
        self.logic = logic
        self.atoms = list(atoms)
        self.matrix = logic_matrix(logic)
        self._vals = list(valuations(logic, self.atoms))
        self.full = (1 << len(self._vals)) - 1
        self._masks: dict[Formula, int] = {}

    def mask(self, f: Formula) -> int:
        m = self._masks.get(f)
        if m is None:
            des = self.matrix.designated
            m = 0
            for i, v in enumerate(self._vals):
                if evaluate(self.matrix, v, f) in des:
                    m |= 1 << i
            self._masks[f] = m
        return m

    def refuting_mask(self, s: Sequent) -> int:
        acc = self.full
        for f in s.left:
            acc &= self.mask(f)
        for f in s.right:
            acc &= ~self.mask(f)
        return acc

    def valid(self, s: Sequent) -> bool:
        return self.refuting_mask(s) == 0

    def countermodel(self, s: Sequent) -> Optional[dict[str, TruthValue]]:
        r = self.refuting_mask(s)
        if r == 0:
            return None
        return dict(self._vals[(r & -r).bit_length() - 1])
