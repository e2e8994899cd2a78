"""Formula language over the fixed signature {#/0, ~/1, &/2, |/2, ->/2}.

Formulas are immutable trees. Structural equality is the only identity used
anywhere in the package, so two separately built trees with the same shape
are interchangeable as dict keys and set members.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Union

from .errors import ResourceBoundError

ATOM_PATTERN = re.compile(r"[a-z][a-z0-9_]*\Z")

#: connective name -> arity; exactly the signature of the language
CONNECTIVES = {"falsum": 0, "not": 1, "and": 2, "or": 2, "implies": 2}

# Position of each node kind in the canonical formula order.
_TAG_RANK = {"atom": 0, "falsum": 1, "not": 2, "and": 3, "or": 4, "implies": 5}

DEFAULT_FORMULA_CAP = 1_000_000


class Formula:
    """Base class of all formula nodes.

    Subclasses set ``weight``, ``complexity`` and ``depth`` at construction
    time. Weight counts nodes; depth is 0 for atoms and falsum. Complexity is
    like weight except that a negation doubles its operand's complexity, which
    makes it drop under every proof rule (weight does not: ``~(A & B)`` and
    ``~A, ~B`` weigh the same).
    """

    tag: str = ""
    weight: int
    complexity: int
    depth: int

    @property
    def children(self) -> tuple["Formula", ...]:
        return ()

    @cached_property
    def key(self) -> tuple:
        """Sort key of the canonical total order: weight, then node kind,
        then children left to right (atoms by name)."""
        return (self.weight, _TAG_RANK[self.tag]) + tuple(c.key for c in self.children)

    def __str__(self) -> str:
        from .parsing import print_formula

        return print_formula(self)

    def __lt__(self, other: "Formula") -> bool:
        return self.key < other.key


def _finish(node, h):
    object.__setattr__(node, "_hash", h)
    # main connective, looking one level under a negation
    shape = ("not", node.operand.tag) if node.tag == "not" else (node.tag,)
    object.__setattr__(node, "shape", shape)


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str
    tag = "atom"

    def __post_init__(self):
        if not isinstance(self.name, str) or not ATOM_PATTERN.match(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        object.__setattr__(self, "weight", 1)
        object.__setattr__(self, "complexity", 1)
        object.__setattr__(self, "depth", 0)
        _finish(self, hash(("atom", self.name)))

    @cached_property
    def key(self) -> tuple:
        return (1, 0, self.name)

    def __eq__(self, other):
        return self is other or (type(other) is Atom and other.name == self.name)

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False)
class Falsum(Formula):
    tag = "falsum"

    def __post_init__(self):
        object.__setattr__(self, "weight", 1)
        object.__setattr__(self, "complexity", 1)
        object.__setattr__(self, "depth", 0)
        _finish(self, hash(("falsum",)))

    def __eq__(self, other):
        return type(other) is Falsum

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False)
class Not(Formula):
    operand: Formula
    tag = "not"

    def __post_init__(self):
        object.__setattr__(self, "weight", 1 + self.operand.weight)
        object.__setattr__(self, "complexity", 2 * self.operand.complexity)
        object.__setattr__(self, "depth", 1 + self.operand.depth)
        _finish(self, hash(("not", self.operand._hash)))

    @property
    def children(self):
        return (self.operand,)

    def __eq__(self, other):
        return self is other or (
            type(other) is Not and other._hash == self._hash and other.operand == self.operand
        )

    def __hash__(self):
        return self._hash


class _Binary(Formula):
    left: Formula
    right: Formula

    def __post_init__(self):
        object.__setattr__(self, "weight", 1 + self.left.weight + self.right.weight)
        object.__setattr__(self, "complexity", 1 + self.left.complexity + self.right.complexity)
        object.__setattr__(self, "depth", 1 + max(self.left.depth, self.right.depth))
        _finish(self, hash((self.tag, self.left._hash, self.right._hash)))

    @property
    def children(self):
        return (self.left, self.right)

    def __eq__(self, other):
        return self is other or (
            type(other) is type(self)
            and other._hash == self._hash
            and other.left == self.left
            and other.right == self.right
        )

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, eq=False)
class And(_Binary):
    left: Formula
    right: Formula
    tag = "and"


@dataclass(frozen=True, eq=False)
class Or(_Binary):
    left: Formula
    right: Formula
    tag = "or"


@dataclass(frozen=True, eq=False)
class Implies(_Binary):
    left: Formula
    right: Formula
    tag = "implies"


FALSUM = Falsum()

BINARY = {"and": And, "or": Or, "implies": Implies}


def is_literal(f: Formula) -> bool:
    return type(f) is Atom or (type(f) is Not and type(f.operand) is Atom)


@dataclass(frozen=True)
class Alphabet:
    """A finite window onto the countable set of propositional variables.

    The connective signature is fixed; only the atom names vary.
    """

    atoms: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        for name in atoms:
            if not isinstance(name, str) or not ATOM_PATTERN.match(name):
                raise ValueError(f"invalid atom name {name!r}")
        if len(set(atoms)) != len(atoms):
            raise ValueError("atom names must be pairwise distinct")
        object.__setattr__(self, "atoms", atoms)

    @property
    def connectives(self) -> Mapping[str, int]:
        return CONNECTIVES

    @classmethod
    def standard(cls, count: int) -> "Alphabet":
        return cls(default_atom_names(count))


_LETTERS = "pqrstuvw"


def default_atom_names(count: int) -> tuple[str, ...]:
    """``p, q, r, ... w`` followed by ``x8, x9, ...`` for larger counts."""
    if count < 0:
        raise ValueError("atom count must be non-negative")
    return tuple(_LETTERS[i] if i < len(_LETTERS) else f"x{i}" for i in range(count))


@dataclass(frozen=True)
class Sequent:
    """A pair of finite formula sets ``left |- right``."""

    left: frozenset
    right: frozenset

    def __post_init__(self):
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))

    @classmethod
    def of(cls, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> "Sequent":
        return cls(frozenset(left), frozenset(right))

    @property
    def weight(self) -> int:
        return sum(f.weight for f in self.left) + sum(f.weight for f in self.right)

    @property
    def complexity(self) -> int:
        """Termination measure of proof search; see :class:`Formula`."""
        return sum(f.complexity for f in self.left) + sum(f.complexity for f in self.right)

    def sorted_left(self) -> list[Formula]:
        return sorted(self.left, key=_key)

    def sorted_right(self) -> list[Formula]:
        return sorted(self.right, key=_key)

    def is_atomic(self) -> bool:
        return all(is_literal(f) or f == FALSUM or f == NOT_FALSUM for f in self.left | self.right)

    def __str__(self) -> str:
        from .parsing import print_sequent

        return print_sequent(self)


NOT_FALSUM = Not(FALSUM)


def _key(f: Formula) -> tuple:
    return f.key


class Substitution:
    """Map from atom names to formulas; unlisted atoms map to themselves."""

    def __init__(self, mapping: Mapping[str, Formula] | None = None):
        self._map = dict(mapping or {})

    def __call__(self, name: str) -> Formula:
        f = self._map.get(name)
        return Atom(name) if f is None else f

    def items(self):
        return self._map.items()

    def compose(self, first: "Substitution") -> "Substitution":
        """Return ``self . first``: apply ``first``, then ``self``."""
        names = set(first._map) | set(self._map)
        return Substitution({n: substitute(self, first(n)) for n in names})

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self._map.items()))
        return f"Substitution({{{body}}})"


def substitute(s: Substitution | Mapping[str, Formula], f: Formula) -> Formula:
    if not isinstance(s, Substitution):
        s = Substitution(s)
    return _subst(s, f)


def _subst(s, f):
    t = type(f)
    if t is Atom:
        return s(f.name)
    if t is Falsum:
        return f
    if t is Not:
        return Not(_subst(s, f.operand))
    return t(_subst(s, f.left), _subst(s, f.right))


def substitute_sequent(s, seq: Sequent) -> Sequent:
    if not isinstance(s, Substitution):
        s = Substitution(s)
    return Sequent.of((_subst(s, f) for f in seq.left), (_subst(s, f) for f in seq.right))


def atoms_of(x: Union[Formula, Sequent]) -> list[str]:
    """Atom names in first-occurrence order.

    Sequent sides are read in canonical formula order, left side first.
    """
    seen: dict[str, None] = {}
    roots = x.sorted_left() + x.sorted_right() if isinstance(x, Sequent) else [x]
    for root in roots:
        stack = [root]
        while stack:
            f = stack.pop()
            if type(f) is Atom:
                seen.setdefault(f.name)
            else:
                stack.extend(reversed(f.children))
    return list(seen)


def count_formulas(atom_count: int, max_depth: int) -> int:
    """Number of formulas of depth <= max_depth over atom_count atoms."""
    total = atom_count + 1
    for _ in range(max_depth):
        total = atom_count + 1 + total + 3 * total * total
    return total


def enumerate_formulas(
    atom_count: int, max_depth: int, cap: int = DEFAULT_FORMULA_CAP
) -> Iterator[Formula]:
    """Yield every formula over the first ``atom_count`` default atoms with
    depth at most ``max_depth``, each exactly once.

    Order: by depth level. Level 0 is the atoms in name order, then ``#``.
    Level d is ``~A`` for each A of depth d-1 (in yield order), then, for each
    of ``&``, ``|``, ``->``, every pair (A, B) from the formulas of depth < d
    with max depth exactly d-1, A-major in yield order.
    """
    if atom_count < 1:
        raise ValueError("atom_count must be at least 1")
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    total = count_formulas(atom_count, max_depth)
    if total > cap:
        raise ResourceBoundError(
            f"formulas over {atom_count} atoms up to depth {max_depth}", total, cap
        )
    levels: list[list[Formula]] = [[Atom(n) for n in default_atom_names(atom_count)] + [FALSUM]]
    yield from levels[0]
    for d in range(1, max_depth + 1):
        prev = levels[d - 1]
        below = [f for level in levels for f in level]
        level = [Not(f) for f in prev]
        for cls in (And, Or, Implies):
            for a in below:
                for b in below:
                    if max(a.depth, b.depth) == d - 1:
                        level.append(cls(a, b))
        levels.append(level)
        yield from level


def bounded_subsets(items: list, max_size: int) -> Iterator[tuple]:
    """All subsets of size <= max_size, smaller first, in index order."""
    for k in range(max_size + 1):
        yield from itertools.combinations(items, k)


def enumerate_sequents(
    formulas: list[Formula], per_side: int, cap: int | None = None
) -> Iterator[Sequent]:
    """Every sequent with at most ``per_side`` formulas from ``formulas`` on
    each side. Left side varies slowest."""
    if cap is not None:
        n_sides = sum(_binom(len(formulas), k) for k in range(per_side + 1))
        if n_sides * n_sides > cap:
            raise ResourceBoundError("sequent enumeration", n_sides * n_sides, cap)
    sides = [frozenset(c) for c in bounded_subsets(formulas, per_side)]
    for left in sides:
        for right in sides:
            yield Sequent(left, right)


def _binom(n, k):
    from math import comb

    return comb(n, k)


# Structured tree format: {"tag": ..., "name"?: ..., "children"?: [...]}


def formula_to_tree(f: Formula) -> dict:
    if type(f) is Atom:
        return {"tag": "atom", "name": f.name}
    if type(f) is Falsum:
        return {"tag": "falsum"}
    return {"tag": f.tag, "children": [formula_to_tree(c) for c in f.children]}


def formula_from_tree(tree: Mapping) -> Formula:
    tag = tree["tag"]
    if tag == "atom":
        return Atom(tree["name"])
    if tag == "falsum":
        return FALSUM
    kids = [formula_from_tree(c) for c in tree["children"]]
    if tag == "not" and len(kids) == 1:
        return Not(kids[0])
    if tag in BINARY and len(kids) == 2:
        return BINARY[tag](*kids)
    raise ValueError(f"malformed formula tree node: {dict(tree)!r}")


def sequent_to_tree(s: Sequent) -> dict:
    return {
        "left": [formula_to_tree(f) for f in s.sorted_left()],
        "right": [formula_to_tree(f) for f in s.sorted_right()],
    }


def sequent_from_tree(tree: Mapping) -> Sequent:
    return Sequent.of(
        (formula_from_tree(t) for t in tree["left"]),
        (formula_from_tree(t) for t in tree["right"]),
    )
