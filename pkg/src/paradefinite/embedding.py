"""Embedding of BDL into CL.

Negations are pushed down to atoms, after which each negated atom ``~p`` is
treated as an independent fresh atom ``p_neg``. Names ending in ``_neg`` are
reserved for these fresh atoms.
"""

from __future__ import annotations

from .errors import NameCollisionError
from .syntax import FALSUM, And, Atom, Falsum, Formula, Implies, Not, Or, Sequent, atoms_of

NEG_SUFFIX = "_neg"

TOP = Implies(FALSUM, FALSUM)


def nnf(f: Formula) -> Formula:
    """Negation normal form by the rewrites

    ``~~A => A``, ``~(A & B) => ~A | ~B``, ``~(A | B) => ~A & ~B``,
    ``~(A -> B) => A & ~B``, ``~# => # -> #``.

    The result is equi-designated with ``f`` in all four matrices but need
    not take the same truth value.
    """
    t = type(f)
    if t is Atom or t is Falsum:
        return f
    if t is Not:
        return _nnf_neg(f.operand)
    return t(nnf(f.left), nnf(f.right))


def _nnf_neg(g: Formula) -> Formula:
    t = type(g)
    if t is Atom:
        return Not(g)
    if t is Falsum:
        return TOP
    if t is Not:
        return nnf(g.operand)
    if t is And:
        return Or(_nnf_neg(g.left), _nnf_neg(g.right))
    if t is Or:
        return And(_nnf_neg(g.left), _nnf_neg(g.right))
    return And(nnf(g.left), _nnf_neg(g.right))


def is_nnf(f: Formula) -> bool:
    if type(f) is Not:
        return type(f.operand) is Atom
    return all(is_nnf(c) for c in f.children)


def negated_name(atom: str) -> str:
    return atom + NEG_SUFFIX


def check_names(atoms) -> None:
    for name in atoms:
        if name.endswith(NEG_SUFFIX):
            raise NameCollisionError(
                f"atom {name!r} uses the reserved suffix {NEG_SUFFIX!r}"
            )


def rename_literals(f: Formula) -> Formula:
    """Replace every ``~p`` in an NNF formula by the atom ``p_neg``."""
    check_names(atoms_of(f))
    return _rename(f)


def _rename(f):
    t = type(f)
    if t is Atom or t is Falsum:
        return f
    if t is Not:
        if type(f.operand) is not Atom:
            raise ValueError(f"not in negation normal form: {f}")
        return Atom(negated_name(f.operand.name))
    return t(_rename(f.left), _rename(f.right))


def embed(f: Formula) -> Formula:
    return rename_literals(nnf(f))


def embed_sequent(s: Sequent) -> Sequent:
    check_names(atoms_of(s))
    return Sequent.of((_rename(nnf(f)) for f in s.left), (_rename(nnf(f)) for f in s.right))
