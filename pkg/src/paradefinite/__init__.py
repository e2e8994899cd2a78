"""Decision procedures for classical logic, Belnap-Dunn logic with
implication and falsum, and the LP- and K3-style logics between them."""

__version__ = "0.1.0"

from .embedding import embed_sequent, nnf, rename_literals
from .parsing import parse_formula, parse_sequent, print_formula, print_sequent
from .prover import ProofResult, classify, closure, prove, prove_cl_general, rule_set
from .semantics import (
    LogicId,
    TruthValue,
    countermodel,
    evaluate,
    logic_matrix,
    matrix_consequence,
    truth_table,
)
from .syntax import (
    FALSUM,
    And,
    Atom,
    Falsum,
    Formula,
    Implies,
    Not,
    Or,
    Sequent,
    Substitution,
    atoms_of,
    enumerate_formulas,
    substitute,
)
