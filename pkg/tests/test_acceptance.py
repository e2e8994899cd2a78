"""Acceptance criteria, each run at its stated tolerance.

Every criterion appends one PASS/FAIL line to the terminal summary.

The full universe (two atoms, depth <= 2, up to two formulas per side) has
about 3e13 sequents, far beyond desk scale. The per-sequent criteria
therefore run over three slices of it:

* ``pairs``: every sequent with at most two formulas per side drawn from
  the 33 formulas of depth <= 1 (exhaustive, 315,844 sequents);
* ``singles``: every sequent with at most one depth <= 2 formula in total
  (exhaustive, 6,607 sequents);
* ``sampled``: 10,000 sequents drawn uniformly from the full universe with
  a fixed seed.

Run ``python3 tests/test_acceptance.py`` for the report without pytest.
"""

import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import pytest

from paradefinite.embedding import embed_sequent
from paradefinite.prover import prove, prove_cl_general
from paradefinite.semantics import (
    B,
    N,
    ConsequenceOracle,
    LogicId,
    logic_matrix,
    matrix_consequence,
    refutes,
)
from paradefinite.syntax import (
    Implies,
    Not,
    Sequent,
    Substitution,
    atoms_of,
    enumerate_formulas,
    enumerate_sequents,
    substitute_sequent,
)

sys.path.insert(0, str(Path(__file__).parent))
import conftest  # noqa: E402

CL, LP, K3, BDL = LogicId.CL, LogicId.LP, LogicId.K3, LogicId.BDL
LOGICS = list(LogicId)
ATOMS = ["p", "q"]
SAMPLE_SIZE = 10_000
SAMPLE_SEED = 20240601
RANDOM_INSTANCES = 1000
SHOW = 3  # failing examples quoted per criterion


def report(number, title, failures, detail):
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({detail})"
    if failures:
        line += "; e.g. " + "; ".join(str(x) for x in failures[:SHOW])
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return not failures


def random_side(rng, formulas, limit=2):
    return rng.sample(formulas, rng.randint(0, limit))


def slice_pairs():
    return enumerate_sequents(list(enumerate_formulas(2, 1)), 2)


def slice_singles():
    fs = list(enumerate_formulas(2, 2))
    yield Sequent.of()
    for f in fs:
        yield Sequent.of([f], [])
        yield Sequent.of([], [f])


def slice_sampled():
    rng = random.Random(SAMPLE_SEED)
    fs = list(enumerate_formulas(2, 2))
    for _ in range(SAMPLE_SIZE):
        yield Sequent.of(random_side(rng, fs), random_side(rng, fs))


SLICES = {"pairs": slice_pairs, "singles": slice_singles, "sampled": slice_sampled}


@dataclass
class Sweep:
    """Violations of every per-sequent criterion over one slice."""

    sequents: int = 0
    invalid_verdicts: int = 0
    cl_not_bdl: int = 0
    seconds: dict = field(default_factory=dict)
    prover_matrix: list = field(default_factory=list)
    engines: list = field(default_factory=list)
    chain_prover: list = field(default_factory=list)
    chain_matrix: list = field(default_factory=list)
    factor_countermodel: list = field(default_factory=list)
    factor_flags: list = field(default_factory=list)
    embedding: list = field(default_factory=list)
    countermodels: list = field(default_factory=list)


def chain_violations(v):
    bad = []
    if v[BDL] and not (v[LP] and v[K3]):
        bad.append("BDL not within LP and K3")
    if v[LP] and not v[CL]:
        bad.append("LP not within CL")
    if v[K3] and not v[CL]:
        bad.append("K3 not within CL")
    return bad


def sweep(sequents) -> Sweep:
    out = Sweep()
    oracles = {logic: ConsequenceOracle(logic, ATOMS) for logic in LOGICS}
    matrices = {logic: logic_matrix(logic) for logic in LOGICS}
    clock = dict.fromkeys(("prover", "matrix", "engines", "flags", "embedding", "countermodels"), 0.0)
    tick = time.perf_counter
    for s in sequents:
        out.sequents += 1
        t0 = tick()
        results = {logic: prove(logic, s) for logic in LOGICS}
        proved = {logic: r.valid for logic, r in results.items()}
        t1 = tick()
        semantic = {logic: oracles[logic].valid(s) for logic in LOGICS}
        t2 = tick()
        clock["prover"] += t1 - t0
        clock["matrix"] += t2 - t1

        for logic in LOGICS:
            if proved[logic] != semantic[logic]:
                out.prover_matrix.append((str(logic), str(s)))
        t0 = tick()
        if prove_cl_general(s).valid != proved[CL]:
            out.engines.append(str(s))
        clock["engines"] += tick() - t0
        out.chain_prover.extend((str(s), b) for b in chain_violations(proved))
        out.chain_matrix.extend((str(s), b) for b in chain_violations(semantic))

        if proved[CL] and not proved[BDL]:
            out.cl_not_bdl += 1
            if not {B, N} & set(results[BDL].countermodel.values()):
                out.factor_countermodel.append(str(s))
        t0 = tick()
        if prove(CL, s, lnc=False).valid != proved[LP]:
            out.factor_flags.append(("CL without LNC vs LP", str(s)))
        if prove(CL, s, lem=False).valid != proved[K3]:
            out.factor_flags.append(("CL without LEM vs K3", str(s)))
        t1 = tick()
        if prove(CL, embed_sequent(s)).valid != proved[BDL]:
            out.embedding.append(str(s))
        t2 = tick()
        clock["flags"] += t1 - t0
        clock["embedding"] += t2 - t1

        for logic, r in results.items():
            if r.valid:
                continue
            out.invalid_verdicts += 1
            cm = r.countermodel
            ok = (
                cm is not None
                and set(cm) == set(atoms_of(s))
                and set(cm.values()) <= set(logic.carrier)
                and refutes(matrices[logic], cm, s)
            )
            if not ok:
                out.countermodels.append((str(logic), str(s), cm))
        clock["countermodels"] += tick() - t2
    out.seconds = clock
    return out


pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def sweeps():
    return {name: sweep(make()) for name, make in SLICES.items()}


def total(sweeps, attr):
    return [x for sw in sweeps.values() for x in getattr(sw, attr)]


def seconds(sweeps, *parts):
    return sum(sw.seconds[p] for sw in sweeps.values() for p in parts)


def count(sweeps):
    return sum(sw.sequents for sw in sweeps.values())


def test_criterion_1_prover_matches_matrix(sweeps):
    bad = total(sweeps, "prover_matrix")
    sizes = ", ".join(f"{name} {sw.sequents}" for name, sw in sweeps.items())
    spent = seconds(sweeps, "prover", "matrix")
    assert report(1, "prover agrees with matrix consequence, four logics", bad,
                  f"{len(bad)} disagreements over {sizes}; {spent:.0f}s against a 300s target")


def test_criterion_2_general_negation_engine(sweeps):
    bad = total(sweeps, "engines")
    n = count(sweeps)
    assert report(2, "general-negation CL engine agrees with CL prover",
                  bad, f"{len(bad)} disagreements over {n} sequents")


def test_criterion_3_inclusion_chain(sweeps):
    bad = total(sweeps, "chain_prover") + total(sweeps, "chain_matrix")
    n = count(sweeps)
    assert report(3, "BDL within LP and K3, both within CL (prover and matrix)",
                  bad, f"{len(bad)} violations over {n} sequents")


def test_criterion_4_lnc_lem_factorization(sweeps):
    bad = total(sweeps, "factor_countermodel") + total(sweeps, "factor_flags")
    gaps = sum(sw.cl_not_bdl for sw in sweeps.values())
    assert gaps > 0
    assert report(4, "CL minus BDL needs a glut or gap; CL without LNC = LP, without LEM = K3",
                  bad, f"{gaps} CL-valid BDL-invalid sequents, {len(bad)} violations")


def test_criterion_5_embedding(sweeps):
    bad = total(sweeps, "embedding")
    n = count(sweeps)
    assert report(5, "BDL validity iff CL validity of the embedded sequent",
                  bad, f"{len(bad)} disagreements over {n} sequents")


def test_criterion_8_countermodels(sweeps):
    bad = total(sweeps, "countermodels")
    n = sum(sw.invalid_verdicts for sw in sweeps.values())
    assert n > 0
    assert report(8, "every invalid verdict carries a refuting valuation in the carrier",
                  bad, f"{n - len(bad)}/{n} confirmed")


def deciders(logic):
    return {
        "matrix": lambda s: matrix_consequence(logic, s),
        "prover": lambda s: prove(logic, s).valid,
    }


def test_criterion_6_scott_structural_nontrivial():
    rng = random.Random(6)
    small = list(enumerate_formulas(2, 1))
    deep = list(enumerate_formulas(2, 2))
    failures = []
    counts = {"overlap": 0, "weakening": 0, "cut": 0, "structurality": 0}
    for logic in LOGICS:
        for name, valid in deciders(logic).items():
            tag = f"{logic}/{name}"
            for _ in range(300):
                a = rng.choice(deep)
                s = Sequent.of(random_side(rng, small) + [a], random_side(rng, small) + [a])
                counts["overlap"] += 1
                if not valid(s):
                    failures.append((tag, "overlap", str(s)))

            # weakening: draw valid sequents, then add formulas on both sides
            done = 0
            while done < 300:
                s = Sequent.of(random_side(rng, small), random_side(rng, small))
                if not valid(s):
                    continue
                done += 1
                counts["weakening"] += 1
                w = Sequent(s.left | set(random_side(rng, small)), s.right | set(random_side(rng, small)))
                if not valid(w):
                    failures.append((tag, "weakening", str(s), str(w)))

            # cut: only instances whose two premises both hold count
            done = 0
            while done < 300:
                gamma, delta = random_side(rng, small), random_side(rng, small)
                a = rng.choice(small)
                if not (valid(Sequent.of(gamma, delta + [a])) and valid(Sequent.of(gamma + [a], delta))):
                    continue
                done += 1
                counts["cut"] += 1
                if not valid(Sequent.of(gamma, delta)):
                    failures.append((tag, "cut", str(Sequent.of(gamma, delta)), str(a)))

            done = 0
            while done < RANDOM_INSTANCES:
                s = Sequent.of(random_side(rng, deep), random_side(rng, deep))
                if not valid(s):
                    continue
                sigma = Substitution({p: rng.choice(small + [Not(Implies(*rng.sample(small, 2)))]) for p in "pq"})
                image = substitute_sequent(sigma, s)
                done += 1
                counts["structurality"] += 1
                if not valid(image):
                    failures.append((tag, "structurality", str(s), repr(sigma)))

            if valid(Sequent.of([conftest.F("p")], [conftest.F("q")])):
                failures.append((tag, "non-triviality", "p |- q"))
    detail = ", ".join(f"{k} {v}" for k, v in counts.items()) + ", non-triviality 8"
    assert report(6, "Scott axioms, structurality, non-triviality", failures, detail)


def test_criterion_7_deduction_and_negation():
    rng = random.Random(7)
    fs = list(enumerate_formulas(2, 2))
    failures = []
    for logic in LOGICS:
        for name, valid in deciders(logic).items():
            for _ in range(RANDOM_INSTANCES):
                gamma, delta = random_side(rng, fs), random_side(rng, fs)
                a, c = rng.choice(fs), rng.choice(fs)
                lhs = valid(Sequent.of(gamma, delta + [Implies(a, c)]))
                rhs = valid(Sequent.of(gamma + [a], delta + [c]))
                if lhs != rhs:
                    failures.append((f"{logic}/{name}", "deduction", str(Sequent.of(gamma, delta)), str(a), str(c)))

    cl_deciders = dict(deciders(CL), general=lambda s: prove_cl_general(s).valid)
    for name, valid in cl_deciders.items():
        for _ in range(RANDOM_INSTANCES):
            gamma, delta = random_side(rng, fs), random_side(rng, fs)
            a = rng.choice(fs)
            if valid(Sequent.of(gamma, delta + [Not(a)])) != valid(Sequent.of(gamma + [a], delta)):
                failures.append((f"CL/{name}", "negation", str(Sequent.of(gamma, delta)), str(a)))

    # Gamma = {~p}, Delta = {}, A = p
    for name, valid in deciders(BDL).items():
        if not valid(conftest.S("~p |- ~p")) or valid(conftest.S("~p, p |-")):
            failures.append((f"BDL/{name}", "counterexample"))
    detail = (f"deduction {RANDOM_INSTANCES} per logic and decider, "
              f"CL negation {RANDOM_INSTANCES} per decider, BDL counterexample ~p |- ~p vs ~p, p |-")
    assert report(7, "deduction biconditional; general negation in CL, not in BDL", failures, detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
