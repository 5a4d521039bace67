"""End-to-end acceptance checks, one group per criterion."""

import itertools
import random

import pytest

from helpers import (
    EIGHT_AGENT_CLAUSES, EIGHT_ASSIGNMENT, EIGHT_CANDIDATES_PRINTED,
    EIGHT_COMPAT_CLAUSES_PRINTED, EIGHT_INITIAL_SETS_PRINTED, EIGHT_K, EIGHT_MODEL,
    EIGHT_UPDATED_SETS, HAM_DIGRAPH, FORMULA_N1, FORMULA_N2, FORMULA_N2_MODEL, HAM_DIGRAPH_VALUES, eight_agents,
    four_agents, planted_constrained, simple_star_bound,
)
from swapreach import oracle, path_strict, star_weak, twosat
from swapreach.core import Assignment, star_center, verify_sequence, welfare
from swapreach.generate import random_strict_path, random_weak_star
from swapreach.reductions import (
    brute_ham_path, brute_sat, digraph_to_star_welfare, intended_sequence, sat_to_weak_path,
)


# ------------------------------------------------ 1. worked constrained example


@pytest.fixture(scope="module")
def ex2():
    ci = path_strict.make_neat(eight_agents(), EIGHT_K, 8)
    path_strict.build_position_sets(ci)
    return ci


def test_c1_candidate_table(ex2):
    assert ex2.candidates == EIGHT_CANDIDATES_PRINTED


def test_c1_initial_position_sets(ex2):
    assert ex2.initial_sets == EIGHT_INITIAL_SETS_PRINTED


def test_c1_updated_position_sets(ex2):
    assert ex2.position_sets == EIGHT_UPDATED_SETS


def test_c1_formula_clauses(ex2):
    ts = path_strict.build_twosat(ex2)
    clauses = {frozenset(c) for c in ts.clauses}
    assert clauses == EIGHT_AGENT_CLAUSES | EIGHT_COMPAT_CLAUSES_PRINTED


def test_c1_model_assignment_and_certificate(ex2):
    ts = path_strict.build_twosat(ex2)
    model = [bool(x) for x in EIGHT_MODEL]
    assert twosat.satisfies(ts.clauses, model)
    target = path_strict.assignment_from_model(ex2, model)
    assert target.held == EIGHT_ASSIGNMENT
    seq = path_strict.extract_sequence(ex2, target)
    assert verify_sequence(ex2.base, seq) == target
    assert target[EIGHT_K] == 1


# ------------------------------------------------------- 2. four-agent path


def test_c2_four_agents():
    inst = four_agents()
    seq = path_strict.solve(inst, 3, 1)
    assert seq is not None and len(seq) == 2
    assert verify_sequence(inst, seq)[3] == 1


# ------------------------------------------------- 3. path solver vs oracle


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_c3_path_solver_matches_oracle(n):
    rng = random.Random(1000 + n)
    yes = 0
    for _ in range(10_000):
        inst = random_strict_path(n, rng)
        k, o = rng.randint(1, n), rng.randint(1, n)
        got = path_strict.solve(inst, k, o)
        want = oracle.is_reachable(inst, k, o)
        assert (got is None) == (want is None), (inst.prefs, k, o)
        if got is not None:
            yes += 1
            assert verify_sequence(inst, got)[k] == o
    assert 0 < yes < 10_000


# ------------------------------------------- 4. compatibility characterization


def _constrained_sets(inst, k):
    n = inst.n
    ci = path_strict.make_neat(inst, k, n)
    others = [o for o in range(2, n)]
    free = [a for a in range(1, n + 1) if a not in (k - 1, k)]
    compatible = set()
    for perm in itertools.permutations(others):
        held = [0] * n
        held[k - 1], held[k - 2] = 1, n
        for a, o in zip(free, perm):
            held[a - 1] = o
        a = Assignment(tuple(held))
        if path_strict.is_compatible(ci, a):
            compatible.add(a.held)
    reachable = {a.held for a in oracle.reachable_set(inst)
                 if a[k] == 1 and a[k - 1] == n}
    return compatible, reachable


@pytest.mark.slow
def test_c4_compatible_assignments_are_the_reachable_ones():
    rng = random.Random(4)
    nonempty = several = 0
    for trial in range(3000):
        n = rng.randint(3, 7)
        if trial % 4:
            inst, k = planted_constrained(n, rng, extra=rng.choice((0.3, 0.8)))
        else:
            inst, k = random_strict_path(n, rng), rng.randint(2, n)
        compatible, reachable = _constrained_sets(inst, k)
        assert compatible == reachable, (inst.prefs, k)
        nonempty += bool(reachable)
        several += len(reachable) > 1
    assert nonempty >= 2000 and several >= 100


# ------------------------------------------------- 5. star solver vs oracle


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_c5_star_solver_matches_oracle(n):
    rng = random.Random(5000 + n)
    yes = 0
    for _ in range(10_000):
        inst = random_weak_star(n, rng)
        k, o = rng.randint(1, n), rng.randint(1, n)
        got = star_weak.solve(inst, k, o)
        want = oracle.is_reachable(inst, k, o)
        assert (got is None) == (want is None), (inst.prefs, inst.network, k, o)
        if got is not None:
            yes += 1
            assert verify_sequence(inst, got)[k] == o
            assert simple_star_bound(got, k, star_center(inst))
    assert 0 < yes < 10_000


# ------------------------------------------------------------- 6. 2-SAT engine


def test_c6_twosat_matches_enumeration():
    rng = random.Random(6)
    sat = 0
    for _ in range(10_000):
        v = rng.randint(1, 15)
        ts = twosat.TwoSatInstance(v)
        for _ in range(rng.randint(0, 60)):
            ts.add(rng.choice((-1, 1)) * rng.randint(1, v), rng.choice((-1, 1)) * rng.randint(1, v))
        got, want = twosat.solve(ts), twosat.brute_force(ts)
        assert (got is None) == (want is None), ts
        if got is not None:
            sat += 1
            assert twosat.satisfies(ts.clauses, got)
    assert 1000 < sat < 9000


# ------------------------------------------------- 7-8. weak path reduction


def test_c7_unsatisfiable_formula_gadget_is_unreachable():
    assert not brute_sat(FORMULA_N1)
    inst, (k, t) = sat_to_weak_path(FORMULA_N1)
    assert inst.n == 10 and inst.label(k) == "C_3"
    assert oracle.is_reachable(inst, k, t) is None


def test_c8_satisfiable_formula_certificate():
    inst, (k, t) = sat_to_weak_path(FORMULA_N2)
    assert inst.n == 16
    seq = intended_sequence(FORMULA_N2, FORMULA_N2_MODEL)
    assert verify_sequence(inst, seq)[k] == t


# ------------------------------------------------------ 9. welfare reduction


def test_c9_table_and_endowment_welfare():
    inst, th = digraph_to_star_welfare(HAM_DIGRAPH)
    assert [list(r) for r in inst.values] == HAM_DIGRAPH_VALUES
    assert welfare(inst, inst.endowment) == 9
    assert th == 16


def test_c9_max_welfare_exact_value():
    inst, _ = digraph_to_star_welfare(HAM_DIGRAPH)
    best, _ = oracle.max_welfare(inst)
    assert best == 16


def test_c9_threshold_met_iff_hamiltonian():
    inst, th = digraph_to_star_welfare(HAM_DIGRAPH)
    best, arg = oracle.max_welfare(inst)
    assert best >= th and brute_ham_path(HAM_DIGRAPH)
    assert arg in oracle.reachable_set(inst)

    cut = HAM_DIGRAPH.without_arc("v", "u")
    inst2, th2 = digraph_to_star_welfare(cut)
    best2, _ = oracle.max_welfare(inst2)
    assert best2 < th2
    assert not brute_ham_path(cut)


# ------------------------------------------------------------ 10. properties


def test_c10_property_suite_passes():
    import subprocess
    import sys
    from pathlib import Path

    here = Path(__file__).resolve().parent
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           str(here / "test_properties.py")], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout[-2000:]
