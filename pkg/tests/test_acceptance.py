"""Acceptance suite: every criterion at its stated size and tolerance, one
printed PASS/FAIL line per criterion (run with -s to see them live)."""

import random
import time

from czsynth.codesf4 import code_from_graph, min_distance, mind_bound
from czsynth.graphcore import (EC1, EC2, EC3, apply_op, lc_orbit,
                               local_complement, replay)
from czsynth.intervalwords import (DOWord, circle_graph, containment_graph,
                                   interval_graph, moore_degree_cap,
                                   reroute_word, synth_circle,
                                   synth_containment, synth_interval)
from czsynth.oracle import get_table, exact_ec
from czsynth.rankwidth import (cutrank, exact_rankwidth, find_dependent_set)
from czsynth.synthesis import bound_upper_generic, grow_vertex, synth
from czsynth.tableau import (apply_pauli, check_graph_state,
                             decompose_two_qubit, compose_gates,
                             enumerate_two_qubit_classes, simulate_circuit,
                             trace_to_circuit, _classification_table)

from conftest import (all_graphs, cycle_graph, random_connected_graph,
                      random_graph, random_tree, random_word)

SEED = 0xC25


def report(number: int, ok: bool, detail: str) -> None:
    print(f"[criterion {number:02d}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_01_oracle_table(capsys):
    from czsynth.cli import main

    t0 = time.perf_counter()
    expected = {1: 0, 2: 1, 3: 2, 4: 3, 5: 5, 6: 7}
    got = {}
    for n in range(1, 7):
        assert main(["oracle", "--n", str(n), "--format", "kv"]) == 0
        out = capsys.readouterr().out
        got[n] = int(next(ln for ln in out.splitlines()
                          if ln.startswith("max_cost=")).split("=")[1])
    elapsed = time.perf_counter() - t0
    ok = got == expected and elapsed <= 600
    report(1, ok, f"oracle max costs {got} in {elapsed:.1f}s")


def test_criterion_02_clifford_classification(capsys):
    from czsynth.cli import main

    assert main(["clifford", "classify", "--format", "kv"]) == 0
    parsed = dict(ln.split("=") for ln in capsys.readouterr().out.splitlines())
    counts = enumerate_two_qubit_classes()
    ok = (counts["a"], counts["b"], counts["c"], counts["d"],
          counts["total"]) == (36, 324, 324, 36, 720)
    ok = ok and (parsed["class_a"], parsed["class_b"], parsed["class_c"],
                 parsed["class_d"], parsed["total"]) == ("36", "324", "324",
                                                         "36", "720")
    round_trips = 0
    for matrix in _classification_table():
        circuit = decompose_two_qubit(matrix)
        cz = sum(1 for g in circuit.gates if g[0] == "CZ")
        swaps = sum(1 for g in circuit.gates if g[0] == "SWAP")
        if cz <= 1 and swaps <= 1 and tuple(compose_gates(circuit.gates, 2)) == matrix:
            round_trips += 1
    ok = ok and round_trips == 720
    report(2, ok, f"classes {counts}, {round_trips}/720 round-trips")


def test_criterion_03_cycle_costs():
    got = {n: exact_ec(cycle_graph(n)) for n in (3, 4, 5, 6)}
    ok = got == {3: 2, 4: 3, 5: 5, 6: 6}
    report(3, ok, f"cycle exact costs {got}")


def test_criterion_04_interval_synthesis():
    rng = random.Random(SEED)
    t0 = time.perf_counter()
    checked = 0
    ok = True
    for _ in range(200):
        n = rng.randrange(1, 201)
        word = random_word(n, rng)
        res = synth_interval(word)
        if res.cost != max(0, 2 * n - 2) or replay(res.trace) != interval_graph(word):
            ok = False
            break
        checked += 1
    elapsed = time.perf_counter() - t0
    ok = ok and checked == 200 and elapsed <= 60
    report(4, ok, f"{checked}/200 interval words, {elapsed:.1f}s")


def test_criterion_05_circle_synthesis():
    rng = random.Random(SEED + 1)
    t0 = time.perf_counter()
    checked = 0
    ok = True
    for _ in range(100):
        n = rng.randrange(1, 101)
        word = random_word(n, rng)
        cap = moore_degree_cap(n)
        rerouted, v = reroute_word(word)
        if circle_graph(rerouted).degree(rerouted.index(v)) > cap:
            ok = False
            break
        res = synth_circle(word)  # re-checks the cap at every level
        bound = 2 * (cap // 2) * max(n - 1, 0)
        if replay(res.trace) != circle_graph(word) or res.cost > max(bound, 0):
            ok = False
            break
        checked += 1
    elapsed = time.perf_counter() - t0
    ok = ok and checked == 100 and elapsed <= 120
    report(5, ok, f"{checked}/100 circle words, {elapsed:.1f}s")


def test_criterion_06_containment_synthesis():
    rng = random.Random(SEED + 1)  # same corpus shape as criterion 5
    checked = 0
    ok = True
    for _ in range(100):
        n = rng.randrange(1, 101)
        word = random_word(n, rng)
        res = synth_containment(word)
        inter = interval_graph(word)
        circ = circle_graph(word)
        cont = containment_graph(word)
        sym_diff = {e for e in inter.edges() if e not in set(circ.edges())}
        sym_diff |= {e for e in circ.edges() if e not in set(inter.edges())}
        expected_cost = synth_interval(word).cost + synth_circle(word).cost + n
        if (res.cost != expected_cost or replay(res.trace) != cont
                or set(cont.edges()) != sym_diff):
            ok = False
            break
        checked += 1
    ok = ok and checked == 100
    report(6, ok, f"{checked}/100 containment merges")


def test_criterion_07_rankwidth_ground_truths():
    ok = True
    for g in all_graphs(4):
        value, _ = exact_rankwidth(g)
        if g.is_connected() and value != 1:
            ok = False
        if value > 1:
            ok = False
    ok = ok and exact_rankwidth(cycle_graph(4))[0] == 1
    ok = ok and exact_rankwidth(cycle_graph(5))[0] == 2
    rng = random.Random(SEED + 2)
    for _ in range(40):
        n = rng.randrange(2, 14)
        tree = random_tree(n, rng)
        if exact_rankwidth(tree)[0] != 1:
            ok = False
            break
    report(7, ok, "64 four-vertex graphs, C4, C5, trees n<=13")


def test_criterion_08_lower_bound_certificates():
    rng = random.Random(SEED + 3)
    violations = 0
    for _ in range(500):
        n = rng.randrange(2, 14)
        g = random_connected_graph(n, rng, p=rng.choice([0.2, 0.4, 0.6, 0.8]))
        res = synth(g)
        rw, _ = exact_rankwidth(g)
        if res.cost < g.n + rw - 2:
            violations += 1
    report(8, violations == 0, f"500 connected graphs, {violations} violations")


def test_criterion_09_trees_tight():
    rng = random.Random(SEED + 4)
    ok = True
    for _ in range(100):
        n = rng.randrange(2, 51)
        g = random_tree(n, rng)
        if synth(g).cost != n - 1:
            ok = False
            break
    report(9, ok, "100 trees n<=50 at cost n-1")


def test_criterion_10_generic_bound():
    rng = random.Random(SEED + 5)
    ok = True
    for _ in range(1000):
        n = rng.randrange(1, 8)
        g = random_graph(n, rng, p=rng.random())
        if synth(g, strategy="code").cost > bound_upper_generic(n):
            ok = False
            break
    for _ in range(500):
        n = rng.randrange(1, 15)
        g = random_graph(n, rng, p=rng.random())
        if synth(g, strategy="code").cost > bound_upper_generic(n):
            ok = False
            break
    report(10, ok, "code-guided cost within (n-1)(n+4)/6 on 1500 graphs")


def test_criterion_11a_cutrank_lc_invariance():
    rng = random.Random(SEED + 6)
    failures = 0
    for _ in range(1000):
        g = random_graph(rng.randrange(1, 10), rng)
        v = rng.randrange(g.n)
        s = [u for u in range(g.n) if rng.random() < 0.5]
        if cutrank(g, s) != cutrank(local_complement(g, v), s):
            failures += 1
    report(11, failures == 0, f"(a) cut-rank LC-invariance, {failures} failures")


def test_criterion_11b_cost_one_cutrank_deltas():
    rng = random.Random(SEED + 7)
    failures = 0
    for _ in range(1000):
        g = random_graph(rng.randrange(2, 10), rng)
        v, w = rng.sample(range(g.n), 2)
        choices = [EC1(v, w), EC2(v, w)]
        if not g.has_edge(v, w):
            choices.append(EC3(v, w))
        op = rng.choice(choices)
        h = apply_op(g, op)
        s = [u for u in range(g.n) if rng.random() < 0.5]
        before, after = cutrank(g, s), cutrank(h, s)
        same_side = ((v in s) == (w in s))
        if same_side and before != after:
            failures += 1
        if not same_side and abs(before - after) > 1:
            failures += 1
    report(11, failures == 0, f"(b) cost-one cut-rank deltas, {failures} failures")


def test_criterion_11c_grow_vertex_replay():
    rng = random.Random(SEED + 8)
    failures = 0
    for _ in range(1000):
        g = random_graph(rng.randrange(2, 10), rng)
        dep = find_dependent_set(g, rng.choice(["code", "rankwidth", "trivial"]))
        v, ops, cost = grow_vertex(g, dep)
        if cost > len(dep.vertices) - 1:
            failures += 1
            continue
        cur = g
        for u in list(g.neighbors(v)):
            from czsynth.graphcore import toggle_edge

            cur = toggle_edge(cur, v, u)
        for op in ops:
            cur = apply_op(cur, op)
        if cur != g:
            failures += 1
    report(11, failures == 0, f"(c) grow replay equality, {failures} failures")


def test_criterion_11d_word_reversal_is_lc():
    rng = random.Random(SEED + 9)
    failures = 0
    for _ in range(1000):
        word = random_word(rng.randrange(1, 9), rng)
        name = rng.choice(word.names)
        i, j = word.positions(name)
        letters = list(word.letters)
        letters[i + 1:j] = reversed(letters[i + 1:j])
        flipped = DOWord(letters)
        if circle_graph(flipped) != local_complement(circle_graph(word),
                                                     word.index(name)):
            failures += 1
    report(11, failures == 0, f"(d) kappa-reversal vs LC, {failures} failures")


def test_criterion_11e_codeword_support_equivalence():
    checked = 0
    failures = 0
    for n in range(1, 6):
        for g in all_graphs(n):
            code = code_from_graph(g)
            supports = set()
            for combo in range(1, 1 << n):
                x, z = code.codeword(combo)
                supports.add(x | z)
            for s_mask in range(1, 1 << n):
                s = [v for v in range(n) if (s_mask >> v) & 1]
                dependent = cutrank(g, s) < len(s)
                covered = any(sup and (sup & ~s_mask) == 0 for sup in supports)
                if dependent != covered:
                    failures += 1
                checked += 1
    report(11, failures == 0,
           f"(e) support equivalence exhaustive n<=5 ({checked} pairs)")


def test_criterion_11f_min_distance_bound():
    rng = random.Random(SEED + 10)
    failures = 0
    for _ in range(1000):
        n = rng.randrange(1, 13)
        g = random_graph(n, rng, p=rng.random())
        if min_distance(code_from_graph(g)) > mind_bound(n):
            failures += 1
    report(11, failures == 0, f"(f) min distance within bound, {failures} failures")


def test_criterion_11g_orbit_degree_identity():
    failures = 0
    checked = 0
    for n in range(1, 7):
        seen = set()
        for g in all_graphs(n):
            if g in seen:
                continue
            orbit = lc_orbit(g)
            seen |= orbit
            best = min(min(h.degree(v) for v in range(n)) for h in orbit)
            for h in orbit:
                if min_distance(code_from_graph(h)) != 1 + best:
                    failures += 1
                checked += 1
    report(11, failures == 0,
           f"(g) distance = 1 + min orbit degree, exhaustive n<=6 ({checked} graphs)")


def test_criterion_12_end_to_end_circuits():
    rng = random.Random(SEED + 11)
    ok = True
    exact_fixed = 0
    for trial in range(100):
        n = rng.randrange(1, 11)
        g = random_graph(n, rng)
        res = synth(g)
        state, _ = simulate_circuit(trace_to_circuit(res.trace))
        rep = check_graph_state(state, g)
        if not rep.ok:
            ok = False
            break
        if trial < 20:
            fixed = apply_pauli(state, rep.pauli_x, rep.pauli_z)
            if check_graph_state(fixed, g).status != "match":
                ok = False
                break
            exact_fixed += 1
    ok = ok and exact_fixed == 20
    report(12, ok, f"100 simulated syntheses, {exact_fixed} exact-sign fixes")
