import pytest

from czsynth.graphcore import (DEL, EC1, EC2, EC3, LC, Graph, GraphError,
                               OpTrace, ParseError, TraceError,
                               apply_op, lc_orbit, local_complement,
                               parse_graph6, parse_edge_list, parse_trace,
                               pivot, replay, serialize_edge_list,
                               serialize_graph6, serialize_trace, toggle_edge)

from conftest import all_graphs, complete_graph, cycle_graph, path_graph, random_graph


def test_local_complement_c4_gives_diamond():
    c4 = cycle_graph(4)
    d = local_complement(c4, 1)  # degree-2 vertex
    assert set(d.edges()) == set(c4.edges()) | {(0, 2)}


def test_local_complement_k4_gives_star():
    k4 = complete_graph(4)
    for v in range(4):
        star = local_complement(k4, v)
        assert set(star.edges()) == {(min(v, u), max(v, u)) for u in range(4) if u != v}


def test_local_complement_isolated_vertex():
    g = Graph.from_edges(3, [(0, 1)])
    assert local_complement(g, 2) == g


def test_local_complement_involution(rng):
    for _ in range(100):
        g = random_graph(rng.randrange(1, 9), rng)
        v = rng.randrange(g.n)
        assert local_complement(local_complement(g, v), v) == g


def test_ec1_on_empty_two_vertices():
    g = apply_op(Graph.empty(2), EC1(0, 1))
    assert g.edges() == [(0, 1)]


def test_ec2_neighborhood_is_only_v():
    # N(w) = {v}: the only candidate pair is excluded
    g = Graph.from_edges(2, [(0, 1)])
    assert apply_op(g, EC2(0, 1)) == g


def test_ec3_path_case():
    # v-x-w with v,w non-adjacent: only candidate pair is {x,x}
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert apply_op(g, EC3(0, 2)) == g


def test_ec3_requires_non_adjacent():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(GraphError):
        apply_op(g, EC3(0, 1))


def test_ec3_definition_brute_force(rng):
    # independent re-evaluation of the pair condition
    for _ in range(200):
        g = random_graph(rng.randrange(2, 9), rng)
        v, w = rng.sample(range(g.n), 2)
        if g.has_edge(v, w):
            continue
        out = apply_op(g, EC3(v, w))
        nv, nw = set(g.neighbors(v)), set(g.neighbors(w))
        both = nv & nw
        for x in range(g.n):
            for y in range(x + 1, g.n):
                in_set = (((x in nv and y in nw) or (x in nw and y in nv))
                          and not (x in both and y in both))
                expected = g.has_edge(x, y) ^ in_set
                assert out.has_edge(x, y) == expected


def test_ops_preserve_symmetry_and_diagonal(rng):
    for _ in range(200):
        g = random_graph(rng.randrange(2, 9), rng)
        v, w = rng.sample(range(g.n), 2)
        ops = [LC(v), EC1(v, w), EC2(v, w)]
        if not g.has_edge(v, w):
            ops.append(EC3(v, w))
        for op in ops:
            out = apply_op(g, op)
            out.validate()  # symmetry and zero diagonal
            assert out.n == g.n


def test_ec2_equals_toggle_lc_composition(rng):
    # EC2(v,w) agrees with: tau_w, toggle {v,w}, tau_w, toggle {v,w}
    for _ in range(200):
        g = random_graph(rng.randrange(2, 9), rng)
        v, w = rng.sample(range(g.n), 2)
        h = local_complement(g, w)
        h = toggle_edge(h, v, w)
        h = local_complement(h, w)
        h = toggle_edge(h, v, w)
        assert h == apply_op(g, EC2(v, w))


def test_ec3_equals_toggle_pivot_composition_with_swap(rng):
    # EC3(v,w) agrees with: toggle {v,w}, tau_v tau_w tau_v, toggle {v,w},
    # then swapping the labels of v and w
    for _ in range(200):
        g = random_graph(rng.randrange(2, 9), rng)
        v, w = rng.sample(range(g.n), 2)
        if g.has_edge(v, w):
            continue
        h = toggle_edge(g, v, w)
        h = local_complement(h, v)
        h = local_complement(h, w)
        h = local_complement(h, v)
        h = toggle_edge(h, v, w)
        perm = list(range(g.n))
        perm[v], perm[w] = w, v
        assert h.relabel(perm) == apply_op(g, EC3(v, w))


def test_ec1_ec2_involutions(rng):
    for _ in range(100):
        g = random_graph(rng.randrange(2, 9), rng)
        v, w = rng.sample(range(g.n), 2)
        assert apply_op(apply_op(g, EC1(v, w)), EC1(v, w)) == g
        assert apply_op(apply_op(g, EC2(v, w)), EC2(v, w)) == g


def test_pivot_is_triple_lc(rng):
    for _ in range(100):
        g = random_graph(rng.randrange(2, 9), rng)
        edges = g.edges()
        if not edges:
            continue
        v, w = edges[rng.randrange(len(edges))]
        expected = local_complement(local_complement(local_complement(g, v), w), v)
        assert pivot(g, v, w) == expected
        # both orderings agree
        other = local_complement(local_complement(local_complement(g, w), v), w)
        assert pivot(g, v, w) == other


def test_pivot_k2():
    assert pivot(Graph.from_edges(2, [(0, 1)]), 0, 1) == Graph.from_edges(2, [(0, 1)])


def test_pivot_twice_is_identity(rng):
    for _ in range(50):
        g = random_graph(rng.randrange(2, 8), rng)
        edges = g.edges()
        if not edges:
            continue
        v, w = edges[0]
        once = pivot(g, v, w)
        assert once.has_edge(v, w)
        assert pivot(once, v, w) == g


def test_pivot_requires_edge():
    with pytest.raises(GraphError):
        pivot(Graph.empty(2), 0, 1)


def test_replay_empty_trace():
    assert replay(OpTrace(3, 0, ())) == Graph.empty(3)


def test_replay_single_edge():
    got = replay(OpTrace(3, 0, (EC1(0, 1),)))
    assert got == Graph.from_edges(3, [(0, 1)])


def test_replay_known_sequence_c4_to_p4():
    # build C4, then the filled-vertex local complementations turn it into P4
    build = [EC1(0, 1), EC1(1, 2), EC1(2, 3), EC1(3, 0)]
    seq = [LC(2), LC(1), LC(2)]
    got = replay(OpTrace(4, 0, tuple(build + seq)))
    assert got == Graph.from_edges(4, [(0, 2), (1, 2), (1, 3)])


def test_replay_reports_failing_step():
    trace = OpTrace(2, 0, (EC1(0, 1), EC3(0, 1)))
    with pytest.raises(TraceError) as err:
        replay(trace)
    assert err.value.step == 1


def test_replay_delete_reindexing():
    # ops keep original indices across a deletion
    trace = OpTrace(2, 1, (EC1(0, 2), DEL(1), EC1(0, 2)))
    got = replay(trace)
    assert got == Graph.empty(2)


def test_replay_vertex_count_checked():
    with pytest.raises(TraceError):
        replay(OpTrace(3, 0, (DEL(0),)))


def test_trace_cost():
    trace = OpTrace(3, 0, (LC(0), EC1(0, 1), EC2(1, 2), DEL(2), EC3(0, 1)))
    assert trace.cost == 3


def test_lc_orbit_trivial():
    assert lc_orbit(Graph.empty(2)) == {Graph.empty(2)}
    k2 = Graph.from_edges(2, [(0, 1)])
    assert lc_orbit(k2) == {k2}


def test_lc_orbit_c4_contains_p4():
    orbit = lc_orbit(cycle_graph(4))
    p4 = Graph.from_edges(4, [(0, 2), (1, 2), (1, 3)])
    assert p4 in orbit


def test_lc_orbit_closed(rng):
    for _ in range(20):
        g = random_graph(rng.randrange(1, 7), rng)
        orbit = lc_orbit(g)
        for member in orbit:
            for v in range(member.n):
                assert local_complement(member, v) in orbit


def test_lc_orbit_guard():
    with pytest.raises(GraphError):
        lc_orbit(Graph.empty(13))


def test_edge_list_round_trip(rng):
    for _ in range(50):
        g = random_graph(rng.randrange(1, 10), rng)
        assert parse_edge_list(serialize_edge_list(g)) == g


def test_edge_list_example():
    assert parse_edge_list("3\n0 1\n1 2\n") == path_graph(3)
    assert parse_edge_list("1\n") == Graph.empty(1)


def test_edge_list_malformed():
    with pytest.raises(ParseError):
        parse_edge_list("x\n")
    with pytest.raises(ParseError):
        parse_edge_list("2\n0 5\n")
    with pytest.raises(ParseError):
        parse_edge_list("2\n0\n")
    with pytest.raises(ParseError):
        parse_edge_list("-97\n")
    with pytest.raises(ParseError):
        parse_trace("TRACE n=-1 s=0\n")


def test_graph6_known_strings():
    # standard-encoding anchors: K2 is "A_", K4 is "C~", empty n=5 is "D??"
    assert serialize_graph6(Graph.from_edges(2, [(0, 1)])) == "A_"
    assert parse_graph6("A_") == Graph.from_edges(2, [(0, 1)])
    assert serialize_graph6(complete_graph(4)) == "C~"
    assert serialize_graph6(Graph.empty(5)) == "D??"


def test_graph6_round_trip_all_4_vertex_graphs():
    for g in all_graphs(4):
        assert parse_graph6(serialize_graph6(g)) == g


def test_graph6_round_trip_random(rng):
    for _ in range(50):
        g = random_graph(rng.randrange(0, 20), rng)
        assert parse_graph6(serialize_graph6(g)) == g


def test_graph6_malformed():
    with pytest.raises(ParseError):
        parse_graph6("")
    with pytest.raises(ParseError):
        parse_graph6("B")  # truncated payload


def test_trace_text_round_trip():
    trace = OpTrace(3, 1, (LC(0), EC1(0, 1), EC2(1, 2), EC3(0, 3), DEL(3)))
    text = serialize_trace(trace)
    assert text.splitlines()[0] == "TRACE n=3 s=1"
    assert parse_trace(text) == trace


def test_trace_text_malformed():
    with pytest.raises(ParseError):
        parse_trace("EC1 0 1\n")
    with pytest.raises(ParseError):
        parse_trace("TRACE n=2 s=0\nBOGUS 1\n")


def test_delete_vertex_shifts_indices():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    got = g.delete_vertex(1)
    assert got == Graph.from_edges(3, [(1, 2)])


def test_graph_rejects_asymmetry():
    with pytest.raises(GraphError):
        Graph(2, [0b10, 0b00])
    with pytest.raises(GraphError):
        Graph(1, [0b1])  # self-loop
