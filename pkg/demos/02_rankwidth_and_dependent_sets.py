"""Cut-rank, exact rank-width with a witness decomposition, and the
dependent-set machinery that drives vertex-by-vertex synthesis.
"""

from czsynth import (Graph, cutrank, exact_rankwidth, find_dependent_set,
                     greedy_decomposition, grow_vertex, width)

c5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])

# cut-ranks across a few bipartitions of the 5-cycle
for s in ([0], [0, 1], [0, 2], [0, 1, 2]):
    print(f"cutrank({s}) = {cutrank(c5, s)}")

value, deco = exact_rankwidth(c5)
print(f"\nexact rank-width of C5 = {value}")
print(f"witness decomposition: {deco.serialize()}")
print(f"witness width checks out: {width(c5, deco)}")

# the greedy caterpillar is only an upper bound, but it is cheap at any size
heur = greedy_decomposition(c5)
print(f"greedy caterpillar width: {width(c5, heur)}")

# a dependent set is a vertex set whose outgoing adjacency rows are linearly
# dependent; its witness row tells the synthesizer which vertex to insert
# and which neighborhoods to copy
dep = find_dependent_set(c5, "code")
print(f"\ndependent set: {sorted(dep.vertices)}, cut-rank {dep.cutrank_value}")
print(f"witness: row {dep.vertex} = sum of rows {sorted(dep.support)}")

v, ops, cost = grow_vertex(c5, dep)
print(f"inserting vertex {v} costs {cost} unit ops: {[str(o) for o in ops]}")
