"""Double occurrence words define interval, containment and circle graphs;
each class has its own synthesizer with a cost guarantee: 2n-2 for interval
graphs, O(n log n) for circle and containment graphs.
"""

import random

from czsynth import (DOWord, circle_graph, containment_graph, interval_graph,
                     replay, reroute_word, synth_circle, synth_containment,
                     synth_interval, tour_graph)
from czsynth.intervalwords import moore_degree_cap

word = DOWord(list("acbafcebdfed"))
print(f"word: {' '.join(word.letters)}  (n = {word.n})")

for name, builder in (("interval", interval_graph),
                      ("containment", containment_graph),
                      ("circle", circle_graph)):
    g = builder(word)
    labeled = [(g.labels[u], g.labels[v]) for u, v in g.edges()]
    print(f"{name:>11} graph: {labeled}")

# every letter-adjacency of the word is an edge of its 4-regular tour graph
t = tour_graph(word)
print(f"\ntour graph edges: {t.edge_multiset()}")

# rerouting the Eulerian cycle exposes a vertex of logarithmic degree in an
# equivalent circle graph; that is the engine of the circle synthesizer
rerouted, v = reroute_word(word)
deg = circle_graph(rerouted).degree(rerouted.index(v))
print(f"rerouted word: {' '.join(rerouted.letters)}")
print(f"vertex {v} now has degree {deg} <= {moore_degree_cap(word.n)}")

print()
res = synth_interval(word)
print(f"interval synthesis: cost {res.cost} = 2n-2, "
      f"replay ok: {replay(res.trace) == interval_graph(word)}")
res = synth_circle(word)
print(f"circle synthesis: cost {res.cost}, "
      f"replay ok: {replay(res.trace) == circle_graph(word)}")
res = synth_containment(word)
print(f"containment synthesis: cost {res.cost}, "
      f"replay ok: {replay(res.trace) == containment_graph(word)}")

# costs scale as promised on random words
rng = random.Random(0)
letters = [f"v{i}" for i in range(40)] * 2
rng.shuffle(letters)
big = DOWord(letters)
print(f"\nrandom n=40 word: interval cost {synth_interval(big).cost} (= 78), "
      f"circle cost {synth_circle(big).cost} "
      f"(bound {moore_degree_cap(40) * 39})")
