"""Links of surface singularities from their resolution graphs.

Run: python demos/02_singularity_links.py
"""
# %% Simple singularities: only the A_n chains pass
from planarcheck import PlumbingGraph, ade_graph, bad_vertices, blowdown_normalize, classify_hypersurface, classify_singularity_link

for t in ["A1", "A5", "D4", "D7", "E6", "E7", "E8"]:
    c = classify_hypersurface(t)
    print(f"{t:>3}: {c.verdict:<9} {c.reason or ''} bad={list(c.bad)}")

# %% A bad vertex: weight smaller in size than its valence
four = PlumbingGraph.spheres([-2, -3, -2, -2], [(0, 1), (0, 2), (0, 3)])
print("bad vertices:", bad_vertices(four), "->", classify_singularity_link(four).to_verdict().to_json()["reason"])

# %% Blow-downs run before the test
chain = PlumbingGraph.spheres([-4, -1, -2], [(0, 1), (1, 2)])
res = blowdown_normalize(chain)
print("moves:", [(m.vertex, m.neighbors) for m in res.trace], "->", res.graph.to_json())
print("verdict:", classify_singularity_link(chain).verdict)

# %% A (-1)-sphere meeting three curves cannot be blown down inside good resolutions
trivalent = PlumbingGraph.spheres([-1, -2, -3, -7], [(0, 1), (0, 2), (0, 3)])
print(classify_singularity_link(trivalent).to_verdict().reason)

# %% Cycles and higher genus
print(classify_singularity_link(PlumbingGraph.spheres([-3, -3, -3], [(0, 1), (1, 2), (0, 2)])).reason)
print(classify_singularity_link(PlumbingGraph(((1, -2),))).reason)
print("D4 edges:", ade_graph("D4").edges)
