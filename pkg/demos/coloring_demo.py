"""From a decomposition to a 3-coloring with defect one.

The orientation half of a decomposition is 2-degenerate, so a greedy pass
along its elimination order needs only three colours; the matching half is
the only possible source of same-coloured neighbours, giving defect at most
one.  Demonstrated on the cube (the 3-dimensional hypercube graph).
"""

from planedec import (check_coloring, decompose_21, defective_coloring,
                      degeneracy_order, validate)
from planedec.plane_graph import PlaneGraph

# the cube: outer 4-cycle 1..4, inner 4-cycle 5..8, vertical edges
cube = PlaneGraph({1: (2, 5, 4), 2: (3, 6, 1), 3: (4, 7, 2), 4: (1, 8, 3),
                   5: (1, 6, 8), 6: (2, 7, 5), 7: (3, 8, 6), 8: (4, 5, 7)},
                  (1, 2))
assert validate(cube).ok

dec, trace = decompose_21(cube)
print("cube decomposition:")
print("  arcs:    ", sorted(dec.arcs))
print("  matching:", sorted(dec.matching))
print("  trace:   ", trace)
print("  elimination order:", degeneracy_order(dec, cube.vertices()))

colors = defective_coloring(cube, dec)
print("\n3-coloring:", colors)
defects = {v: sum(1 for u in cube.neighbors(v) if colors[u] == colors[v])
           for v in cube.vertices()}
print("per-vertex defect:", defects)
print("checker:", "pass" if check_coloring(cube, dec, colors).ok else "FAIL")
