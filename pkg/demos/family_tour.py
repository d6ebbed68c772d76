"""Tour of the special-configuration grammar.

Generates every family member on at most ten vertices, shows how the three
gluing operations build them from 4- and 5-cycles, and round-trips each one
through recognition.  Then takes one member through its whole clause menu.
"""

from collections import Counter

from planedec import generate_family, recognize
from planedec.special_decomposer import decompose_special, supported_clauses


def sketch(d):
    if d.is_leaf:
        return d.tag
    op = {"oplus": "(+)", "ohat": "(^)", "otilde": "(~)"}[d.op]
    return f"[{sketch(d.left)} {op} {sketch(d.right)}]"


fam = generate_family(10)
print("members with at most 10 vertices:", dict(Counter(d.tag for d in fam)))
print()
for d in fam:
    r = recognize(d.config)
    print(f"n={d.config.graph.n:2d}  {d.tag:2s}  {sketch(d)}"
          f"   recognized as {r.tag}")

print("\nclause menu for the 7-vertex member of the second rule:")
r2 = next(d for d in fam if d.tag == "R2")
for req in supported_clauses("R2"):
    dec = decompose_special(r2, req)  # verified internally
    side = f" with {req.side}" if req.side else ""
    print(f"  ({req.caps}){side}:  D={sorted(dec.arcs)}  M={sorted(dec.matching)}")
