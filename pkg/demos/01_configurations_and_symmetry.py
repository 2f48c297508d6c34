"""Build a few small configurations and look at their symmetry.

The Fano plane is the smallest interesting case: seven points, seven lines,
three points on each line and three lines through each point.  Its
automorphism group has order 168.  Doubling the same cyclic pattern to
modulus 14 gives a configuration with far less symmetry.
"""

from orbiconf import (automorphism_group, dual, find_isomorphism, from_mod_notation, levi,
                      orbits, params, subgroups, validate)
from orbiconf.incidence import IncidenceStructure
from orbiconf.library import fano, mod14, pappus


def main():
    f = fano()
    print("Fano plane:", f.params)
    for line in f.lines:
        print("   line", sorted(line))

    aut = automorphism_group(f)
    print("automorphisms:", aut.order)
    g = levi(f)
    print("Levi graph:", g.point_node_count + g.line_node_count, "vertices,", g.edge_count, "edges")

    m = mod14()
    g = automorphism_group(m)
    print("\n{1,2,4} mod 14:", m.params, "with", g.order, "automorphisms")
    print("a generator:", g.cyclic_generator())
    print("point orbits under its order-7 subgroup:")
    c7 = next(h for h in subgroups(g) if h.order == 7)
    print("   ", orbits(c7, m).blocks)

    # Self-duality is an isomorphism question.
    print("\nPappus is self-dual:", find_isomorphism(pappus(), dual(pappus())) is not None)

    # Something that fails the axioms, and why.
    broken = IncidenceStructure(6, (frozenset({1, 2, 3}), frozenset({1, 2, 4}),
                                    frozenset({4, 5, 6})))
    report = validate(broken)
    p, q, j1, j2 = report.pair_witness
    print(f"\nbroken structure: points {p} and {q} lie on lines {j1} and {j2};",
          "point degrees", report.point_degrees)
    # A base line works when its differences are all distinct.
    for base in ((1, 2, 4), (1, 2, 3)):
        print(f"{set(base)} mod 7 is a configuration:",
              validate(from_mod_notation(base, 7)).ok)


if __name__ == "__main__":
    main()
