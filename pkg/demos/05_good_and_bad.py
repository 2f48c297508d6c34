"""Which orbiconfigurations come from an actual configuration?

An orbiconfiguration is good when some configuration and group produce it
as a quotient, and bad otherwise.  With two points per line everything is
decided by the dihedral symmetry of polygons, so a closed classification
is available.  In general a bounded search either finds a witness or
reports that it ran out of room.
"""

from orbiconf import classify_n2, enumerate_n2, good_search
from orbiconf.library import fano, half_triangle
from orbiconf.orbi import OrbiIncidenceStructure, OrbiLine, quotient
from orbiconf.groups import automorphism_group, subgroups

L = OrbiLine.of


def main():
    v = classify_n2(half_triangle())
    print("half triangle:", v.status, "witness", v.witness.params, "group order", v.group.order)

    ends = OrbiIncidenceStructure((2, 1, 1, 2), (L([1, 2]), L([2, 3]), L([3, 4])))
    v = classify_n2(ends)
    print("chain with heavy ends:", v.status, "witness", v.witness.params)

    interior = OrbiIncidenceStructure(
        (1, 1, 2, 4),
        (L([1, 2]), L({1: 2}, b=2), L([2, 3], b=2), L({2: 2}, b=4), L([3, 4], b=2)))
    v = classify_n2(interior)
    print("chain with a heavy middle:", v.status, v.reason)

    structures = enumerate_n2(4, 3)
    good = sum(classify_n2(s).status == "good" for s in structures)
    print(f"\n{len(structures)} structures with at most 4 points and weights up to 3; "
          f"{good} are good")

    c7 = next(h for h in subgroups(automorphism_group(fano()), 7) if h.order == 7)
    target = quotient(fano(), c7).structure
    for degree in (6, 7):
        v = good_search(target, max_degree=degree)
        print(f"Fano / C7 searched up to degree {degree}: {v.status}")


if __name__ == "__main__":
    main()
