"""Quotients keep track of what the group collapsed.

Dividing a configuration by a group of automorphisms gives an
orbiconfiguration: points and lines carry weights recording their
stabilizers, and a line may meet a point several times.  The counts n and
m shrink by the group order while s and t stay put, so they become
fractions in general.  When two point orbits share more than one line
orbit the quotient is only an orbi-incidence structure.
"""

from orbiconf import classify, orbi_dual, orbi_isomorphic, orbi_params, quotient, subgroups
from orbiconf import automorphism_group
from orbiconf.groups import Permutation, PermutationGroup
from orbiconf.library import fano, half_triangle, square
from orbiconf.textio import serialize_orbiconfiguration


def describe(label, structure):
    p = orbi_params(structure)
    print(f"{label}: n={p.n} m={p.m} s={p.s[0]} t={p.t[0]} ({classify(structure)})")


def main():
    ht = half_triangle()
    print(serialize_orbiconfiguration(ht, "half_triangle"))
    describe("half triangle", ht)
    print("self-dual:", orbi_isomorphic(ht, orbi_dual(ht)) is not None)

    half_turn = PermutationGroup.generate([Permutation.from_cycles("(1 3)(2 4)", 4)])
    res = quotient(square(), half_turn)
    print()
    print(serialize_orbiconfiguration(res.structure, "square_mod_half_turn"))
    describe("square / half turn", res.structure)

    print("\nquotients of the Fano plane by its small subgroups:")
    seen = set()
    for h in subgroups(automorphism_group(fano()), 8):
        res = quotient(fano(), h)
        p = orbi_params(res.structure)
        key = (h.order, p.n, classify(res.structure))
        if key in seen:
            continue
        seen.add(key)
        flags = f" flags={list(res.flags)}" if res.flags else ""
        print(f"   |G|={h.order}: n={p.n} m={p.m} {classify(res.structure)}{flags}")


if __name__ == "__main__":
    main()
