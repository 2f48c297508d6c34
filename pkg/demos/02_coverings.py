"""Coverings, their translations, and which symmetries lift.

Reducing mod 7 sends the mod-14 configuration onto the Fano plane, two
points over each base point.  The swap of the two sheets is the only
non-trivial translation.  A base automorphism lifts exactly when it is
compatible with how the sheets are glued, and for this cover only the
seven rotations of the Fano plane qualify.
"""

from orbiconf import (automorphism_group, common_cover_search, covering_translations,
                      find_coverings, lift_automorphism, polygon, verify_covering)
from orbiconf.covering import residue_map
from orbiconf.groups import Permutation
from orbiconf.library import fano, hexagon, mod14, square


def main():
    cm = verify_covering(mod14(), fano(), residue_map(14, 7))
    print("degree:", cm.degree)
    print("translations:", [str(t) for t in covering_translations(cm)])

    reflection = Permutation.from_cycles("(1 4)(3 5)", 7)
    print("\nlifts of the reflection", reflection, ":", lift_automorphism(cm, reflection))
    lifting = [g for g in automorphism_group(fano()) if lift_automorphism(cm, g)]
    print(len(lifting), "of 168 base automorphisms lift:")
    for g in lifting:
        print("   ", g)

    print("\ncoverings of the square by the octagon:")
    for c in find_coverings(polygon(8), square(), limit=3):
        print("   ", c.point_map)

    cc = common_cover_search(square(), hexagon(), 24)
    print("\nsmallest common cover of square and hexagon:", cc.cover.params, f"({cc.method})")


if __name__ == "__main__":
    main()
