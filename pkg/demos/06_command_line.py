"""The same questions asked through the command-line front end.

Bundled example files (fano.cfg, mod14.cfg, square.cfg, half_triangle.orbi
and friends) are found by name when no such file exists locally.
"""

from orbiconf.cli import main as orbiconf

RUNS = [
    ["aut", "fano.cfg"],
    ["prime", "mod14.cfg", "--method", "both"],
    ["--machine", "lift", "mod14.cfg", "fano.cfg", "mod14_fano.map", "--all"],
    ["quotient", "square.cfg", "rot180.grp"],
    ["common-cover", "square.cfg", "hexagon.cfg"],
    ["goodbad", "half_triangle.orbi"],
]


def main():
    for argv in RUNS:
        print("$ orbiconf", " ".join(argv))
        code = orbiconf(argv)
        print(f"(exit {code})\n")


if __name__ == "__main__":
    main()
