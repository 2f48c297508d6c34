"""Command-line front end.

Exit codes: 0 success or decided, 1 invalid input, 2 inconclusive (a
search budget ran out).  ``--machine`` switches every command to a stable
``key=value`` block.  A file argument that does not exist on disk is looked
up among the bundled examples (``fano.cfg``, ``mod14.cfg``, ...).
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import textio
from .covering import (common_cover_search, covering_translations, find_coverings,
                       lift_automorphism, project_automorphism, verify_covering)
from .dot import menger_dot, to_levi_dot
from .errors import (BudgetExceeded, ConfigurationError, CoveringError, OrbiStructureError,
                     ParseError)
from .goodbad import good_search
from .groups import Permutation, automorphism_group, orbits, subgroups
from .incidence import (BOUNDS_NOTE, IDENTITY_NOTE, Configuration, dual, from_mod_notation,
                        mod_notation_line_count, validate)
from .orbi import (T_FORMULA_NOTE, classify, levi_conjecture_scan, orbi_dual, orbi_params,
                   quotient)
from .primality import INCONCLUSIVE, is_prime

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2

GRAMMAR = """\
file formats:
  configuration <name> / points <n> / line <i1> <i2> ... / mod <modulus> : <r1> <r2> ...
  orbiconfiguration <name> / point <id> a=<int> / line b=<int> d=<int> : <pid>*<c> ...
  group <name> / degree <n> / order <k> / generator (1 2)(3 4)
  cover <name> / base <name> / map <cover_pt> -> <base_pt>
"""


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n\n{GRAMMAR}")
        sys.exit(EXIT_INVALID)


def _resolve(path: str) -> str:
    p = Path(path)
    if p.exists():
        return p.read_text(encoding="utf-8")
    bundled = resources.files("orbiconf") / "data" / p.name
    if bundled.is_file():
        return bundled.read_text(encoding="utf-8")
    raise InvalidInput(f"no such file: {path}")


def _config(path: str) -> tuple[str, Configuration]:
    parsed = textio.parse_configuration(_resolve(path))
    return parsed.name, parsed.configuration()


def _orbi(path: str):
    parsed = textio.parse_orbiconfiguration(_resolve(path))
    return parsed.name, parsed.structure


def _group(path: str, degree: int):
    parsed = textio.parse_group(_resolve(path))
    if parsed.group.degree != degree:
        raise InvalidInput(f"group {parsed.name} has degree {parsed.group.degree}, expected {degree}")
    return parsed.name, parsed.group


def _covering(cover_path: str, base_path: str, map_path: str):
    cname, cover = _config(cover_path)
    bname, base = _config(base_path)
    parsed = textio.parse_covering(_resolve(map_path))
    if (parsed.cover, parsed.base) != (cname, bname):
        raise InvalidInput(f"map file is for {parsed.cover} -> {parsed.base}, "
                           f"not {cname} -> {bname}")
    return cname, bname, verify_covering(cover, base, parsed.mapping)


class Output:
    def __init__(self, machine: bool):
        self.machine = machine
        self.data: dict = {}
        self.text: list[str] = []

    def kv(self, **items):
        self.data.update(items)

    def say(self, line: str = ""):
        self.text.append(line)

    def flush(self):
        if self.machine:
            sys.stdout.write(textio.key_value_block(self.data))
        else:
            sys.stdout.write("\n".join(self.text) + ("\n" if self.text else ""))


# commands

def cmd_validate(args, out: Output) -> int:
    parsed = textio.parse_configuration(_resolve(args.file))
    report = validate(parsed.structure)
    out.kv(name=parsed.name, valid=report.ok, pair_axiom=report.pair_axiom,
           connected=report.connected, s_constant=report.s_constant,
           t_constant=report.t_constant, t_at_least_two=report.t_at_least_two)
    out.say(f"{parsed.name}: {'valid configuration' if report.ok else 'not a configuration'}")
    for label, ok in (("pair axiom", report.pair_axiom), ("connected", report.connected),
                      ("s constant", report.s_constant), ("t constant", report.t_constant),
                      ("t >= 2", report.t_at_least_two)):
        out.say(f"  {label:<12} {'yes' if ok else 'NO'}")
    for v in report.violations():
        out.say(f"  violation: {v}")
    if report.pair_witness:
        out.kv(pair_witness=report.pair_witness)
    if report.ok:
        out.kv(params=str(report.params))
        out.say(f"  params {report.params}")
        for note in report.notes:
            out.say(f"  note: {note}")
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_params(args, out: Output) -> int:
    kind = textio.detect_format(_resolve(args.file))
    if kind == "orbiconfiguration":
        name, oc = _orbi(args.file)
        p = orbi_params(oc)
        level = classify(oc)
        out.kv(name=name, kind=kind, n=p.n, m=p.m, s=list(p.s), t=list(p.t), level=str(level),
               defects=oc.defects())
        out.say(f"{name}: {level}")
        out.say(f"  n = {p.n}, m = {p.m}")
        out.say(f"  s = {', '.join(map(str, p.s))}")
        out.say(f"  t = {', '.join(map(str, p.t))}")
        for d in oc.defects():
            out.say(f"  defect: {d}")
        out.say(f"  note: {T_FORMULA_NOTE}")
        return EXIT_OK
    name, c = _config(args.file)
    out.kv(name=name, kind="configuration", n=c.n, m=c.m, s=c.s, t=c.t)
    out.say(f"{name}: {c.params}  n={c.n} m={c.m} s={c.s} t={c.t}")
    out.say(f"  n*s = m*t = {c.n * c.s}")
    out.say(f"  note: {IDENTITY_NOTE}; {BOUNDS_NOTE}")
    return EXIT_OK


def cmd_aut(args, out: Output) -> int:
    name, c = _config(args.file)
    group = automorphism_group(c, budget=args.budget)
    gen = group.cyclic_generator()
    out.kv(name=name, order=group.order, cyclic=gen is not None,
           generators=[str(g) for g in group.generators])
    out.say(f"|Aut({name})| = {group.order}" + (f", cyclic, generated by {gen}" if gen else ""))
    for g in group.generators:
        out.say(f"  generator {g}")
    return EXIT_OK


def cmd_orbits(args, out: Output) -> int:
    name, c = _config(args.file)
    group = _group(args.group, c.n)[1] if args.group else automorphism_group(c, budget=args.budget)
    pts, lns = orbits(group, c, "points"), orbits(group, c, "lines")
    out.kv(name=name, group_order=group.order, point_orbit_sizes=list(pts.sizes),
           line_orbit_sizes=list(lns.sizes), point_transitive=pts.transitive,
           line_transitive=lns.transitive)
    out.say(f"{name} under a group of order {group.order}")
    for label, part in (("point", pts), ("line", lns)):
        out.say(f"  {label} orbits: " + " ".join("{" + " ".join(map(str, b)) + "}" for b in part.blocks))
    return EXIT_OK


def cmd_subgroups(args, out: Output) -> int:
    name, c = _config(args.file)
    group = automorphism_group(c, budget=args.budget)
    lattice = subgroups(group, args.max_order, max_subgroups=args.max_subgroups)
    counts = {}
    for h in lattice:
        counts[h.order] = counts.get(h.order, 0) + 1
    out.kv(name=name, aut_order=group.order, complete=lattice.complete,
           count=len(lattice.groups), orders=[f"{k}:{v}" for k, v in sorted(counts.items())])
    out.say(f"subgroups of Aut({name}) (order {group.order})"
            + (f" up to order {args.max_order}" if args.max_order else ""))
    for k, v in sorted(counts.items()):
        out.say(f"  order {k:>4}: {v}")
    if not lattice.complete:
        out.say("  incomplete: subgroup limit reached")
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _write(text: str, dest: str | None, out: Output, key: str):
    if dest:
        Path(dest).write_text(text, encoding="utf-8")
        out.kv(**{key: dest})
        out.say(f"wrote {dest}")
    else:
        out.kv(**{key: text.replace("\n", "; ").rstrip("; ")})
        out.say(text.rstrip("\n"))


def cmd_dual(args, out: Output) -> int:
    kind = textio.detect_format(_resolve(args.file))
    if kind == "orbiconfiguration":
        name, oc = _orbi(args.file)
        text = textio.serialize_orbiconfiguration(orbi_dual(oc).canonical(), f"{name}_dual")
    else:
        name, c = _config(args.file)
        text = textio.serialize_configuration(dual(c), f"{name}_dual")
    _write(text, args.output, out, "dual")
    return EXIT_OK


def _levi_or_menger(args, out: Output, menger: bool) -> int:
    kind = textio.detect_format(_resolve(args.file))
    if kind == "orbiconfiguration":
        name, obj = _orbi(args.file)
    else:
        parsed = textio.parse_configuration(_resolve(args.file))
        name, obj = parsed.name, parsed.structure
    text = menger_dot(obj, name) if menger else to_levi_dot(obj, name)
    _write(text, args.output, out, "dot")
    return EXIT_OK


def cmd_levi(args, out):
    return _levi_or_menger(args, out, menger=False)


def cmd_menger(args, out):
    out.say("# display only: the Menger graph does not determine the structure")
    return _levi_or_menger(args, out, menger=True)


def cmd_cover(args, out: Output) -> int:
    if args.action == "verify":
        if not args.map:
            raise InvalidInput("cover verify needs a map file")
        cname, bname, cm = _covering(args.cover, args.base, args.map)
        out.kv(ok=True, cover=cname, base=bname, degree=cm.degree,
               surjective_on_lines=cm.surjective_on_lines, uniform_line_fibers=cm.uniform_line_fibers)
        out.say(f"{cname} -> {bname}: covering of degree {cm.degree}, ok")
        out.say(f"  line fibers uniform: {cm.uniform_line_fibers}")
        return EXIT_OK
    cname, cover = _config(args.cover)
    bname, base = _config(args.base)
    found = find_coverings(cover, base, args.limit, budget=args.budget)
    out.kv(cover=cname, base=bname, found=len(found), complete=args.limit is None or len(found) < args.limit)
    out.say(f"{len(found)} covering(s) {cname} -> {bname}")
    if found:
        text = textio.serialize_covering(found[0], cname, bname)
        if args.output:
            _write(text, args.output, out, "witness")
        else:
            out.say("first in lexicographic order:")
            out.say(text.rstrip("\n"))
    return EXIT_OK


def cmd_lift(args, out: Output) -> int:
    cname, bname, cm = _covering(args.cover, args.base, args.map)
    if args.all:
        base_aut = automorphism_group(cm.base, budget=args.budget)
        lifting = [g for g in base_aut if lift_automorphism(cm, g)]
        out.kv(base_aut_order=base_aut.order, lifting=len(lifting))
        out.say(f"{len(lifting)} of {base_aut.order} automorphisms of {bname} lift to {cname}")
        for g in lifting:
            out.say(f"  {g}")
        return EXIT_OK
    if not args.perm:
        raise InvalidInput("give --perm '<cycles>' or --all")
    g = Permutation.from_cycles(args.perm, cm.base.n)
    lifts = lift_automorphism(cm, g)
    out.kv(perm=str(g), lifts=len(lifts), images=[str(f) for f in lifts])
    out.say(f"{g} has {len(lifts)} lift(s)" + (":" if lifts else ""))
    for f in lifts:
        out.say(f"  {f}")
    return EXIT_OK


def cmd_project(args, out: Output) -> int:
    cname, bname, cm = _covering(args.cover, args.base, args.map)
    f = Permutation.from_cycles(args.perm, cm.cover.n)
    g = project_automorphism(cm, f)
    translations = covering_translations(cm)
    out.kv(perm=str(f), projects=g is not None, image=str(g) if g else "",
           commutes_with_translations=all(f * h == h * f for h in translations.generators))
    out.say(f"{f} projects to {g}" if g else f"{f} does not project")
    return EXIT_OK


def cmd_common_cover(args, out: Output) -> int:
    n1, c1 = _config(args.first)
    n2, c2 = _config(args.second)
    res = common_cover_search(c1, c2, args.max_points, use_closed_form=not args.search_only,
                              budget=args.budget)
    out.kv(status=res.status, method=res.method)
    if res.cover is not None:
        out.kv(cover=str(res.cover.params), degree_first=res.first.degree,
               degree_second=res.second.degree)
        out.say(f"common cover {res.cover.params} by {res.method}: degree {res.first.degree} "
                f"over {n1}, degree {res.second.degree} over {n2}")
        if args.output:
            _write(textio.serialize_configuration(res.cover, "common"), args.output, out, "witness")
        return EXIT_OK
    for note in res.notes:
        out.say(f"  {note}")
    out.say(f"{res.status}")
    return EXIT_INCONCLUSIVE


def cmd_quotient(args, out: Output) -> int:
    name, c = _config(args.file)
    gname, group = _group(args.group, c.n)
    res = quotient(c, group)
    structure = res.structure
    if args.normalize:
        structure = res.normalized()
    text = textio.serialize_orbiconfiguration(structure.canonical(), f"{name}_mod_{gname}")
    p = orbi_params(structure)
    out.kv(group_order=res.group_order, level=str(classify(structure)), n=p.n, m=p.m,
           flags=res.flags)
    for flag in res.flags:
        out.say(f"# flag: {flag}")
    _write(text, args.output, out, "orbiconfiguration")
    return EXIT_OK


def cmd_prime(args, out: Output) -> int:
    name, c = _config(args.file)
    verdicts = is_prime(c, args.method, budget=args.budget)
    code = EXIT_OK
    for method, v in verdicts.items():
        prefix = "" if len(verdicts) == 1 else f"{method}."
        for k, val in v.as_dict().items():
            out.kv(**{f"{prefix}{k}": val})
        line = f"{name} [{method}]: {v.status}"
        if v.reason:
            line += f" ({v.reason})"
        if v.covering is not None:
            line += f", covers {v.covering.base.params} with degree {v.covering.degree}"
        out.say(line)
        if v.status == INCONCLUSIVE:
            code = EXIT_INCONCLUSIVE
    decided = {v.status for v in verdicts.values()} - {INCONCLUSIVE}
    status = decided.pop() if len(decided) == 1 else INCONCLUSIVE
    reason = next(iter(verdicts.values())).reason
    if len(verdicts) > 1:
        out.data = {"status": status, "reason": reason, **out.data}
    out.say(f"status={status} reason={reason}")
    if args.witness and any(v.covering for v in verdicts.values()):
        cm = next(v.covering for v in verdicts.values() if v.covering)
        base = Path(args.witness)
        base.with_suffix(".cfg").write_text(
            textio.serialize_configuration(cm.base, f"{name}_base"), encoding="utf-8")
        base.with_suffix(".map").write_text(textio.serialize_covering(cm, name, f"{name}_base"),
                                              encoding="utf-8")
        out.kv(witness=str(base.with_suffix(".map")))
    return code


def cmd_goodbad(args, out: Output) -> int:
    name, oc = _orbi(args.file)
    catalog = [_config(p)[1] for p in args.catalog]
    v = good_search(oc, args.max_degree, catalog, budget=args.budget)
    for k, val in v.as_dict().items():
        out.kv(**{k: val})
    line = f"{name}: {v.status}"
    if v.reason:
        line += f" ({v.reason})"
    out.say(line)
    if v.witness is not None:
        out.say(f"  witness {v.witness.params} with a group of order {v.group.order}: "
                + (" ".join(map(str, v.group.generators)) or "trivial"))
        if args.witness:
            stem = Path(args.witness)
            stem.with_suffix(".cfg").write_text(
                textio.serialize_configuration(v.witness, f"{name}_cover"), encoding="utf-8")
            stem.with_suffix(".grp").write_text(
                textio.serialize_group(v.group, f"{name}_group"), encoding="utf-8")
            out.kv(witness=str(stem.with_suffix(".cfg")))
    for note in v.notes:
        out.say(f"  note: {note}")
    return EXIT_INCONCLUSIVE if v.status == "inconclusive" else EXIT_OK


def cmd_conjecture_scan(args, out: Output) -> int:
    rep = levi_conjecture_scan(args.max_points, args.max_weight, args.max_st, limit=args.limit)
    out.kv(max_points=rep.max_points, max_weight=rep.max_weight, max_st=rep.max_st,
           structures=rep.structures, orbi_classes=rep.orbi_classes, levi_classes=rep.levi_classes,
           counterexample=rep.counterexample is not None, complete=rep.complete)
    out.say(f"scanned {rep.structures} structures, {rep.orbi_classes} isomorphism classes, "
            f"{rep.levi_classes} Levi graphs")
    if rep.counterexample:
        a, b = rep.counterexample
        out.say("counterexample: same Levi graph, not isomorphic")
        out.say(textio.serialize_orbiconfiguration(a, "first").rstrip())
        out.say(textio.serialize_orbiconfiguration(b, "second").rstrip())
    else:
        out.say("no counterexample within the bound")
    if not rep.complete:
        out.say("partial: structure limit reached")
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_generate(args, out: Output) -> int:
    structure = from_mod_notation(args.base, args.modulus)
    raw, kept = mod_notation_line_count(args.base, args.modulus)
    report = validate(structure)
    name = args.name or f"mod{args.modulus}"
    out.kv(raw_lines=raw, lines=kept, valid=report.ok)
    if raw != kept:
        out.say(f"# {raw - kept} duplicate line(s) removed")
    if not report.ok:
        out.say("# not a configuration: " + "; ".join(report.violations()))
    _write(textio.serialize_configuration(structure, name), args.output, out, "configuration")
    return EXIT_OK


# parser

def build_parser() -> argparse.ArgumentParser:
    # Options are accepted before or after the command; the subcommand copies
    # default to SUPPRESS so they do not overwrite a value given earlier.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", default=argparse.SUPPRESS,
                        help="key=value output")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="search node budget (default 1000000)")

    parser = _Parser(prog="orbiconf", description="Configurations, coverings and orbiconfigurations.",
                     epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--machine", action="store_true", help="key=value output")
    parser.add_argument("--budget", type=int, default=10**6, help="search node budget")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the configuration axioms").add_argument("file")
    add("params", cmd_params, "n, m, s, t of a configuration or orbiconfiguration").add_argument("file")
    add("aut", cmd_aut, "automorphism group").add_argument("file")
    p = add("orbits", cmd_orbits, "point and line orbits")
    p.add_argument("file")
    p.add_argument("--group", help="group file (default: full automorphism group)")
    p = add("subgroups", cmd_subgroups, "subgroups of the automorphism group")
    p.add_argument("file")
    p.add_argument("--max-order", type=int)
    p.add_argument("--max-subgroups", type=int, default=100_000)
    for name, func, help_ in (("dual", cmd_dual, "dual structure"),
                              ("levi", cmd_levi, "Levi graph as DOT"),
                              ("menger", cmd_menger, "Menger graph as DOT")):
        p = add(name, func, help_)
        p.add_argument("file")
        p.add_argument("-o", "--output")
    p = add("cover", cmd_cover, "verify or search coverings")
    p.add_argument("action", choices=("verify", "search"))
    p.add_argument("cover")
    p.add_argument("base")
    p.add_argument("map", nargs="?")
    p.add_argument("--limit", type=int)
    p.add_argument("-o", "--output")
    p = add("lift", cmd_lift, "lifts of a base automorphism")
    p.add_argument("cover")
    p.add_argument("base")
    p.add_argument("map")
    p.add_argument("--perm")
    p.add_argument("--all", action="store_true", help="scan every base automorphism")
    p = add("project", cmd_project, "projection of a cover automorphism")
    p.add_argument("cover")
    p.add_argument("base")
    p.add_argument("map")
    p.add_argument("--perm", required=True)
    p = add("common-cover", cmd_common_cover, "a configuration covering both inputs")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--max-points", type=int, default=60)
    p.add_argument("--search-only", action="store_true", help="skip the t=2 closed form")
    p.add_argument("-o", "--output")
    p = add("quotient", cmd_quotient, "orbit space as an orbiconfiguration")
    p.add_argument("file")
    p.add_argument("group")
    p.add_argument("--normalize", action="store_true", help="divide point weights by their gcd")
    p.add_argument("-o", "--output")
    p = add("prime", cmd_prime, "is the configuration prime?")
    p.add_argument("file")
    p.add_argument("--method", choices=("regular", "general", "both"), default="both")
    p.add_argument("--witness", help="stem for witness files (.cfg and .map)")
    p = add("goodbad", cmd_goodbad, "is the orbiconfiguration covered by a configuration?")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--catalog", nargs="*", default=[], help="extra candidate configuration files")
    p.add_argument("--witness", help="stem for witness files (.cfg and .grp)")
    p = add("conjecture-scan", cmd_conjecture_scan, "search for two orbiconfigurations with one Levi graph")
    p.add_argument("--max-points", type=int, default=3)
    p.add_argument("--max-weight", type=int, default=2)
    p.add_argument("--max-st", type=int, default=2)
    p.add_argument("--limit", type=int, default=200_000)
    p = add("generate", cmd_generate, "generate a configuration family")
    p.add_argument("family", choices=("mod",))
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--base", type=int, nargs="+", required=True)
    p.add_argument("--name")
    p.add_argument("-o", "--output")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.machine)
    try:
        code = args.func(args, out)
    except BudgetExceeded as exc:
        out.kv(status=INCONCLUSIVE, reason="budget", detail=str(exc))
        out.say(f"inconclusive: {exc}")
        code = EXIT_INCONCLUSIVE
    except (ParseError, ConfigurationError, CoveringError, OrbiStructureError, InvalidInput,
            ValueError) as exc:
        out.flush()
        sys.stderr.write(f"error: {exc}\n")
        if isinstance(exc, ParseError):
            sys.stderr.write("\n" + GRAMMAR)
        return EXIT_INVALID
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
