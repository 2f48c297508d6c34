"""Does a configuration cover a smaller one?

Two procedures are offered.  :func:`is_prime_regular` looks only at
coverings by group quotients: semiregular subgroups of the automorphism
group whose orbit space is again a configuration.  :func:`is_prime_general`
searches all partitions of the points into equal fibers, so it also sees
coverings that do not come from a group.

Both require the covered configuration to have at least three points and
the same ``s`` and ``t`` as the cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .covering import CoveringMap, verify_covering
from .errors import BudgetExceeded, ConfigurationError
from .groups import (DEFAULT_NODE_BUDGET, PermutationGroup, automorphism_group,
                     is_semiregular, orbit_divisibility_filter, orbits, subgroups)
from .incidence import Configuration, IncidenceStructure
from .orbi import quotient, quotient_configuration

PRIME = "prime"
NOT_PRIME = "not_prime"
INCONCLUSIVE = "inconclusive"


def _is_prime_number(k: int) -> bool:
    return k >= 2 and all(k % d for d in range(2, int(k**0.5) + 1))


@dataclass
class PrimalityVerdict:
    status: str
    method: str
    reason: str | None = None
    covering: CoveringMap | None = None
    group: PermutationGroup | None = None
    audit: dict = field(default_factory=dict)

    @property
    def decided(self) -> bool:
        return self.status != INCONCLUSIVE

    def as_dict(self) -> dict:
        out = {"status": self.status, "method": self.method}
        if self.reason:
            out["reason"] = self.reason
        if self.covering is not None:
            out["degree"] = self.covering.degree
            out["base"] = str(self.covering.base.params)
        out.update(self.audit)
        return out


@dataclass
class AdmissibleOrders:
    """Candidate orders of a semiregular group with a configuration quotient.

    ``rejected`` maps each excluded divisor to the filters it failed.
    """

    orders: list[int]
    rejected: dict[int, list[str]]
    fast_path: bool = False

    def __iter__(self):
        return iter(self.orders)

    def __bool__(self):
        return bool(self.orders)


def admissible_orders(config: Configuration, aut: PermutationGroup | None = None,
                      *, budget: int | None = DEFAULT_NODE_BUDGET) -> AdmissibleOrders:
    """Orders ``g >= 2`` surviving the arithmetic and orbit filters.

    A quotient by a semiregular group of order ``g`` has ``n/g`` points and
    ``m/g`` lines with the same ``s`` and ``t``, so ``g`` must divide both,
    leave at least three points, and respect the parameter bounds.  A group
    of order ``g`` can only act freely on an automorphism orbit whose size
    is divisible by ``g``; the weaker test that the size shares a factor
    with ``g`` is reported separately.
    """
    n, m, s, t = config.n, config.m, config.s, config.t
    if _is_prime_number(n) or _is_prime_number(m):
        return AdmissibleOrders([], {}, fast_path=True)
    rejected: dict[int, list[str]] = {}
    survivors = []
    for g in range(2, n + 1):
        if n % g:
            continue
        reasons = []
        if m % g:
            reasons.append("divides_m")
        else:
            if n // g < s * (t - 1) + 1:
                reasons.append("point_bound")
            if m // g < t * (s - 1) + 1:
                reasons.append("line_bound")
        if 3 * g > n:
            reasons.append("at_least_three_points")
        if reasons:
            rejected[g] = reasons
        else:
            survivors.append(g)
    if survivors:
        if aut is None:
            aut = automorphism_group(config, budget=budget)
        parts = [orbits(aut, config, "points"), orbits(aut, config, "lines")]
        for g in list(survivors):
            reasons = []
            if not orbit_divisibility_filter(parts, g):
                reasons.append("orbit_factor")
            if any(k % g for part in parts for k in part.sizes):
                reasons.append("orbit_divisible")
            if reasons:
                rejected[g] = reasons
                survivors.remove(g)
    return AdmissibleOrders(survivors, dict(sorted(rejected.items())))


def is_prime_regular(config: Configuration, *, budget: int | None = DEFAULT_NODE_BUDGET,
                     max_subgroups: int | None = 100_000) -> PrimalityVerdict:
    """Decide primality with respect to coverings by group quotients.

    A ``prime`` verdict from this procedure (other than the fast path)
    speaks only about regular coverings; ``audit["scope"]`` says so.
    """
    method = "regular"
    if _is_prime_number(config.n) or _is_prime_number(config.m):
        return PrimalityVerdict(PRIME, method, "order_fast_path")
    try:
        aut = automorphism_group(config, budget=budget)
        orders = admissible_orders(config, aut)
    except BudgetExceeded as exc:
        return PrimalityVerdict(INCONCLUSIVE, method, "budget", audit={"detail": str(exc)})
    audit = {"aut_order": aut.order, "orders": list(orders.orders)}
    if not orders:
        return PrimalityVerdict(PRIME, method, "filter_exhaustion", audit=audit)
    lattice = subgroups(aut, max(orders.orders), max_subgroups=max_subgroups)
    examined = 0
    for h in lattice:
        if h.order not in orders.orders or not is_semiregular(h, config):
            continue
        examined += 1
        found = quotient_configuration(quotient(config, h), config)
        if found is not None:
            audit["semiregular_examined"] = examined
            return PrimalityVerdict(NOT_PRIME, method, "regular_cover", found[1], h, audit)
    audit["semiregular_examined"] = examined
    if not lattice.complete:
        return PrimalityVerdict(INCONCLUSIVE, method, "budget", audit=audit)
    audit["scope"] = "regular covers"
    return PrimalityVerdict(PRIME, method, "full_search_exhaustion", audit=audit)


def fiber_sizes(config: Configuration) -> list[int]:
    """Fiber sizes ``k`` for which a covering onto an (n/k, m/k, s, t) base is arithmetically possible."""
    n, m, s, t = config.n, config.m, config.s, config.t
    return [k for k in range(2, n + 1)
            if n % k == 0 and m % k == 0 and n // k >= 3
            and n // k >= s * (t - 1) + 1 and m // k >= t * (s - 1) + 1]


def _partition_search(config: Configuration, k: int, budget: int | None, spent: int):
    """First fiber partition (lexicographic) inducing a covering, or ``None``."""
    n, s, t = config.n, config.s, config.t
    nb = n // k
    structure = config.structure
    lines = [sorted(line) for line in structure.lines]
    through = structure.lines_through
    join = structure.joining_line
    label = [0] * (n + 1)
    fibers: list[list[int]] = []
    # For a pair of fibers, every cover line meeting both must have the same image.
    pair_labels: dict[tuple[int, int], set[int]] = {}
    pair_stack: list[tuple[tuple[int, int], set[int] | None]] = []
    nodes = spent

    def line_labels(j):
        return {label[p] for p in lines[j - 1] if label[p]}

    def consistent(p: int) -> bool:
        for j in through[p]:
            labs = line_labels(j)
            lab_p = label[p]
            for lab in labs:
                if lab == lab_p:
                    continue
                key = (min(lab, lab_p), max(lab, lab_p))
                current = pair_labels.get(key)
                merged = labs if current is None else current | labs
                if len(merged) > t:
                    return False
                pair_stack.append((key, current))
                pair_labels[key] = set(merged)
        # Lines through one fiber must reach at most s distinct images.
        fiber = fibers[label[p] - 1]
        images = set()
        for q in fiber:
            for j in through[q]:
                labs = line_labels(j)
                if len(labs) == t:
                    images.add(frozenset(labs))
        return len(images) <= s

    def undo(mark: int):
        while len(pair_stack) > mark:
            key, old = pair_stack.pop()
            if old is None:
                pair_labels.pop(key, None)
            else:
                pair_labels[key] = old

    def place(p: int, fib: int) -> bool:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded("partition search", budget, nodes)
        if any(label[q] == fib for q in fibers[fib - 1] if (p, q) in join):
            return False
        label[p] = fib
        fibers[fib - 1].append(p)
        mark = len(pair_stack)
        if consistent(p) and extend(p + 1):
            return True
        undo(mark)
        fibers[fib - 1].pop()
        label[p] = 0
        return False

    result: list = []

    def leaf() -> bool:
        base_lines = tuple(dict.fromkeys(frozenset(label[p] for p in line) for line in lines))
        try:
            base = Configuration(IncidenceStructure(nb, base_lines))
        except ConfigurationError:
            return False
        if (base.s, base.t) != (s, t):
            return False
        result.append(verify_covering(config, base, label[1:]))
        return True

    def extend(p: int) -> bool:
        if p > n:
            return leaf()
        for fib in range(1, len(fibers) + 1):
            if len(fibers[fib - 1]) < k and place(p, fib):
                return True
        if len(fibers) < nb:
            fibers.append([])
            if place(p, len(fibers)):
                return True
            fibers.pop()
        return False

    extend(1)
    return (result[0] if result else None), nodes


def is_prime_general(config: Configuration, budget: int | None = 10**7) -> PrimalityVerdict:
    """Decide primality over all coverings by exhaustive fiber-partition search.

    Fibers must be independent (no two collinear points share a fiber).  A
    partition induces a covering when the images of the lines form a
    configuration with the same ``s`` and ``t``; partial assignments are
    pruned when two lines through the same pair of fibers cannot share an
    image line, or a fiber already meets more than ``s`` image lines.
    """
    method = "general"
    if _is_prime_number(config.n) or _is_prime_number(config.m):
        return PrimalityVerdict(PRIME, method, "order_fast_path")
    sizes = fiber_sizes(config)
    audit: dict = {"fiber_sizes": sizes}
    if not sizes:
        return PrimalityVerdict(PRIME, method, "filter_exhaustion", audit=audit)
    nodes = 0
    for done, k in enumerate(sizes):
        try:
            found, nodes = _partition_search(config, k, budget, nodes)
        except BudgetExceeded as exc:
            audit.update(explored_fiber_sizes=sizes[:done], nodes=exc.explored,
                         explored_fraction=f"{done}/{len(sizes)}")
            return PrimalityVerdict(INCONCLUSIVE, method, "budget", audit=audit)
        if found is not None:
            audit["nodes"] = nodes
            return PrimalityVerdict(NOT_PRIME, method, "cover_found", found, audit=audit)
    audit["nodes"] = nodes
    return PrimalityVerdict(PRIME, method, "full_search_exhaustion", audit=audit)


def is_prime(config: Configuration, method: str = "both", *,
             budget: int | None = 10**7) -> dict[str, PrimalityVerdict]:
    """Run one or both procedures; returns verdicts keyed by method."""
    if method not in ("regular", "general", "both"):
        raise ValueError(f"unknown method {method!r}")
    out = {}
    if method in ("regular", "both"):
        out["regular"] = is_prime_regular(config, budget=budget)
    if method in ("general", "both"):
        out["general"] = is_prime_general(config, budget=budget)
    return out
