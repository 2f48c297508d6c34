"""Deciding whether a configuration covers anything smaller.

A configuration is prime when it covers nothing but itself.  Two methods
are run side by side.  The regular one looks for a semiregular group of
automorphisms whose quotient is again a configuration.  The general one
searches point partitions directly.  Both must agree, and a cheap test on
the number of lines settles many cases without any search.
"""

from orbiconf import admissible_orders, is_prime
from orbiconf.covering import polygon
from orbiconf.library import desargues, fano, mod14, mod21


def show(name, config):
    orders = admissible_orders(config)
    print(f"{name} {config.params}: admissible orders {orders.orders}"
          + (" (fast path)" if orders.fast_path else ""))
    for method, verdict in is_prime(config).items():
        line = f"   {method:8s} {verdict.status}"
        if verdict.reason:
            line += f" [{verdict.reason}]"
        if verdict.covering is not None:
            line += f" covers {verdict.covering.base.params} with degree {verdict.covering.degree}"
        print(line)


def main():
    for name, config in [("fano", fano()), ("mod14", mod14()), ("mod21", mod21()),
                         ("desargues", desargues()), ("9-gon", polygon(9)),
                         ("7-gon", polygon(7))]:
        show(name, config)

    print("\nwith a tiny budget the general search gives up honestly:")
    v = is_prime(mod14(), "general", budget=5)["general"]
    print("   ", v.status, v.reason)


if __name__ == "__main__":
    main()
