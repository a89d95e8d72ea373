"""Periodic walks, exact minimum periods, and how a join rescales them.

A vertex is periodic when the walk returns to it with magnitude one. The
period engine produces exact symbolic times (rational multiples of pi over
a square root), and the join analysis predicts the ratio between the part
period and the join period without diagonalizing the join.

Run: python3 demos/periods_and_ratios.py
"""

from qwjoin import (
    decompose,
    eigenvalue_support,
    family,
    graph_matrix,
    join_period_ratio,
    minimum_period,
)
from qwjoin.cli import format_time
from qwjoin.graphs import disjoint_union


def show_period(graph, label, matrix="laplacian"):
    decomp = decompose(graph_matrix(graph, matrix))
    support = eigenvalue_support(decomp, 0)
    cert = minimum_period(support, decomp, 0)
    if cert.periodic:
        print(
            f"{label}: periodic, minimum period "
            f"{format_time(cert.symbolic)} = {cert.period:.9f}"
        )
    else:
        print(f"{label}: not periodic ({cert.reason})")
    return cert


def main():
    show_period(family("K", 4), "K4 vertex")
    show_period(family("C", 6), "C6 vertex")
    show_period(family("P", 3), "P3 end vertex", matrix="adjacency")
    show_period(family("P", 4), "P4 end vertex", matrix="adjacency")

    print()
    # the ratio engine: part period to join period, with the case it used
    rr = join_period_ratio(family("K", 4), family("K", 4), 0)
    print(
        f"K4 v K4: part period {format_time(rr.period_part)}, "
        f"join period {format_time(rr.period_join)}, ratio {rr.ratio} ({rr.case})"
    )

    rr = join_period_ratio(family("K_bipartite", 3, 3), family("O", 2), 0)
    print(
        f"K33 v O2: part period {format_time(rr.period_part)}, "
        f"join period {format_time(rr.period_join)}, ratio {rr.ratio} ({rr.case})"
    )

    # a disconnected part changes the shared eigenvalue set and the case
    x = disjoint_union(family("O", 1), family("K", 2))
    rr = join_period_ratio(x, family("O", 2), 1)
    print(
        f"(O1 u K2) v O2 at an edge vertex: ratio {rr.ratio} ({rr.case})"
    )

    # adjacency joins can pick up a square-root divisor in the join period
    rr = join_period_ratio(
        family("K", 2), family("O_loops", 1, -3.0), 0, matrix="adjacency"
    )
    print(
        f"K2 v loop(-3) adjacency: part period {format_time(rr.period_part)}, "
        f"join period {format_time(rr.period_join)}, ratio {rr.ratio} ({rr.case})"
    )


if __name__ == "__main__":
    main()
