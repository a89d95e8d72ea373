"""Iterated joins, threshold graphs, and a small transfer search.

Alternating joins and disjoint unions build threshold-like graphs whose
vertex supports still come out of closed forms, part by part. A short
search over such chains shows how rigid the transfer condition is.

Run: python3 demos/threshold_chains.py
"""

from qwjoin import (
    iterated_join_analysis,
    iterated_join_support,
    parse_iterated_spec,
    threshold_transfer_search,
)
from qwjoin.cli import format_time
from qwjoin.transfer import SymbolicTime


def main():
    spec = parse_iterated_spec("O2 v O2 u O4 v O4")
    print(f"plan: {spec.orders} (alternating, ends with a join)")
    print(f"part 1 vertex support: {iterated_join_support(spec, 1, 0)}")

    cert = iterated_join_analysis(spec, 1, 0, 1)
    print(f"first-part pair transfer: {cert.pst} at {format_time(cert.time)}")

    # swap the head for a 4-cycle and the dyadic pattern collapses
    spec = parse_iterated_spec("C4 v O2 u O4 v O2")
    cert = iterated_join_analysis(spec, 1, 0, 2)
    print(f"with a 4-cycle head: {cert.pst} ({cert.reason})")

    print()
    print("chains of up to 4 parts, sizes up to 6, with first-pair transfer:")
    for hit in threshold_transfer_search(max_parts=4, max_size=6):
        num, den, root = hit["time"]
        when = format_time(SymbolicTime(num, den, root))
        print(f"  sizes {hit['sizes']}: transfer at {when}")


if __name__ == "__main__":
    main()
