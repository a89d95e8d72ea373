"""Perfect state transfer certificates for joins, from the parts alone.

Every verdict below comes out of the closed-form analysis of the part
spectrum, then gets confirmed numerically on the joined walk before it is
returned. Negative verdicts carry a reason naming the obstruction.

Run: python3 demos/transfer_certificates.py
"""

from qwjoin import family, join_pst, pst_preserved
from qwjoin.cli import format_time


def show(label, cert):
    if cert.pst:
        print(f"{label}: transfer at {format_time(cert.time)}")
    else:
        print(f"{label}: none ({cert.reason})")


def main():
    # double cones: two apexes over an edgeless base, sensitive to the
    # base size modulo 4
    for n in (2, 4, 6, 8):
        show(f"O2 v O{n} apexes", join_pst(family("O", 2), family("O", n), 0, 1))

    print()
    # a complete graph minus one edge is the join of the missing pair
    # with the rest; the pair transfers only at orders divisible by 4
    for d in (4, 6, 8, 10):
        show(
            f"K{d} minus an edge",
            join_pst(family("O", 2), family("K", d - 2), 0, 1),
        )

    print()
    # transfer already present in a part can survive the join or drown
    for n in (2, 4):
        cert = pst_preserved(family("Q", 2), family("O", n), 0, 3)
        show(f"4-cycle antipodes under a {n}-cone", cert)

    print()
    # the adjacency walk of a single weighted edge with equal loops:
    # the smallest transfer instance of all
    cert = join_pst(
        family("O_loops", 1, 1.5), family("O_loops", 1, 1.5), 0, 1, matrix="adjacency"
    )
    show("single edge, equal loop weights", cert)


if __name__ == "__main__":
    main()
