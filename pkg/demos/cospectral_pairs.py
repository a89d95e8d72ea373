"""Strong cospectrality: the entry ticket to perfect state transfer.

Two vertices are strongly cospectral when every eigenprojector sends one to
plus or minus the other. The sign partition that records which eigenvalues
flip is exactly what the transfer tests consume downstream.

Run: python3 demos/cospectral_pairs.py
"""

from qwjoin import (
    decompose,
    family,
    graph_matrix,
    join,
    join_strong_cospectral,
    strong_cospectral,
)


def rounded(values):
    return [round(v, 9) + 0.0 for v in values]


def main():
    # antipodal vertices of an even cycle are the classic example
    c6 = family("C", 6)
    partition = strong_cospectral(decompose(graph_matrix(c6, "laplacian")), 0, 3)
    print("C6 antipodal pair:")
    print(f"  same sign: {rounded(partition.plus)}")
    print(f"  flipping : {rounded(partition.minus)}")

    # adjacent vertices of the cycle are not strongly cospectral
    print("C6 adjacent pair:", strong_cospectral(decompose(graph_matrix(c6, "laplacian")), 0, 1))

    # for joins, the partition comes from the part spectrum alone
    cone = join_strong_cospectral(family("O", 2), family("O", 6), 0, 1)
    print("double cone apex pair:")
    print(f"  same sign: {rounded(cone.plus)}")
    print(f"  flipping : {rounded(cone.minus)}")

    # a collision between the shifted part support and the shared values
    # destroys the property; the analysis reports that as None
    print(
        "K2 v O3 edge pair:",
        join_strong_cospectral(family("K", 2), family("O", 3), 0, 1),
    )

    # cross pairs (one vertex per part) only work in the single-edge join
    single = join_strong_cospectral(family("O", 1), family("O", 1), 0, 1)
    print("single-edge cross pair:")
    print(f"  same sign: {rounded(single.plus)}")
    print(f"  flipping : {rounded(single.minus)}")
    bigger = join(family("K", 2), family("K", 2))
    print(
        "K2 v K2 cross pair:",
        join_strong_cospectral(family("K", 2), family("K", 2), 0, 2),
        f"(order {bigger.order} join)",
    )


if __name__ == "__main__":
    main()
