"""A first continuous-time walk: build a graph, watch the amplitudes move.

Run: python3 demos/walk_basics.py
"""

import numpy as np

from qwjoin import decompose, family, graph_matrix, transition_matrix


def main():
    path = family("P", 3)
    print(f"path on 3 vertices, edges {sorted(path.edges)}")

    decomp = decompose(graph_matrix(path, "adjacency"))
    print(f"adjacency eigenvalues: {np.round(decomp.eigenvalues, 6)}")

    # the walk is exp(itA); the decomposition makes every time cheap
    for t in (0.0, np.pi / 4, np.pi / np.sqrt(2)):
        u = transition_matrix(decomp, t)
        amp = u[0, 2]
        print(f"t = {t:.6f}  |U[0,2]| = {abs(amp):.6f}")

    # unitarity holds at every time, so probabilities are conserved
    t = 1.7
    u = transition_matrix(decomp, t)
    print("unitary check:", np.allclose(u @ u.conj().T, np.eye(3)))

    # the end-to-end entry reaches magnitude 1 at t = pi / sqrt(2):
    # perfect state transfer, the package's main subject
    u = transition_matrix(decomp, np.pi / np.sqrt(2))
    print(f"transfer magnitude at pi/sqrt(2): {abs(u[0, 2]):.12f}")


if __name__ == "__main__":
    main()
