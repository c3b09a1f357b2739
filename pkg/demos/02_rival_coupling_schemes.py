"""Two rival coupling schemes for the same four spins.

The like-pairs scheme couples the electrons together and the positrons
together; the positronium-pairs scheme couples each electron with a
positron first.  Both span the same space, but the magnetic moment looks
completely different in the two labeled bases: diagonal elements appear in
the first scheme and vanish identically in the second.
"""

import numpy as np

from spinzeeman import (
    CouplingTree,
    SpinSystem,
    couple,
    m_sector,
    moment_matrix,
    scheme_overlap,
)


def show(title, labels, matrix):
    print(title)
    width = max(len(lab) for lab in labels)
    for lab, row in zip(labels, np.asarray(matrix)):
        cells = "  ".join(f"{v.real:+.4f}" for v in row)
        print(f"  {lab:<{width}}  {cells}")
    print()


system = SpinSystem.dipositronium()
like = couple(system, CouplingTree.like_pairs(system))
pos = couple(system, CouplingTree.positronium_pairs(system))

sector_like = m_sector(like, 1.0)
show("M=1 transform, like-pairs (columns: " +
     " ".join(sector_like.column_labels) + ")",
     sector_like.row_labels, sector_like.matrix)

sector_pos = m_sector(pos, 1.0)
show("M=1 transform, positronium-pairs",
     sector_pos.row_labels, sector_pos.matrix)

show("M=1 moment matrix, like-pairs (units of mu0)",
     sector_like.row_labels, moment_matrix(sector_like).entries)

show("M=1 moment matrix, positronium-pairs (units of mu0)",
     sector_pos.row_labels, moment_matrix(sector_pos).entries)

# The two bases are unitarily related sector by sector; mixing only occurs
# between states sharing (S, M).
overlap = scheme_overlap(like, pos)
dev = np.max(np.abs(overlap @ overlap.conj().T - np.eye(16)))
print(f"overlap unitarity deviation: {dev:.2e}")
i = [s.label for s in like].index("|1,1[1,0]⟩")
j = [s.label for s in pos].index("|1,1(1,0)⟩")
print(f"|<1,1(1,0)|1,1[1,0]>| = {abs(overlap[i, j]):.3f}")
