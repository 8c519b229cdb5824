"""Example for using bwcousins."""
import logging

from bwcousins.barneswall import build_bw
from bwcousins.cousins import mc1, verify_cousin
from bwcousins.lattice_core import decompose

logging.basicConfig(level=logging.DEBUG)

# Barnes-Wall lattice of rank 32.
BW5 = build_bw(5)
print(BW5.lattice.rank, BW5.lattice.det)

# E8 shows up as the negative first cousin of BW_5.
E8 = mc1(5, 1, "-").lattice
print(E8.rank, E8.det, E8.parity)

# The positive cousin splits into three copies of E8.
print(decompose(mc1(5, 1, "+").lattice).ranks)

REPORT = verify_cousin(5, 2, "-")
print("\n".join(REPORT.summary_lines()))
