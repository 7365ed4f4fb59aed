"""Files, figures, and the command line.

Point sets round-trip through an exact text format (rationals as p/q,
quadratic irrationals as r/s*sqrt(D)); analysis reports are deterministic;
and 2-d sets render to SVG with class coloring, chain overlays or cluster
outlines.  Everything here is also reachable through the `delone` CLI.
"""

import tempfile
from pathlib import Path

from delone import (read_point_set, render_svg, square_lattice,
                    three_coset_fixture, triangular_lattice, write_point_set)

print(__doc__)
workdir = Path(tempfile.mkdtemp(prefix="delone-demo-"))

tri = triangular_lattice()
path = workdir / "triangular.ps"
write_point_set(tri, str(path))
print(f"wrote {path}:")
print(path.read_text())

again = read_point_set(str(path))
print("round-trip preserved the basis exactly:",
      again.lattice.basis == tri.lattice.basis)

svg_path = workdir / "fixture-classes.svg"
svg = render_svg(three_coset_fixture(), highlight="classes", extent=3)
svg_path.write_text(svg)
print(f"rendered {svg_path} ({len(svg)} bytes, deterministic)")

chain_path = workdir / "chain.svg"
svg = render_svg(square_lattice(), highlight="chains",
                 chain_ends=((0, 0), (3, 2)), extent=4)
chain_path.write_text(svg)
print(f"rendered {chain_path}")

print("""
equivalent CLI session:

  delone generate lattice --basis "1,0;1/2,1/2*sqrt(3)" --out tri.ps
  delone analyze tri.ps
  delone certify tri.ps --criterion regular
  delone generate shifted-rows --seq RLLRLR --out rows.ps
  delone certify rows.ps --criterion regular        # violated
  delone generate coset-union --basis "1,0;0,1" \\
         --half-vectors "0,0;1,0;0,1" --out fix.ps
  delone decompose fix.ps                           # n = 3
  delone reconstruct fix.ps --center 0,0 --rho-max 5 --compare fix.ps
  delone plot fix.ps --out fix.svg --highlight classes --extent 3
""")
