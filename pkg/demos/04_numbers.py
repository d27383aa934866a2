"""
Liberal and democratic numbers
==============================

lib(c) and dem(c) are the fewest ballots needed when one endorsement, or a
strict majority, justifies a selection.
"""

import math

from quasichoice import fixture, fixture_families, gen_cnk
from quasichoice.solvers import bounds_report, dem_number, lib_number, sperner_bound

for name in ("ex-lib2-dem3", "ex-dem-eq-lib", "ex-dem-eq-lib-xyw"):
    c = fixture(name)
    print(name, "lib =", lib_number(c), "dem =", dem_number(c))

# far apart: one dropped item in big menus
c = fixture("ex-dem5-lib10")
rep = bounds_report(c, dem_family=fixture_families("ex-dem5-lib10")["democratic"])
print("lib =", rep.lib, "dem =", rep.dem)

# the near-neutral family reaches the Sperner bound
for n in range(3, 8):
    m = n - 1
    print(n, lib_number(gen_cnk(m, m // 2 + 1)), sperner_bound(n), math.comb(m, m // 2))
