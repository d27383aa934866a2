"""
Building a family for any share
===============================

Any quasi-choice that satisfies alpha is s-majoritarian for every share s
below one.  The construction starts from a liberal family and pads it with
neutral and hypercritical ballots.
"""

from quasichoice import synth_majoritarian, verify
from quasichoice.generators import random_alpha

c = random_alpha(4, seed=3)
for s in ("0", "1/3", "1/2", "2/3", "9/10"):
    fam, trace = synth_majoritarian(c, s)
    print(f"s = {s:>4}: {len(fam):>4} ballots, m = {trace.m}, t = {trace.t}, "
          f"verified = {bool(verify(c, fam, s))}")
