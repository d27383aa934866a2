"""
How fast the liberal number can grow
====================================

The worst case over n items is a middle binomial coefficient, roughly
2^n / sqrt(n) times a constant near 0.399.
"""

import numpy as np

from quasichoice.solvers import asymptotic_ratio

ns = np.arange(10, 65)
ratios = np.array([asymptotic_ratio(int(n)) for n in ns])
print(np.round(ratios[::6], 4))
print("limit", np.sqrt(2 / np.pi) / 2)
