"""Set-based reference implementations used only as test oracles.

They work on frozensets of item indices and share no code with the package.
"""
from fractions import Fraction
from itertools import chain, combinations


def subsets(items):
    items = list(items)
    return [frozenset(s) for s in chain.from_iterable(combinations(items, r)
                                                      for r in range(len(items) + 1))]


def to_set(menu):
    return frozenset(i for i in range(menu.bit_length()) if menu >> i & 1)


def naive_max(edges, menu_set):
    """Items of the menu not dominated by any item of the menu."""
    return frozenset(p for p in menu_set if not any((q, p) in edges for q in menu_set))


def choice_dict(c):
    return {to_set(a): to_set(c[a]) for a in range(c.grand.size)}


def naive_alpha(c):
    """Full quantifier: x in A <= B and x in c(B) imply x in c(A)."""
    d = choice_dict(c)
    for b, cb in d.items():
        for a in subsets(b):
            for x in a & cb:
                if x not in d[a]:
                    return False
    return True


def naive_gamma(c):
    d = choice_dict(c)
    for a, ca in d.items():
        for b, cb in d.items():
            for x in ca & cb:
                if x not in d[a | b]:
                    return False
    return True


def naive_verify(c, tables, share):
    """tables: list of dicts menu_set -> chosen_set; share: Fraction."""
    d = choice_dict(c)
    k = len(tables)
    for a, ca in d.items():
        for x in a:
            count = sum(1 for t in tables if x in t[a])
            if (x in ca) != (Fraction(count, k) > share):
                return False
    return True


def family_tables(family):
    return [choice_dict(b.choice) for b in family]
