"""
Checking contraction and expansion consistency
==============================================

A quasi-choice may select nothing from a menu.  Axiom alpha says a chosen
item stays chosen in every submenu; Axiom gamma says an item chosen from two
menus is chosen from their union.
"""

from quasichoice import check_alpha, check_gamma, classify, fixture

# a movie night: two children's rankings, pick whatever is best for someone
c = fixture("watson")
g = c.grand
for a in g.menus():
    print(f"{g.format_menu(a):>9} -> {g.format_menu(c[a])}")

print("alpha:", check_alpha(c))
print("gamma:", check_gamma(c))
cls = classify(c)
print(cls.kind.name, [(g.names[q], g.names[p]) for q, p in cls.relation.edges()])

# z kept from the grand menu but dropped from {x,z}
bad = fixture("nonliberal")
print(check_alpha(bad).describe(bad.grand))
