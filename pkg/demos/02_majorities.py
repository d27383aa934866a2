"""
Ballots and majorities
======================

Each voter is an arbitrary relation.  A menu item is endorsed by a voter when
nothing in the menu dominates it.  An item is selected when the share of
endorsing ballots is strictly above s.
"""

from quasichoice import fixture, fixture_families, majority_choice, verify

c = fixture("ex-lib2-dem3")
fams = fixture_families("ex-lib2-dem3")

# two voters suffice when one endorsement is enough
print(bool(verify(c, fams["liberal"], 0)))

# under strict majority the same pair falls short somewhere
out = verify(c, fams["liberal"], "1/2")
print(c.grand.format_menu(out.menu), c.grand.names[out.item], out.count, "of", out.k)

# adding a voter with no opinions repairs it
print(bool(verify(c, fams["democratic"], "1/2")))
print(majority_choice(fams["democratic"], "1/2") == c)
