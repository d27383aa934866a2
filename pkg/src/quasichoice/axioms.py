"""Contraction (alpha) and expansion (gamma) consistency, with witnesses,
and the rationalizability classification built on them."""
from __future__ import annotations

from dataclasses import dataclass
import enum

import numpy as np

from .core import (GrandSet, GrandSetTooLarge, QuasiChoice, Relation,
                   ballot_from_voter, revealed_relation)

GAMMA_SEARCH_MAX_N = 12


@dataclass(frozen=True)
class AxiomWitness:
    """A concrete violation of one axiom.

    alpha: ``item in menu_a <= menu_b``, chosen from ``menu_b`` but not ``menu_a``.
    gamma: ``item`` chosen from both menus but not from their union.
    """

    axiom: str
    menu_a: int
    menu_b: int
    item: int

    def describe(self, grand: GrandSet) -> str:
        a, b = grand.format_menu(self.menu_a), grand.format_menu(self.menu_b)
        x = grand.names[self.item]
        if self.axiom == "alpha":
            return f"{x} is chosen from {b} but not from its submenu {a}"
        union = grand.format_menu(self.menu_a | self.menu_b)
        return f"{x} is chosen from {a} and from {b} but not from {union}"


def _bit(table: np.ndarray, x: int) -> np.ndarray:
    return ((table >> x) & 1).astype(bool)


def check_alpha(c: QuasiChoice) -> AxiomWitness | None:
    """Return ``None`` if Axiom alpha holds, else the least witness.

    Only one-element contractions ``A = B - {e}`` are scanned, which suffices
    by induction on ``|B - A|``.  Witnesses are ordered by ``(A, B, item)``.
    """
    n = c.n
    t = c.table
    menus = np.arange(c.grand.size, dtype=np.int64)
    best = None
    for x in range(n):
        chosen = _bit(t, x)
        for e in range(n):
            if e == x:
                continue
            b = menus[chosen & _bit(menus, e)]
            if b.size == 0:
                continue
            a = b & ~(1 << e)
            bad = ~_bit(t[a], x)
            if bad.any():
                i = int(np.argmax(bad))
                cand = (int(a[i]), int(b[i]), x)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    return AxiomWitness("alpha", *best)


def check_gamma(c: QuasiChoice, max_n: int = GAMMA_SEARCH_MAX_N) -> AxiomWitness | None:
    """Return ``None`` if Axiom gamma holds, else the least witness.

    Per item, the family of menus choosing it must be closed under pairwise
    union.  Worst case is quadratic in ``2**n`` per item, so the search is
    refused above ``max_n`` items.
    """
    if c.n > max_n:
        raise GrandSetTooLarge(f"gamma witness search is limited to n <= {max_n}")
    t = c.table
    menus = np.arange(c.grand.size, dtype=np.int64)
    best = None
    for x in range(c.n):
        accepted = _bit(t, x)
        fam = menus[accepted]
        for i, a in enumerate(fam):
            if best is not None and int(a) > best[0]:
                break
            others = fam[i + 1:]
            bad = ~accepted[others | a]
            if bad.any():
                cand = (int(a), int(others[np.argmax(bad)]), x)
                if best is None or cand < best:
                    best = cand
                break
    if best is None:
        return None
    return AxiomWitness("gamma", *best)


def is_freely_rationalizable(c: QuasiChoice) -> bool:
    """Table-equality test: the revealed relation reproduces ``c``."""
    return ballot_from_voter(revealed_relation(c)).choice == c


class Rationality(enum.Enum):
    NOT_RATIONALIZABLE = "not rationalizable"
    FREELY = "freely rationalizable"
    ASYMMETRICALLY = "asymmetrically rationalizable"


@dataclass(frozen=True)
class RationalityClass:
    kind: Rationality
    relation: Relation | None = None
    witness: AxiomWitness | None = None

    @property
    def rationalizable(self) -> bool:
        return self.kind is not Rationality.NOT_RATIONALIZABLE


def classify(c: QuasiChoice) -> RationalityClass:
    """Classify ``c`` and return a rationalizing voter or a violated axiom.

    Above the gamma search limit a failing gamma is reported without witness.
    """
    rel = revealed_relation(c)
    if ballot_from_voter(rel).choice == c:
        n = c.n
        singletons = all(c[1 << x] == 1 << x for x in range(n))
        pairs = all(c[1 << x | 1 << y] for x in range(n) for y in range(x + 1, n))
        if singletons and pairs:
            return RationalityClass(Rationality.ASYMMETRICALLY, rel)
        return RationalityClass(Rationality.FREELY, rel)
    w = check_alpha(c)
    if w is None and c.n <= GAMMA_SEARCH_MAX_N:
        w = check_gamma(c)
    return RationalityClass(Rationality.NOT_RATIONALIZABLE, witness=w)
