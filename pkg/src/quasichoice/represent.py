"""Verification and synthesis of s-majoritarian ballot families."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import math

import numpy as np

from .axioms import check_alpha
from .core import (AlphaViolated, Ballot, BallotFamily, GrandSetMismatch,
                   QuasiChoice, Relation, SizeExceeded, as_share,
                   ballot_from_voter, replicate)

DEFAULT_SIZE_CEILING = 10**6


@dataclass(frozen=True)
class VerifyOutcome:
    """Result of :func:`verify`.  Truthy iff the family represents the choice.

    A counterexample names the first ``(menu, item)`` pair (by menu index,
    then item) where the strict share test ``count * den > num * k``
    disagrees with membership in ``c(menu)``.
    """

    verified: bool
    menu: int | None = None
    item: int | None = None
    count: int | None = None
    k: int | None = None
    direction: str | None = None  # "should_be_chosen" or "should_be_rejected"

    def __bool__(self):
        return self.verified


def endorsement_counts(family: BallotFamily) -> np.ndarray:
    """``counts[x, A]`` = number of ballots selecting item ``x`` from menu ``A``."""
    n = family.grand.n
    counts = np.zeros((n, family.grand.size), dtype=np.int64)
    for b, mult in family.distinct():
        for x in range(n):
            counts[x] += ((b.table >> x) & 1) * mult
    return counts


def majority_choice(family: BallotFamily, s) -> QuasiChoice:
    """The quasi-choice selecting exactly the items endorsed by a share above ``s``."""
    s = as_share(s)
    k = len(family)
    counts = endorsement_counts(family)
    table = np.zeros(family.grand.size, dtype=np.int64)
    for x in range(family.grand.n):
        table |= (counts[x] * s.denominator > s.numerator * k).astype(np.int64) << x
    # counts are zero outside the menu, so contractiveness is automatic
    return QuasiChoice(family.grand, table)


def verify(c: QuasiChoice, family: BallotFamily, s) -> VerifyOutcome:
    """Check that ``family`` is an ``s``-majoritarian representation of ``c``.

    For every menu ``A`` and ``x`` in ``A``: ``x in c(A)`` iff the number of
    ballots selecting ``x`` from ``A`` exceeds ``s * k``.  Integer arithmetic only.
    """
    if c.grand != family.grand:
        raise GrandSetMismatch("choice and family live on different grand sets")
    s = as_share(s)
    k = len(family)
    counts = endorsement_counts(family)
    menus = np.arange(c.grand.size, dtype=np.int64)
    first = None
    for x in range(c.n):
        in_menu = ((menus >> x) & 1).astype(bool)
        chosen = ((c.table >> x) & 1).astype(bool)
        endorsed = counts[x] * s.denominator > s.numerator * k
        bad = in_menu & (chosen != endorsed)
        if bad.any():
            a = int(np.argmax(bad))
            if first is None or (a, x) < first:
                first = (a, x)
    if first is None:
        return VerifyOutcome(True)
    a, x = first
    direction = "should_be_chosen" if c[a] >> x & 1 else "should_be_rejected"
    return VerifyOutcome(False, a, x, int(counts[x, a]), k, direction)


# ---------------------------------------------------------------------------
# liberal synthesis

def maximal_acceptance_menus(c: QuasiChoice) -> list[list[int]]:
    """For each item, the inclusion-maximal menus from which it is chosen,
    in increasing menu order."""
    n, size = c.n, c.grand.size
    menus = np.arange(size, dtype=np.int64)
    out = []
    for p in range(n):
        accepted = ((c.table >> p) & 1).astype(bool)
        # up[A]: some accepted menu contains A (superset closure)
        up = accepted.copy()
        for q in range(n):
            lo = menus[((menus >> q) & 1) == 0]
            up[lo] |= up[lo | (1 << q)]
        strict = np.zeros(size, dtype=bool)
        for q in range(n):
            lo = menus[((menus >> q) & 1) == 0]
            strict[lo] |= up[lo | (1 << q)]
        out.append([int(a) for a in menus[accepted & ~strict]])
    return out


def product_ballot(c_grand, coords: list[int | None]) -> Ballot:
    """Ballot selecting ``p`` from ``B`` iff ``p in B <= coords[p]``.

    ``None`` marks an item that is never selected (a self-loop in the witness).
    """
    n = c_grand.n
    full = c_grand.full
    rows = []
    for p in range(n):
        cp = coords[p]
        rows.append(1 << p if cp is None else full & ~cp)
    return ballot_from_voter(Relation(c_grand, tuple(rows)))


def synth_liberal(c: QuasiChoice) -> BallotFamily:
    """Liberal (share 0) representation of size ``max(1, max_p |A_p|)``.

    Ballot ``j`` uses the ``j``-th maximal acceptance menu of each item,
    repeating the last one when an item has fewer.
    """
    w = check_alpha(c)
    if w is not None:
        raise AlphaViolated(w)
    antichains = maximal_acceptance_menus(c)
    size = max(1, max(len(a) for a in antichains))
    members = []
    for j in range(size):
        coords = [ac[min(j, len(ac) - 1)] if ac else None for ac in antichains]
        members.append(product_ballot(c.grand, coords))
    return BallotFamily(members, c.grand)


def dem_from_lib(family: BallotFamily) -> BallotFamily:
    """Democratic family from a liberal one: append as many neutral ballots."""
    neutral = Ballot.neutral(family.grand)
    return BallotFamily(family.members + (neutral,) * len(family), family.grand)


def intersect_ballots(ballots) -> Ballot:
    """Pointwise intersection; the union of the voters rationalizes it."""
    ballots = list(ballots)
    rel = ballots[0].witness
    for b in ballots[1:]:
        rel = rel.union(b.witness)
    return ballot_from_voter(rel)


def lib_from_dem(family: BallotFamily) -> BallotFamily:
    """Liberal family from a democratic one: one ballot per strict majority
    of members, selecting what every member of that majority selects."""
    k = len(family)
    members = []
    for j in range(k // 2 + 1, k + 1):
        for idx in combinations(range(k), j):
            members.append(intersect_ballots(family[i] for i in idx))
    return BallotFamily(members, family.grand)


# ---------------------------------------------------------------------------
# arbitrary share

@dataclass(frozen=True)
class SynthesisTrace:
    base_size: int
    m: int
    t: Fraction
    neutral_added: int
    hypercritical_added: int
    replication_factor: int
    size: int


def step2_share(m: int, base_size: int) -> Fraction:
    return Fraction(m * m + m - 1, m * m + base_size * m)


def synth_majoritarian(c: QuasiChoice, s, size_ceiling: int = DEFAULT_SIZE_CEILING
                       ) -> tuple[BallotFamily, SynthesisTrace]:
    """Build an ``s``-majoritarian family for any ``c`` satisfying Axiom alpha.

    Starting from the liberal family of size ``n0``, pick the least ``m`` with
    ``t = (m^2+m-1)/(m^2+n0*m) > s``, pad with ``m^2`` neutral ballots plus
    ``m`` copies of each base ballot, then dilute with hypercritical ballots
    until the threshold drops from ``t`` to ``s``.
    """
    s = as_share(s)
    base = synth_liberal(c)
    n0 = len(base)
    if s == 0:
        return base, SynthesisTrace(n0, 0, Fraction(0), 0, 0, 1, n0)
    m = 1
    while step2_share(m, n0) <= s:
        m += 1
    t = step2_share(m, n0)
    p = m * m + m * n0
    # smallest r making p' = r * p * (t/s - 1) integral
    extra = p * (t / s - 1)
    r = extra.denominator
    hyper = int(extra * r)
    size = r * p + hyper
    if size > size_ceiling:
        raise SizeExceeded(size, size_ceiling)
    neutral = Ballot.neutral(c.grand)
    w = BallotFamily((neutral,) * (m * m) + base.members * m, c.grand)
    z = replicate(w, r).members + (Ballot.hypercritical(c.grand),) * hyper
    family = BallotFamily(z, c.grand)
    return family, SynthesisTrace(n0, m, t, m * m * r, hyper, r, size)


def union_choice(family: BallotFamily) -> QuasiChoice:
    table = np.zeros(family.grand.size, dtype=np.int64)
    for b, _ in family.distinct():
        table |= b.table
    return QuasiChoice(family.grand, table)


def relative_bounds_hold(lib: int | float, dem: int | float) -> tuple[bool, bool]:
    """``(dem <= 2 lib, lib <= 2**(dem-1))`` for finite or infinite numbers."""
    if math.isinf(lib) or math.isinf(dem):
        return (math.isinf(lib) and math.isinf(dem),) * 2
    return dem <= 2 * lib, lib <= 2 ** (dem - 1)
