"""Exact liberal and democratic numbers, brute-force oracles and bounds."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
import math
import time

import numpy as np

from .axioms import check_alpha, classify
from .core import (BallotFamily, GrandSetTooLarge, QuasiChoice, popcount)
from .represent import (dem_from_lib, maximal_acceptance_menus, product_ballot,
                        synth_liberal, verify)

INFINITE = math.inf


@dataclass(frozen=True)
class AcceptanceAntichain:
    item: int
    maximal_menus: tuple[int, ...]

    def __len__(self):
        return len(self.maximal_menus)


def acceptance_antichains(c: QuasiChoice) -> list[AcceptanceAntichain]:
    return [AcceptanceAntichain(p, tuple(ms))
            for p, ms in enumerate(maximal_acceptance_menus(c))]


def lib_number(c: QuasiChoice) -> int | float:
    """Smallest liberal representation size, ``inf`` iff Axiom alpha fails.

    Equals the largest acceptance antichain: the product-form family of that
    size represents ``c``, and two maximal menus of one item can never be
    served by the same ballot (gamma would put the item in their union).
    """
    if check_alpha(c) is not None:
        return INFINITE
    return max(1, max(len(a) for a in acceptance_antichains(c)))


def sperner_bound(n: int) -> int:
    """Upper bound on the liberal number over a grand set of ``n`` items."""
    return math.comb(n - 1, (n - 1) // 2)


def asymptotic_ratio(n: int) -> float:
    """``sperner_bound(n) / (2**n / sqrt(n))``, exact up to one final rounding."""
    b = sperner_bound(n)
    return math.sqrt(Fraction(b * b * n, 4 ** n))


# ---------------------------------------------------------------------------
# democratic number

@dataclass(frozen=True)
class DemLimits:
    max_n: int = 4
    timeout: float | None = None
    node_cap: int | None = None


@dataclass(frozen=True)
class DemResult:
    """``kind`` is ``"exact"``, ``"interval"`` or ``"infinite"``.

    For an exact result ``lo == hi``; ``family`` witnesses the upper end.
    """

    kind: str
    lo: int | float
    hi: int | float
    explored: int = 0
    family: BallotFamily | None = field(default=None, compare=False)

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    @property
    def value(self) -> int | float:
        if self.kind == "interval":
            raise ValueError("democratic number only known up to an interval")
        return self.lo

    def __str__(self):
        if self.kind == "infinite":
            return "∞"
        if self.kind == "exact":
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"


def menu_item_pairs(n: int) -> list[tuple[int, int]]:
    """All ``(A, x)`` with ``x`` in nonempty ``A``, by menu then item."""
    return [(a, x) for a in range(1, 1 << n) for x in range(n) if a >> x & 1]


def pair_masks(tables: np.ndarray, n: int) -> list[int]:
    """Encode each table row as a bitmask over :func:`menu_item_pairs`."""
    masks = [0] * tables.shape[0]
    for j, (a, x) in enumerate(menu_item_pairs(n)):
        for i in np.nonzero((tables[:, a] >> x) & 1)[0]:
            masks[i] |= 1 << j
    return masks


@lru_cache(maxsize=None)
def product_universe(n: int) -> tuple[np.ndarray, tuple[tuple, ...]]:
    """Every ballot on ``n`` items in product form, sorted by table bytes.

    A ballot is fixed by choosing, for each item, either "never" or one menu
    ``C`` containing it; the item is then selected from exactly the menus
    ``B`` with ``item in B <= C``.  Returns ``(tables, coords)``.
    """
    size = 1 << n
    menus = np.arange(size, dtype=np.int64)
    options = []
    for p in range(n):
        opts = [(None, np.zeros(size, dtype=np.int64))]
        for cp in range(size):
            if cp >> p & 1:
                sel = (((menus >> p) & 1) == 1) & ((menus & ~cp) == 0)
                opts.append((cp, sel.astype(np.int64) << p))
        options.append(opts)
    tables = np.zeros((1, size), dtype=np.int64)
    coords: list[tuple] = [()]
    for opts in options:
        col = np.stack([o[1] for o in opts])
        tables = (tables[:, None, :] | col[None, :, :]).reshape(-1, size)
        coords = [c + (o[0],) for c in coords for o in opts]
    order = sorted(range(len(coords)), key=lambda i: tables[i].tobytes())
    tables = tables[order]
    tables.setflags(write=False)
    return tables, tuple(coords[i] for i in order)


class _Exhausted(Exception):
    pass


class _DemSearch:
    """Depth-first search for a multiset of ``k`` ballots meeting the
    strict-majority constraints on every ``(menu, item)`` pair."""

    def __init__(self, c: QuasiChoice, deadline, node_cap):
        n = c.n
        tables, coords = product_universe(n)
        pairs = menu_item_pairs(n)
        pos = 0
        for j, (a, x) in enumerate(pairs):
            if c[a] >> x & 1:
                pos |= 1 << j
        neg = ((1 << len(pairs)) - 1) & ~pos
        self.pos, self.neg, self.npairs = pos, neg, len(pairs)
        self.deadline, self.node_cap = deadline, node_cap
        self.nodes = 0
        masks = pair_masks(tables, n)
        # one ballot per signature, then drop dominated signatures: more
        # endorsements where wanted and fewer where unwanted is never worse
        sig: dict[tuple[int, int], int] = {}
        for i, m in enumerate(masks):
            sig.setdefault((m & pos, m & neg), i)
        cands = sorted(sig.items(), key=lambda kv: (-popcount(kv[0][0]), popcount(kv[0][1]), kv[1]))
        kept: list[tuple[int, int, int]] = []
        for (p, q), i in cands:
            if not any(kp & p == p and kq & ~q == 0 for kp, kq, _ in kept):
                kept.append((p, q, i))
        kept.sort(key=lambda t: t[2])
        self.masks = [p | q for p, q, _ in kept]
        self.coords = [coords[i] for _, _, i in kept]
        self.by_pair = [[b for b, m in enumerate(self.masks) if m >> j & 1]
                        for j in range(self.npairs)]
        self.filler = next(b for b, m in enumerate(self.masks) if m & neg == 0)

    def family(self, chosen, grand) -> BallotFamily:
        return BallotFamily([product_ballot(grand, list(self.coords[b])) for b in chosen], grand)

    def solve(self, k: int):
        self.k = k
        self.T = k // 2 + 1
        self.F = k // 2
        cov = [(1 << self.npairs) - 1] + [0] * k
        return self._rec(cov, [], 0)

    def _tick(self):
        self.nodes += 1
        if self.node_cap is not None and self.nodes > self.node_cap:
            raise _Exhausted
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _Exhausted

    def _add(self, cov, m):
        new = cov[:]
        for j in range(self.k, 0, -1):
            new[j] = cov[j] | (cov[j - 1] & m)
        return new

    def _rec(self, cov, chosen, forbidden):
        self._tick()
        k, T, F = self.k, self.T, self.F
        r = k - len(chosen)
        missing = self.pos & ~cov[T]
        if not missing:
            return chosen + [self.filler] * r
        if r == 0:
            return None
        full_neg = self.neg & cov[F]
        best_list = None
        rest = missing
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            lst = [b for b in self.by_pair[j]
                   if not forbidden >> b & 1 and self.masks[b] & full_neg == 0]
            if best_list is None or len(lst) < len(best_list):
                best_list = lst
                if not lst:
                    return None
        for b in best_list:
            new = self._add(cov, self.masks[b])
            lvl = T - (r - 1)
            if lvl <= 0 or self.pos & ~new[lvl] == 0:
                got = self._rec(new, chosen + [b], forbidden)
                if got is not None:
                    return got
            forbidden |= 1 << b
        return None


def dem_number(c: QuasiChoice, limits: DemLimits = DemLimits()) -> DemResult:
    """Smallest democratic representation size by exact search.

    Sizes ``k = 1 .. 2*lib(c)`` are tried in turn; the window is valid
    because doubling a liberal family with neutral ballots is democratic.
    Running out of time or nodes yields an honest interval.
    """
    lib = lib_number(c)
    if math.isinf(lib):
        return DemResult("infinite", INFINITE, INFINITE)
    if c.n > limits.max_n:
        raise GrandSetTooLarge(
            f"democratic search is limited to n <= {limits.max_n} items, got {c.n}")
    deadline = None if limits.timeout is None else time.monotonic() + limits.timeout
    search = _DemSearch(c, deadline, limits.node_cap)
    upper = 2 * lib
    for k in range(1, upper + 1):
        try:
            found = search.solve(k)
        except _Exhausted:
            return DemResult("interval", k, upper, search.nodes, dem_from_lib(synth_liberal(c)))
        if found is not None:
            fam = search.family(sorted(found), c.grand)
            return DemResult("exact", k, k, search.nodes, fam)
    raise AssertionError("no democratic family within twice the liberal number")


# ---------------------------------------------------------------------------
# oracles

ORACLE_MAX_N = 3


@lru_cache(maxsize=None)
def relation_universe(n: int) -> np.ndarray:
    """Distinct ballot tables obtained from all ``2**(n*n)`` relations."""
    if n > ORACLE_MAX_N:
        raise GrandSetTooLarge(f"relation enumeration is limited to n <= {ORACLE_MAX_N}")
    size = 1 << n
    rel = np.arange(1 << (n * n), dtype=np.int64)
    menus = np.arange(size, dtype=np.int64)
    tables = np.zeros((rel.size, size), dtype=np.int64)
    for a in range(n):
        dom = (rel >> (a * n)) & (size - 1)
        keep = ((dom[:, None] & menus[None, :]) == 0) & (((menus >> a) & 1) == 1)[None, :]
        tables |= keep.astype(np.int64) << a
    out = np.unique(tables, axis=0)
    out.setflags(write=False)
    return out


def oracle_lib(c: QuasiChoice, kmax: int | None = None) -> int | None:
    """Least ``k`` such that ``k`` ballots below ``c`` have union ``c``, by
    exhaustive search over subsets; ``None`` if none exists up to ``kmax``."""
    universe = relation_universe(c.n)
    below = universe[np.all((universe & ~c.table) == 0, axis=1)]
    masks = pair_masks(below, c.n)
    target = pair_masks(c.table[None, :], c.n)[0]
    total = 0
    for m in masks:
        total |= m
    if total != target:
        return None
    kmax = len(masks) if kmax is None else min(kmax, len(masks))
    for k in range(1, kmax + 1):
        for combo in combinations(masks, k):
            u = 0
            for m in combo:
                u |= m
            if u == target:
                return k
    return None


def oracle_dem(c: QuasiChoice, kmax: int = 6) -> int | None:
    """Least ``k <= kmax`` admitting a democratic family, or ``None``.

    Enumerates the reachable endorsement-count vectors of all multisets of
    ``k`` ballots, packing one small counter per ``(menu, item)`` pair into an
    integer.
    """
    n = c.n
    universe = relation_universe(n)
    pairs = menu_item_pairs(n)
    width = max(1, kmax.bit_length())
    if len(pairs) * width > 62:
        raise GrandSetTooLarge("count vector does not fit in 64 bits")
    shifts = np.array([j * width for j in range(len(pairs))], dtype=np.int64)
    bits = np.stack([(universe[:, a] >> x) & 1 for a, x in pairs], axis=1)
    vecs = np.unique((bits << shifts).sum(axis=1))
    wanted = np.array([c[a] >> x & 1 for a, x in pairs], dtype=bool)
    digit_mask = (1 << width) - 1
    for k in range(1, kmax + 1):
        T, F = k // 2 + 1, k // 2
        states = np.zeros(1, dtype=np.int64)
        for step in range(k):
            states = np.unique((states[:, None] + vecs[None, :]).ravel())
            digits = (states[:, None] >> shifts[None, :]) & digit_mask
            left = k - step - 1
            ok = np.where(wanted[None, :], digits + left >= T, digits <= F).all(axis=1)
            states = states[ok]
            if states.size == 0:
                break
        if states.size:
            return k
    return None


# ---------------------------------------------------------------------------
# report

@dataclass
class BoundsReport:
    n: int
    lib: int | float
    dem: DemResult
    sperner_bound: int
    lib_within_sperner: bool
    dem_le_twice_lib: bool | None
    lib_le_pow_dem: bool | None
    asymptotic_ratio: float
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        def num(v):
            return None if isinstance(v, float) and math.isinf(v) else v
        return {
            "n": self.n,
            "lib": num(self.lib),
            "lib_infinite": math.isinf(self.lib),
            "dem": {"kind": self.dem.kind, "lo": num(self.dem.lo), "hi": num(self.dem.hi),
                    "explored": self.dem.explored},
            "sperner_bound": self.sperner_bound,
            "lib_within_sperner": self.lib_within_sperner,
            "dem_le_twice_lib": self.dem_le_twice_lib,
            "lib_le_pow_dem": self.lib_le_pow_dem,
            "asymptotic_ratio": self.asymptotic_ratio,
            "notes": list(self.notes),
        }


def bounds_report(c: QuasiChoice, limits: DemLimits = DemLimits(),
                  dem_family: BallotFamily | None = None) -> BoundsReport:
    """Liberal and democratic numbers with every bound that applies to them.

    When the exact democratic search is out of reach, the interval combines
    ``lib <= 2**(dem-1)`` from below with ``2*lib`` (or the size of a verified
    ``dem_family``) from above.
    """
    n = c.n
    lib = lib_number(c)
    notes = []
    try:
        dem = dem_number(c, limits)
    except GrandSetTooLarge as exc:
        notes.append(str(exc))
        lo = 1 if classify(c).rationalizable else 2
        lo = max(lo, 1 + math.ceil(math.log2(lib)))
        hi = 2 * lib
        dem = DemResult("interval", lo, hi)
    if dem.kind == "interval" and dem_family is not None:
        if verify(c, dem_family, Fraction(1, 2)):
            hi = min(dem.hi, len(dem_family))
            lo = max(dem.lo, 1 + math.ceil(math.log2(lib)))
            kind = "exact" if lo == hi else "interval"
            dem = DemResult(kind, lo, hi, dem.explored, dem_family)
            notes.append(f"supplied democratic family of size {len(dem_family)} verifies")
    bound = sperner_bound(n)
    if dem.kind == "infinite" or dem.exact:
        d = dem.lo
        if math.isinf(lib):
            dem_ok = lib_ok = math.isinf(d)
        else:
            dem_ok, lib_ok = d <= 2 * lib, lib <= 2 ** (d - 1)
    else:
        dem_ok = lib_ok = None
    return BoundsReport(n, lib, dem, bound, (not math.isinf(lib)) and lib <= bound,
                        dem_ok, lib_ok, asymptotic_ratio(n), notes)
