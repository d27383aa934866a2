"""Grand sets, menus, voters, quasi-choices, ballots and shares.

A menu is a plain ``int`` bitmask over the items of a grand set: bit ``i`` is
set iff item ``i`` belongs to the menu.  A quasi-choice is materialized as a
numpy table of ``2**n`` menus indexed by menu.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
import re

import numpy as np

MAX_ITEMS = 16


def set_max_items(n: int) -> None:
    """Change the hard cap on the size of a grand set."""
    global MAX_ITEMS
    if n < 2:
        raise ValueError("the item cap must be at least 2")
    MAX_ITEMS = int(n)


class QuasiChoiceError(ValueError):
    """Base class for all domain errors raised by the package."""


class GrandSetMismatch(QuasiChoiceError):
    pass


class GrandSetTooLarge(QuasiChoiceError):
    pass


class ShareOutOfRange(QuasiChoiceError):
    pass


class SizeExceeded(QuasiChoiceError):
    def __init__(self, size: int, ceiling: int):
        super().__init__(f"family of {size} ballots exceeds the ceiling of {ceiling}")
        self.size = size
        self.ceiling = ceiling


class AlphaViolated(QuasiChoiceError):
    def __init__(self, witness):
        super().__init__(f"Axiom alpha fails: {witness}")
        self.witness = witness


# ---------------------------------------------------------------------------
# menus

def popcount(menu: int) -> int:
    return bin(menu).count("1")


def iter_items(menu: int) -> Iterator[int]:
    i = 0
    while menu:
        if menu & 1:
            yield i
        menu >>= 1
        i += 1


def make_menu(items: Iterable[int]) -> int:
    menu = 0
    for i in items:
        menu |= 1 << i
    return menu


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class GrandSet:
    """A finite set of ``n`` items, optionally labelled."""

    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not 2 <= self.n <= MAX_ITEMS:
            raise GrandSetTooLarge(
                f"grand set size must lie in [2, {MAX_ITEMS}], got {self.n}")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.n:
                raise QuasiChoiceError("need exactly one label per item")
            if len(set(labels)) != self.n:
                raise QuasiChoiceError("item labels must be distinct")
            for lab in labels:
                if not lab or re.search(r"\s|->|#", lab):
                    raise QuasiChoiceError(f"invalid item label {lab!r}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        """Number of menus, ``2**n``."""
        return 1 << self.n

    @property
    def names(self) -> tuple[str, ...]:
        if self.labels is not None:
            return self.labels
        return tuple(str(i) for i in range(self.n))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise QuasiChoiceError(f"unknown item {name!r}") from None

    def menu(self, names: Iterable[str] | str) -> int:
        """Menu from item names; a string is split into single characters
        when every label is one character long, else on whitespace."""
        if isinstance(names, str):
            if all(len(x) == 1 for x in self.names) and " " not in names:
                names = list(names)
            else:
                names = names.split()
        return make_menu(self.index(x) for x in names)

    def format_menu(self, menu: int) -> str:
        return "{" + ",".join(self.names[i] for i in iter_items(menu)) + "}"

    def menus(self) -> range:
        return range(self.size)


def _menu_index_array(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def _table_from_dominators(n: int, dominators: Sequence[int]) -> np.ndarray:
    menus = _menu_index_array(n)
    table = np.zeros(1 << n, dtype=np.int64)
    for a in range(n):
        keep = ((menus >> a) & 1).astype(bool) & ((menus & dominators[a]) == 0)
        table |= keep.astype(np.int64) << a
    return table


class QuasiChoice:
    """A map from every menu ``A`` to a sub-menu ``c(A)`` of ``A``.

    The table is an immutable ``int64`` array of length ``2**n``.
    """

    __slots__ = ("grand", "table", "_key")

    def __init__(self, grand: GrandSet, table):
        t = np.array(table, dtype=np.int64)
        if t.shape != (grand.size,):
            raise QuasiChoiceError(
                f"table must have {grand.size} entries, got shape {t.shape}")
        menus = _menu_index_array(grand.n)
        bad = np.nonzero(t & ~menus)[0]
        if bad.size:
            a = int(bad[0])
            raise QuasiChoiceError(
                f"choice {int(t[a])} from menu {grand.format_menu(a)} is not contained in it")
        t.setflags(write=False)
        self.grand = grand
        self.table = t
        self._key = None

    @classmethod
    def from_function(cls, grand: GrandSet, f) -> QuasiChoice:
        return cls(grand, [f(a) for a in grand.menus()])

    @classmethod
    def from_mapping(cls, grand: GrandSet, mapping: dict, default: str = "none") -> QuasiChoice:
        """Build from ``{menu: choice}``; keys and values may be ints or item names.

        ``default`` fills unlisted nonempty menus: ``"identity"`` picks the whole
        menu, ``"empty"`` picks nothing, ``"none"`` requires every menu listed.
        """
        def conv(m):
            return m if isinstance(m, int) else grand.menu(m)

        table = {conv(k): conv(v) for k, v in mapping.items()}
        out = []
        for a in grand.menus():
            if a in table:
                out.append(table[a])
            elif a == 0 or default == "empty":
                out.append(0)
            elif default == "identity":
                out.append(a)
            else:
                raise QuasiChoiceError(f"no choice given for menu {grand.format_menu(a)}")
        return cls(grand, out)

    @classmethod
    def identity(cls, grand: GrandSet) -> QuasiChoice:
        return cls(grand, _menu_index_array(grand.n))

    @classmethod
    def null(cls, grand: GrandSet) -> QuasiChoice:
        return cls(grand, np.zeros(grand.size, dtype=np.int64))

    @property
    def n(self) -> int:
        return self.grand.n

    def __getitem__(self, menu: int) -> int:
        return int(self.table[menu])

    def is_decisive(self) -> bool:
        return bool(np.all(self.table[1:] != 0))

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.table.tobytes()
        return self._key

    def __eq__(self, other):
        if not isinstance(other, QuasiChoice):
            return NotImplemented
        return self.grand == other.grand and self.key() == other.key()

    def __hash__(self):
        return hash((self.grand, self.key()))

    def __repr__(self):
        g = self.grand
        body = ", ".join(f"{g.format_menu(a)}->{g.format_menu(self[a])}"
                         for a in range(1, g.size))
        return f"QuasiChoice({body})"


@dataclass(frozen=True)
class Relation:
    """A voter: an arbitrary binary relation on the items.

    ``dominators[p]`` is the bitmask of items ``q`` with ``q -> p``.  Loops and
    mutual arrows are allowed.
    """

    grand: GrandSet
    dominators: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.dominators)
        object.__setattr__(self, "dominators", rows)
        if len(rows) != self.grand.n:
            raise QuasiChoiceError("need one dominator row per item")
        if any(r < 0 or r & ~self.grand.full for r in rows):
            raise QuasiChoiceError("dominator row outside the grand set")

    @classmethod
    def empty(cls, grand: GrandSet) -> Relation:
        return cls(grand, (0,) * grand.n)

    @classmethod
    def all_loops(cls, grand: GrandSet) -> Relation:
        return cls(grand, tuple(1 << p for p in range(grand.n)))

    @classmethod
    def from_edges(cls, grand: GrandSet, edges: Iterable[tuple]) -> Relation:
        """Edges ``(q, p)`` meaning ``q -> p``; endpoints are indices or names."""
        rows = [0] * grand.n
        for q, p in edges:
            q = q if isinstance(q, int) else grand.index(q)
            p = p if isinstance(p, int) else grand.index(p)
            rows[p] |= 1 << q
        return cls(grand, tuple(rows))

    @classmethod
    def linear_order(cls, grand: GrandSet, order: Sequence) -> Relation:
        """Strict linear order where earlier items dominate later ones."""
        idx = [o if isinstance(o, int) else grand.index(o) for o in order]
        return cls.from_edges(grand, [(idx[i], idx[j])
                                      for i in range(len(idx)) for j in range(i + 1, len(idx))])

    def edges(self) -> list[tuple[int, int]]:
        return [(q, p) for p in range(self.grand.n) for q in iter_items(self.dominators[p])]

    def dominates(self, q: int, p: int) -> bool:
        return bool(self.dominators[p] >> q & 1)

    def union(self, other: Relation) -> Relation:
        if self.grand != other.grand:
            raise GrandSetMismatch("relations live on different grand sets")
        return Relation(self.grand, tuple(a | b for a, b in zip(self.dominators, other.dominators)))


def max_set(rel: Relation, menu: int) -> int:
    """Items of ``menu`` that no item of ``menu`` dominates."""
    out = 0
    for a in iter_items(menu):
        if rel.dominators[a] & menu == 0:
            out |= 1 << a
    return out


class Ballot:
    """A quasi-choice induced by some voter via non-dominated selection.

    Equality and hashing look only at the induced table; the witness voter is
    one of possibly many rationalizing relations.
    """

    __slots__ = ("choice", "witness")

    def __init__(self, choice: QuasiChoice, witness: Relation):
        self.choice = choice
        self.witness = witness

    @classmethod
    def from_choice(cls, c: QuasiChoice) -> Ballot:
        rel = revealed_relation(c)
        b = ballot_from_voter(rel)
        if b.choice != c:
            raise QuasiChoiceError("quasi-choice is not freely rationalizable")
        return b

    @classmethod
    def neutral(cls, grand: GrandSet) -> Ballot:
        return ballot_from_voter(Relation.empty(grand))

    @classmethod
    def hypercritical(cls, grand: GrandSet) -> Ballot:
        return ballot_from_voter(Relation.all_loops(grand))

    @property
    def grand(self) -> GrandSet:
        return self.choice.grand

    @property
    def table(self) -> np.ndarray:
        return self.choice.table

    def __call__(self, menu: int) -> int:
        return self.choice[menu]

    def __eq__(self, other):
        if not isinstance(other, Ballot):
            return NotImplemented
        return self.choice == other.choice

    def __hash__(self):
        return hash(self.choice)

    def __repr__(self):
        return f"Ballot({self.choice!r})"


def ballot_from_voter(rel: Relation) -> Ballot:
    table = _table_from_dominators(rel.grand.n, rel.dominators)
    return Ballot(QuasiChoice(rel.grand, table), rel)


def revealed_relation(c: QuasiChoice) -> Relation:
    """Relation read off singletons and pairs of ``c``.

    ``p -> p`` iff ``p`` is rejected from ``{p}``; for ``x != p``, ``x -> p``
    iff ``p`` is chosen from ``{p}`` but rejected from ``{p, x}``.
    """
    n = c.n
    rows = []
    for p in range(n):
        bp = 1 << p
        if not c[bp] & bp:
            rows.append(bp)
            continue
        row = 0
        for x in range(n):
            if x != p and not c[bp | 1 << x] & bp:
                row |= 1 << x
        rows.append(row)
    return Relation(c.grand, tuple(rows))


# ---------------------------------------------------------------------------
# shares

Share = Fraction

_SHARE_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


def as_share(value) -> Fraction:
    """Normalize ``value`` to an exact share in ``[0, 1)``.

    Accepts ints, Fractions, ``(num, den)`` pairs and strings ``"p/q"`` or
    ``"0"``.  Floats and decimal strings are rejected.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ShareOutOfRange(f"shares must be exact rationals, got {value!r}")
    if isinstance(value, tuple):
        num, den = value
        if den <= 0:
            raise ShareOutOfRange("share denominator must be positive")
        s = Fraction(num, den)
    elif isinstance(value, str):
        m = _SHARE_RE.match(value)
        if not m:
            raise ShareOutOfRange(f"cannot parse share {value!r}; use p/q")
        if m.group(2) is not None and int(m.group(2)) == 0:
            raise ShareOutOfRange("share denominator must be positive")
        s = Fraction(int(m.group(1)), int(m.group(2) or 1))
    elif isinstance(value, (int, Fraction)):
        s = Fraction(value)
    else:
        raise ShareOutOfRange(f"unsupported share {value!r}")
    if not 0 <= s < 1:
        raise ShareOutOfRange(f"share must lie in [0, 1), got {s}")
    return s


# ---------------------------------------------------------------------------
# families

class BallotFamily:
    """An ordered multiset of ballots on one grand set."""

    __slots__ = ("grand", "members")

    def __init__(self, members: Iterable[Ballot], grand: GrandSet | None = None):
        members = tuple(members)
        if not members:
            raise QuasiChoiceError("a ballot family needs at least one ballot")
        grand = grand or members[0].grand
        for b in members:
            if b.grand != grand:
                raise GrandSetMismatch("all ballots must share one grand set")
        self.grand = grand
        self.members = members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def __add__(self, other: BallotFamily) -> BallotFamily:
        return BallotFamily(self.members + other.members)

    def distinct(self) -> list[tuple[Ballot, int]]:
        """Distinct ballots with multiplicities, in order of first occurrence."""
        by_id: dict[int, int] = {}
        first: dict[int, Ballot] = {}
        for b in self.members:
            i = id(b)
            if i not in by_id:
                first[i] = b
            by_id[i] = by_id.get(i, 0) + 1
        merged: dict[bytes, list] = {}
        for i, mult in by_id.items():
            b = first[i]
            entry = merged.setdefault(b.choice.key(), [b, 0])
            entry[1] += mult
        return [(b, m) for b, m in merged.values()]

    def __eq__(self, other):
        if not isinstance(other, BallotFamily):
            return NotImplemented
        return self.grand == other.grand and self.members == other.members

    def __repr__(self):
        return f"BallotFamily(k={len(self)}, distinct={len(self.distinct())})"


def replicate(family: BallotFamily, r: int) -> BallotFamily:
    """Repeat the whole family ``r`` times (``(v, w) -> (v, w, v, w, ...)``)."""
    if r < 1:
        raise QuasiChoiceError("replication factor must be positive")
    return BallotFamily(family.members * r, family.grand)
