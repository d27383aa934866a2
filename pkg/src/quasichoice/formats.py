"""Plain-text formats for quasi-choices (``qc v1``) and voter families
(``ballots v1``).

qc v1::

    qc v1
    n = 3
    items = x y z
    default = none          # or identity / empty
    x y z -> x y
    x z ->                  # empty choice
    ...

ballots v1::

    ballots v1
    n = 3
    items = x y z
    x -> y
    y -> z
    end
    end                     # a voter with no arrows (neutral ballot)
"""
from __future__ import annotations

from pathlib import Path

from .core import (BallotFamily, GrandSet, QuasiChoice, QuasiChoiceError, Relation,
                   ballot_from_voter, iter_items, revealed_relation)


class ParseError(QuasiChoiceError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _header(lines, tag: str):
    """Consume the format tag and ``key = value`` lines; return fields and
    the remaining body lines."""
    it = list(lines)
    if not it or it[0][1].split() != tag.split():
        raise ParseError(it[0][0] if it else 1, f"expected header {tag!r}")
    fields: dict[str, tuple[int, str]] = {}
    i = 1
    while i < len(it) and "=" in it[i][1] and "->" not in it[i][1]:
        no, line = it[i]
        key, _, value = line.partition("=")
        key = key.strip()
        if key in fields:
            raise ParseError(no, f"duplicate header field {key!r}")
        fields[key] = (no, value.strip())
        i += 1
    return fields, it[i:]


def _grand(fields, tagline=1) -> GrandSet:
    if "n" not in fields:
        raise ParseError(tagline, "missing 'n = <int>' header")
    no, value = fields["n"]
    try:
        n = int(value)
    except ValueError:
        raise ParseError(no, f"n must be an integer, got {value!r}") from None
    labels = None
    if "items" in fields:
        no, value = fields["items"]
        labels = tuple(value.split())
    try:
        return GrandSet(n, labels)
    except QuasiChoiceError as exc:
        raise ParseError(no, str(exc)) from None


def _items(grand: GrandSet, tokens, no) -> int:
    menu = 0
    for tok in tokens:
        try:
            i = grand.index(tok)
        except QuasiChoiceError:
            raise ParseError(no, f"unknown item {tok!r}") from None
        if menu >> i & 1:
            raise ParseError(no, f"item {tok!r} repeated")
        menu |= 1 << i
    return menu


def parse_qc(text: str) -> QuasiChoice:
    fields, body = _header(_lines(text), "qc v1")
    unknown = set(fields) - {"n", "items", "default"}
    if unknown:
        key = sorted(unknown)[0]
        raise ParseError(fields[key][0], f"unknown header field {key!r}")
    grand = _grand(fields)
    default = fields.get("default", (0, "none"))[1]
    if default not in ("none", "identity", "empty"):
        raise ParseError(fields["default"][0], "default must be none, identity or empty")
    table: dict[int, int] = {}
    for no, line in body:
        if "->" not in line:
            raise ParseError(no, "expected '<menu items> -> <chosen items>'")
        left, _, right = line.partition("->")
        menu = _items(grand, left.split(), no)
        chosen = _items(grand, right.split(), no)
        if menu == 0:
            raise ParseError(no, "menu must be nonempty")
        if chosen & ~menu:
            raise ParseError(no, "chosen items must belong to the menu")
        if menu in table:
            raise ParseError(no, f"menu {grand.format_menu(menu)} listed twice")
        table[menu] = chosen
    try:
        return QuasiChoice.from_mapping(grand, table, default=default)
    except QuasiChoiceError as exc:
        raise ParseError(body[-1][0] if body else 1, str(exc)) from None


def _header_text(tag: str, grand: GrandSet) -> list[str]:
    out = [tag, f"n = {grand.n}"]
    if grand.labels is not None:
        out.append("items = " + " ".join(grand.labels))
    return out


def format_qc(c: QuasiChoice) -> str:
    g = c.grand
    out = _header_text("qc v1", g)
    names = g.names
    menus = sorted(range(1, g.size), key=lambda a: (-bin(a).count("1"), a))
    for a in menus:
        left = " ".join(names[i] for i in iter_items(a))
        right = " ".join(names[i] for i in iter_items(c[a]))
        out.append(f"{left} -> {right}".rstrip())
    return "\n".join(out) + "\n"


def parse_ballots(text: str) -> BallotFamily:
    fields, body = _header(_lines(text), "ballots v1")
    unknown = set(fields) - {"n", "items"}
    if unknown:
        key = sorted(unknown)[0]
        raise ParseError(fields[key][0], f"unknown header field {key!r}")
    grand = _grand(fields)
    voters = []
    edges: list[tuple[int, int]] = []
    last = 1
    open_block = False
    for no, line in body:
        last = no
        if line == "end":
            voters.append(ballot_from_voter(Relation.from_edges(grand, edges)))
            edges = []
            open_block = False
            continue
        open_block = True
        left, arrow, right = line.partition("->")
        src = left.split()
        if not arrow or len(src) != 1 or not right.split():
            raise ParseError(no, "expected '<item> -> <item>...' or 'end'")
        q = _items(grand, src, no)
        for tok in right.split():
            p = _items(grand, [tok], no)
            edges.append((q.bit_length() - 1, p.bit_length() - 1))
    if open_block:
        raise ParseError(last, "voter block not terminated by 'end'")
    if not voters:
        raise ParseError(last, "at least one voter block is required")
    return BallotFamily(voters, grand)


def format_ballots(family: BallotFamily, comment: str | None = None) -> str:
    """Serialize each ballot through its revealed relation (canonical voter)."""
    g = family.grand
    out = []
    if comment:
        out += ["# " + ln for ln in comment.splitlines()]
    out += _header_text("ballots v1", g)
    names = g.names
    cache: dict[int, list[str]] = {}
    for b in family:
        block = cache.get(id(b))
        if block is None:
            rel = revealed_relation(b.choice)
            block = [f"{names[q]} -> {names[p]}" for q, p in sorted(rel.edges())]
            cache[id(b)] = block
        out += block
        out.append("end")
    return "\n".join(out) + "\n"


def read_qc(path) -> QuasiChoice:
    return parse_qc(Path(path).read_text())


def read_ballots(path) -> BallotFamily:
    return parse_ballots(Path(path).read_text())


def write_qc(path, c: QuasiChoice) -> None:
    Path(path).write_text(format_qc(c))


def write_ballots(path, family: BallotFamily, comment: str | None = None) -> None:
    Path(path).write_text(format_ballots(family, comment))
