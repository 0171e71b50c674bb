"""Canonical finite instances and the MLAT text format.

Generator families:

* ``zn-ideals`` -- the ideal lattice of Z_n (one element per divisor of n,
  multiplication = ideal product).
* ``zn-self``   -- that lattice acting on itself by the ideal product; a
  faithful multiplication module, principally generated.
* ``zn-square`` -- the subgroup lattice of Z_n x Z_n as a module over the
  ideal lattice of Z_n.  Subgroups are enumerated once each through their
  lower-triangular generator bases [[a,0],[s,b]] (a, b divisors of n).

MLAT files are line oriented, UTF-8, ``#`` starts a comment.  Version header
``mlat 1``, then a ``lattice`` block and optionally a ``module`` block with
statements::

    elements <k>        carrier size (ids 0..k-1); must come first in a block
    leq <i> <j>         i <= j; the reflexive-transitive closure is applied
    top <i> / bot <i>   optional; cross-checked against the order
    mul <i> <j> <k>     lattice block: i*j = k, required for every pair
    act <a> <A> <B>     module block: a A = B, required for every pair
    label <i> <text>    optional display label

Join and meet are always derived from the closed order; a file is rejected
if some pair has no least upper or greatest lower bound.  Serialization is
canonical: structurally identical instances produce identical bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

from .lattice import MultiplicativeLattice, validate_lattice
from .module import LatticeModule, validate_module

__all__ = [
    "DEFAULT_SQUARE_CAP",
    "InstanceSpec",
    "ParseError",
    "divisors",
    "gen_zn_ideal_lattice",
    "gen_zn_self_module",
    "gen_zn_square_module",
    "parse_instance",
    "serialize_instance",
]

DEFAULT_SQUARE_CAP = 16


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# generators


def _ideal_label(d: int, n: int) -> str:
    return "(0)" if d == n else f"({d})"


def gen_zn_ideal_lattice(n: int) -> MultiplicativeLattice:
    """Ideal lattice of Z_n; element i is the ideal generated by the i-th divisor."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    divs = divisors(n)
    index = {d: i for i, d in enumerate(divs)}
    k = len(divs)
    leq = np.zeros((k, k), dtype=bool)
    join = np.zeros((k, k), dtype=np.int64)
    meet = np.zeros((k, k), dtype=np.int64)
    mul = np.zeros((k, k), dtype=np.int64)
    for i, d in enumerate(divs):
        for j, e in enumerate(divs):
            leq[i, j] = d % e == 0          # dZ_n is contained in eZ_n iff e | d
            join[i, j] = index[gcd(d, e)]   # ideal sum
            meet[i, j] = index[lcm(d, e)]   # intersection; lcm divides n here
            mul[i, j] = index[gcd(d * e, n)]
    return validate_lattice(
        leq, mul, join_table=join, meet_table=meet,
        top=index[1], bottom=index[n],
        labels=[_ideal_label(d, n) for d in divs],
    )


def gen_zn_self_module(n: int) -> LatticeModule:
    """The ideal lattice of Z_n acting on itself by the ideal product."""
    L = gen_zn_ideal_lattice(n)
    return validate_module(
        L, L.leq, L.mul_table,
        join_table=L.join_table, meet_table=L.meet_table,
        top=L.top, bottom=L.bottom, labels=L.labels,
    )


def _span(gens, n: int) -> frozenset:
    out = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        x, y = frontier.pop()
        for gx, gy in gens:
            nxt = ((x + gx) % n, (y + gy) % n)
            if nxt not in out:
                out.add(nxt)
                frontier.append(nxt)
    return frozenset(out)


def _subgroup_label(a: int, s: int, b: int, n: int) -> str:
    if s == 0:
        return f"{a}Zx{b}Z"
    if a == n:
        return f"<({s},{b})>"
    return f"<({a},0),({s},{b})>"


def gen_zn_square_module(n: int, cap: int = DEFAULT_SQUARE_CAP) -> LatticeModule:
    """Subgroup lattice of Z_n x Z_n over the ideal lattice of Z_n.

    Elements are ordered by (size, sorted member list), so the zero subgroup
    is id 0 and the full group is the last id.  Rectangular subgroups
    aZ x bZ are labelled ``aZxbZ`` (a = n denotes the zero factor); the rest
    are labelled by their generator basis.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n > cap:
        raise ValueError(f"zn-square modulus {n} exceeds the cap {cap}")
    L = gen_zn_ideal_lattice(n)
    divs = divisors(n)

    groups = {}
    for a in divs:
        for b in divs:
            step = gcd(a, n // b)
            for t in range(step):
                s = t * a // step
                sub = _span([(a % n, 0), (s % n, b % n)], n)
                groups.setdefault(sub, (a, s, b))
    order = sorted(groups, key=lambda sub: (len(sub), sorted(sub)))
    index = {sub: i for i, sub in enumerate(order)}

    m = len(order)
    leq = np.zeros((m, m), dtype=bool)
    for i, s in enumerate(order):
        for j, t in enumerate(order):
            leq[i, j] = s <= t
    act = np.zeros((len(divs), m), dtype=np.int64)
    for ai, d in enumerate(divs):
        for i, s in enumerate(order):
            act[ai, i] = index[frozenset(((d * x) % n, (d * y) % n) for x, y in s)]
    labels = [_subgroup_label(*groups[sub], n) for sub in order]
    return validate_module(L, leq, act, top=m - 1, bottom=0, labels=labels)


@dataclass(frozen=True)
class InstanceSpec:
    """How to obtain one (lattice, module) instance."""

    family: str                 # zn-ideals | zn-self | zn-square | file
    n: int | None = None
    path: str | None = None

    def build(self, cap: int = DEFAULT_SQUARE_CAP):
        """Returns (name, lattice, module-or-None)."""
        if self.family == "zn-ideals":
            return f"zn-ideals-{self.n}", gen_zn_ideal_lattice(self.n), None
        if self.family == "zn-self":
            M = gen_zn_self_module(self.n)
            return f"zn-self-{self.n}", M.lattice, M
        if self.family == "zn-square":
            M = gen_zn_square_module(self.n, cap=cap)
            return f"zn-square-{self.n}", M.lattice, M
        if self.family == "file":
            with open(self.path, encoding="utf-8") as fh:
                L, M = parse_instance(fh.read())
            name = re.sub(r"\.mlat$", "", self.path.replace("\\", "/").rsplit("/", 1)[-1])
            return name, L, M
        raise ValueError(f"unknown instance family {self.family!r}")


# ---------------------------------------------------------------------------
# MLAT serialization


def _covers(leq: np.ndarray) -> list[tuple[int, int]]:
    n = leq.shape[0]
    lt = leq & ~np.eye(n, dtype=bool)
    between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
    return [(int(i), int(j)) for i, j in np.argwhere(lt & ~between)]


def _emit_block(lines: list[str], kind: str, leq, top, bottom, labels,
                table_stmt: str, table: np.ndarray) -> None:
    lines.append(kind)
    lines.append(f"elements {leq.shape[0]}")
    lines.append(f"top {top}")
    lines.append(f"bot {bottom}")
    for i, j in sorted(_covers(np.asarray(leq, dtype=bool))):
        lines.append(f"leq {i} {j}")
    rows, cols = table.shape
    for i in range(rows):
        for j in range(cols):
            lines.append(f"{table_stmt} {i} {j} {int(table[i, j])}")
    if labels is not None:
        for i, text in enumerate(labels):
            lines.append(f"label {i} {text}")


def serialize_instance(L: MultiplicativeLattice, M: LatticeModule | None = None) -> str:
    """Canonical MLAT text for a lattice and optional module."""
    lines = ["mlat 1"]
    _emit_block(lines, "lattice", L.leq, L.top, L.bottom, L.labels, "mul", L.mul_table)
    if M is not None:
        if M.lattice is not L and not (
            M.lattice.element_count == L.element_count
            and (M.lattice.leq == L.leq).all()
            and (M.lattice.mul_table == L.mul_table).all()
        ):
            raise ValueError("module is not over the given lattice")
        _emit_block(lines, "module", M.leq, M.top, M.bottom, M.labels, "act", M.act_table)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# MLAT parsing


class ParseError(ValueError):
    """Syntax or structural error in an MLAT file, with a source location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)


class _Block:
    def __init__(self, kind: str, lineno: int):
        self.kind = kind
        self.lineno = lineno
        self.count: int | None = None
        self.leq_pairs: list[tuple[int, int]] = []
        self.top: int | None = None
        self.bottom: int | None = None
        self.cells: dict[tuple[int, int], int] = {}
        self.labels: dict[int, str] = {}


def _tokens(content: str):
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", content)]


def _int_token(tok: str, col: int, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None


def _check_id(value: int, count: int | None, what: str, lineno: int, col: int) -> int:
    if count is None:
        raise ParseError(f"{what!r} statement before the block's elements declaration", lineno, col)
    if not 0 <= value < count:
        raise ParseError(f"dangling element id {value} ({what})", lineno, col)
    return value


def parse_instance(text: str) -> tuple[MultiplicativeLattice, LatticeModule | None]:
    """Parse MLAT text; axiom violations are raised by the validators."""
    header_seen = False
    blocks: list[_Block] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        hash_pos = raw.find("#")
        content = raw if hash_pos < 0 else raw[:hash_pos]
        toks = _tokens(content)
        if not toks:
            continue
        if not header_seen:
            if [t for t, _ in toks] != ["mlat", "1"]:
                raise ParseError("expected version header 'mlat 1'", lineno, toks[0][1])
            header_seen = True
            continue
        word, col = toks[0]
        if word in ("lattice", "module"):
            if len(toks) != 1:
                raise ParseError(f"unexpected text after {word!r}", lineno, toks[1][1])
            if word == "lattice" and blocks:
                raise ParseError("duplicate lattice block", lineno, col)
            if word == "module" and not blocks:
                raise ParseError("module block requires a preceding lattice block", lineno, col)
            if word == "module" and len(blocks) > 1:
                raise ParseError("duplicate module block", lineno, col)
            blocks.append(_Block(word, lineno))
            continue
        if not blocks:
            raise ParseError(f"statement {word!r} outside any block", lineno, col)
        block = blocks[-1]
        args = toks[1:]

        def need(k):
            if len(args) != k:
                raise ParseError(f"{word!r} takes {k} argument(s), got {len(args)}", lineno, col)

        if word == "elements":
            need(1)
            if block.count is not None:
                raise ParseError("duplicate elements declaration", lineno, col)
            value = _int_token(args[0][0], args[0][1], lineno)
            if value < 1:
                raise ParseError("element count must be positive", lineno, args[0][1])
            block.count = value
        elif word in ("top", "bot"):
            need(1)
            value = _check_id(_int_token(args[0][0], args[0][1], lineno),
                              block.count, word, lineno, args[0][1])
            if word == "top":
                if block.top is not None:
                    raise ParseError("duplicate top declaration", lineno, col)
                block.top = value
            else:
                if block.bottom is not None:
                    raise ParseError("duplicate bot declaration", lineno, col)
                block.bottom = value
        elif word == "leq":
            need(2)
            i = _check_id(_int_token(args[0][0], args[0][1], lineno), block.count, "leq", lineno, args[0][1])
            j = _check_id(_int_token(args[1][0], args[1][1], lineno), block.count, "leq", lineno, args[1][1])
            block.leq_pairs.append((i, j))
        elif word == "mul" or word == "act":
            expected = "mul" if block.kind == "lattice" else "act"
            if word != expected:
                raise ParseError(f"{word!r} statement is not allowed in a {block.kind} block", lineno, col)
            need(3)
            values = [_int_token(t, c, lineno) for t, c in args]
            if word == "mul":
                bounds = (block.count, block.count, block.count)
            else:
                bounds = (blocks[0].count, block.count, block.count)
            for (tok, c), v, bound in zip(args, values, bounds):
                _check_id(v, bound, word, lineno, c)
            key = (values[0], values[1])
            if key in block.cells and block.cells[key] != values[2]:
                raise ParseError(
                    f"conflicting {word} entry for ({key[0]}, {key[1]}): "
                    f"{block.cells[key]} vs {values[2]}", lineno, col)
            block.cells[key] = values[2]
        elif word == "label":
            if len(args) < 2:
                raise ParseError("'label' takes an id and a label text", lineno, col)
            i = _check_id(_int_token(args[0][0], args[0][1], lineno), block.count, "label", lineno, args[0][1])
            block.labels[i] = content[args[1][1] - 1:].rstrip()
        else:
            raise ParseError(f"unknown directive {word!r}", lineno, col)

    if not header_seen:
        raise ParseError("empty file: expected version header 'mlat 1'", 1)
    if not blocks:
        raise ParseError("missing lattice block", 1)

    lat = _build_block(blocks[0], rows=None)
    L = validate_lattice(lat["leq"], lat["table"], top=lat["top"], bottom=lat["bottom"],
                         labels=lat["labels"])
    if len(blocks) == 1:
        return L, None
    mod = _build_block(blocks[1], rows=blocks[0].count)
    M = validate_module(L, mod["leq"], mod["table"], top=mod["top"], bottom=mod["bottom"],
                        labels=mod["labels"])
    return L, M


def _build_block(block: _Block, rows: int | None) -> dict:
    if block.count is None:
        raise ParseError(f"{block.kind} block has no elements declaration", block.lineno)
    n = block.count
    leq = np.eye(n, dtype=bool)
    for i, j in block.leq_pairs:
        leq[i, j] = True
    # reflexive-transitive closure
    while True:
        closed = leq | ((leq.astype(np.int64) @ leq.astype(np.int64)) > 0)
        if (closed == leq).all():
            break
        leq = closed
    width = n
    height = n if rows is None else rows
    stmt = "mul" if block.kind == "lattice" else "act"
    table = np.full((height, width), -1, dtype=np.int64)
    for (i, j), v in block.cells.items():
        table[i, j] = v
    if (table < 0).any():
        i, j = map(int, np.argwhere(table < 0)[0])
        raise ParseError(
            f"non-total {stmt} table: missing entry for ({i}, {j})", block.lineno)
    labels = None
    if block.labels:
        labels = tuple(block.labels.get(i, str(i)) for i in range(n))
    return {"leq": leq, "table": table, "top": block.top, "bottom": block.bottom,
            "labels": labels}
