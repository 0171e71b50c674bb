"""Finite modules over multiplicative lattices.

A lattice module is a complete lattice M together with a scalar action of a
multiplicative lattice L satisfying, for all a, b in L and A, B in M and
arbitrary families:

    (1) (join a_i) A  == join (a_i A)
    (2) a (join A_i)  == join (a A_i)
    (3) (a b) A       == a (b A)
    (4) top_L A       == A
    (5) bottom_L A    == bottom_M

On a finite carrier the family forms of (1) and (2) follow from the binary
and empty-join cases, which is what ``validate_module`` checks exhaustively;
seeded random subsets are spot-checked on top for fidelity.

This module also provides the structural operators: residuals in both
directions, the prime-radical ``rad``, saturation, varieties, and the
faithful / multiplication-module / principally-generated predicates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .lattice import (
    MultiplicativeLattice,
    ValidationError,
    Violation,
    _cached,
    _coerce_square,
    _derive_join_meet,
    _freeze,
    _order_violations,
    lattice_flags,
)

__all__ = [
    "LatticeModule",
    "ElementContext",
    "validate_module",
    "module_violations",
    "residual_ml",
    "residual_mm",
    "residual_ml_table",
    "residual_mm_table",
    "prime_elements",
    "maximal_elements",
    "rad",
    "saturation",
    "variety",
    "variety_l",
    "element_context",
    "is_faithful",
    "is_multiplication_module",
    "is_meet_principal_m",
    "is_join_principal_m",
    "is_principal_m",
    "is_pg_module",
]


@dataclass(frozen=True, eq=False)
class LatticeModule:
    """Validated finite module over a validated multiplicative lattice.

    Immutable after validation; all operations are pure functions.
    """

    lattice: MultiplicativeLattice
    leq: np.ndarray         # bool (m, m)
    join_table: np.ndarray  # int (m, m)
    meet_table: np.ndarray  # int (m, m)
    act_table: np.ndarray   # int (nl, m); act_table[a, A] = a A
    top: int                # I_M
    bottom: int             # O_M
    labels: tuple[str, ...] | None = None

    @property
    def element_count(self) -> int:
        return int(self.leq.shape[0])

    def elements(self) -> range:
        return range(self.element_count)

    def proper_elements(self):
        return (a for a in self.elements() if a != self.top)

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def act(self, a: int, x: int) -> int:
        return int(self.act_table[a, x])

    def join_all(self, xs) -> int:
        out = self.bottom
        for x in xs:
            out = int(self.join_table[out, x])
        return out

    def meet_all(self, xs) -> int:
        out = self.top
        for x in xs:
            out = int(self.meet_table[out, x])
        return out

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def __repr__(self):
        return f"LatticeModule(n={self.element_count} over {self.lattice!r})"


@dataclass(frozen=True)
class ElementContext:
    """The two derived values attached to a proper element N: (N:I_M) and rad(N)."""

    residual_top: int  # lattice id of (N : I_M)
    rad: int           # module id of rad(N)


# ---------------------------------------------------------------------------
# validation


def module_violations(L: MultiplicativeLattice, leq, act_table,
                      join_table=None, meet_table=None, top=None, bottom=None,
                      collect_all: bool = True, subset_checks: int = 200,
                      seed: int = 0) -> list[Violation]:
    """Check the lattice-module axioms on raw tables."""
    leq = np.asarray(leq, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
        return [Violation("order-shape", (), f"module leq must be square, got {leq.shape}")]
    m = leq.shape[0]
    if m == 0:
        return [Violation("order-shape", (), "module carrier must be nonempty")]

    out = _order_violations(leq, collect_all)
    if out:
        return out
    join, meet, order_out = _derive_join_meet(leq, collect_all)
    if order_out:
        return order_out

    if join_table is not None:
        supplied, errs = _coerce_square(join_table, m, "join")
        if errs:
            return errs
        for i, j in np.argwhere(supplied != join):
            out.append(Violation("join-table", (int(i), int(j)),
                                 f"supplied join[{i},{j}] = {int(supplied[i, j])}, order gives {int(join[i, j])}"))
            if not collect_all:
                return out
    if meet_table is not None:
        supplied, errs = _coerce_square(meet_table, m, "meet")
        if errs:
            return errs
        for i, j in np.argwhere(supplied != meet):
            out.append(Violation("meet-table", (int(i), int(j)),
                                 f"supplied meet[{i},{j}] = {int(supplied[i, j])}, order gives {int(meet[i, j])}"))
            if not collect_all:
                return out

    derived_top = int(np.flatnonzero(leq.all(axis=0))[0])
    derived_bottom = int(np.flatnonzero(leq.all(axis=1))[0])
    if top is not None and int(top) != derived_top:
        out.append(Violation("top", (int(top),), f"declared top {top}, order gives {derived_top}"))
    if bottom is not None and int(bottom) != derived_bottom:
        out.append(Violation("bottom", (int(bottom),), f"declared bottom {bottom}, order gives {derived_bottom}"))
    if out and not collect_all:
        return out

    nl = L.element_count
    act = np.asarray(act_table, dtype=np.int64)
    if act.shape != (nl, m):
        return out + [Violation("act-shape", (), f"action table must be {nl}x{m}, got {act.shape}")]
    if ((act < 0) | (act >= m)).any():
        a, x = map(int, np.argwhere((act < 0) | (act >= m))[0])
        return out + [Violation("act-range", (a, x),
                                f"act[{a},{x}] = {int(act[a, x])} is not a module carrier id")]

    lids = np.arange(nl)
    mids = np.arange(m)

    # (1) binary: (a v b) A == aA v bA
    lhs = act[L.join_table, :]
    rhs = join[act[:, None, :], act[None, :, :]]
    for a, b, x in np.argwhere(lhs != rhs):
        if a <= b:
            out.append(Violation("axiom-1", (int(a), int(b), int(x)),
                                 f"({a} v {b}){x} = {int(lhs[a, b, x])} but {a}{x} v {b}{x} = {int(rhs[a, b, x])}"))
            if not collect_all:
                return out
    # (5) == the empty-join case of (1): bottom_L A == bottom_M
    for (x,) in np.argwhere(act[L.bottom] != derived_bottom):
        out.append(Violation("axiom-5", (int(x),),
                             f"bottom * {x} = {int(act[L.bottom, x])}, expected module bottom {derived_bottom}"))
        if not collect_all:
            return out
    # (2) binary: a (A v B) == aA v aB
    lhs = act[:, join]
    rhs = join[act[:, :, None], act[:, None, :]]
    for a, x, y in np.argwhere(lhs != rhs):
        if x <= y:
            out.append(Violation("axiom-2", (int(a), int(x), int(y)),
                                 f"{a}({x} v {y}) = {int(lhs[a, x, y])} but {a}{x} v {a}{y} = {int(rhs[a, x, y])}"))
            if not collect_all:
                return out
    # (2) empty-join case: a bottom_M == bottom_M
    for (a,) in np.argwhere(act[:, derived_bottom] != derived_bottom):
        out.append(Violation("axiom-2-empty", (int(a),),
                             f"{a} * module bottom = {int(act[a, derived_bottom])}, expected {derived_bottom}"))
        if not collect_all:
            return out
    # (3): (a b) A == a (b A)
    lhs = act[L.mul_table, :]
    rhs = act[lids[:, None, None], act[None, :, :]]
    for a, b, x in np.argwhere(lhs != rhs):
        out.append(Violation("axiom-3", (int(a), int(b), int(x)),
                             f"({a}*{b}){x} = {int(lhs[a, b, x])} but {a}({b}{x}) = {int(rhs[a, b, x])}"))
        if not collect_all:
            return out
    # (4): top_L A == A
    for (x,) in np.argwhere(act[L.top] != mids):
        out.append(Violation("axiom-4", (int(x),),
                             f"top * {x} = {int(act[L.top, x])}, expected {x}"))
        if not collect_all:
            return out

    # Seeded random-subset spot checks of the family forms of (1) and (2).
    # Implied by the binary + empty cases on a finite carrier; kept for fidelity.
    rng = random.Random(seed)
    mod_join_all = lambda xs: _reduce_table(join, derived_bottom, xs)
    lat_join_all = lambda xs: _reduce_table(L.join_table, L.bottom, xs)
    for _ in range(subset_checks):
        subset = rng.sample(range(nl), rng.randint(0, nl))
        x = rng.randrange(m)
        got = int(act[lat_join_all(subset), x])
        want = mod_join_all(int(act[a, x]) for a in subset)
        if got != want:
            out.append(Violation("axiom-1-subset", tuple(sorted(subset)) + (x,),
                                 f"(join {sorted(subset)}){x} = {got}, expected {want}"))
            if not collect_all:
                return out
        a = rng.randrange(nl)
        msubset = rng.sample(range(m), rng.randint(0, m))
        got = int(act[a, mod_join_all(msubset)])
        want = mod_join_all(int(act[a, x]) for x in msubset)
        if got != want:
            out.append(Violation("axiom-2-subset", (a,) + tuple(sorted(msubset)),
                                 f"{a}(join {sorted(msubset)}) = {got}, expected {want}"))
            if not collect_all:
                return out
    return out


def _reduce_table(table: np.ndarray, unit: int, xs) -> int:
    out = unit
    for x in xs:
        out = int(table[out, x])
    return out


def validate_module(L: MultiplicativeLattice, leq, act_table,
                    join_table=None, meet_table=None, top=None, bottom=None,
                    labels=None, collect_all: bool = True,
                    subset_checks: int = 200, seed: int = 0) -> LatticeModule:
    """Validate raw module tables over L and return the frozen structure."""
    violations = module_violations(L, leq, act_table, join_table, meet_table,
                                   top, bottom, collect_all=collect_all,
                                   subset_checks=subset_checks, seed=seed)
    if violations:
        raise ValidationError(violations)
    leq = np.asarray(leq, dtype=bool)
    m = leq.shape[0]
    join, meet, _ = _derive_join_meet(leq, collect_all=True)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != m:
            raise ValidationError([Violation("labels", (), f"expected {m} labels, got {len(labels)}")])
    return LatticeModule(
        lattice=L,
        leq=_freeze(leq),
        join_table=_freeze(join),
        meet_table=_freeze(meet),
        act_table=_freeze(np.asarray(act_table, dtype=np.int64)),
        top=int(np.flatnonzero(leq.all(axis=0))[0]),
        bottom=int(np.flatnonzero(leq.all(axis=1))[0]),
        labels=labels,
    )


# ---------------------------------------------------------------------------
# residuals


@_cached
def residual_ml_table(M: LatticeModule) -> np.ndarray:
    """Entry [N, a] is (N:a) in M: the join of all X with a X <= N."""
    m, nl = M.element_count, M.lattice.element_count
    out = np.empty((m, nl), dtype=np.int64)
    for a in range(nl):
        ax = M.act_table[a]
        for n in range(m):
            out[n, a] = M.join_all(np.flatnonzero(M.leq[ax, n]))
    return _freeze(out)


def residual_ml(M: LatticeModule, N: int, a: int) -> int:
    """(N:a) in M, the largest X with a X <= N."""
    return int(residual_ml_table(M)[N, a])


@_cached
def residual_mm_table(M: LatticeModule) -> np.ndarray:
    """Entry [A, B] is (A:B) in L: the join of all x with x B <= A."""
    m = M.element_count
    out = np.empty((m, m), dtype=np.int64)
    L = M.lattice
    for b in range(m):
        xb = M.act_table[:, b]
        for a in range(m):
            out[a, b] = L.join_all(np.flatnonzero(M.leq[xb, a]))
    return _freeze(out)


def residual_mm(M: LatticeModule, A: int, B: int) -> int:
    """(A:B) in L, the largest x with x B <= A."""
    return int(residual_mm_table(M)[A, B])


@_cached
def stable_act_top_table(M: LatticeModule) -> np.ndarray:
    """Entry [a] is (stable power of a) acting on I_M."""
    from .lattice import _stable_power_table

    return _freeze(M.act_table[_stable_power_table(M.lattice), M.top])


# ---------------------------------------------------------------------------
# primes, radical, saturation, variety
#
# prime_elements below is a deliberately plain double loop; the classifier
# module computes the same predicate by vectorized masks, and the test suite
# checks the two routes agree on every instance.


@_cached
def prime_elements(M: LatticeModule) -> tuple[int, ...]:
    """Ids of the prime elements of M, in ascending order."""
    L = M.lattice
    out = []
    for n in M.proper_elements():
        prime = True
        for a in range(L.element_count):
            if M.le(M.act(a, M.top), n):
                continue
            for x in M.elements():
                if M.le(M.act(a, x), n) and not M.le(x, n):
                    prime = False
                    break
            if not prime:
                break
        if prime:
            out.append(n)
    return tuple(out)


@_cached
def maximal_elements(M: LatticeModule) -> tuple[int, ...]:
    out = []
    for n in M.proper_elements():
        ups = np.flatnonzero(M.leq[n] & (np.arange(M.element_count) != n))
        if ups.size == 1 and int(ups[0]) == M.top:
            out.append(n)
    return tuple(out)


def variety(M: LatticeModule, N: int) -> tuple[int, ...]:
    """V(N): the prime elements of M above N."""
    if N == M.top:
        raise ValueError("variety is defined for proper elements only")
    return tuple(p for p in prime_elements(M) if M.le(N, p))


def variety_l(M: LatticeModule, N: int) -> tuple[int, ...]:
    """V((N:I_M)): the prime elements of L above (N:I_M)."""
    if N == M.top:
        raise ValueError("variety is defined for proper elements only")
    L = M.lattice
    r = residual_mm(M, N, M.top)
    flags = lattice_flags(L)
    return tuple(p for p in L.elements() if flags[p].prime and L.le(r, p))


@_cached
def _rad_table(M: LatticeModule) -> np.ndarray:
    primes = prime_elements(M)
    out = np.full(M.element_count, -1, dtype=np.int64)
    for n in M.proper_elements():
        out[n] = M.meet_all(p for p in primes if M.le(n, p))
    return _freeze(out)


def rad(M: LatticeModule, N: int) -> int:
    """rad(N): the meet of all prime elements above the proper element N.

    I_M when no prime lies above N (the empty-meet convention); rejects
    N = I_M, for which the radical is undefined.
    """
    if N == M.top:
        raise ValueError("rad is undefined for the top element")
    return int(_rad_table(M)[N])


def element_context(M: LatticeModule, N: int) -> ElementContext:
    if N == M.top:
        raise ValueError("element context is defined for proper elements only")
    return ElementContext(residual_top=residual_mm(M, N, M.top), rad=rad(M, N))


def saturation(M: LatticeModule, N: int, p: int) -> int:
    """S_p(N): the join of all X with c X <= N for some c not below the prime p."""
    L = M.lattice
    if not lattice_flags(L)[p].prime:
        raise ValueError(f"saturation requires a prime element of L, got {L.label(p)}")
    if N == M.top:
        raise ValueError("saturation is defined for proper elements only")
    cs = np.flatnonzero(~L.leq[:, p])
    keep = [x for x in M.elements() if bool(M.leq[M.act_table[cs, x], N].any())]
    return M.join_all(keep)


# ---------------------------------------------------------------------------
# structural predicates


def is_faithful(M: LatticeModule) -> bool:
    """(O_M : I_M) == 0."""
    return residual_mm(M, M.bottom, M.top) == M.lattice.bottom


def is_multiplication_module(M: LatticeModule) -> bool:
    """Every N equals a I_M for some a; a = (N:I_M) is the canonical witness."""
    R = residual_mm_table(M)
    return all(M.act(int(R[n, M.top]), M.top) == n for n in M.elements())


def is_meet_principal_m(M: LatticeModule, N: int) -> bool:
    """(b ^ (B:N)) N == bN ^ B for all b in L, B in M."""
    L = M.lattice
    R = residual_mm_table(M)
    nl, m = L.element_count, M.element_count
    inner = L.meet_table[np.arange(nl)[:, None], R[:, N][None, :]]   # [b, B] = b ^ (B:N)
    lhs = M.act_table[inner, N]
    rhs = M.meet_table[M.act_table[:, N][:, None], np.arange(m)[None, :]]
    return bool((lhs == rhs).all())


def is_join_principal_m(M: LatticeModule, N: int) -> bool:
    """b v (B:N) == ((bN v B) : N) for all b in L, B in M."""
    L = M.lattice
    R = residual_mm_table(M)
    nl, m = L.element_count, M.element_count
    lhs = L.join_table[np.arange(nl)[:, None], R[:, N][None, :]]     # [b, B] = b v (B:N)
    bnb = M.join_table[M.act_table[:, N][:, None], np.arange(m)[None, :]]
    rhs = R[bnb, N]
    return bool((lhs == rhs).all())


def is_principal_m(M: LatticeModule, N: int) -> bool:
    return is_meet_principal_m(M, N) and is_join_principal_m(M, N)


@_cached
def _principal_elements_m(M: LatticeModule) -> tuple[int, ...]:
    return tuple(n for n in M.elements() if is_principal_m(M, n))


def is_pg_module(M: LatticeModule) -> bool:
    """Every element is the join of the principal elements below it."""
    principal = _principal_elements_m(M)
    for x in M.elements():
        if M.join_all(e for e in principal if M.le(e, x)) != x:
            return False
    return True
