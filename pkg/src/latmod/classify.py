"""Classification predicates for module elements, with counterexample witnesses.

Every predicate evaluates its defining condition by exhaustive quantification
over the carrier and returns ``(flag, witness)``, where the witness is the
lexicographically first violating tuple (quantifiers scanned in ascending id
order) or ``None`` when the flag holds.  ``classify`` aggregates all flags for
one element, sharing the radical/prime computations across predicates.

All predicates require a proper element; properness is a precondition, not a
flag failure.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from .lattice import clear_caches, lattice_flags, sqrt_table, _cached
from .module import (
    LatticeModule,
    maximal_elements,
    prime_elements,
    rad,
    residual_mm_table,
    stable_act_top_table,
)

__all__ = [
    "Classification",
    "PAttachments",
    "FLAG_NAMES",
    "is_prime_m",
    "is_primary_m",
    "is_semiprime",
    "is_radical_element",
    "is_classical_prime",
    "is_two_absorbing",
    "is_pseudo_primary",
    "is_pseudo_classical_primary",
    "p_attachments",
    "is_minimal_prime_over",
    "classify",
    "classify_all",
    "inject_classifier_fault",
]

FLAG_NAMES = (
    "prime",
    "primary",
    "maximal",
    "semiprime",
    "radical_element",
    "classical_prime",
    "two_absorbing",
    "pseudo_primary",
    "pseudo_classical_primary",
)

# Test-only fault injection: (flag name, element ids or None for all).
# When active, the named predicate's verdict is inverted; flipped verdicts
# carry no witness.  Used to exercise the failure-reporting paths.
_FAULT: tuple[str, frozenset[int] | None] | None = None


@contextmanager
def inject_classifier_fault(flag: str, elements=None):
    """Invert one classifier's verdict for the duration of the context."""
    global _FAULT
    if flag not in FLAG_NAMES:
        raise ValueError(f"unknown classifier flag {flag!r}")
    previous = _FAULT
    _FAULT = (flag, None if elements is None else frozenset(int(e) for e in elements))
    clear_caches()
    try:
        yield
    finally:
        _FAULT = previous
        clear_caches()


def _faulted(flag: str, element: int, value: bool, witness):
    if _FAULT is not None:
        name, targets = _FAULT
        if name == flag and (targets is None or element in targets):
            return (not value), None
    return value, witness


def _require_proper(M: LatticeModule, N: int) -> None:
    if N == M.top:
        raise ValueError(f"{M.label(N)} is not a proper element")


def _first(mask: np.ndarray):
    idx = np.argwhere(mask)
    return None if idx.size == 0 else tuple(int(v) for v in idx[0])


def is_prime_m(M: LatticeModule, N: int):
    """aX <= N implies X <= N or a I_M <= N; witness is a violating (a, X)."""
    _require_proper(M, N)
    below = M.leq[:, N]
    act_le = M.leq[M.act_table, N]
    atop_le = M.leq[M.act_table[:, M.top], N]
    w = _first(act_le & ~below[None, :] & ~atop_le[:, None])
    return _faulted("prime", N, w is None, w)


def is_primary_m(M: LatticeModule, N: int):
    """aX <= N implies X <= N or a^k I_M <= N for some k; witness (a, X)."""
    _require_proper(M, N)
    below = M.leq[:, N]
    act_le = M.leq[M.act_table, N]
    stable_le = M.leq[stable_act_top_table(M), N]
    w = _first(act_le & ~below[None, :] & ~stable_le[:, None])
    return _faulted("primary", N, w is None, w)


def is_semiprime(M: LatticeModule, N: int):
    """ab I_M <= N implies a I_M <= N or b I_M <= N; witness (a, b)."""
    _require_proper(M, N)
    L = M.lattice
    ab_top_le = M.leq[M.act_table[L.mul_table, M.top], N]
    atop_le = M.leq[M.act_table[:, M.top], N]
    w = _first(ab_top_le & ~atop_le[:, None] & ~atop_le[None, :])
    return _faulted("semiprime", N, w is None, w)


def is_radical_element(M: LatticeModule, N: int):
    """(N:I_M) equals its own radical; witness is ((N:I_M), sqrt(N:I_M))."""
    _require_proper(M, N)
    r = int(residual_mm_table(M)[N, M.top])
    s = int(sqrt_table(M.lattice)[r])
    ok = r == s
    return _faulted("radical_element", N, ok, None if ok else (r, s))


def _abk_le(M: LatticeModule, N: int) -> np.ndarray:
    """Boolean tensor [a, b, K]: (ab)K <= N."""
    L = M.lattice
    m = M.element_count
    abk = M.act_table[L.mul_table[:, :, None], np.arange(m)[None, None, :]]
    return M.leq[abk, N]


def is_classical_prime(M: LatticeModule, N: int):
    """abK <= N implies aK <= N or bK <= N; witness (a, b, K)."""
    _require_proper(M, N)
    ak_le = M.leq[M.act_table, N]
    w = _first(_abk_le(M, N) & ~ak_le[:, None, :] & ~ak_le[None, :, :])
    return _faulted("classical_prime", N, w is None, w)


def is_two_absorbing(M: LatticeModule, N: int):
    """abK <= N implies ab <= (N:I_M) or aK <= N or bK <= N; witness (a, b, K)."""
    _require_proper(M, N)
    L = M.lattice
    r = int(residual_mm_table(M)[N, M.top])
    ab_le = L.leq[L.mul_table, r]
    ak_le = M.leq[M.act_table, N]
    w = _first(_abk_le(M, N) & ~ab_le[:, :, None] & ~ak_le[:, None, :] & ~ak_le[None, :, :])
    return _faulted("two_absorbing", N, w is None, w)


def is_pseudo_primary(M: LatticeModule, N: int):
    """aX <= N implies a <= (N:I_M) or X <= rad(N); witness (a, X)."""
    _require_proper(M, N)
    L = M.lattice
    r = int(residual_mm_table(M)[N, M.top])
    act_le = M.leq[M.act_table, N]
    a_ok = L.leq[:, r]
    x_ok = M.leq[:, rad(M, N)]
    w = _first(act_le & ~a_ok[:, None] & ~x_ok[None, :])
    return _faulted("pseudo_primary", N, w is None, w)


def is_pseudo_classical_primary(M: LatticeModule, N: int):
    """abK <= N implies aK <= N or bK <= rad(N); witness (a, b, K)."""
    _require_proper(M, N)
    ak_le = M.leq[M.act_table, N]
    bk_rad_le = M.leq[M.act_table, rad(M, N)]
    w = _first(_abk_le(M, N) & ~ak_le[:, None, :] & ~bk_rad_le[None, :, :])
    return _faulted("pseudo_classical_primary", N, w is None, w)


@dataclass(frozen=True)
class PAttachments:
    """Attached primes, when defined: p-prime uses p = (N:I_M), the other two
    p = sqrt(N:I_M)."""

    p_prime: int | None
    p_primary: int | None
    p_pseudo_primary: int | None


def p_attachments(M: LatticeModule, N: int) -> PAttachments:
    _require_proper(M, N)
    L = M.lattice
    lflags = lattice_flags(L)
    r = int(residual_mm_table(M)[N, M.top])
    s = int(sqrt_table(L)[r])
    prime, _ = is_prime_m(M, N)
    primary, _ = is_primary_m(M, N)
    pseudo, _ = is_pseudo_primary(M, N)
    return PAttachments(
        p_prime=r if prime and lflags[r].prime else None,
        p_primary=s if primary and lflags[s].prime else None,
        p_pseudo_primary=s if pseudo and lflags[s].prime else None,
    )


def is_minimal_prime_over(M: LatticeModule, N: int, X: int) -> bool:
    """No prime strictly between X and the prime N."""
    if N not in prime_elements(M):
        raise ValueError(f"{M.label(N)} is not a prime element")
    if not M.le(X, N):
        raise ValueError(f"{M.label(X)} is not below {M.label(N)}")
    return all(q == N for q in prime_elements(M) if M.le(X, q) and M.le(q, N))


@dataclass(frozen=True)
class Classification:
    """All flags, attachments and witnesses for one proper element."""

    element: int
    label: str
    proper: bool
    prime: bool
    primary: bool
    maximal: bool
    semiprime: bool
    radical_element: bool
    classical_prime: bool
    two_absorbing: bool
    pseudo_primary: bool
    pseudo_classical_primary: bool
    p_prime: int | None
    p_primary: int | None
    p_pseudo_primary: int | None
    residual_top: int
    sqrt_residual_top: int
    rad: int
    minimal_prime_over: tuple[int, ...]
    witnesses: dict = field(default_factory=dict)

    def flag(self, name: str) -> bool:
        return bool(getattr(self, name))

    def as_dict(self) -> dict:
        return {
            "element": self.element,
            "label": self.label,
            "flags": {name: self.flag(name) for name in FLAG_NAMES},
            "attachments": {
                "p_prime": self.p_prime,
                "p_primary": self.p_primary,
                "p_pseudo_primary": self.p_pseudo_primary,
            },
            "residual_top": self.residual_top,
            "sqrt_residual_top": self.sqrt_residual_top,
            "rad": self.rad,
            "minimal_prime_over": list(self.minimal_prime_over),
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def classify(M: LatticeModule, N: int) -> Classification:
    """Aggregate classification of a proper element."""
    _require_proper(M, N)
    return classify_all(M)[N]


@_cached
def classify_all(M: LatticeModule) -> dict[int, Classification]:
    """Classification of every proper element, sharing rad/prime computations."""
    L = M.lattice
    lflags = lattice_flags(L)
    sqrts = sqrt_table(L)
    R = residual_mm_table(M)
    maximals = set(maximal_elements(M))
    primes = prime_elements(M)
    out = {}
    for n in M.proper_elements():
        checks = {
            "prime": is_prime_m(M, n),
            "primary": is_primary_m(M, n),
            "semiprime": is_semiprime(M, n),
            "radical_element": is_radical_element(M, n),
            "classical_prime": is_classical_prime(M, n),
            "two_absorbing": is_two_absorbing(M, n),
            "pseudo_primary": is_pseudo_primary(M, n),
            "pseudo_classical_primary": is_pseudo_classical_primary(M, n),
        }
        flags = {k: v[0] for k, v in checks.items()}
        witnesses = {k: v[1] for k, v in checks.items() if not v[0] and v[1] is not None}
        maximal, _ = _faulted("maximal", n, n in maximals, None)
        r = int(R[n, M.top])
        s = int(sqrts[r])
        minimal_over = tuple(
            x for x in M.elements()
            if M.le(x, n) and all(q == n for q in primes if M.le(x, q) and M.le(q, n))
        ) if n in primes else ()
        out[n] = Classification(
            element=n,
            label=M.label(n),
            proper=True,
            maximal=maximal,
            p_prime=r if flags["prime"] and lflags[r].prime else None,
            p_primary=s if flags["primary"] and lflags[s].prime else None,
            p_pseudo_primary=s if flags["pseudo_primary"] and lflags[s].prime else None,
            residual_top=r,
            sqrt_residual_top=s,
            rad=rad(M, n),
            minimal_prime_over=minimal_over,
            witnesses=witnesses,
            **flags,
        )
    return out
