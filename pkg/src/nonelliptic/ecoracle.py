"""Brute-force elliptic-curve oracle: exhaustive point counts over small F_p
and a falsifier pitting concrete curves over Q against a certified
representation.

General Weierstrass coefficients (a1, a2, a3, a4, a6) are used throughout so
p = 2 and p = 3 need no special casing. The inner loops live in a compiled
kernel when available; a pure-Python twin is selected at import otherwise
(or when NONELLIPTIC_PURE=1 is set).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .arith import is_prime
from .repmodel import ResidualRep

from . import _counting_py

if os.environ.get("NONELLIPTIC_PURE") == "1":
    _counting = _counting_py
else:
    try:
        from . import _counting_fast as _counting  # type: ignore[no-redef]
    except ImportError:
        _counting = _counting_py

# O(p^6) per trace_set even in the kernel; beyond this the census is not a
# reasonable oracle.
ENUMERATION_BUDGET = 50


def counting_backend() -> str:
    """Name of the active kernel: "cython" or "pure"."""
    return _counting.BACKEND


def weierstrass_discriminant(a1: int, a2: int, a3: int, a4: int, a6: int) -> int:
    """Exact discriminant of y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class CurveFp:
    """A nonsingular general-Weierstrass curve over F_p (coefficients reduced)."""

    p: int
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, getattr(self, name) % self.p)
        if weierstrass_discriminant(self.a1, self.a2, self.a3, self.a4, self.a6) % self.p == 0:
            raise ValueError(f"singular curve over F_{self.p}")


@dataclass(frozen=True)
class CurveQ:
    """A nonsingular general-Weierstrass curve over Q with integer coefficients."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self) -> None:
        if self.disc == 0:
            raise ValueError("singular curve: discriminant is zero")

    @property
    def disc(self) -> int:
        return weierstrass_discriminant(self.a1, self.a2, self.a3, self.a4, self.a6)

    def reduce(self, p: int) -> CurveFp:
        """Reduction mod p of this model verbatim (no minimal model search)."""
        return CurveFp(p, self.a1 % p, self.a2 % p, self.a3 % p, self.a4 % p, self.a6 % p)


def count_points(curve: CurveFp) -> int:
    """#E(F_p) including the point at infinity, by exhaustive enumeration."""
    return 1 + _counting.count_affine(
        curve.p, curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    )


def trace_of_frobenius(curve: CurveFp) -> int:
    return curve.p + 1 - count_points(curve)


def _shard(args):
    p, cap, lo, hi = args
    return _counting.trace_set_range(p, cap, lo, hi)


def trace_set(p: int, cap: int | None = None, workers: int = 1) -> set[int]:
    """Set of Frobenius traces over ALL nonsingular general-Weierstrass curves
    over F_p (coefficients below `cap`, default the whole field).

    The coefficient space may be sharded by a1 across worker processes; the
    result is an order-independent union.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > ENUMERATION_BUDGET:
        raise ValueError(
            f"oracle scale exceeded: enumeration budget is p <= {ENUMERATION_BUDGET}"
        )
    if cap is None:
        cap = p
    if cap < 1:
        raise ValueError("coefficient bound must be >= 1")
    hi = min(cap, p)
    if workers <= 1 or hi == 1:
        return set(_counting.trace_set_range(p, cap, 0, hi))
    workers = min(workers, hi)
    bounds = [(hi * i) // workers for i in range(workers + 1)]
    jobs = [(p, cap, bounds[i], bounds[i + 1]) for i in range(workers)]
    out: set[int] = set()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_shard, jobs):
            out |= part
    return out


@dataclass(frozen=True)
class FalsificationWitness:
    """A prime where a curve's Frobenius trace contradicts the representation."""

    p: int
    curve_trace: int
    rep_trace: int
    ell: int


@dataclass(frozen=True)
class FalsifyResult:
    witness: FalsificationWitness | None
    compared: tuple[int, ...]

    @property
    def found(self) -> bool:
        return self.witness is not None

    def describe(self) -> str:
        if self.witness is None:
            return (
                "no witness found (not a proof of isomorphism; compared p in "
                f"{list(self.compared)})"
            )
        w = self.witness
        return (
            f"witness at p={w.p}: curve trace {w.curve_trace} != "
            f"{w.rep_trace} (mod {w.ell})"
        )


def falsify_curve(
    curve: CurveQ, rep: ResidualRep, prime_budget: list[int] | None = None
) -> FalsifyResult:
    """Search for a good-reduction prime where curve and representation traces
    disagree mod ell.

    Only primes away from ell and from the supplied model's discriminant are
    compared (no minimal models: skipping a prime is conservative, a reported
    witness is always sound). Returns the first mismatch in increasing p.
    """
    if rep.det_exponent != 1:
        raise ValueError(
            "falsification needs determinant chi (twist the representation first)"
        )
    if prime_budget is None:
        prime_budget = rep.witness_primes()
    compared = []
    witness = None
    for p in sorted(set(prime_budget)):
        if p not in rep.traces or p == rep.ell or curve.disc % p == 0:
            continue
        compared.append(p)
        t = trace_of_frobenius(curve.reduce(p))
        if t % rep.ell != rep.traces[p]:
            witness = FalsificationWitness(p, t, rep.traces[p], rep.ell)
            break
    if not compared:
        raise ValueError(
            "insufficient overlap: no budget prime is comparable "
            "(good reduction, stored trace, p != ell)"
        )
    return FalsifyResult(witness, tuple(compared))
