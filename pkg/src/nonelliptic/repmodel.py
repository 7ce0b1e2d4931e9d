"""Newform eigenvalue systems and the residual mod-ell representations they
induce.

A residual representation is described purely by data: the reduced traces of
Frobenius at the stored good primes, the exponent m of the cyclotomic
character giving the determinant, and the known prime-to-ell conductor. The
eigenvalue map is sparse; every downstream operation must tolerate missing
primes and say so instead of inventing values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

from .arith import is_prime, require_odd_prime, trial_factor
from .quadfield import EmbeddingChoice, QuadInt, embedding_choices, reduce_mod


class BadReductionError(ValueError):
    """ell divides the level: no residual representation from this recipe."""


class InsufficientDataError(KeyError):
    """The sparse eigenvalue map has no entry for the requested prime."""


class RamanujanBoundWarning(UserWarning):
    """An eigenvalue violates |a_p| <= 2 p^((k-1)/2): almost surely a typo."""


@dataclass(frozen=True)
class NewformData:
    """Level, weight, coefficient field and a sparse prime -> a_p map.

    Only good primes (p not dividing the level) may carry eigenvalues.
    """

    form_id: str
    level: int
    weight: int
    d: int | None  # None: rational coefficient field; else Q(sqrt(d))
    eigenvalues: dict[int, QuadInt]
    claimed_conductor_equality: bool = False
    notes: str = ""

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError(f"level {self.level} must be positive")
        if self.weight < 2:
            raise ValueError(f"weight {self.weight} must be >= 2")
        for p, a in self.eigenvalues.items():
            if not is_prime(p):
                raise ValueError(f"eigenvalue key {p} is not prime")
            if self.level % p == 0:
                raise ValueError(
                    f"eigenvalue at p={p} dividing the level {self.level}"
                )
            if a.d is not None and a.d != self.d:
                raise ValueError(
                    f"a_{p} lives in Q(sqrt({a.d})) but the form field is {self.d}"
                )
            self._ramanujan_check(p, a)

    def _ramanujan_check(self, p: int, a: QuadInt) -> None:
        # Only testable when a_p**2 is rational; a violation is a data-entry
        # smell, not an error (no downstream logic relies on the bound).
        if a.x != 0 and a.y != 0:
            return
        if a.square_if_rational() > 4 * p ** (self.weight - 1):
            warnings.warn(
                f"a_{p} of form {self.form_id} violates the Ramanujan bound "
                f"a_p^2 <= 4 p^(k-1)",
                RamanujanBoundWarning,
                stacklevel=3,
            )

    @property
    def bad_primes(self) -> tuple[int, ...]:
        if self.level == 1:
            return ()
        return trial_factor(self.level).primes()

    def good_primes(self) -> list[int]:
        return sorted(self.eigenvalues)


@dataclass(frozen=True)
class ResidualRep:
    """A 2-dimensional mod-ell representation given by trace data.

    traces maps p -> trace(Frob p) as an integer in [0, ell) for the stored
    primes p coprime to level*ell. The determinant is the det_exponent-th
    power of the mod-ell cyclotomic character.
    """

    ell: int
    det_exponent: int
    traces: dict[int, int]
    serre_conductor: int
    conductor_is_exact: bool
    source: NewformData
    embedding: EmbeddingChoice | None = None
    twist_exponent: int = 0

    def __post_init__(self) -> None:
        require_odd_prime(self.ell)
        if not 1 <= self.det_exponent <= self.ell - 2:
            raise ValueError(
                f"determinant exponent {self.det_exponent} outside [1, {self.ell - 2}]"
            )
        if self.serre_conductor % self.ell == 0:
            raise ValueError("Serre conductor must be prime to ell")
        for p, t in self.traces.items():
            if p % self.ell == 0 or self.serre_conductor % p == 0:
                raise ValueError(f"trace key {p} not coprime to N*ell")
            if not 0 <= t < self.ell:
                raise ValueError(f"trace at {p} not reduced mod {self.ell}")

    def trace_at(self, p: int) -> int:
        try:
            return self.traces[p]
        except KeyError:
            raise InsufficientDataError(
                f"insufficient data: no eigenvalue stored at p={p}"
            ) from None

    def witness_primes(self) -> list[int]:
        return sorted(self.traces)


def residual_rep(
    form: NewformData, ell: int, embedding: EmbeddingChoice | None = None
) -> ResidualRep:
    """The mod-ell reduction of the eigenvalue system of `form`.

    For a quadratic coefficient field ell must split; the embedding defaults
    to the smaller square root of d mod ell. a_ell, when stored, is dropped:
    only primes away from level*ell are usable Frobenius traces.
    """
    require_odd_prime(ell)
    if form.level % ell == 0:
        raise BadReductionError(
            f"bad reduction prime: {ell} divides the level {form.level}"
        )

    if form.d is not None:
        if embedding is None:
            embedding = embedding_choices(form.d, ell)[0]
        elif embedding.ell != ell or embedding.d != form.d:
            raise ValueError("embedding does not match (d, ell)")
    elif embedding is not None:
        raise ValueError("rational coefficient field takes no embedding")

    traces: dict[int, int] = {}
    for p, a in form.eigenvalues.items():
        if p == ell:
            continue
        if embedding is not None:
            traces[p] = reduce_mod(a, embedding).value
        else:
            traces[p] = a.x % ell

    m = (form.weight - 1) % (ell - 1)
    if m == 0:
        # det would be the trivial character; nothing in this toolkit needs it
        raise ValueError(
            f"determinant exponent (k-1) mod (ell-1) vanishes for ell={ell}"
        )
    return ResidualRep(
        ell=ell,
        det_exponent=m,
        traces=traces,
        serre_conductor=form.level,
        conductor_is_exact=form.claimed_conductor_equality,
        source=form,
        embedding=embedding,
    )


@dataclass(frozen=True)
class TwistSpec:
    """Exponent t of the cyclotomic twist: traces gain p**t, det gains 2t."""

    ell: int
    exponent: int

    def __post_init__(self) -> None:
        require_odd_prime(self.ell)
        if not 0 <= self.exponent < self.ell - 1:
            raise ValueError("twist exponent must be reduced mod ell-1")


def twist(rep: ResidualRep, t: int) -> ResidualRep:
    """Tensor by the t-th power of the cyclotomic character."""
    ell = rep.ell
    t = t % (ell - 1)
    m = (rep.det_exponent + 2 * t) % (ell - 1)
    if m == 0:
        raise ValueError("twist would trivialize the determinant")
    return replace(
        rep,
        det_exponent=m,
        traces={p: (tr * pow(p, t, ell)) % ell for p, tr in rep.traces.items()},
        twist_exponent=(rep.twist_exponent + t) % (ell - 1),
    )


def det_chi_twist_exponent(det_exponent: int, ell: int) -> TwistSpec:
    """The twist exponent t with det_exponent + 2t ≡ 1 (mod ell-1).

    Solvable iff det_exponent is odd. Of the two solutions mod ell-1 we take
    the smaller non-negative one, i.e. (1-m)/2 reduced mod (ell-1)/2; for
    m = 3 this is (ell-3)/2 and for m = 1 it is 0.
    """
    require_odd_prime(ell)
    if det_exponent % 2 == 0:
        raise ValueError(
            f"no determinant-chi twist exists: exponent {det_exponent} is even"
        )
    t = ((1 - det_exponent) // 2) % ((ell - 1) // 2)
    return TwistSpec(ell, t)


def twist_to_det_chi(rep: ResidualRep) -> ResidualRep:
    """The cyclotomic twist of rep whose determinant is chi itself."""
    spec = det_chi_twist_exponent(rep.det_exponent, rep.ell)
    out = twist(rep, spec.exponent)
    assert out.det_exponent == 1
    return out


def available_witness_primes(rep: ResidualRep, predicate=None) -> list[int]:
    """Sorted stored primes, optionally filtered by a predicate on p."""
    ps = rep.witness_primes()
    if predicate is None:
        return ps
    return [p for p in ps if predicate(p)]
