"""Elements x + y*sqrt(d) of a real quadratic coefficient ring, and their
reduction into F_ell through a choice of square root of d mod ell.

Only split primes are supported: an odd prime ell with legendre(d, ell) = +1
admits two embeddings Z[sqrt(d)] -> F_ell, one per root. Inert primes would
need F_{ell**2} values and are rejected with a distinct error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Residue, legendre, require_odd_prime, trial_factor


class NotSplitError(ValueError):
    """ell has no square root of d mod ell: no rational embedding exists."""


class RamifiedError(ValueError):
    """ell divides d: neither split nor inert."""


def ensure_squarefree(d: int) -> None:
    if d < 2:
        raise ValueError(f"quadratic discriminant d={d} must be > 1")
    if any(e > 1 for _, e in trial_factor(d).factors):
        raise ValueError(f"d={d} is not square-free")


@dataclass(frozen=True)
class QuadInt:
    """x + y*sqrt(d); d=None marks a plain rational integer (y forced 0)."""

    x: int
    y: int = 0
    d: int | None = None

    def __post_init__(self) -> None:
        if self.d is None:
            if self.y != 0:
                raise ValueError("rational value must have y = 0")
        else:
            ensure_squarefree(self.d)

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def _joint_d(self, other: "QuadInt") -> int | None:
        if self.d is None:
            return other.d
        if other.d is None or other.d == self.d:
            return self.d
        raise ValueError(f"mixed quadratic fields: d={self.d} vs d={other.d}")

    def __add__(self, other: "QuadInt") -> "QuadInt":
        d = self._joint_d(other)
        return QuadInt(self.x + other.x, self.y + other.y, d)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        d = self._joint_d(other)
        return QuadInt(self.x - other.x, self.y - other.y, d)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.x, -self.y, self.d)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        d = self._joint_d(other)
        dd = 0 if d is None else d
        return QuadInt(
            self.x * other.x + dd * self.y * other.y,
            self.x * other.y + self.y * other.x,
            d,
        )

    def square_if_rational(self) -> int:
        """The rational integer value of self**2, defined only when x*y = 0."""
        if self.x != 0 and self.y != 0:
            raise ValueError(
                "square is not rational; supply an embedding first"
            )
        return self.x * self.x + (self.d or 0) * self.y * self.y

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        surd = f"sqrt({self.d})"
        ypart = surd if self.y == 1 else f"-{surd}" if self.y == -1 else f"{self.y}*{surd}"
        return ypart if self.x == 0 else f"{self.x}+{ypart}" if self.y > 0 else f"{self.x}{ypart}"


@dataclass(frozen=True)
class EmbeddingChoice:
    """A root r of d mod ell, selecting one of the two embeddings into F_ell."""

    ell: int
    root: int
    d: int

    def __post_init__(self) -> None:
        require_odd_prime(self.ell)
        if not 0 <= self.root < self.ell:
            raise ValueError(f"root {self.root} outside [0, {self.ell})")
        if (self.root * self.root - self.d) % self.ell != 0:
            raise ValueError(
                f"{self.root}^2 != {self.d} (mod {self.ell}): not an embedding"
            )


def splits(d: int, ell: int) -> bool:
    """True iff the odd prime ell splits in Q(sqrt(d)), i.e. d is a nonzero
    square mod ell."""
    ensure_squarefree(d)
    require_odd_prime(ell)
    if d % ell == 0:
        raise RamifiedError(f"{ell} divides d={d}: ramified, neither split nor inert")
    return legendre(d, ell) == 1


def embedding_choices(d: int, ell: int) -> tuple[EmbeddingChoice, EmbeddingChoice]:
    """Both square roots of d mod a split ell, smaller root first.

    Found by exhaustive search over [0, ell); ell is desk-scale by assumption.
    """
    if not splits(d, ell):
        raise NotSplitError(
            f"no rational embedding: {ell} is inert in Q(sqrt({d}))"
        )
    roots = [r for r in range(ell) if (r * r - d) % ell == 0]
    assert len(roots) == 2, roots
    return (
        EmbeddingChoice(ell, roots[0], d),
        EmbeddingChoice(ell, roots[1], d),
    )


def reduce_mod(v: QuadInt, e: EmbeddingChoice) -> Residue:
    """Image of v = x + y*sqrt(d) in F_ell under the embedding, (x + y*root) mod ell."""
    if v.d is not None and v.d != e.d:
        raise ValueError(f"value lives in Q(sqrt({v.d})), embedding in Q(sqrt({e.d}))")
    return Residue((v.x + v.y * e.root) % e.ell, e.ell)


def norm_discriminant(a: QuadInt, p: int, k: int) -> int:
    """The exact integer a**2 - 4*p**(k-1), the discriminant of the Frobenius
    characteristic polynomial x**2 - a*x + p**(k-1).

    Defined only when a**2 is rational (x = 0 or y = 0); otherwise the caller
    must reduce into F_ell first and work with residues.
    """
    if k < 2:
        raise ValueError(f"weight {k} must be >= 2")
    try:
        square = a.square_if_rational()
    except ValueError:
        raise ValueError(
            "discriminant not rational; supply embedding first"
        ) from None
    return square - 4 * p ** (k - 1)
