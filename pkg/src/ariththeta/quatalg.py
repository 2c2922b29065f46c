"""Exact arithmetic in rational quaternion algebras.

An algebra is presented by nonzero rational structure constants (a, b) with

    i^2 = a,  j^2 = b,  ij = -ji.

Elements are stored with exact rational coefficients against the basis
1, i, j, ij.  The reduced trace of x0 + x1 i + x2 j + x3 ij is 2*x0 and the
reduced norm is x0^2 - a x1^2 - b x2^2 + ab x3^2.  Floating point never
enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import AlgebraMismatch, SearchExhausted, ZeroStructureConstant
from .numtheory import factorint, is_prime, rational_valuation

Rational = Fraction | int

INFINITE_PLACE = "oo"


def hilbert_symbol(a: Rational, b: Rational, place) -> int:
    """Hilbert symbol (a, b) at a finite prime or at INFINITE_PLACE.

    Returns +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over the
    completion.  Computed by the standard tame/wild case analysis on
    valuations and square classes.
    """
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise ZeroStructureConstant("hilbert symbol needs nonzero entries")
    if place == INFINITE_PLACE:
        return -1 if (a < 0 and b < 0) else 1
    p = int(place)
    if not is_prime(p):
        raise ValueError(f"not a prime: {p}")
    alpha = rational_valuation(a, p)
    beta = rational_valuation(b, p)
    u = a / Fraction(p) ** alpha  # p-unit parts
    v = b / Fraction(p) ** beta
    if p != 2:
        # (a,b)_p = (-1)^(alpha beta eps(p)) (u|p)^beta (v|p)^alpha
        sign = 1
        if alpha % 2 and beta % 2 and (p - 1) // 2 % 2:
            sign = -sign
        if beta % 2:
            sign *= _legendre_unit(u, p)
        if alpha % 2:
            sign *= _legendre_unit(v, p)
        return sign
    # p = 2: (a,b)_2 = (-1)^(eps(u)eps(v) + alpha w(v) + beta w(u))
    e = _eps2(u) * _eps2(v) + alpha * _omega2(v) + beta * _omega2(u)
    return -1 if e % 2 else 1


def _legendre_unit(u: Fraction, p: int) -> int:
    """Legendre symbol of a p-unit rational modulo the odd prime p."""
    num = u.numerator % p
    den = u.denominator % p
    r = num * pow(den, -1, p) % p
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def _eps2(u: Fraction) -> int:
    """(u - 1)/2 mod 2 for a 2-adic unit rational."""
    r = _unit_mod_2k(u, 8)
    return ((r - 1) // 2) % 2


def _omega2(u: Fraction) -> int:
    """(u^2 - 1)/8 mod 2 for a 2-adic unit rational."""
    r = _unit_mod_2k(u, 16)
    return ((r * r - 1) // 8) % 2


def _unit_mod_2k(u: Fraction, modulus: int) -> int:
    num = u.numerator % modulus
    den = u.denominator % modulus
    return num * pow(den, -1, modulus) % modulus


@dataclass(frozen=True)
class QuaternionAlgebra:
    """The quaternion algebra (a, b) over Q."""

    a: Fraction
    b: Fraction

    @cached_property
    def ramified_primes(self) -> frozenset[int]:
        """Finite primes where the algebra is a division algebra."""
        candidates = {2}
        for q in (self.a, self.b):
            candidates.update(factorint(q.numerator))
            candidates.update(factorint(q.denominator))
        return frozenset(
            p for p in candidates if hilbert_symbol(self.a, self.b, p) == -1
        )

    @cached_property
    def discriminant(self) -> int:
        """Product of the finite ramified primes (squarefree)."""
        out = 1
        for p in sorted(self.ramified_primes):
            out *= p
        return out

    @property
    def is_definite(self) -> bool:
        """Ramified at the infinite place, i.e. a < 0 and b < 0."""
        return hilbert_symbol(self.a, self.b, INFINITE_PLACE) == -1

    @property
    def is_indefinite(self) -> bool:
        return not self.is_definite

    def element(self, x0: Rational, x1: Rational = 0, x2: Rational = 0, x3: Rational = 0) -> "QuaternionElement":
        return QuaternionElement(
            self, (Fraction(x0), Fraction(x1), Fraction(x2), Fraction(x3))
        )

    @property
    def one(self) -> "QuaternionElement":
        return self.element(1)

    @property
    def i(self) -> "QuaternionElement":
        return self.element(0, 1)

    @property
    def j(self) -> "QuaternionElement":
        return self.element(0, 0, 1)

    @property
    def ij(self) -> "QuaternionElement":
        return self.element(0, 0, 0, 1)

    def __repr__(self) -> str:
        return f"QuaternionAlgebra({self.a}, {self.b})"


def make_algebra(a: Rational, b: Rational) -> QuaternionAlgebra:
    """Construct (a, b) with its ramification data; rejects zero constants."""
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise ZeroStructureConstant("structure constants must be nonzero")
    return QuaternionAlgebra(a, b)


@dataclass(frozen=True)
class QuaternionElement:
    """Element x0 + x1 i + x2 j + x3 ij with exact rational coefficients."""

    algebra: QuaternionAlgebra
    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]

    def _check(self, other: "QuaternionElement") -> None:
        if self.algebra != other.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other: "QuaternionElement") -> "QuaternionElement":
        self._check(other)
        return QuaternionElement(
            self.algebra,
            tuple(x + y for x, y in zip(self.coeffs, other.coeffs)),  # type: ignore[arg-type]
        )

    def __sub__(self, other: "QuaternionElement") -> "QuaternionElement":
        self._check(other)
        return QuaternionElement(
            self.algebra,
            tuple(x - y for x, y in zip(self.coeffs, other.coeffs)),  # type: ignore[arg-type]
        )

    def __neg__(self) -> "QuaternionElement":
        return QuaternionElement(self.algebra, tuple(-x for x in self.coeffs))  # type: ignore[arg-type]

    def __mul__(self, other) -> "QuaternionElement":
        if isinstance(other, (int, Fraction)):
            s = Fraction(other)
            return QuaternionElement(self.algebra, tuple(s * x for x in self.coeffs))  # type: ignore[arg-type]
        self._check(other)
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coeffs
        y0, y1, y2, y3 = other.coeffs
        return QuaternionElement(
            self.algebra,
            (
                x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
                x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
                x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
                x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
            ),
        )

    def __rmul__(self, other) -> "QuaternionElement":
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def conj(self) -> "QuaternionElement":
        x0, x1, x2, x3 = self.coeffs
        return QuaternionElement(self.algebra, (x0, -x1, -x2, -x3))

    def trace(self) -> Fraction:
        return 2 * self.coeffs[0]

    def norm(self) -> Fraction:
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coeffs
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    @property
    def is_trace_zero(self) -> bool:
        return self.coeffs[0] == 0

    def quadratic_value(self) -> Fraction:
        """Q(x) = nu(x), meaningful on the trace-zero space."""
        return self.norm()

    def inner(self, other: "QuaternionElement") -> Fraction:
        """(x, y) = nu(x + y) - nu(x) - nu(y), so (x, x) = 2 Q(x)."""
        return (self + other).norm() - self.norm() - other.norm()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self) -> str:
        names = ("", "i", "j", "ij")
        parts = [f"{c}{n}" for c, n in zip(self.coeffs, names) if c != 0]
        return "Quat(" + (" + ".join(parts) if parts else "0") + ")"


def definite_twin(alg: QuaternionAlgebra, p: int, search_bound: int = 60) -> QuaternionAlgebra:
    """Definite algebra whose finite ramification is ram(alg) xor {p}.

    Found by searching structure constants (a', b') with |a'|, |b'| up to
    search_bound.  Exhausting the bound raises SearchExhausted; that signals
    the bound, not nonexistence.
    """
    if alg.is_definite:
        raise ValueError("definite_twin expects an indefinite algebra")
    if not is_prime(p):
        raise ValueError(f"not a prime: {p}")
    target = frozenset(alg.ramified_primes ^ {p})
    for height in range(1, search_bound + 1):
        for ap in range(1, height + 1):
            for bp in range(1, height + 1):
                if max(ap, bp) != height:
                    continue
                cand = QuaternionAlgebra(Fraction(-ap), Fraction(-bp))
                if cand.ramified_primes == target:
                    return cand
    raise SearchExhausted(
        f"no definite (a', b') with ramification {sorted(target)} and "
        f"|a'|, |b'| <= {search_bound}"
    )


def indefinite_algebra_of_discriminant(d: int, search_bound: int = 60) -> QuaternionAlgebra:
    """Indefinite algebra with squarefree discriminant d (even number of primes)."""
    if d == 1:
        return make_algebra(1, 1)
    target = frozenset(factorint(d))
    if any(e > 1 for e in factorint(d).values()):
        raise ValueError("discriminant must be squarefree")
    for height in range(1, search_bound + 1):
        for ap in range(-height, height + 1):
            for bp in range(-height, height + 1):
                if ap == 0 or bp == 0 or max(abs(ap), abs(bp)) != height:
                    continue
                if ap < 0 and bp < 0:
                    continue
                cand = QuaternionAlgebra(Fraction(ap), Fraction(bp))
                if cand.ramified_primes == target:
                    return cand
    raise SearchExhausted(f"no indefinite algebra of discriminant {d} within {search_bound}")
