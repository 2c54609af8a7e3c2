"""Bounded Reinhardt domain families and their exact monomial moments.

Three families are supported: the unit polydisc, the unit ball, and the
rational power-cut triangle  H(m, n) = { |z1|^(m/n) < |z2| < 1 }  in C^2 with
m, n coprime positive integers.  For each family the radial moment

    M(c) = integral over the domain of  |z1|^c1 * ... * |zn|^cn  dV

has a closed form with exact rational finiteness predicates:

  polydisc   M(c) = prod_i 2*pi/(c_i + 2)                 iff c_i + 2 > 0
  H(m, n)    M(c) = (2*pi)^2 * m / ((c1+2)*(n*(c1+2)+m*(c2+2)))
                                                          iff c1 + 2 > 0 and
                                                              n*(c1+2)+m*(c2+2) > 0
  ball       M(c) = pi^n * prod_i Gamma(c_i/2+1) / Gamma(n + sum(c_i)/2 + 1)
                                                          iff c_i + 2 > 0

(The polydisc and triangle forms follow from iterated one-dimensional radial
integrals; the ball form is the Dirichlet integral over the simplex of squared
radii.)  Every finiteness decision is an exact comparison of rationals; no
floating point enters membership logic.  The quadrature module independently
validates the three closed forms, and the bootstrap check suite refuses to
report indices until that validation passes.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import DimensionMismatch, ParseError
from .exact import ExactValue, as_fraction, make_exact

MultiIndex = Tuple[int, ...]


class Family(enum.Enum):
    POLYDISC = "polydisc"
    BALL = "ball"
    HARTOGS = "hartogs"


@dataclass(frozen=True)
class DomainSpec:
    """One of the supported Reinhardt domain families.

    ``m``/``n`` are meaningful only for ``Family.HARTOGS`` (the modulus
    inequality |z1|^(m/n) < |z2| < 1) and are kept coprime.
    """

    family: Family
    dim: int
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ParseError(f"domain dimension must be >= 1, got {self.dim}")
        if self.family is Family.HARTOGS:
            if self.dim != 2:
                raise ParseError("hartogs domains live in C^2")
            if self.m < 1 or self.n < 1:
                raise ParseError("hartogs exponents must be positive")
            if math.gcd(self.m, self.n) != 1:
                raise ParseError("hartogs exponents must be coprime")

    @property
    def axis_meets_hyperplane(self) -> Tuple[bool, ...]:
        """Per axis i: does the domain meet {z_i = 0}?  Derived, never set."""
        if self.family is Family.HARTOGS:
            return (True, False)
        return (True,) * self.dim

    def spec_string(self) -> str:
        if self.family is Family.HARTOGS:
            return f"hartogs:{self.m}/{self.n}"
        return f"{self.family.value}:{self.dim}"

    def __str__(self):
        return self.spec_string()


def polydisc(dim: int) -> DomainSpec:
    return DomainSpec(Family.POLYDISC, dim)


def ball(dim: int) -> DomainSpec:
    return DomainSpec(Family.BALL, dim)


def hartogs(m: int, n: int) -> DomainSpec:
    """Power-cut triangle H(m, n); non-coprime input is reduced with a warning."""
    if m < 1 or n < 1:
        raise ParseError(f"hartogs exponents must be positive, got {m}/{n}")
    g = math.gcd(m, n)
    if g > 1:
        warnings.warn(f"hartogs:{m}/{n} reduced to hartogs:{m // g}/{n // g}",
                      stacklevel=2)
        m, n = m // g, n // g
    return DomainSpec(Family.HARTOGS, 2, m, n)


def parse_domain(spec: str) -> DomainSpec:
    """Parse 'polydisc:<n>' | 'ball:<n>' | 'hartogs:<m>/<n>'."""
    text = spec.strip().lower()
    head, sep, tail = text.partition(":")
    if not sep or not tail:
        raise ParseError(f"malformed domain spec {spec!r}")
    try:
        if head == "polydisc":
            return polydisc(int(tail))
        if head == "ball":
            return ball(int(tail))
        if head == "hartogs":
            m_str, sep2, n_str = tail.partition("/")
            if not sep2:
                raise ParseError(f"hartogs spec needs <m>/<n>, got {spec!r}")
            return hartogs(int(m_str), int(n_str))
    except ValueError as exc:
        raise ParseError(f"malformed domain spec {spec!r}: {exc}") from None
    raise ParseError(f"unknown domain family {head!r}")


# ---------------------------------------------------------------------------
# exponents
# ---------------------------------------------------------------------------

def check_exponent(p) -> Fraction:
    """Validate a positive rational exponent and return it as a Fraction."""
    q = as_fraction(p)
    if q <= 0:
        raise ParseError(f"exponent must be positive, got {q}")
    return q


def conjugate_exponent(p) -> Fraction:
    """q with 1/p + 1/q = 1; defined for p > 1 and an exact involution."""
    p = check_exponent(p)
    if p <= 1:
        raise ParseError(f"conjugate exponent needs p > 1, got {p}")
    return p / (p - 1)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Moment:
    """Result of a monomial integral: Divergent, or a strictly positive exact value."""

    value: Optional[ExactValue]  # None <=> Divergent

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __float__(self) -> float:
        return float(self.value) if self.value is not None else math.inf

    def __str__(self):
        return str(self.value) if self.value is not None else "divergent"

    @staticmethod
    def divergent() -> "Moment":
        return Moment(None)

    @staticmethod
    def finite(value: ExactValue) -> "Moment":
        return Moment(value)


def _check_dim(d: DomainSpec, seq: Sequence) -> None:
    if len(seq) != d.dim:
        raise DimensionMismatch(
            f"expected length {d.dim} for {d}, got {len(seq)}")


def radial_moment(d: DomainSpec, c: Sequence) -> Moment:
    """Exact value of the integral of prod |z_i|^(c_i) dV over the domain.

    ``c`` may have any rational entries; this is the atomic quantity behind
    monomial norms, the pairing, and the projection.
    """
    _check_dim(d, c)
    c = [as_fraction(ci) for ci in c]
    if d.family is Family.POLYDISC:
        coeff = Fraction(1)
        for ci in c:
            if ci + 2 <= 0:
                return Moment.divergent()
            coeff *= Fraction(2) / (ci + 2)
        return Moment.finite(make_exact(coeff, 2 * d.dim))
    if d.family is Family.HARTOGS:
        c1, c2 = c
        inner = c1 + 2
        outer = d.n * (c1 + 2) + d.m * (c2 + 2)
        if inner <= 0 or outer <= 0:
            return Moment.divergent()
        return Moment.finite(make_exact(Fraction(4 * d.m) / (inner * outer), 4))
    # ball: Dirichlet integral over the simplex of squared radii
    args = []
    total = Fraction(0)
    for ci in c:
        if ci + 2 <= 0:
            return Moment.divergent()
        args.append(ci / 2 + 1)
        total += ci / 2
    return Moment.finite(
        make_exact(1, 2 * d.dim, gamma_num=tuple(args),
                   gamma_den=(total + d.dim + 1,)))


def moment(d: DomainSpec, alpha: Sequence[int], p) -> Moment:
    """Exact L^p moment of the Laurent monomial with exponent ``alpha``."""
    _check_dim(d, alpha)
    p = check_exponent(p)
    return radial_moment(d, [p * a for a in alpha])


def volume(d: DomainSpec) -> Moment:
    """Euclidean volume, i.e. the moment of the zero multi-index."""
    return moment(d, (0,) * d.dim, 2)


# ---------------------------------------------------------------------------
# geometry predicates
# ---------------------------------------------------------------------------

def holomorphy_ok(d: DomainSpec, alpha: Sequence[int]) -> bool:
    """Is z^alpha holomorphic on the domain?

    Negative powers are admissible exactly on axes the domain does not meet.
    """
    _check_dim(d, alpha)
    return all(a >= 0 or not meets
               for a, meets in zip(alpha, d.axis_meets_hyperplane))


def shadow_contains(d: DomainSpec, r: Sequence) -> bool:
    """Exact membership of a modulus vector in the Reinhardt shadow."""
    _check_dim(d, r)
    r = [as_fraction(ri) for ri in r]
    if any(ri < 0 for ri in r):
        raise ValueError("moduli must be non-negative")
    if d.family is Family.POLYDISC:
        return all(ri < 1 for ri in r)
    if d.family is Family.BALL:
        return sum(ri * ri for ri in r) < 1
    r1, r2 = r
    return r1 ** d.m < r2 ** d.n and r2 < 1


def point_in_domain(d: DomainSpec, z: Sequence[complex]) -> bool:
    """Membership test for a point of C^n (moduli routed through the shadow)."""
    _check_dim(d, z)
    return shadow_contains(d, [abs(complex(zi)) for zi in z])
