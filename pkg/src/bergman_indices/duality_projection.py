"""Duality pairing, exact Bergman projection, and norm-inequality checks.

The test-function class is the mixed monomial sum  f = sum c * z^alpha *
zbar^gamma.  On a Reinhardt domain the angular integrals select matching
frequencies, so the pairing  <f, g> = integral f * conj(g)  against a Laurent
polynomial g collapses to radial moments and is exactly computable, as is the
orthogonal projection onto holomorphic functions:

    B(c z^alpha zbar^gamma) = c * (M / ||z^delta||_2^2) * z^delta,
    delta = alpha - gamma,   M = radial moment at exponents alpha+gamma+delta,

whenever delta is allowable at exponent 2 (and 0 otherwise).  The coefficient
ratio is always a plain rational: the pi powers and Gamma factors cancel.
That exactness is what makes the projection-norm witnesses sharp: the ratio
||Bf||_p / ||f||_p for a single mixed monomial flips from finite to divergent
at an exact rational exponent.

The interpolation consequences checked here are the log-convexity bound
||f||_r <= ||f||_p^(1-t) * ||f||_q^t (with 1/r = (1-t)/p + t/q) and the
pairing bound |<f, g>| <= ||f||_p ||g||_q; single-monomial norms and all
exponent-2 norms are exact, everything else routes through quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import quadrature
from .domains import (DomainSpec, MultiIndex, check_exponent,
                      conjugate_exponent, holomorphy_ok, moment, radial_moment)
from .errors import NotIntegrable, ParseError
from .exact import ExactMix, ExactValue, QComplex, as_fraction
from .index_sets import member, _window_box
from .quadrature import QuadConfig, lp_norm, lp_norms_shared


def _as_qcomplex(c) -> QComplex:
    return c if isinstance(c, QComplex) else QComplex.from_complex(c)


@dataclass(frozen=True)
class MixedMonomialSum:
    """Finite sum of terms coeff * z^alpha * zbar^gamma with gamma >= 0.

    Terms are kept canonical: merged on (alpha, gamma), zero coefficients
    dropped, sorted lexicographically.  Coefficients are exact rational
    complex numbers (floats are converted bit-exactly).
    """

    terms: Tuple[Tuple[QComplex, MultiIndex, MultiIndex], ...]

    @staticmethod
    def make(terms: Sequence[tuple]) -> "MixedMonomialSum":
        merged: dict = {}
        dim = None
        for c, alpha, gamma in terms:
            alpha, gamma = tuple(alpha), tuple(gamma)
            if dim is None:
                dim = len(alpha)
            if len(alpha) != dim or len(gamma) != dim:
                raise ParseError("inconsistent term dimensions")
            if any(g < 0 for g in gamma):
                raise ParseError("conjugate exponents gamma must be >= 0")
            key = (alpha, gamma)
            q = _as_qcomplex(c)
            merged[key] = merged.get(key, QComplex()) + q
        out = tuple((q, a, g) for (a, g), q in sorted(merged.items())
                    if not q.is_zero())
        return MixedMonomialSum(out)

    @staticmethod
    def monomial(c, alpha, gamma=None) -> "MixedMonomialSum":
        alpha = tuple(alpha)
        gamma = tuple(gamma) if gamma is not None else (0,) * len(alpha)
        return MixedMonomialSum.make([(c, alpha, gamma)])

    @property
    def dim(self) -> int:
        if not self.terms:
            raise ValueError("empty sum has no dimension")
        return len(self.terms[0][1])

    def is_zero(self) -> bool:
        return not self.terms

    def is_laurent(self) -> bool:
        return all(not any(g) for _q, _a, g in self.terms)

    def p_integrable(self, d: DomainSpec, p) -> bool:
        """Exact check that every term lies in L^p."""
        p = check_exponent(p)
        return all(
            radial_moment(d, [p * (a + g) for a, g in zip(alpha, gamma)]).is_finite
            for _q, alpha, gamma in self.terms)

    def as_integrand(self) -> quadrature.MonomialSumIntegrand:
        return quadrature.MonomialSumIntegrand(
            [(complex(q), alpha, gamma) for q, alpha, gamma in self.terms])

    def evaluate(self, z: Sequence[complex]) -> complex:
        total = 0j
        for q, alpha, gamma in self.terms:
            v = complex(q)
            for zi, a, g in zip(z, alpha, gamma):
                if a:
                    v *= zi ** a
                if g:
                    v *= zi.conjugate() ** g
            total += v
        return total

    def as_term_dicts(self) -> list:
        from .exact import format_fraction
        return [{"c": [float(q.re), float(q.im)],
                 "c_exact": [format_fraction(q.re), format_fraction(q.im)],
                 "alpha": list(alpha), "gamma": list(gamma)}
                for q, alpha, gamma in self.terms]


def laurent(terms: Sequence[tuple]) -> MixedMonomialSum:
    """Holomorphic-side sum: coefficient/exponent pairs with gamma = 0."""
    return MixedMonomialSum.make(
        [(c, alpha, (0,) * len(tuple(alpha))) for c, alpha in terms])


def _require_laurent(d: DomainSpec, g: MixedMonomialSum, name: str) -> None:
    if not g.is_laurent():
        raise ParseError(f"{name} must have no conjugated factors")
    for _q, alpha, _g in g.terms:
        if not holomorphy_ok(d, alpha):
            raise ParseError(
                f"{name} contains z^{alpha}, not holomorphic on {d}")


# ---------------------------------------------------------------------------
# pairing and projection
# ---------------------------------------------------------------------------

def pairing(d: DomainSpec, f: MixedMonomialSum, g: MixedMonomialSum) -> ExactMix:
    """Exact value of <f, g> = integral of f * conj(g) over the domain.

    The angular integral vanishes unless the term pair shares its frequency
    alpha - gamma, leaving the radial moment at the combined modulus
    exponents.  Every cross term must be absolutely integrable.  The usual
    call has a holomorphic right-hand side, but any mixed sum is accepted
    (conjugation just reflects its frequency).
    """
    result = ExactMix()
    for qf, af, gf in f.terms:
        for qg, ag, gg in g.terms:
            exps = [a + b + c + e for a, b, c, e in zip(af, gf, ag, gg)]
            cross = radial_moment(d, exps)
            if not cross.is_finite:
                raise NotIntegrable(
                    f"cross term ({af},{gf}) x ({ag},{gg}) "
                    f"is not absolutely integrable")
            if all(a - b == c - e for a, b, c, e in zip(af, gf, ag, gg)):
                result.add_scaled(qf * qg.conjugate(), cross.value)
    return result


def _rational_ratio(num: ExactValue, den: ExactValue) -> Fraction:
    ratio = num / den
    if ratio.pi_half != 0 or ratio.gamma_num or ratio.gamma_den:
        raise RuntimeError(f"internal: projection ratio not rational: {ratio}")
    return ratio.coeff


def project(d: DomainSpec, f: MixedMonomialSum) -> MixedMonomialSum:
    """Exact orthogonal projection of a mixed monomial sum onto holomorphics.

    Acts term by term; a term maps to a rational multiple of z^(alpha-gamma)
    when that exponent is allowable at 2, and to zero otherwise.
    """
    out = []
    for q, alpha, gamma in f.terms:
        if not radial_moment(d, [2 * (a + g) for a, g in zip(alpha, gamma)]).is_finite:
            raise NotIntegrable(f"term alpha={alpha} gamma={gamma} not in L^2")
        delta = tuple(a - g for a, g in zip(alpha, gamma))
        if not member(d, delta, 2):
            continue
        cross = radial_moment(d, [a + g + dl for a, g, dl
                                  in zip(alpha, gamma, delta)])
        if not cross.is_finite:
            continue
        ratio = _rational_ratio(cross.value, moment(d, delta, 2).value)
        out.append((q * ratio, delta, (0,) * len(delta)))
    return MixedMonomialSum.make(out) if out else MixedMonomialSum(())


@dataclass(frozen=True)
class ProjectionRatio:
    divergent: bool
    ratio: Optional[float]  # ||Bf||_p / ||f||_p when finite


def projection_ratio(d: DomainSpec, alpha, gamma, p) -> ProjectionRatio:
    """Exact finiteness verdict (and float value) of ||Bf||_p / ||f||_p.

    f = z^alpha zbar^gamma must lie in L^2 and L^p; the verdict is divergent
    exactly when the projected monomial has a divergent p-th moment while its
    coefficient is nonzero.
    """
    alpha, gamma = tuple(alpha), tuple(gamma)
    p = check_exponent(p)
    mods = [a + g for a, g in zip(alpha, gamma)]
    norm2 = radial_moment(d, [2 * e for e in mods])
    normp = radial_moment(d, [p * e for e in mods])
    if not norm2.is_finite:
        raise NotIntegrable("witness monomial is not in L^2")
    if not normp.is_finite:
        raise NotIntegrable(f"witness monomial is not in L^{p}")
    bf = project(d, MixedMonomialSum.monomial(1, alpha, gamma))
    if bf.is_zero():
        return ProjectionRatio(False, 0.0)
    (q, delta, _zero), = bf.terms
    mdp = moment(d, delta, p)
    if not mdp.is_finite:
        return ProjectionRatio(True, None)
    coeff = abs(complex(q))
    pf = float(p)
    return ProjectionRatio(
        False, coeff * float(mdp) ** (1.0 / pf) / float(normp) ** (1.0 / pf))


# ---------------------------------------------------------------------------
# norms and inequality checks
# ---------------------------------------------------------------------------

def laurent_norm(d: DomainSpec, f: MixedMonomialSum, p,
                 cfg: Optional[QuadConfig] = None) -> float:
    """L^p norm of a monomial sum: exact for single terms and at p = 2."""
    p = check_exponent(p)
    if len(f.terms) == 1:
        q, alpha, gamma = f.terms[0]
        mods = [a + g for a, g in zip(alpha, gamma)]
        m = radial_moment(d, [p * e for e in mods])
        if not m.is_finite:
            raise NotIntegrable(f"monomial not in L^{p}")
        return abs(complex(q)) * float(m) ** (1.0 / float(p))
    if p == 2:
        total = 0.0
        freq: dict = {}
        for q, alpha, gamma in f.terms:
            freq.setdefault(tuple(a - g for a, g in zip(alpha, gamma)),
                            []).append((q, alpha, gamma))
        for _delta, terms in sorted(freq.items()):
            # terms sharing an angular frequency are not orthogonal; expand
            # the Hermitian form in exact radial moments
            for qi, ai, gi in terms:
                for qj, aj, gj in terms:
                    cross = radial_moment(
                        d, [a1 + g1 + a2 + g2 for a1, g1, a2, g2
                            in zip(ai, gi, aj, gj)])
                    if not cross.is_finite:
                        raise NotIntegrable("sum not in L^2")
                    total += complex(qi * qj.conjugate()).real * float(cross)
        return math.sqrt(total)
    cfg = cfg or QuadConfig(radial_nodes=12, angular_nodes=16,
                            rel_tol=1e-6, max_doublings=0)
    return lp_norm(d, f.as_integrand(), p, cfg)


@dataclass(frozen=True)
class InequalityCheck:
    lhs: float
    rhs: float
    holds: bool


_CHECK_TOL = 1e-9


def lyapunov_check(d: DomainSpec, f: MixedMonomialSum, p, q, theta,
                   cfg: Optional[QuadConfig] = None) -> InequalityCheck:
    """Log-convexity of p -> ||f||_p between two exponents.

    Checks ||f||_r <= ||f||_p^(1-theta) * ||f||_q^theta with
    1/r = (1-theta)/p + theta/q; f must lie in both endpoint spaces
    (exact index-set membership).
    """
    _require_laurent(d, f, "log-convexity test function")
    p, q = check_exponent(p), check_exponent(q)
    theta = as_fraction(theta)
    if not 0 < theta < 1:
        raise ParseError("theta must lie in (0, 1)")
    for expo, name in ((p, "p"), (q, "q")):
        if not f.p_integrable(d, expo):
            raise NotIntegrable(f"test function is not in the {name}-Bergman space")
    r = 1 / ((1 - theta) / p + theta / q)

    # all three norms come from one evaluation strategy: exact moments for a
    # single monomial, otherwise one shared quadrature mesh, so the verdict
    # cannot be tripped by integration noise on near-equality inputs
    if len(f.terms) == 1:
        nr = laurent_norm(d, f, r)
        np_, nq = laurent_norm(d, f, p), laurent_norm(d, f, q)
    else:
        cfg = cfg or QuadConfig(radial_nodes=12, angular_nodes=16)
        nr, np_, nq = lp_norms_shared(d, f.as_integrand(), [r, p, q], cfg)
    lhs = nr
    rhs = np_ ** float(1 - theta) * nq ** float(theta)
    return InequalityCheck(lhs, rhs, lhs <= rhs * (1.0 + _CHECK_TOL))


def holder_check(d: DomainSpec, f: MixedMonomialSum, g: MixedMonomialSum, p,
                 cfg: Optional[QuadConfig] = None) -> InequalityCheck:
    """|<f, g>| <= ||f||_p * ||g||_q with exact pairing and quadrature norms."""
    p = check_exponent(p)
    if p <= 1:
        raise ParseError("p must exceed 1")
    q = conjugate_exponent(p)
    _require_laurent(d, f, "f")
    _require_laurent(d, g, "g")
    if not f.p_integrable(d, p):
        raise NotIntegrable("f is not in the p-Bergman space")
    if not g.p_integrable(d, q):
        raise NotIntegrable("g is not in the q-Bergman space")
    lhs = abs(complex(pairing(d, f, g)))

    def rhs_at(cfg_used):
        return laurent_norm(d, f, p, cfg_used) * laurent_norm(d, g, q, cfg_used)

    rhs = rhs_at(cfg)
    holds = lhs <= rhs * (1.0 + _CHECK_TOL)
    if not holds:
        # near-violation: raise the quadrature budget once before failing,
        # to tell integration error apart from a genuine violation
        boosted = QuadConfig(radial_nodes=48, angular_nodes=64, rel_tol=1e-12)
        rhs = rhs_at(boosted)
        holds = lhs <= rhs * (1.0 + _CHECK_TOL)
    return InequalityCheck(lhs, rhs, holds)


def injectivity_witness_scan(d: DomainSpec, p, radius: int) -> Optional[MultiIndex]:
    """Lex-smallest window index allowable at the conjugate exponent but not at p.

    Such an index annihilates every allowable monomial under the pairing, an
    exact obstruction to duality at exponent p.  None is the expected outcome
    for p below the duality bound (and always at p = 2).
    """
    p = check_exponent(p)
    if p < 2:
        raise ParseError("scan is defined for p >= 2")
    q = Fraction(2) if p == 2 else conjugate_exponent(p)
    for gamma in sorted(_window_box(d.dim, radius)):
        if member(d, gamma, q) and not member(d, gamma, p):
            return gamma
    return None
