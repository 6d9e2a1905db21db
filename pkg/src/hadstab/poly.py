"""Polynomial data model and coefficient-wise algebra.

Everything here manipulates monic polynomials through their coefficient
vectors: the Hadamard (coefficient-wise) product, integer and rational
Hadamard powers with full branch enumeration, the binomial-reciprocal weight
polynomial, complex conjugation, the real form ``conj(f) * f``, and the
reduction of commensurate fractional-order polynomials to ordinary ones.

Coefficients are stored ascending, ``a_0`` first, with the leading 1 implicit,
so list index k matches the power of s it multiplies.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInputError, UnsupportedInputError

# Degree cap for the commensurate reduction; beyond this the common power base
# is so fine that the integer-order polynomial is useless in practice.
MAX_COMMENSURATE_DEGREE = 10_000


@dataclass(frozen=True)
class MonicPolynomial:
    """A degree-n monic polynomial over the complex numbers.

    ``coeffs`` holds exactly n entries ``(a_0, ..., a_{n-1})``; the leading
    coefficient 1 is implicit.  A coefficient belongs to the support iff it is
    exactly zero in both parts; no epsilon is involved.
    """

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs)
        if len(cs) < 1:
            raise InvalidInputError("monic polynomial needs degree >= 1")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        """Indices k with a_k != 0, ascending (exact-zero test)."""
        return tuple(k for k, c in enumerate(self.coeffs) if c != 0)

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0.0 for c in self.coeffs)

    def __call__(self, s: complex) -> complex:
        acc = complex(1.0)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def coefficient_moduli(self) -> dict[int, float]:
        """{k: |a_k|} over the support."""
        return {k: abs(self.coeffs[k]) for k in self.support}

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj) -> "MonicPolynomial":
        if not isinstance(obj, Mapping):
            raise InvalidInputError("polynomial JSON must be an object")
        try:
            degree = obj["degree"]
            pairs = obj["coeffs"]
        except KeyError as exc:
            raise InvalidInputError(f"polynomial JSON missing key {exc}") from None
        if not isinstance(degree, int) or degree < 1:
            raise InvalidInputError("degree must be a positive integer")
        if not isinstance(pairs, Sequence) or len(pairs) != degree:
            raise InvalidInputError("coeffs must list exactly `degree` [re, im] pairs")
        coeffs = []
        for pair in pairs:
            if (
                not isinstance(pair, Sequence)
                or len(pair) != 2
                or not all(isinstance(x, (int, float)) for x in pair)
            ):
                raise InvalidInputError("each coefficient must be an [re, im] pair")
            coeffs.append(complex(pair[0], pair[1]))
        return cls(tuple(coeffs))


def all_ones(n: int) -> MonicPolynomial:
    """s^n + s^(n-1) + ... + 1, the identity of the Hadamard product."""
    if n < 1:
        raise InvalidInputError("degree must be >= 1")
    return MonicPolynomial((1.0 + 0j,) * n)


@dataclass(frozen=True)
class RationalExponent:
    """A rational power k/m kept in lowest terms with m >= 1."""

    num: int
    den: int = 1

    def __post_init__(self):
        num, den = self.num, self.den
        if den == 0:
            raise InvalidInputError("exponent denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(abs(num), den)
        if g > 1:
            num //= g
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def value(self) -> float:
        return self.num / self.den

    @property
    def is_integer(self) -> bool:
        return self.den == 1

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"

    @classmethod
    def parse(cls, text: str) -> "RationalExponent":
        """Parse 'K/M' or integer shorthand 'K'."""
        parts = text.strip().split("/")
        try:
            if len(parts) == 1:
                return cls(int(parts[0]))
            if len(parts) == 2:
                return cls(int(parts[0]), int(parts[1]))
        except ValueError:
            pass
        raise InvalidInputError(f"cannot parse rational exponent {text!r}")

    @classmethod
    def coerce(cls, p) -> "RationalExponent":
        if isinstance(p, RationalExponent):
            return p
        if isinstance(p, int):
            return cls(p)
        if isinstance(p, Rational):
            return cls(int(p.numerator), int(p.denominator))
        if isinstance(p, str):
            return cls.parse(p)
        raise InvalidInputError(f"not a rational exponent: {p!r}")


@dataclass(frozen=True)
class BranchSet:
    """The finite set of polynomials constituting a rational Hadamard power.

    One member per choice of m-th root at every nonzero coefficient, so
    ``m ** |support|`` members in all; zero coefficients stay zero on every
    branch (0^p = 0 by convention) and contribute no branching.
    ``branch_index[i]`` records, per support index in ascending order, which
    root ``l in {0, ..., m-1}`` member i picked.
    """

    base: MonicPolynomial
    exponent: RationalExponent
    members: tuple[MonicPolynomial, ...]
    branch_index: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        expected = self.exponent.den ** len(self.base.support)
        if len(self.members) != expected or len(self.branch_index) != expected:
            raise InvalidInputError("branch set size must be m ** |support|")

    @property
    def principal(self) -> MonicPolynomial:
        """The member with l = 0 at every coefficient."""
        return self.members[0]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _power_coeff(a: complex, p: float, extra_angle: float = 0.0) -> complex:
    """|a|^p (cos(p arg a + extra) + i sin(p arg a + extra)); 0 maps to 0."""
    if a == 0:
        return 0j
    r = abs(a)
    theta = cmath.phase(a)  # principal argument in (-pi, pi]
    ang = p * theta + extra_angle
    try:
        mag = r ** p
    except OverflowError:
        raise InvalidInputError(
            f"|{a}|^{p} overflows the floating-point range"
        ) from None
    return mag * complex(math.cos(ang), math.sin(ang))


def hadamard_product(f: MonicPolynomial, g: MonicPolynomial) -> MonicPolynomial:
    """Coefficient-wise product; degrees must match."""
    if f.degree != g.degree:
        raise InvalidInputError(
            f"degree mismatch: {f.degree} vs {g.degree}"
        )
    return MonicPolynomial(tuple(a * b for a, b in zip(f.coeffs, g.coeffs)))


def szego_weight(n: int) -> MonicPolynomial:
    """Weight polynomial with coefficient 1/C(n,k) at s^k (implicit 1 at s^n)."""
    if n < 1:
        raise InvalidInputError("degree must be >= 1")
    return MonicPolynomial(tuple(1.0 / math.comb(n, k) for k in range(n)))


def szego_product(f: MonicPolynomial, g: MonicPolynomial) -> MonicPolynomial:
    """Hadamard product of f, g and the binomial-reciprocal weight polynomial."""
    return hadamard_product(hadamard_product(f, g), szego_weight(f.degree))


def hadamard_power(f: MonicPolynomial, p) -> BranchSet:
    """All branches of the coefficient-wise power f^[p] for rational p.

    For integer p the set is a singleton.  For p = k/m in lowest terms every
    nonzero coefficient has m admissible values, enumerated per coefficient as
    ``|a|^p (cos(p arg a + 2 pi l / m) + i sin(...))`` for l = 0..m-1, giving
    ``m ** |support|`` member polynomials.  p = 0 sends every nonzero
    coefficient to 1 and keeps zeros at zero.
    """
    p = RationalExponent.coerce(p)
    m = p.den
    pval = p.num / p.den
    support = f.support
    members = []
    index = []
    for ls in itertools.product(range(m), repeat=len(support)):
        cs = [0j] * f.degree
        for k, l in zip(support, ls):
            cs[k] = _power_coeff(f.coeffs[k], pval, 2.0 * math.pi * l / m)
        members.append(MonicPolynomial(tuple(cs)))
        index.append(tuple(ls))
    return BranchSet(f, p, tuple(members), tuple(index))


def principal_power(f: MonicPolynomial, p: float) -> MonicPolynomial:
    """Principal branch of f^[p] for an arbitrary real exponent.

    Coefficient k becomes |a_k|^p e^{i p arg(a_k)} with the principal
    argument; zero coefficients stay zero.  This is the single-valued path
    used by power sweeps and onset bisection.
    """
    return MonicPolynomial(tuple(_power_coeff(a, p) for a in f.coeffs))


def conjugate(f: MonicPolynomial) -> MonicPolynomial:
    """Polynomial whose coefficients are the complex conjugates of f's."""
    return MonicPolynomial(tuple(c.conjugate() for c in f.coeffs))


def real_form(f: MonicPolynomial) -> MonicPolynomial:
    """The convolution product conj(f) * f, a real polynomial of degree 2n.

    Its roots are the roots of f together with their conjugates, so it has
    the same maximum root modulus as f.  Imaginary parts of the product are
    pure rounding residue and are forced to exactly 0.
    """
    a = list(f.coeffs) + [1.0 + 0j]
    b = [c.conjugate() for c in a]
    n = f.degree
    prod = [0j] * (2 * n + 1)
    for i, x in enumerate(b):
        if x == 0:
            continue
        for j, y in enumerate(a):
            prod[i + j] += x * y
    return MonicPolynomial(tuple(complex(c.real, 0.0) for c in prod[:-1]))


def _as_power(value) -> Fraction:
    if isinstance(value, float):
        raise InvalidInputError(
            "fractional powers must be exact rationals, not floats"
        )
    try:
        return Fraction(value)
    except (TypeError, ValueError):
        raise InvalidInputError(f"not a rational power: {value!r}") from None


@dataclass(frozen=True)
class FractionalPolynomial:
    """s^{sigma_n} + a_{n-1} s^{sigma_{n-1}} + ... with rational powers.

    ``terms`` lists (power, coefficient) pairs with strictly decreasing
    powers; the first term is the leading one and must carry coefficient 1.
    All powers are positive except a possible constant term at power 0.
    Powers are exact rationals; floats are rejected because tolerance-based
    exponent matching is ill-posed.
    """

    terms: tuple[tuple[Fraction, complex], ...]
    commensurate_base: Fraction | None = None

    def __post_init__(self):
        if not self.terms:
            raise InvalidInputError("fractional polynomial needs at least the leading term")
        terms = tuple((_as_power(p), complex(c)) for p, c in self.terms)
        powers = [p for p, _ in terms]
        if any(p2 >= p1 for p1, p2 in zip(powers, powers[1:])):
            raise InvalidInputError("powers must be strictly decreasing")
        if powers[-1] < 0 or (len(powers) > 1 and powers[-2] <= 0):
            raise InvalidInputError("powers must be positive except a constant term")
        if powers[0] <= 0:
            raise InvalidInputError("leading power must be positive")
        if terms[0][1] != 1:
            raise InvalidInputError("leading coefficient must be exactly 1")
        base = self.commensurate_base
        if base is not None:
            base = _as_power(base)
            if base <= 0:
                raise InvalidInputError("commensurate base must be positive")
            for p in powers:
                if (p / base).denominator != 1:
                    raise InvalidInputError(
                        f"power {p} is not an integer multiple of base {base}"
                    )
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "commensurate_base", base)

    def to_json(self) -> dict:
        out = []
        for i, (p, c) in enumerate(self.terms):
            entry: dict = {"pow": [p.numerator, p.denominator]}
            if i > 0:  # leading coefficient is implicit
                entry["coeff"] = [c.real, c.imag]
            out.append(entry)
        return {"terms": out}

    @classmethod
    def from_json(cls, obj) -> "FractionalPolynomial":
        if not isinstance(obj, Mapping) or "terms" not in obj:
            raise InvalidInputError("fractional polynomial JSON must have 'terms'")
        raw = obj["terms"]
        if not isinstance(raw, Sequence) or not raw:
            raise InvalidInputError("'terms' must be a non-empty list")
        terms = []
        for i, entry in enumerate(raw):
            if not isinstance(entry, Mapping) or "pow" not in entry:
                raise InvalidInputError("each term needs a 'pow': [num, den]")
            pw = entry["pow"]
            if (
                not isinstance(pw, Sequence)
                or len(pw) != 2
                or not all(isinstance(x, int) for x in pw)
            ):
                raise InvalidInputError("'pow' must be a pair of integers")
            power = Fraction(pw[0], pw[1])
            if "coeff" in entry:
                pair = entry["coeff"]
                if not isinstance(pair, Sequence) or len(pair) != 2:
                    raise InvalidInputError("'coeff' must be an [re, im] pair")
                coeff = complex(pair[0], pair[1])
                if i == 0 and coeff != 1:
                    raise InvalidInputError("leading coefficient must be 1")
            elif i == 0:
                coeff = 1.0 + 0j
            else:
                raise InvalidInputError("non-leading terms must carry 'coeff'")
            terms.append((power, coeff))
        return cls(tuple(terms))


def to_integer_order(f: FractionalPolynomial) -> tuple[Fraction, MonicPolynomial]:
    """Reduce a commensurate fractional polynomial to an ordinary one.

    Returns (alpha, F) where alpha is the largest rational with every power an
    integer multiple of it, and F is the polynomial obtained by substituting
    w = s^alpha.  f is Schur stable iff F is, so every stability criterion and
    power threshold transfers verbatim.
    """
    powers = [p for p, _ in f.terms]
    lcm_den = 1
    for p in powers:
        lcm_den = lcm_den * p.denominator // math.gcd(lcm_den, p.denominator)
    scaled = [p.numerator * (lcm_den // p.denominator) for p in powers]
    g = 0
    for v in scaled:
        g = math.gcd(g, v)
    alpha = Fraction(g, lcm_den)
    degree = powers[0] / alpha
    if degree.denominator != 1:
        raise UnsupportedInputError("powers admit no common rational divisor")
    degree = int(degree)
    if degree > MAX_COMMENSURATE_DEGREE:
        raise UnsupportedInputError(
            f"commensurate reduction needs degree {degree}; powers are "
            "effectively non-commensurate"
        )
    coeffs = [0j] * degree
    for p, c in f.terms[1:]:
        coeffs[int(p / alpha)] = c
    return alpha, MonicPolynomial(tuple(coeffs))
