"""Polynomial point counts N(H) and the component-count formula.

N(W_J) = sum of q^l(w) over the sigma-fixed elements of the parabolic W_J,
with l the length in W. Evaluated at q it is the number of rational points
of G_0/P_J,0; the quotient N(W)/N(W^w) is the number of connected
components of X(w).

"""
import json
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import sympy
from loguru import logger

from dlconn.combinatorics import coxeter, twist
from dlconn.combinatorics.coxeter import CoxeterDatum, WeylElement
from dlconn.combinatorics.twist import TwistedDatum
from dlconn.exceptions import DivisionNotExact, InvariantViolation, NotSigmaStable

_Q = sympy.Symbol('q')


@dataclass(frozen=True)
class IntPolynomial:
    """A polynomial in q with integer coefficients, constant term first."""
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> 'IntPolynomial':
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> 'IntPolynomial':
        lengths = list(lengths)
        coeffs = [0] * (max(lengths, default=-1) + 1)
        for l in lengths:
            coeffs[l] += 1
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        coeffs = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                coeffs[i + j] += a * b
        return IntPolynomial(tuple(coeffs))

    def _as_poly(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)) or [0], _Q, domain=sympy.ZZ)

    @classmethod
    def _from_poly(cls, poly: sympy.Poly) -> 'IntPolynomial':
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def __divmod__(self, other: 'IntPolynomial') -> Tuple['IntPolynomial', 'IntPolynomial']:
        if other.is_zero():
            raise ZeroDivisionError('Division by the zero polynomial.')
        quotient, remainder = self._as_poly().div(other._as_poly())
        if not quotient.domain.is_ZZ:
            raise DivisionNotExact(f'{self} is not divisible by {other} over the integers.')
        return self._from_poly(quotient), self._from_poly(remainder)

    def exact_div(self, other: 'IntPolynomial') -> 'IntPolynomial':
        quotient, remainder = divmod(self, other)
        if not remainder.is_zero():
            raise DivisionNotExact(f'{self} divided by {other} leaves the remainder {remainder}.')
        return quotient

    def evaluate(self, q: int) -> int:
        if q < 2:
            raise ValueError(f'Point counts are evaluated at q >= 2. You specified {q}.')
        value = 0
        for c in reversed(self.coeffs):
            value = value * q + c
        return value

    def to_json(self) -> str:
        return json.dumps(list(self.coeffs))

    @classmethod
    def from_json(cls, text: str) -> 'IntPolynomial':
        coeffs = json.loads(text)
        if not isinstance(coeffs, list) or not all(isinstance(c, int) for c in coeffs):
            raise ValueError(f'Polynomials are JSON arrays of integers. You specified {text!r}.')
        return cls(tuple(coeffs))

    def __str__(self):
        if self.is_zero():
            return '0'
        terms = []
        for degree, c in enumerate(self.coeffs):
            if not c:
                continue
            power = '' if degree == 0 else ('q' if degree == 1 else f'q^{degree}')
            if not power:
                terms.append(str(c))
            else:
                terms.append(power if c == 1 else f'{c}{power}')
        return ' + '.join(terms)


ONE = IntPolynomial((1,))


def evaluate(p: IntPolynomial, q: int) -> int:
    return p.evaluate(q)


def poincare_polynomial(datum: CoxeterDatum, J: Iterable[int] = None) -> IntPolynomial:
    """The length generating function of W_J (J defaults to S)."""
    J = datum.generators if J is None else coxeter.as_generator_set(datum, J)
    return IntPolynomial.from_lengths(coxeter.length(w) for w in coxeter.parabolic_elements(datum, J))


def count_N(t: TwistedDatum, J: Iterable[int] = None) -> IntPolynomial:
    """Sum of q^l(w) over sigma-fixed w in W_J, l the length in W.

    Raises
    ------
    NotSigmaStable
        If J is not stable under the twist.

    """
    J = t.datum.generators if J is None else coxeter.as_generator_set(t.datum, J)
    if not twist.is_sigma_stable(t, J):
        raise NotSigmaStable(f'{sorted(J)} is not stable under the twist {t.label}; '
                             f'its closure is {sorted(twist.sigma_closure(t, J))}.')
    fixed = [w for w in coxeter.parabolic_elements(t.datum, J) if twist.apply_sigma(t, w) == w]
    return IntPolynomial.from_lengths(coxeter.length(w) for w in fixed)


def component_count(t: TwistedDatum, w: WeylElement) -> IntPolynomial:
    """N(W)/N(W^w), the number of connected components of X(w) as a polynomial in q."""
    closure = twist.sigma_closure(t, coxeter.support(w))
    quotient = count_N(t).exact_div(count_N(t, closure))
    logger.debug(f'{t.label}: components of X({coxeter.format_element(w)}) = {quotient}.')
    return quotient


def split_component_count_special(t: TwistedDatum, s: int) -> IntPolynomial:
    """count_N(S)/(1 + q), the number of components of X(s) for an untwisted group.

    The result is checked against :func:`component_count` for every generator.

    """
    if not t.sigma.is_identity:
        raise ValueError(f'The split formula requires the identity twist. You specified {t.label}.')
    coxeter.as_generator_set(t.datum, [s])
    quotient = count_N(t).exact_div(IntPolynomial((1, 1)))
    for r in range(t.datum.rank):
        general = component_count(t, coxeter.generator(t.datum, r))
        if general != quotient:
            raise InvariantViolation(f'{t.label}: N(W)/(1+q) = {quotient} but the component count of '
                                     f'X(s{r}) is {general}.')
    return quotient


def counting_table(t: TwistedDatum, qs: Sequence[int]) -> List[dict]:
    """N(W_J) for every sigma-stable J, evaluated at each q, smallest J first."""
    rows = []
    orbits = twist.sigma_orbits(t)
    for mask in range(2 ** len(orbits)):
        J = frozenset().union(*(orbit for i, orbit in enumerate(orbits) if mask >> i & 1))
        polynomial = count_N(t, J)
        rows.append({
            'J': sorted(J),
            'N': list(polynomial.coeffs),
            'values': {str(q): polynomial.evaluate(q) for q in qs},
        })
    return sorted(rows, key=lambda row: (len(row['J']), row['J']))
