"""Finite field towers F_{p^N} with the q-power Frobenius.

Everything happens in one top field; subfields are predicates
(x^{p^k} = x), never separate types. Elements are plain integers whose base-p
digits are the coefficients of the residue polynomial, constant term in the
least significant digit. Multiplication goes through discrete log and
exponent tables built once per tower.

"""
import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import sympy
from loguru import logger

from dlconn.constants import metadata
from dlconn.exceptions import BoundExceeded, DivisionByZero, NotPrime


def _smallest_irreducible(p: int, N: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree N, coefficients constant first."""
    x = sympy.Symbol('x')
    for low in itertools.product(range(p), repeat=N):
        coeffs = low + (1,)
        if N > 1 and coeffs[0] == 0:
            continue
        if sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible:
            return coeffs
    raise ValueError(f'No irreducible polynomial of degree {N} over F_{p}.')


@dataclass(frozen=True)
class FieldTower:
    """The field F_{p^N} = F_p[t]/(modulus) together with the base field F_q, q = p^q_degree."""
    p: int
    N: int
    modulus: Tuple[int, ...]
    q_degree: int
    _exp: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _log: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.modulus) != self.N + 1 or self.modulus[-1] != 1:
            raise ValueError(f'Modulus {self.modulus} is not monic of degree {self.N}.')
        if self.N % self.q_degree:
            raise ValueError(f'The base field degree {self.q_degree} does not divide {self.N}.')
        generator = self._find_primitive()
        step = self._times_t if generator == self.p else functools.partial(self._slow_mul, b=generator)
        exp = [1]
        for _ in range(self.size - 2):
            exp.append(step(exp[-1]))
        log = [-1] * self.size
        for i, value in enumerate(exp):
            log[value] = i
        object.__setattr__(self, '_exp', tuple(exp))
        object.__setattr__(self, '_log', tuple(log))

    @property
    def size(self) -> int:
        return self.p ** self.N

    @property
    def q(self) -> int:
        return self.p ** self.q_degree

    # Digit level arithmetic, used to build the tables.

    def digits(self, a: int) -> List[int]:
        out = []
        for _ in range(self.N):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + d % self.p
        return value

    def _times_t(self, a: int) -> int:
        digits = [0] + self.digits(a)
        top = digits.pop()
        if top:
            digits = [(d - top * c) % self.p for d, c in zip(digits, self.modulus)]
        return self.from_digits(digits)

    def _slow_mul(self, a: int, b: int) -> int:
        result = 0
        for d in reversed(self.digits(b)):
            result = self.add(self._times_t(result), self.scale(a, d))
        return result

    def _slow_pow(self, a: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return result

    def _find_primitive(self) -> int:
        order = self.size - 1
        if order == 1:
            return 1
        factors = sympy.primefactors(order)
        # t first, so the tables can be built by shifting.
        candidates = itertools.chain([self.p] if self.p < self.size else [], range(2, self.size))
        for candidate in candidates:
            if all(self._slow_pow(candidate, order // r) != 1 for r in factors):
                return candidate
        raise ValueError(f'No primitive element found in F_{self.size}; the modulus is not irreducible.')

    # Field operations on integer codes.

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, a: int, c: int) -> int:
        """Multiplies a by the prime field scalar c."""
        c %= self.p
        if c == 0:
            return 0
        if c == 1:
            return a
        return self.from_digits([c * x for x in self.digits(a)])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f'Zero has no inverse in F_{self.size}.')
        return self._exp[-self._log[a] % (self.size - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivisionByZero(f'Zero has no inverse in F_{self.size}.')
            return 0 if k else 1
        return self._exp[(self._log[a] * k) % (self.size - 1)]

    def frobenius_q(self, a: int) -> int:
        return self.power(a, self.q)

    def in_subfield(self, a: int, k: int) -> bool:
        if self.N % k:
            raise ValueError(f'F_{self.p}^{k} is not a subfield of F_{self.p}^{self.N}.')
        return self.power(a, self.p ** k) == a

    def subfield_elements(self, k: int) -> List[int]:
        """The elements of F_{p^k}, in increasing code order."""
        if self.N % k:
            raise ValueError(f'F_{self.p}^{k} is not a subfield of F_{self.p}^{self.N}.')
        step = (self.size - 1) // (self.p ** k - 1)
        return sorted([0] + [self._exp[i * step] for i in range(self.p ** k - 1)])


@dataclass(frozen=True)
class FieldElement:
    tower: FieldTower
    rep: int

    def __post_init__(self):
        if not 0 <= self.rep < self.tower.size:
            raise ValueError(f'{self.rep} is not an element code of F_{self.tower.size}.')

    def _wrap(self, rep: int) -> 'FieldElement':
        return FieldElement(self.tower, rep)

    def _code(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.tower != self.tower:
                raise ValueError('Field elements belong to different towers.')
            return other.rep
        return self.tower.scale(1, int(other))

    def __add__(self, other):
        return self._wrap(self.tower.add(self.rep, self._code(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.tower.sub(self.rep, self._code(other)))

    def __neg__(self):
        return self._wrap(self.tower.neg(self.rep))

    def __mul__(self, other):
        return self._wrap(self.tower.mul(self.rep, self._code(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.tower.div(self.rep, self._code(other)))

    def __pow__(self, k: int):
        return self._wrap(self.tower.power(self.rep, k))

    def inverse(self) -> 'FieldElement':
        return self._wrap(self.tower.inv(self.rep))

    def frobenius_q(self) -> 'FieldElement':
        return self._wrap(self.tower.frobenius_q(self.rep))

    def coefficients(self) -> List[int]:
        """Coefficient vector over F_p, constant term first."""
        return self.tower.digits(self.rep)

    def __repr__(self):
        return f'FieldElement(F_{self.tower.size}, {self.coefficients()})'


def frobenius_q(x: FieldElement) -> FieldElement:
    return x.frobenius_q()


def tower_degree(q_degree: int, degrees_needed: Iterable[int]) -> int:
    """Degree over F_p of the smallest field containing F_{q^m} for every needed m."""
    N = 1
    for m in degrees_needed:
        N = N * q_degree * m // math.gcd(N, q_degree * m)
    return N


@functools.lru_cache(maxsize=None)
def _tower(p: int, N: int, q_degree: int) -> FieldTower:
    modulus = _smallest_irreducible(p, N)
    logger.debug(f'Building F_{p}^{N} with modulus {list(modulus)} and q = {p}^{q_degree}.')
    return FieldTower(p, N, modulus, q_degree)


def build_tower(p: int, q_degree: int, degrees_needed: Iterable[int]) -> FieldTower:
    """Builds F_{p^N} with N = lcm of q_degree * m over the needed degrees m.

    Raises
    ------
    NotPrime
        If p is not prime.
    BoundExceeded
        If p^N exceeds the configured field size.

    """
    if not sympy.isprime(p):
        raise NotPrime(f'Field characteristic must be prime. You specified {p}.')
    degrees = sorted(set(int(m) for m in degrees_needed)) or [1]
    if q_degree < 1 or degrees[0] < 1:
        raise ValueError(f'Extension degrees must be positive. You specified {q_degree} and {degrees}.')
    N = tower_degree(q_degree, degrees)
    if p ** N > metadata.MAX_FIELD_SIZE:
        raise BoundExceeded(f'F_{p}^{N} has more than {metadata.MAX_FIELD_SIZE} elements.')
    return _tower(p, N, q_degree)


def prime_power(q: int) -> Tuple[int, int]:
    """Returns (p, d) with q = p^d, or raises ValueError."""
    factors = sympy.factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise ValueError(f'q must be a prime power. You specified {q}.')
    (p, d), = factors.items()
    return int(p), int(d)
