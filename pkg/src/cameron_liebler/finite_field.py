"""Arithmetic in GF(q), q = p**h odd.

Elements are encoded as integers ``c0 + c1*p + ... + c_{h-1}*p**(h-1)``
where ``c_i`` is the coefficient of ``t**i`` in the polynomial basis of
GF(p)[t]/(f).  The integer code is the canonical element ordering used
throughout the package (it decides, e.g., which nonsquare is "least").

Bulk geometric computations never go through :class:`FieldElement`; they
index the numpy tables exposed by :class:`FieldSpec` with arrays of codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    EvenCharacteristic,
    MixedFields,
    NotPrime,
    ReduciblePolynomial,
    SingularMatrix,
    TooLarge,
    ZeroArgument,
)

MAX_FIELD_ORDER = 2**14


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of ``num`` modulo the monic polynomial ``den`` (low-to-high)."""
    rem = [c % p for c in num]
    d = len(den) - 1
    for k in range(len(rem) - 1, d - 1, -1):
        c = rem[k]
        if c:
            for i in range(d + 1):
                rem[k - d + i] = (rem[k - d + i] - c * den[i]) % p
    return _trim(rem[:d])


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``1 .. deg//2``."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_rem(poly, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, h: int) -> tuple[int, ...]:
    """Lowest monic irreducible of degree ``h``, lexicographic on (c0, ..., c_{h-1}).

    For ``h == 1`` this is ``t`` itself, i.e. the prime field with the
    ``t - 0`` convention.
    """
    for low in itertools.product(range(p), repeat=h):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("an irreducible polynomial exists for every degree")


class FieldSpec:
    """A validated model of GF(p**h).

    Use :func:`field_new` to construct one.  Instances are immutable and
    compare equal when ``p``, ``h`` and the modulus agree.
    """

    def __init__(self, p: int, h: int, modulus_poly: tuple[int, ...]):
        self.p = p
        self.h = h
        self.modulus_poly = modulus_poly
        self.q = p**h
        self._digits = [self._decode(c) for c in range(self.q)]
        self._exp, self._log = self._discrete_log_tables()
        half = (self.q - 1) // 2
        squares = [False] * self.q
        for c in range(1, self.q):
            squares[c] = self.pow_code(c, half) == 1
        self._squares = squares

    # -- identity ---------------------------------------------------------
    def _key(self):
        return (self.p, self.h, self.modulus_poly)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldSpec(p={self.p}, h={self.h}, modulus_poly={list(self.modulus_poly)})"

    def to_dict(self) -> dict:
        return {"p": self.p, "h": self.h, "modulus_poly": list(self.modulus_poly)}

    # -- element construction ---------------------------------------------
    def __call__(self, value: int | Sequence[int]) -> "FieldElement":
        """Element from an integer code or a coefficient list (low-to-high)."""
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if self.h == 1:
                value %= self.p
            elif not 0 <= value < self.q:
                raise ValueError(f"code {value} out of range for GF({self.q})")
            return FieldElement(self, self._digits[value])
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.h:
            coeffs = _poly_rem(coeffs, self.modulus_poly, self.p)
        coeffs += [0] * (self.h - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def elements(self) -> list["FieldElement"]:
        return [self(c) for c in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    # -- code-level arithmetic ----------------------------------------------
    def _decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.h):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def digits(self, code: int) -> tuple[int, ...]:
        return self._digits[code]

    def _mul_poly(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * self.h - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        rem = _poly_rem(prod, self.modulus_poly, self.p) if self.h > 1 else [prod[0] % self.p]
        return self.encode(rem)

    def _discrete_log_tables(self):
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1 and len(exp) < q:
                exp.append(x)
                x = self._mul_poly(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for k, c in enumerate(exp):
                    log[c] = k
                return exp, log
        raise AssertionError(f"no primitive element found in GF({q})")

    def add_code(self, a: int, b: int) -> int:
        p = self.p
        return self.encode([(x + y) % p for x, y in zip(self._digits[a], self._digits[b])])

    def neg_code(self, a: int) -> int:
        p = self.p
        return self.encode([(-x) % p for x in self._digits[a]])

    def sub_code(self, a: int, b: int) -> int:
        return self.add_code(a, self.neg_code(b))

    def mul_code(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow_code(self, a: int, n: int) -> int:
        """Square-and-multiply; negative exponents invert first."""
        if n < 0:
            a, n = self.inv_code(a), -n
        result = 1
        while n:
            if n & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            n >>= 1
        return result

    def frobenius_code(self, a: int, k: int) -> int:
        """``a ** (p**k)``, the k-th power of the Frobenius automorphism."""
        return self.pow_code(a, self.p ** (k % self.h))

    def is_square_code(self, a: int) -> bool:
        if a == 0:
            raise ZeroArgument("zero is excluded from the square-class test")
        return self._squares[a]

    def least_nonsquare(self) -> int:
        return next(c for c in range(1, self.q) if not self._squares[c])

    # -- numpy tables for vectorised work -----------------------------------
    @cached_property
    def add_table(self) -> np.ndarray:
        digits = np.array(self._digits, dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.h)
        return _frozen((s * weights).sum(axis=-1))

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        exp = np.array(self._exp, dtype=np.int64)
        log = np.array(self._log, dtype=np.int64)
        t = exp[(log[:, None] + log[None, :]) % (q - 1)]
        t[0, :] = 0
        t[:, 0] = 0
        return _frozen(t)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return _frozen(np.array([self.neg_code(c) for c in range(self.q)], dtype=np.int64))

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Inverse of each code; entry 0 is 0 by convention (never read for valid input)."""
        return _frozen(np.array([0] + [self.inv_code(c) for c in range(1, self.q)], dtype=np.int64))

    @cached_property
    def square_table(self) -> np.ndarray:
        """Boolean square-class table; entry 0 is False."""
        return _frozen(np.array(self._squares, dtype=bool))

    def frobenius_table(self, k: int) -> np.ndarray:
        return np.array([self.frobenius_code(c, k) for c in range(self.q)], dtype=np.int64)

    # vectorised helpers over integer code arrays
    def vadd(self, a, b):
        return self.add_table[a, b]

    def vmul(self, a, b):
        return self.mul_table[a, b]

    def vsub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def vsum(self, arrays: Iterable[np.ndarray]):
        it = iter(arrays)
        acc = next(it)
        for arr in it:
            acc = self.add_table[acc, arr]
        return acc


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def field_new(p: int, h: int = 1, modulus_poly: Sequence[int] | None = None) -> FieldSpec:
    """Validate parameters and build GF(p**h).

    ``modulus_poly`` is a monic coefficient list ``[c0, ..., c_{h-1}, 1]``.
    When omitted the lowest lexicographic monic irreducible is used.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("only odd characteristic is supported")
    if h < 1:
        raise ValueError("extension degree must be >= 1")
    if p**h > MAX_FIELD_ORDER:
        raise TooLarge(f"q = {p}**{h} exceeds {MAX_FIELD_ORDER}")
    if modulus_poly is None:
        poly = default_modulus(p, h)
    else:
        poly = tuple(int(c) % p for c in modulus_poly)
        if len(poly) != h + 1 or poly[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {h}: {list(modulus_poly)}")
        if not is_irreducible(poly, p):
            raise ReduciblePolynomial(f"{list(poly)} is reducible over GF({p})")
    return FieldSpec(p, h, poly)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(q) in reduced polynomial-basis form."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def code(self) -> int:
        return self.field.encode(self.coeffs)

    def __int__(self):
        return self.code

    def __index__(self):
        return self.code

    def __repr__(self):
        if self.field.h == 1:
            return f"GF({self.field.q})({self.coeffs[0]})"
        return f"GF({self.field.q})({list(self.coeffs)})"

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"{self.field!r} vs {other.field!r}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.field(int(other) % self.field.p).code
        return NotImplemented

    def _wrap(self, code: int) -> "FieldElement":
        return FieldElement(self.field, self.field.digits(code))

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.add_code(self.code, b))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.field.neg_code(self.code))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub_code(self.code, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul_code(self.code, b))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv_code(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self * self._wrap(self.field.inv_code(b))

    def __pow__(self, n: int):
        if n < 0 and self.code == 0:
            raise DivisionByZero("negative power of zero")
        return self._wrap(self.field.pow_code(self.code, n))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_square(self) -> bool:
        return self.field.is_square_code(self.code)


def _check_same(a: FieldElement, b: FieldElement) -> None:
    if a.field != b.field:
        raise MixedFields(f"{a.field!r} vs {b.field!r}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a + b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, n: int | FieldElement) -> FieldElement:
    return a ** int(n)


def is_square(a: FieldElement) -> bool:
    """True iff ``a ** ((q-1)/2) == 1``.  Raises :class:`ZeroArgument` for zero."""
    return a.is_square()


# -- small dense linear algebra over GF(q), on integer codes --------------------

def mat_det(field: FieldSpec, M: Sequence[Sequence[int]]) -> int:
    return _eliminate(field, M, want_inverse=False)[0]


def mat_inv(field: FieldSpec, M: Sequence[Sequence[int]]) -> list[list[int]]:
    det, inverse = _eliminate(field, M, want_inverse=True)
    if det == 0:
        raise SingularMatrix("matrix is not invertible")
    return inverse


def _eliminate(field: FieldSpec, M, want_inverse: bool):
    n = len(M)
    A = [[int(v) for v in row] + ([int(i == j) for j in range(n)] if want_inverse else []) for i, row in enumerate(M)]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if A[r][col]), None)
        if pivot is None:
            return 0, None
        if pivot != col:
            A[col], A[pivot] = A[pivot], A[col]
            det = field.neg_code(det)
        pv = A[col][col]
        det = field.mul_code(det, pv)
        s = field.inv_code(pv)
        A[col] = [field.mul_code(s, v) for v in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [field.sub_code(v, field.mul_code(f, w)) for v, w in zip(A[r], A[col])]
    inverse = [row[n:] for row in A] if want_inverse else None
    return det, inverse


def mat_transpose(M: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*M)]
