"""Exact arithmetic in F_{p^k}.

Elements are encoded as integers ``0 <= a < p**k``; the base-p digits of the
code are the coefficients of the element in the basis 1, x, ..., x^{k-1} of
F_p[x]/(modulus), constant term first.  Every arithmetic method accepts Python
ints or integer numpy arrays and broadcasts, so vectors and matrices over the
field are plain ``np.int64`` arrays of codes.
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_ORDER = 1024

# monic, irreducible; constant term first
BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (5, 2): (2, 0, 1),
    (3, 3): (1, 2, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod(a: list[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial b over F_p."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        c = a[-1] % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= k/2."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(list(modulus), list(low) + [1], p)):
                return False
    return True


class GF:
    """The finite field F_{p^k} with a fixed modulus.

    Use :func:`field_make` rather than calling this directly; it validates the
    input and caches instances.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k
        self.is_prime_field = k == 1
        self._powers = p ** np.arange(k, dtype=np.int64)
        codes = np.arange(self.q, dtype=np.int64)
        self._digits = (codes[:, None] // self._powers[None, :]) % p
        if self.is_prime_field:
            self._add = None
            self._mul = None
            self._neg = (-codes) % p
        else:
            self._add = self._encode((self._digits[:, None, :] + self._digits[None, :, :]) % p)
            self._mul = self._build_mul_table()
            self._neg = self._encode((-self._digits) % p)
        inv = np.zeros(self.q, dtype=np.int64)
        nz = np.nonzero(self.mul(codes[:, None], codes[None, :]) == 1)
        inv[nz[0]] = nz[1]
        self._inv = inv
        self._frob = self.pow(codes, p)

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._powers

    def _build_mul_table(self) -> np.ndarray:
        p, k = self.p, self.k
        d = self._digits
        prod = np.zeros((self.q, self.q, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod[:, :, i + j] += d[:, None, i] * d[None, :, j]
        prod %= p
        mod = np.array(self.modulus, dtype=np.int64)
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[:, :, top].copy()
            prod[:, :, top - k:top + 1] -= c[:, :, None] * mod[None, None, :]
            prod %= p
        return self._encode(prod[:, :, :k])

    # identity and hashing follow the defining data only
    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, GF) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    # -- scalar / elementwise arithmetic -----------------------------------

    def add(self, a, b):
        if self.is_prime_field:
            return (np.asarray(a) + b) % self.p
        return self._add[a, b]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if self.is_prime_field:
            return (np.asarray(a) * b) % self.p
        return self._mul[a, b]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a, e = self.inv(a), -e
        result = np.ones_like(a)
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frob(self, a):
        return self._frob[a]

    def sum(self, a, axis=None):
        """Field sum of ``a`` along ``axis`` (int or tuple)."""
        a = np.asarray(a, dtype=np.int64)
        if self.is_prime_field:
            return a.sum(axis=axis) % self.p
        if axis is None:
            axis = tuple(range(a.ndim))
        elif isinstance(axis, int):
            axis = (axis,)
        axis = tuple(ax % a.ndim for ax in axis)
        return (self._digits[a].sum(axis=axis) % self.p) @ self._powers

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.is_prime_field:
            return (A @ B) % self.p
        # 1-d operands follow numpy's promotion rules
        if A.ndim == 1:
            return self.matmul(A[None, :], B)[..., 0, :]
        if B.ndim == 1:
            return self.matmul(A, B[:, None])[..., 0]
        return self.sum(self.mul(A[..., :, :, None], B[..., None, :, :]), axis=-2)

    def dot(self, u, v):
        """Inner product along the last axis."""
        return self.sum(self.mul(u, v), axis=-1)

    # -- conversions ---------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def coeffs(self, a: int) -> list[int]:
        return [int(c) for c in self._digits[int(a)]]

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise ValueError(f"too many coefficients for {self!r}: {coeffs}")
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return int(n) % self.p

    def parse(self, text: str) -> int:
        """Parse ``"3"`` or a polynomial in x such as ``"1+2*x"`` or ``"x^2"``."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty field element")
        s = re.sub(r"(?<=[^+^])-", "+-", s)
        coeffs = [0] * max(self.k, 1)
        for term in s.split("+"):
            if not term:
                continue
            m = re.fullmatch(r"(-?\d*)\*?(x(?:\^(\d+))?)?", term)
            if m is None or (m.group(1) in ("", "-") and m.group(2) is None):
                raise ValueError(f"cannot parse field element {text!r}")
            c = m.group(1)
            c = 1 if c == "" else (-1 if c == "-" else int(c))
            e = 0 if m.group(2) is None else int(m.group(3) or 1)
            if e >= self.k:
                raise ValueError(f"degree {e} term in {text!r} for {self!r}")
            coeffs[e] += c
        return self.from_coeffs(coeffs)

    def format(self, a: int) -> str:
        if self.is_prime_field:
            return str(int(a))
        terms = []
        for e, c in enumerate(self.coeffs(a)):
            if c == 0:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                mono = "x" if e == 1 else f"x^{e}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) or "0"


@lru_cache(maxsize=None)
def _cached_field(p: int, k: int, modulus: tuple[int, ...]) -> GF:
    return GF(p, k, modulus)


def field_make(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> GF:
    """Validated (and cached) field F_{p^k}.

    ``modulus`` lists the coefficients of a monic degree-k polynomial, constant
    term first.  Built-in moduli cover F_4, F_8, F_9, F_25 and F_27.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if p**k > MAX_ORDER:
        raise ValueError(f"field of order {p}^{k} exceeds the table limit {MAX_ORDER}")
    if k == 1:
        return _cached_field(p, 1, (0, 1))
    if modulus is None:
        if (p, k) not in BUILTIN_MODULI:
            raise ValueError(f"no built-in modulus for F_{p}^{k}; supply one")
        modulus = BUILTIN_MODULI[(p, k)]
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != k + 1:
        raise ValueError(f"modulus must have degree {k}: {list(modulus)}")
    if modulus[-1] != 1:
        raise ValueError(f"modulus must be monic: {list(modulus)}")
    if not is_irreducible(modulus, p):
        raise ValueError(f"modulus {list(modulus)} is reducible over F_{p}")
    return _cached_field(p, k, modulus)


def frobenius(F: GF, a):
    """a -> a^p, elementwise."""
    return F.frob(a)
