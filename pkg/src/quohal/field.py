"""Exact scalar arithmetic: prime fields GF(p) and the rationals.

Every computation in this package is exact.  A *field object* bundles the
scalar operations together with array helpers so that the rest of the code
can be written once, generically.  Two implementations are provided:

* :class:`PrimeField` -- GF(p) with elements stored as reduced machine
  integers (falling back to arbitrary-precision integers for large p so
  intermediate products never overflow);
* :class:`RationalField` -- exact rationals backed by
  :class:`fractions.Fraction` in object-dtype numpy arrays.

Arrays produced by a field are plain ``numpy.ndarray`` values; callers pass
the field explicitly wherever arithmetic has to be reduced.  ``np.dot``,
``np.tensordot``, ``np.kron`` and broadcasting all work for both dtypes
(``np.einsum`` does not support object dtype and is avoided everywhere).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable

import numpy as np

__all__ = ["FieldError", "PrimeField", "RationalField", "field_from_spec"]


class FieldError(ValueError):
    """Raised for invalid field construction or non-invertible scalars."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# Above this bound we store Python ints (object dtype) so that sums of
# products p*p over desk-scale dimensions can never overflow int64.
_INT64_SAFE_PRIME = 1 << 20


class PrimeField:
    """The finite field GF(p), elements represented as integers in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        self.p = int(p)
        self.char = self.p
        self.dtype: Any = np.int64 if self.p < _INT64_SAFE_PRIME else object

    # ------------------------------------------------------------------ scalars
    def scalar(self, x) -> int:
        """Coerce ``x`` (int, numpy int, or decimal string) to a reduced element."""
        if isinstance(x, str):
            x = int(x.strip())
        elif isinstance(x, Fraction):
            if x.denominator == 1:
                x = x.numerator
            else:
                num = x.numerator % self.p
                den = x.denominator % self.p
                return (num * self.inv(den)) % self.p
        return int(x) % self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise FieldError(f"0 is not invertible in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a) -> bool:
        return int(a) % self.p == 0

    def format(self, a) -> str:
        return str(int(a) % self.p)

    def random_scalar(self, rng) -> int:
        return rng.randrange(self.p)

    def random_nonzero(self, rng) -> int:
        return rng.randrange(1, self.p)

    # ------------------------------------------------------------------ arrays
    def asarray(self, data) -> np.ndarray:
        arr = np.array(data, dtype=self.dtype)
        return arr % self.p

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            arr = np.empty(shape, dtype=object)
            arr[...] = 0
            return arr
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        arr = self.zeros((n, n))
        for i in range(n):
            arr[i, i] = 1
        return arr

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.dot(a, b) % self.p

    def parse(self, s: str):
        return self.scalar(s)

    def to_spec(self) -> dict:
        return {"prime": self.p}

    # ------------------------------------------------------------------ dunder
    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


class RationalField:
    """The field of rational numbers, via exact ``fractions.Fraction``."""

    def __init__(self):
        self.char = 0
        self.dtype: Any = object

    # ------------------------------------------------------------------ scalars
    def scalar(self, x) -> Fraction:
        if isinstance(x, str):
            x = x.strip()
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("0 is not invertible")
        return Fraction(1) / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise FieldError("division by zero")
        return Fraction(a) / Fraction(b)

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        f = Fraction(a)
        if f.denominator == 1:
            return str(f.numerator)
        return f"{f.numerator}/{f.denominator}"

    def random_scalar(self, rng) -> Fraction:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 5))

    def random_nonzero(self, rng) -> Fraction:
        while True:
            x = self.random_scalar(rng)
            if x != 0:
                return x

    # ------------------------------------------------------------------ arrays
    def asarray(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        flat = arr.reshape(-1)
        for i in range(flat.shape[0]):
            flat[i] = Fraction(flat[i])
        return flat.reshape(arr.shape)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def zeros(self, shape) -> np.ndarray:
        arr = np.empty(shape, dtype=object)
        arr[...] = Fraction(0)
        return arr

    def eye(self, n: int) -> np.ndarray:
        arr = self.zeros((n, n))
        for i in range(n):
            arr[i, i] = Fraction(1)
        return arr

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.dot(a, b)

    def parse(self, s: str):
        return self.scalar(s)

    def to_spec(self) -> dict:
        return {"rationals": True}

    # ------------------------------------------------------------------ dunder
    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("RationalField")

    def __repr__(self) -> str:
        return "QQ"


def field_from_spec(spec: dict):
    """Build a field from its serialized description.

    Accepts ``{"prime": p}`` for GF(p) or ``{"rationals": true}``.
    """
    if not isinstance(spec, dict):
        raise FieldError(f"field description must be an object, got {spec!r}")
    if spec.get("rationals"):
        return RationalField()
    if "prime" in spec:
        return PrimeField(int(spec["prime"]))
    raise FieldError(f"unrecognized field description {spec!r}")
