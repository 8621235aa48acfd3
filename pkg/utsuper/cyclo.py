"""Exact numbers in Q(zeta_m) for prime-power conductors m = p^a.

Values are coefficient vectors over zeta^0, ..., zeta^(phi(m) - 1), reduced
modulo Phi_m(x) = sum_{i < p} x^(i p^(a-1)). Whole tables of algebraic
integers are kept as int64 arrays of such vectors and combined with the
structure tensors below.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from sympy import factorint


@lru_cache(maxsize=None)
def split_conductor(m: int) -> Tuple[int, int, int]:
    """``(p, a, phi(m))`` for ``m = p^a``; ``m = 1`` gives ``(1, 0, 1)``."""
    if m == 1:
        return 1, 0, 1
    factors = factorint(m)
    assert len(factors) == 1, f"conductor {m} is not a prime power"
    (p, a), = factors.items()
    return p, a, (p - 1) * p ** (a - 1)


def conductor(n: int, p: int) -> int:
    """Exponent bound for U_n(p^k): the least power of p that is at least ``max(n, p)``."""
    m = p
    while m < n:
        m *= p
    return m


@lru_cache(maxsize=None)
def reduction_matrix(m: int) -> np.ndarray:
    """Row k holds the reduced coefficients of zeta^k, ``0 <= k < m``."""
    p, a, phi = split_conductor(m)
    rows = np.zeros((m, phi), dtype=np.int64)
    for k in range(min(m, phi)):
        rows[k, k] = 1
    if m == 1:
        return rows
    step = p ** (a - 1)
    # zeta^(phi + r) = -sum_{i < p - 1} zeta^(r + i step) for 0 <= r < step
    for k in range(phi, m):
        r = k - phi
        for i in range(p - 1):
            rows[k, r + i * step] -= 1
    return rows


@lru_cache(maxsize=None)
def product_tensor(m: int) -> np.ndarray:
    """``T[u, v]`` is the reduced vector of zeta^(u + v)."""
    _, _, phi = split_conductor(m)
    reduce = reduction_matrix(m)
    tensor = np.zeros((phi, phi, phi), dtype=np.int64)
    for u in range(phi):
        for v in range(phi):
            tensor[u, v] = reduce[(u + v) % m]
    return tensor


@lru_cache(maxsize=None)
def conjugation_matrix(m: int) -> np.ndarray:
    """Row u is the reduced vector of zeta^(-u)."""
    _, _, phi = split_conductor(m)
    reduce = reduction_matrix(m)
    return np.stack([reduce[(-u) % m] for u in range(phi)])


def multiply(first: np.ndarray, second: np.ndarray, m: int) -> np.ndarray:
    """Elementwise product of two arrays of reduced vectors (last axis)."""
    return np.einsum("...u,...v,uvw->...w", first, second, product_tensor(m))


def conjugate(values: np.ndarray, m: int) -> np.ndarray:
    """Complex conjugate of an array of reduced vectors."""
    return values @ conjugation_matrix(m)


def from_exponent_counts(counts: np.ndarray, m: int) -> np.ndarray:
    """Reduced vectors of sum_k counts[..., k] zeta^k."""
    return counts @ reduction_matrix(m)


class Cyclo:
    """Exact element of Q(zeta_m) with rational coefficients.

    >>> Cyclo

    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable = ()):
        _, _, phi = split_conductor(m)
        coeffs = [Fraction(c) for c in coeffs]
        assert len(coeffs) <= phi, f"{len(coeffs)} coefficients exceed phi({m}) = {phi}"
        self.m = m
        self.coeffs: Tuple[Fraction, ...] = tuple(coeffs + [Fraction(0)] * (phi - len(coeffs)))

    @classmethod
    def rational(cls, m: int, value) -> "Cyclo":
        return cls(m, [value])

    @classmethod
    def zeta(cls, m: int, k: int) -> "Cyclo":
        """zeta_m^k."""
        return cls(m, reduction_matrix(m)[k % m].tolist())

    @classmethod
    def from_vector(cls, m: int, vector: Sequence[int]) -> "Cyclo":
        return cls(m, [int(c) for c in vector])

    def lift(self, m: int) -> "Cyclo":
        """Same number written with conductor ``m``, a multiple of the current one."""
        if m == self.m:
            return self
        assert m % self.m == 0, f"cannot lift conductor {self.m} to {m}"
        scale = m // self.m
        reduce = reduction_matrix(m)
        total = [Fraction(0)] * split_conductor(m)[2]
        for k, c in enumerate(self.coeffs):
            if c:
                for w, r in enumerate(reduce[(k * scale) % m]):
                    total[w] += c * int(r)
        return Cyclo(m, total)

    def _common(self, other) -> Tuple["Cyclo", "Cyclo"]:
        if not isinstance(other, Cyclo):
            return self, Cyclo.rational(self.m, other)
        m = max(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other) -> "Cyclo":
        a, b = self._common(other)
        return Cyclo(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.m, [-c for c in self.coeffs])

    def __sub__(self, other) -> "Cyclo":
        return self + (-other)

    def __mul__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            return Cyclo(self.m, [c * Fraction(other) for c in self.coeffs])
        a, b = self._common(other)
        tensor = product_tensor(a.m)
        total = [Fraction(0)] * len(a.coeffs)
        for u, x in enumerate(a.coeffs):
            if not x:
                continue
            for v, y in enumerate(b.coeffs):
                if y:
                    for w, t in enumerate(tensor[u, v]):
                        if t:
                            total[w] += x * y * int(t)
        return Cyclo(a.m, total)

    __rmul__ = __mul__

    def conj(self) -> "Cyclo":
        total = [Fraction(0)] * len(self.coeffs)
        matrix = conjugation_matrix(self.m)
        for u, c in enumerate(self.coeffs):
            if c:
                for w, t in enumerate(matrix[u]):
                    total[w] += c * int(t)
        return Cyclo(self.m, total)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclo):
            other = Cyclo.rational(self.m, other)
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def normalized_trace(self) -> Fraction:
        """Tr(x) / phi(m), the same for every conductor the value is written in."""
        p, a, _ = split_conductor(self.m)
        trace = self.coeffs[0]
        if a:
            # zeta^(i p^(a-1)) has order p and normalized trace -1/(p-1)
            step = p ** (a - 1)
            trace -= sum((self.coeffs[i * step] for i in range(1, p - 1)), Fraction(0)) / (p - 1)
        return trace

    def __hash__(self) -> int:
        return hash(self.normalized_trace())

    def __repr__(self) -> str:
        return f"Cyclo({self.m}, {self})"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(str(c) if k == 0 else f"{c}*z^{k}")
        return " + ".join(parts) or "0"

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coeffs]
