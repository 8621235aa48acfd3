"""Integer polynomials in q and the counts N_{n,e}(q) of the three highest degrees."""

import operator
from math import comb
from typing import Dict, Iterable, Mapping, Optional, Tuple

import sympy

from utsuper import enums, logger, models
from utsuper.rootsys import mu

Q_SYMBOL = sympy.Symbol("q")
SeedKey = Tuple[int, int]


class PolyQ:
    """Dense polynomial in q with integer coefficients, lowest degree first.

    >>> PolyQ

    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs: Tuple[int, ...] = tuple(coeffs)

    @classmethod
    def constant(cls, value: int) -> "PolyQ":
        return cls((value,))

    @classmethod
    def q(cls) -> "PolyQ":
        return cls((0, 1))

    @classmethod
    def qm1(cls) -> "PolyQ":
        return cls((-1, 1))

    @classmethod
    def from_qminus1(cls, coeffs: Iterable[int]) -> "PolyQ":
        """Polynomial sum c_k (q - 1)^k."""
        total = cls()
        for power, c in enumerate(coeffs):
            total = total + cls.qm1() ** power * c
        return total

    @staticmethod
    def _lift(other) -> "PolyQ":
        if isinstance(other, PolyQ):
            return other
        return PolyQ.constant(operator.index(other))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other) -> "PolyQ":
        if isinstance(other, SeededPoly):
            return NotImplemented
        other = self._lift(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return PolyQ(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ(-c for c in self.coeffs)

    def __sub__(self, other) -> "PolyQ":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "PolyQ":
        return self._lift(other) - self

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, SeededPoly):
            return NotImplemented
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return PolyQ()
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for s, x in enumerate(self.coeffs):
            for t, y in enumerate(other.coeffs):
                product[s + t] += x * y
        return PolyQ(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PolyQ":
        assert exponent >= 0, "negative powers are not polynomials"
        result, base = PolyQ.constant(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = PolyQ.constant(other)
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyQ({list(self.coeffs)})"

    def __str__(self) -> str:
        return str(sympy.factor(self.to_sympy().as_expr()))

    def evaluate(self, point: int) -> int:
        """Exact value at an integer point (Horner)."""
        value = 0
        for c in reversed(self.coeffs):
            value = value * point + c
        return value

    def to_qminus1(self) -> Tuple[int, ...]:
        """Coefficients in powers of (q - 1), by substituting q = (q - 1) + 1."""
        result = [0] * len(self.coeffs)
        for power, c in enumerate(self.coeffs):
            for k in range(power + 1):
                result[k] += c * comb(power, k)
        return PolyQ(result).coeffs

    def qminus1_nonnegative(self) -> bool:
        """True when every coefficient in the (q - 1) basis is nonnegative."""
        return all(c >= 0 for c in self.to_qminus1())

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly.from_list(list(reversed(self.coeffs)) or [0], gens=Q_SYMBOL)

    def to_json(self, basis: enums.Basis | str = enums.Basis.q) -> models.PolyJSON:
        basis = enums.Basis(basis)
        coeffs = self.to_qminus1() if basis is enums.Basis.qm1 else self.coeffs
        return models.PolyJSON(basis=basis.value, coeffs=list(coeffs))

    @classmethod
    def from_json(cls, payload: models.PolyJSON) -> "PolyQ":
        if enums.Basis(payload.basis) is enums.Basis.qm1:
            return cls.from_qminus1(payload.coeffs)
        return cls(payload.coeffs)


Q = PolyQ.q()
QM1 = PolyQ.qm1()


def poly_arith(op: str, a: PolyQ, b) -> PolyQ | int:
    """Ring arithmetic and evaluation.

    Args:
        op: ``add``, ``mul`` or ``eval``.
        a: Left operand.
        b: Right operand, or the evaluation point for ``eval``.

    Returns:
        PolyQ | int:
        The sum or product, or the exact value.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eval":
        return a.evaluate(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def to_qminus1(poly: PolyQ) -> Tuple[int, ...]:
    """Coefficient vector of ``poly`` in powers of (q - 1)."""
    return poly.to_qminus1()


class SeededPoly:
    """Polynomial with unresolved seed values: ``constant + sum coeff[key] * N_key``.

    >>> SeededPoly

    """

    __slots__ = ("constant", "terms")

    def __init__(self, constant: PolyQ = PolyQ(), terms: Optional[Mapping[SeedKey, PolyQ]] = None):
        self.constant = constant
        self.terms: Dict[SeedKey, PolyQ] = {
            key: value for key, value in sorted((terms or {}).items()) if not value.is_zero()
        }

    @classmethod
    def seed(cls, key: SeedKey) -> "SeededPoly":
        return cls(PolyQ(), {key: PolyQ.constant(1)})

    @staticmethod
    def _lift(other) -> "SeededPoly":
        if isinstance(other, SeededPoly):
            return other
        return SeededPoly(PolyQ._lift(other))

    def __add__(self, other) -> "SeededPoly":
        other = self._lift(other)
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, PolyQ()) + value
        return SeededPoly(self.constant + other.constant, terms)

    __radd__ = __add__

    def __mul__(self, factor) -> "SeededPoly":
        factor = PolyQ._lift(factor)
        return SeededPoly(self.constant * factor, {key: value * factor for key, value in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        return self.constant == other.constant and self.terms == other.terms

    def __repr__(self) -> str:
        return f"SeededPoly({self.constant!r}, {self.terms!r})"

    def __str__(self) -> str:
        parts = [f"({value})*N[{n},{e}]" for (n, e), value in self.terms.items()]
        if not self.constant.is_zero() or not parts:
            parts.append(str(self.constant))
        return " + ".join(parts)

    @property
    def resolved(self) -> bool:
        return not self.terms

    @property
    def polynomial(self) -> PolyQ:
        """The polynomial, when no seed is left unresolved."""
        if self.terms:
            n, e = next(iter(self.terms))
            raise models.MissingSeed(n, e)
        return self.constant

    def resolve(self, seeds: "BaseValueTable") -> "SeededPoly":
        """Substitute every seed that has a symbolic value."""
        result = SeededPoly(self.constant)
        for key, value in self.terms.items():
            known = seeds.symbolic.get(key)
            result = result + (value * known if known is not None else SeededPoly(PolyQ(), {key: value}))
        return result

    def evaluate(self, point: int, seeds: Optional["BaseValueTable"] = None) -> int:
        """Exact value at ``q = point``; every seed must be known at that q."""
        seeds = seeds or BaseValueTable()
        total = self.constant.evaluate(point)
        for (n, e), value in self.terms.items():
            total += value.evaluate(point) * seeds.value(n, e, point)
        return total


class BaseValueTable:
    """Seed values N_{n,e}: symbolic polynomials and integers certified at single q.

    Per-q values are never interpolated into a polynomial.

    >>> BaseValueTable

    """

    def __init__(
        self,
        symbolic: Optional[Mapping[SeedKey, PolyQ]] = None,
        values: Optional[Mapping[Tuple[int, int, int], int]] = None,
    ):
        self.symbolic: Dict[SeedKey, PolyQ] = dict(default_seeds())
        self.symbolic.update(symbolic or {})
        self.values: Dict[Tuple[int, int, int], int] = dict(values or {})

    def __repr__(self) -> str:
        return f"BaseValueTable(symbolic={sorted(self.symbolic)}, values={sorted(self.values)})"

    def get(self, n: int, e: int) -> Optional[PolyQ]:
        """Symbolic seed, if known."""
        return self.symbolic.get((n, e))

    def value(self, n: int, e: int, q: int) -> int:
        """Integer value of N_{n,e} at ``q``."""
        if (n, e, q) in self.values:
            return self.values[(n, e, q)]
        if (n, e) in self.symbolic:
            return self.symbolic[(n, e)].evaluate(q)
        raise models.MissingSeed(n, e, q)

    def polynomial(self, n: int, e: int) -> PolyQ:
        """Symbolic seed; refuses to build one from per-q values."""
        if (poly := self.symbolic.get((n, e))) is None:
            raise models.MissingSeed(n, e)
        return poly

    def update(self, other: "BaseValueTable") -> None:
        self.symbolic.update(other.symbolic)
        self.values.update(other.values)

    @classmethod
    def from_histograms(cls, histograms: Mapping[Tuple[int, int], Mapping[int, int]]) -> "BaseValueTable":
        """Per-q seeds from oracle degree histograms keyed by ``(n, q)``."""
        values = {}
        for (n, q), histogram in histograms.items():
            for e, count in histogram.items():
                values[(n, int(e), q)] = int(count)
        logger.CUSTOM_LOGGER.debug("seeds from %d histogram(s): %d values", len(histograms), len(values))
        return cls(values=values)

    @classmethod
    def from_document(cls, document: models.SeedsDocument) -> "BaseValueTable":
        symbolic, values = {}, {}
        for seed in document.seeds:
            if seed.poly is not None:
                symbolic[(seed.n, seed.e)] = PolyQ.from_json(seed.poly)
            elif seed.value is not None and seed.q is not None:
                values[(seed.n, seed.e, seed.q)] = seed.value
            else:
                raise ValueError(f"seed N_{{{seed.n},{seed.e}}} has neither a polynomial nor a value at q")
        return cls(symbolic=symbolic, values=values)

    def to_document(self) -> models.SeedsDocument:
        seeds = [models.SeedJSON(n=n, e=e, poly=poly.to_json()) for (n, e), poly in sorted(self.symbolic.items())]
        seeds.extend(
            models.SeedJSON(n=n, e=e, q=q, value=value) for (n, e, q), value in sorted(self.values.items())
        )
        return models.SeedsDocument(seeds=seeds)


def default_seeds() -> Dict[SeedKey, PolyQ]:
    """N_{1,0}, N_{2,0}, N_{3,0}, N_{3,1} and N_{4,1} = q^3 - q."""
    return {
        (1, 0): PolyQ.constant(1),
        (2, 0): Q,
        (3, 0): Q**2,
        (3, 1): QM1,
        (4, 1): Q**3 - Q,
    }


def n_top(n: int) -> PolyQ:
    """Number of irreducibles of U_n(q) of the largest degree q^mu(n)."""
    if n < 1:
        raise models.RankTooSmall(f"rank must be at least 1, got {n}")
    m, odd = divmod(n, 2)
    if odd:
        return QM1**m
    return Q * QM1 ** (m - 1)


def n_second(
    n: int,
    mode: enums.SecondMode | str = enums.SecondMode.closed,
    seeds: Optional[BaseValueTable] = None,
) -> PolyQ:
    """Number of irreducibles of U_n(q) of degree q^(mu(n) - 1).

    Args:
        n: Rank, at least 3 in closed mode and 5 in recursion mode.
        mode: ``closed`` for the product formula, ``recursion`` to unwind
            N_n = (q-1) N_{n-2} + q (q-1)^2 N_{n-4, top}.
        seeds: Seed table for the recursion.

    Returns:
        PolyQ:
        The count as a polynomial in q.
    """
    mode = enums.SecondMode(mode)
    if mode is enums.SecondMode.closed:
        if n < 3:
            raise models.RankTooSmall(f"the second-highest count needs n >= 3, got {n}")
        m, odd = divmod(n, 2)
        if odd:
            return Q * QM1 ** (m - 1) * (QM1 * m + 1)
        return Q * QM1 ** (m - 1) * (Q * (m - 1) + 1)
    if n < 5:
        raise models.RankTooSmall(f"the second-highest recursion needs n >= 5, got {n}")
    seeds = seeds or BaseValueTable()
    return QM1 * second_count(n - 2, seeds) + Q * QM1**2 * n_top(n - 4)


def second_count(n: int, seeds: BaseValueTable) -> PolyQ:
    if (known := seeds.get(n, mu(n) - 1)) is not None:
        return known
    if n < 5:
        raise models.MissingSeed(n, mu(n) - 1)
    return n_second(n, enums.SecondMode.recursion, seeds)


def third_coefficient(variant: enums.ThirdVariant) -> PolyQ:
    if variant is enums.ThirdVariant.theorem:
        return Q * QM1
    return Q * QM1**2


def n_third(
    n: int,
    seeds: Optional[BaseValueTable] = None,
    variant: enums.ThirdVariant | str = enums.ThirdVariant.prose,
) -> SeededPoly:
    """Number of irreducibles of U_n(q) of degree q^(mu(n) - 2).

    The recursion bottoms out in N_{5,2} and N_{6,4}; seeds that are only
    known at single values of q stay as unresolved terms of the result.

    Args:
        n: Rank, at least 7.
        seeds: Seed table.
        variant: ``prose`` uses q(q-1)^2 on the N_{n-4} term, ``theorem`` q(q-1).

    Returns:
        SeededPoly:
        The count, resolved wherever the seeds allow.
    """
    if n < 7:
        raise models.RankTooSmall(f"the third-highest recursion needs n >= 7, got {n}")
    seeds = seeds or BaseValueTable()
    variant = enums.ThirdVariant(variant)
    inner = third_count(n - 2, seeds, variant)
    total = inner * QM1
    total = total + third_coefficient(variant) * second_count(n - 4, seeds)
    return total + (Q**2 * QM1**3 * 2 + QM1**4) * n_top(n - 6)


def third_count(n: int, seeds: BaseValueTable, variant: enums.ThirdVariant) -> SeededPoly:
    key = (n, mu(n) - 2)
    if (known := seeds.get(*key)) is not None:
        return SeededPoly(known)
    if n >= 7:
        return n_third(n, seeds, variant)
    return SeededPoly.seed(key)


def degree_square_identity(histogram: Mapping[int, int], n: int, q: int) -> bool:
    """Check sum N_{n,e} q^(2e) = |U_n(q)| = q^(n(n-1)/2)."""
    return sum(count * q ** (2 * int(e)) for e, count in histogram.items()) == q ** (n * (n - 1) // 2)
