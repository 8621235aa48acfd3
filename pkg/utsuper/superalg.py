"""Symbolic algebra of elementary and basic characters of U_n(q).

A basic character is stored as a ``BasicSymbol``: the ambient (n, q) plus one
``ElemFactor`` (root, nonzero parameter) per root of a basic set. Products
are brought back to sums of basic symbols by ``tensor_normalize``, which
rewrites non-separate factor pairs until every term is a basic symbol.
"""

import itertools
import re
from collections import Counter
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from utsuper import enums, logger, models, polycount
from utsuper.ffgroup import field_make
from utsuper.polycount import QM1, Q, PolyQ, SeededPoly
from utsuper.rootsys import (
    Root,
    arm_roots,
    check_root,
    classify_pair,
    decompose_basic_set,
    enumerate_basic_sets,
    graph_auto_set,
    is_separate,
    leg_roots,
    mu,
    validate_basic_set,
)


class ElemFactor(NamedTuple):
    """Elementary factor: the character of V_alpha nontrivial on X_alpha with parameter ``param``.

    >>> ElemFactor

    """

    root: Root
    param: int

    def __str__(self) -> str:
        return f"({self.root.i},{self.root.j}):{self.param}"


def _factor_key(factor: ElemFactor) -> Tuple[int, int, int]:
    return factor.root.j, factor.root.i, factor.param


def _canonical(factors: Iterable[ElemFactor]) -> Tuple[ElemFactor, ...]:
    return tuple(sorted(factors, key=_factor_key))


class BasicSymbol:
    """Basic character xi_{D,phi}; the empty symbol is the trivial character.

    >>> BasicSymbol

    """

    __slots__ = ("n", "q", "factors")

    def __init__(self, n: int, q: int, factors: Iterable[ElemFactor] = ()):
        self.n = n
        self.q = q
        self.factors: Tuple[ElemFactor, ...] = _canonical(factors)

    def __eq__(self, other) -> bool:
        return isinstance(other, BasicSymbol) and (self.n, self.q, self.factors) == (
            other.n,
            other.q,
            other.factors,
        )

    def __hash__(self) -> int:
        return hash((self.n, self.q, self.factors))

    def __lt__(self, other: "BasicSymbol") -> bool:
        return self.sort_key < other.sort_key

    def __len__(self) -> int:
        return len(self.factors)

    def __repr__(self) -> str:
        return f"BasicSymbol(n={self.n}, q={self.q}, {self})"

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"L[{factor}]" for factor in self.factors)

    @property
    def sort_key(self) -> Tuple:
        return len(self.factors), tuple(_factor_key(factor) for factor in self.factors)

    @property
    def roots(self) -> Tuple[Root, ...]:
        return tuple(factor.root for factor in self.factors)

    @property
    def phi(self) -> Dict[Root, int]:
        """Parameter of each root."""
        return {factor.root: factor.param for factor in self.factors}

    def to_json(self) -> List[models.FactorJSON]:
        return [
            models.FactorJSON(root=models.RootJSON(i=factor.root.i, j=factor.root.j), param=factor.param)
            for factor in self.factors
        ]


def _check_param(q: int, param: int) -> int:
    if param % q == 0 or not 0 < param < q:
        raise models.ZeroParameter(f"parameter {param} is not a nonzero element label of GF({q})")
    return param


def basic(n: int, q: int, factors: Iterable[Tuple[Root, int] | ElemFactor]) -> BasicSymbol:
    """Validated basic symbol from (root, parameter) pairs.

    Raises:
        SameRowError: Two roots share a row.
        SameColumnError: Two roots share a column.
        ZeroParameter: A parameter is zero.
    """
    field_make(q)
    pairs = [ElemFactor(check_root(n, root), _check_param(q, param)) for root, param in factors]
    if pairs:
        validate_basic_set(n, [factor.root for factor in pairs])
    return BasicSymbol(n, q, pairs)


def elementary(n: int, q: int, alpha: Root, t: int) -> BasicSymbol:
    """Elementary character at ``alpha`` with parameter ``t``; degree q^(j - i)."""
    return basic(n, q, [(alpha, t)])


def trivial_symbol(n: int, q: int) -> BasicSymbol:
    return BasicSymbol(n, q)


def degree_exponent(symbol: BasicSymbol) -> int:
    """Sum of the heights of the symbol's roots."""
    return sum(factor.root.height for factor in symbol.factors)


class SuperExpr:
    """Formal sum of basic symbols with positive integer coefficients.

    >>> SuperExpr

    """

    __slots__ = ("n", "q", "terms")

    def __init__(self, n: int, q: int, terms: Optional[Dict[BasicSymbol, int]] = None):
        self.n = n
        self.q = q
        self.terms: Dict[BasicSymbol, int] = {}
        for symbol, coeff in (terms or {}).items():
            if (symbol.n, symbol.q) != (n, q):
                raise models.AmbientMismatch(f"{symbol!r} does not live in U_{n}({q})")
            if coeff < 0:
                raise ValueError(f"negative coefficient {coeff} for {symbol}")
            if coeff:
                self.terms[symbol] = self.terms.get(symbol, 0) + coeff

    @classmethod
    def from_symbol(cls, symbol: BasicSymbol, coeff: int = 1) -> "SuperExpr":
        return cls(symbol.n, symbol.q, {symbol: coeff})

    def __eq__(self, other) -> bool:
        return isinstance(other, SuperExpr) and (self.n, self.q, self.terms) == (other.n, other.q, other.terms)

    def __add__(self, other: "SuperExpr") -> "SuperExpr":
        _same_ambient(self, other)
        terms = Counter(self.terms)
        terms.update(other.terms)
        return SuperExpr(self.n, self.q, dict(terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[BasicSymbol, int]]:
        return iter(self.expr_terms())

    def __repr__(self) -> str:
        return f"SuperExpr(n={self.n}, q={self.q}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            str(symbol) if coeff == 1 else f"{coeff}*{symbol}" for symbol, coeff in self.expr_terms()
        )

    def expr_terms(self) -> List[Tuple[BasicSymbol, int]]:
        """Terms in canonical order."""
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key)

    def to_json(self) -> List[models.TermJSON]:
        return [models.TermJSON(factors=symbol.to_json(), coeff=coeff) for symbol, coeff in self.expr_terms()]


def trivial(n: int, q: int) -> SuperExpr:
    """The trivial character as an expression."""
    return SuperExpr.from_symbol(trivial_symbol(n, q))


def _same_ambient(first, second) -> None:
    if (first.n, first.q) != (second.n, second.q):
        raise models.AmbientMismatch(
            f"cannot combine U_{first.n}({first.q}) with U_{second.n}({second.q})"
        )


def _first_clash(factors: Tuple[ElemFactor, ...]) -> Optional[Tuple[int, int]]:
    for a, b in itertools.combinations(range(len(factors)), 2):
        if not is_separate(factors[a].root, factors[b].root):
            return a, b
    return None


def _spread(q: int, roots: Sequence[Root]) -> List[Tuple[ElemFactor, ...]]:
    """The summands 1 and lambda_{gamma,u} for gamma in ``roots`` and every u != 0."""
    return [()] + [(ElemFactor(gamma, u),) for gamma in roots for u in range(1, q)]


def _rewrite(q: int, first: ElemFactor, second: ElemFactor) -> List[Tuple[ElemFactor, ...]]:
    """Terms replacing one non-separate pair; every term has coefficient one."""
    field = field_make(q)
    if first.root == second.root:
        alpha = first.root
        total = field.add(first.param, second.param)
        if total:
            return [(ElemFactor(alpha, total),) + extra for extra in _spread(q, arm_roots(alpha))]
        return [
            left + right
            for left in _spread(q, arm_roots(alpha))
            for right in _spread(q, leg_roots(alpha))
        ]
    if first.root.j == second.root.j:
        top, low = (first, second) if first.root.i < second.root.i else (second, first)
        return [(top,) + extra for extra in _spread(q, arm_roots(low.root))]
    # same row: the factor reaching further right stays
    wide, short = (first, second) if first.root.j > second.root.j else (second, first)
    return [(wide,) + extra for extra in _spread(q, leg_roots(short.root))]


@lru_cache(maxsize=None)
def _normalize(q: int, factors: Tuple[ElemFactor, ...]) -> Tuple[Tuple[Tuple[ElemFactor, ...], int], ...]:
    clash = _first_clash(factors)
    if clash is None:
        return ((factors, 1),)
    a, b = clash
    rest = tuple(factor for index, factor in enumerate(factors) if index not in clash)
    result: Counter = Counter()
    for replacement in _rewrite(q, factors[a], factors[b]):
        for normal, coeff in _normalize(q, _canonical(rest + replacement)):
            result[normal] += coeff
    return tuple(sorted(result.items(), key=lambda item: [_factor_key(f) for f in item[0]]))


def clear_memo() -> None:
    """Forget memoized pair products."""
    _normalize.cache_clear()


def normalize_factors(n: int, q: int, factors: Iterable[ElemFactor]) -> SuperExpr:
    """Sum of basic symbols equal to the product of arbitrary elementary factors."""
    terms: Counter = Counter()
    for normal, coeff in _normalize(q, _canonical(factors)):
        terms[BasicSymbol(n, q, normal)] += coeff
    return SuperExpr(n, q, dict(terms))


def tensor_normalize(first: SuperExpr, second: SuperExpr) -> SuperExpr:
    """Tensor product of two expressions, as a sum of basic characters.

    Args:
        first: Left expression.
        second: Right expression of the same ambient.

    Returns:
        SuperExpr:
        Canonical normal form; the total degree is the product of the inputs'.
    """
    _same_ambient(first, second)
    terms: Counter = Counter()
    for (left, a), (right, b) in itertools.product(first.expr_terms(), second.expr_terms()):
        for symbol, coeff in normalize_factors(first.n, first.q, left.factors + right.factors).terms.items():
            terms[symbol] += a * b * coeff
    return SuperExpr(first.n, first.q, dict(terms))


def expr_total_degree(expr: SuperExpr) -> PolyQ:
    """Sum of coeff * q^(degree exponent) over the terms."""
    total = PolyQ()
    for symbol, coeff in expr.terms.items():
        total = total + Q ** degree_exponent(symbol) * coeff
    return total


_FACTOR = re.compile(r"\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*:\s*(-?\d+)\s*")


def parse_factors(text: str) -> List[Tuple[Root, int]]:
    """Parse ``"(i,j):t,(i,j):t"`` into (root, parameter) pairs.

    Raises:
        FactorParseError: With the position of the first unreadable character.
    """
    pairs, position = [], 0
    if not text.strip():
        raise models.FactorParseError(text, 0, "empty factor list")
    while True:
        match = _FACTOR.match(text, position)
        if not match:
            raise models.FactorParseError(text, position, "expected (i,j):t")
        pairs.append((Root(int(match.group(1)), int(match.group(2))), int(match.group(3))))
        position = match.end()
        if position == len(text):
            return pairs
        if text[position] != ",":
            raise models.FactorParseError(text, position, "expected ','")
        position += 1


def expr_from_factors(n: int, q: int, factors: Iterable[Tuple[Root, int]] | str) -> SuperExpr:
    """Normalized product of the elementary characters of a factor list."""
    if isinstance(factors, str):
        factors = parse_factors(factors)
    field_make(q)
    elems = [ElemFactor(check_root(n, root), _check_param(q, param)) for root, param in factors]
    return normalize_factors(n, q, elems)


def expected_total(n: int, q: int, factors: Iterable[Tuple[Root, int]]) -> PolyQ:
    """Product of the degrees of the given elementary factors."""
    return Q ** sum(Root(*root).height for root, _ in factors)


def nested_multiplicity(n: int, q: int, alpha: Root, s: int, t: int) -> Dict[BasicSymbol, int]:
    """Coefficients of the two-factor terms in lambda_{alpha,s} x lambda_{alpha,t}, s + t != 0."""
    alpha = check_root(n, alpha)
    if not field_make(q).add(s, t):
        raise ValueError(f"parameters {s} and {t} cancel in GF({q})")
    product = normalize_factors(n, q, [ElemFactor(alpha, s), ElemFactor(alpha, t)])
    return {symbol: coeff for symbol, coeff in product.expr_terms() if len(symbol) == 2}


def basic_character_count(n: int, q: int) -> int:
    """Number of distinct basic characters, the trivial one included."""
    return 1 + sum((q - 1) ** len(basic_set) for basic_set in enumerate_basic_sets(n))


class StatRow(NamedTuple):
    """Irreducible constituents of one degree and one multiplicity.

    >>> StatRow

    """

    degree_exponent: int
    count: PolyQ
    multiplicity: PolyQ

    def to_json(self) -> models.StatJSON:
        return models.StatJSON(
            degree_exponent=self.degree_exponent, count=self.count.to_json(), multiplicity=self.multiplicity.to_json()
        )


class ConstituentStats(NamedTuple):
    """Constituent profile of a basic character.

    >>> ConstituentStats

    """

    rows: Tuple[StatRow, ...]

    def total(self) -> PolyQ:
        """Sum of count * multiplicity * q^e; equals the character degree."""
        return sum((row.count * row.multiplicity * Q**row.degree_exponent for row in self.rows), PolyQ())

    def norm(self) -> PolyQ:
        """Sum of count * multiplicity^2; equals the character's self inner product."""
        return sum((row.count * row.multiplicity**2 for row in self.rows), PolyQ())


def _one(exponent: int) -> ConstituentStats:
    return ConstituentStats((StatRow(exponent, PolyQ.constant(1), PolyQ.constant(1)),))


def _product(first: ConstituentStats, second: ConstituentStats) -> ConstituentStats:
    merged: Dict[Tuple[int, PolyQ], PolyQ] = {}
    for a, b in itertools.product(first.rows, second.rows):
        key = (a.degree_exponent + b.degree_exponent, a.multiplicity * b.multiplicity)
        merged[key] = merged.get(key, PolyQ()) + a.count * b.count
    rows = [StatRow(e, count, mult) for (e, mult), count in merged.items()]
    return ConstituentStats(tuple(sorted(rows, key=lambda row: (row.degree_exponent, row.multiplicity.coeffs))))


def _triple_patterns(n: int) -> Dict[frozenset, ConstituentStats]:
    if n < 7:
        return {}
    crossing = ConstituentStats((StatRow(3 * n - 14, Q**2, PolyQ.constant(1)),))
    nested = ConstituentStats(
        (StatRow(3 * n - 15, Q**2, PolyQ.constant(1)), StatRow(3 * n - 14, QM1, Q))
    )
    first = (Root(2, n - 3), Root(1, n - 2), Root(3, n - 1))
    return {
        frozenset(first): crossing,
        frozenset(graph_auto_set(n, first)): crossing,
        frozenset((Root(1, n - 3), Root(2, n - 2), Root(3, n - 1))): nested,
    }


def constituent_stats(symbol: BasicSymbol) -> ConstituentStats:
    """Degrees, counts and multiplicities of the irreducible constituents.

    Args:
        symbol: Basic symbol.

    Returns:
        ConstituentStats:
        Rows (degree exponent, count, multiplicity) as polynomials in q.

    Raises:
        UnsupportedConfiguration: For basic sets outside the resolved cases.
    """
    n, roots = symbol.n, symbol.roots
    if not roots:
        return _one(0)
    if len(roots) == 1:
        return _one(roots[0].height)
    witness = decompose_basic_set(n, roots)
    if witness is not None:
        parts = []
        for part in (witness.part_a, witness.part_b):
            members = set(part)
            parts.append(
                constituent_stats(BasicSymbol(n, symbol.q, (f for f in symbol.factors if f.root in members)))
            )
        return _product(*parts)
    if len(roots) == 2:
        first, second = roots
        exponent = first.height + second.height
        relation = classify_pair(n, first, second).relation
        if relation is enums.PairRelation.separate_crossing:
            return ConstituentStats((StatRow(exponent - 1, Q, PolyQ.constant(1)),))
        return _one(exponent)
    if (known := _triple_patterns(n).get(frozenset(roots))) is not None:
        return known
    raise models.UnsupportedConfiguration(f"no constituent data for the basic set {{{', '.join(map(str, roots))}}}")


class InnerRef(NamedTuple):
    """Inner subtriangular group whose characters complete a template.

    >>> InnerRef

    """

    rank: int
    which: enums.Which
    root: Optional[Root]


class ExtremalCase(NamedTuple):
    """One family of characters of a given degree rank.

    >>> ExtremalCase

    """

    label: str
    template: Tuple[Root, ...]
    inner: Optional[InnerRef]
    count: SeededPoly


def _inner(n: int, depth: int, which: enums.Which) -> InnerRef:
    rank = n - 2 * depth
    root = Root(depth + 1, n - depth - 1) if rank >= 2 else None
    return InnerRef(rank=rank, which=which, root=root)


def extremal_constructions(
    n: int,
    rank_index: int,
    seeds: Optional[polycount.BaseValueTable] = None,
    variant: enums.ThirdVariant | str = enums.ThirdVariant.prose,
) -> List[ExtremalCase]:
    """Shapes of the irreducibles of the highest, second and third degree.

    Args:
        n: Ambient rank.
        rank_index: 1, 2 or 3 for the highest, second or third degree.
        seeds: Seed table for counts that reach N_{5,2} or N_{6,4}.
        variant: Coefficient variant of case (ii) at rank 3.

    Returns:
        List[ExtremalCase]:
        Cases whose counts add up to the matching ``polycount`` value.
    """
    seeds = seeds or polycount.BaseValueTable()
    variant = enums.ThirdVariant(variant)
    if rank_index == 1:
        if n < 1:
            raise models.RankTooSmall(f"rank must be at least 1, got {n}")
        m, odd = divmod(n, 2)
        if odd:
            template = tuple(Root(k, n - k) for k in range(1, m + 1))
            return [ExtremalCase("antidiagonal", template, None, SeededPoly(QM1**m))]
        template = tuple(Root(k, n - k) for k in range(1, m))
        return [
            ExtremalCase("antidiagonal", template, None, SeededPoly(QM1 ** (m - 1))),
            ExtremalCase("antidiagonal+middle", template + (Root(m, m),), None, SeededPoly(QM1**m)),
        ]
    if rank_index == 2:
        if n < 5:
            raise models.RankTooSmall(f"second-degree shapes need n >= 5, got {n}")
        return [
            ExtremalCase(
                "(i)",
                (Root(1, n - 1),),
                _inner(n, 1, enums.Which.second),
                SeededPoly(QM1 * polycount.second_count(n - 2, seeds)),
            ),
            ExtremalCase(
                "(ii)",
                (Root(1, n - 2), Root(2, n - 1)),
                _inner(n, 2, enums.Which.top),
                SeededPoly(Q * QM1**2 * polycount.n_top(n - 4)),
            ),
        ]
    if rank_index == 3:
        if n < 7:
            raise models.RankTooSmall(f"third-degree shapes need n >= 7, got {n}")
        top = polycount.n_top(n - 6)
        crossing = (Root(2, n - 3), Root(1, n - 2), Root(3, n - 1))
        return [
            ExtremalCase(
                "(i)",
                (Root(1, n - 1),),
                _inner(n, 1, enums.Which.third),
                polycount.third_count(n - 2, seeds, variant) * QM1,
            ),
            ExtremalCase(
                "(ii)",
                (Root(1, n - 2), Root(2, n - 1)),
                _inner(n, 2, enums.Which.second),
                SeededPoly(polycount.third_coefficient(variant) * polycount.second_count(n - 4, seeds)),
            ),
            ExtremalCase("(iii)", crossing, _inner(n, 3, enums.Which.top), SeededPoly(Q**2 * QM1**3 * top)),
            ExtremalCase(
                "(iv)",
                tuple(graph_auto_set(n, crossing)),
                _inner(n, 3, enums.Which.top),
                SeededPoly(Q**2 * QM1**3 * top),
            ),
            ExtremalCase(
                "(v)",
                (Root(1, n - 3), Root(2, n - 2), Root(3, n - 1)),
                _inner(n, 3, enums.Which.top),
                SeededPoly(QM1**4 * top),
            ),
        ]
    raise ValueError(f"rank index must be 1, 2 or 3, got {rank_index}")


def extremal_total(cases: Iterable[ExtremalCase]) -> SeededPoly:
    """Sum of the case counts."""
    total = SeededPoly()
    for case in cases:
        total = total + case.count
    return total


def max_degree_symbols(n: int, q: int) -> List[BasicSymbol]:
    """Every basic symbol of degree q^mu(n); their number is n_top(n) at q."""
    symbols = []
    for case in extremal_constructions(n, 1):
        for params in itertools.product(range(1, q), repeat=len(case.template)):
            symbols.append(BasicSymbol(n, q, (ElemFactor(root, t) for root, t in zip(case.template, params))))
    assert all(degree_exponent(symbol) == mu(n) for symbol in symbols), "template misses mu(n)"
    logger.CUSTOM_LOGGER.debug("%d top-degree symbols for U_%d(%d)", len(symbols), n, q)
    return symbols
