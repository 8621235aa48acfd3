"""Combinatorics of the positive roots of type A_{n-1}.

A root ``Root(i, j)`` is alpha_{i,j} = alpha_i + ... + alpha_j and sits at
matrix entry ``(i, j + 1)``. Every region used by the character theory
(arm, leg, hook, base, subtriangular and radical root sets) is computed
here as a canonically ordered ``RootSet``.
"""

import itertools
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from utsuper import enums, models


class Root(NamedTuple):
    """Positive root alpha_{i,j}, 1-based.

    >>> Root

    """

    i: int
    j: int

    @property
    def height(self) -> int:
        """Height ``j - i``; zero exactly for simple roots."""
        return self.j - self.i

    @property
    def entry(self) -> Tuple[int, int]:
        """1-based matrix entry of the root subgroup X_alpha."""
        return self.i, self.j + 1

    def __str__(self) -> str:
        if self.i == self.j:
            return f"a{self.i}"
        return f"a{self.i},{self.j}"


def check_root(n: int, root: Root) -> Root:
    """Validate a root against the ambient rank.

    Args:
        n: Ambient rank.
        root: Root to validate.

    Returns:
        Root:
        The same root, as a ``Root`` instance.

    Raises:
        RootOutOfBounds: If ``1 <= i <= j <= n - 1`` fails.
    """
    i, j = root
    if not 1 <= i <= j <= n - 1:
        raise models.RootOutOfBounds(n, i, j)
    return Root(i, j)


class RootSet:
    """Finite set of positive roots of rank ``n``, ordered by ``(i, j)``.

    >>> RootSet

    """

    __slots__ = ("n", "roots", "_members")

    def __init__(self, n: int, roots: Iterable[Root | Tuple[int, int]] = ()):
        """Instantiates the ``RootSet`` and validates every member.

        Args:
            n: Ambient rank.
            roots: Roots, as ``Root`` or ``(i, j)`` tuples; duplicates are merged.
        """
        self.n = n
        members = frozenset(check_root(n, Root(*root)) for root in roots)
        self._members = members
        self.roots: Tuple[Root, ...] = tuple(sorted(members))

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, root) -> bool:
        return Root(*root) in self._members

    def __eq__(self, other) -> bool:
        if isinstance(other, RootSet):
            return self.n == other.n and self._members == other._members
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self._members))

    def __repr__(self) -> str:
        inner = ", ".join(str(root) for root in self.roots)
        return f"{type(self).__name__}(n={self.n}, {{{inner}}})"

    def __or__(self, other: "RootSet") -> "RootSet":
        return RootSet(self.n, self._members | other._members)

    def __and__(self, other: "RootSet") -> "RootSet":
        return RootSet(self.n, self._members & other._members)

    def __sub__(self, other: "RootSet") -> "RootSet":
        return RootSet(self.n, self._members - other._members)

    def isdisjoint(self, other: "RootSet") -> bool:
        """True when the sets share no root."""
        return self._members.isdisjoint(other._members)

    def issubset(self, other: "RootSet") -> bool:
        """True when every root of this set lies in ``other``."""
        return self._members <= other._members

    @property
    def members(self) -> frozenset:
        """Members as a frozenset of ``Root``."""
        return self._members


class BasicSet(RootSet):
    """Nonempty root set whose members are pairwise separate.

    >>> BasicSet

    """

    __slots__ = ()


class HookParts(NamedTuple):
    """Arm, leg and hook of a root.

    >>> HookParts

    """

    arm: RootSet
    leg: RootSet
    hook: RootSet


class PairClassification(NamedTuple):
    """Relation between two roots and the overlap of their hooks.

    >>> PairClassification

    """

    relation: enums.PairRelation
    hook_overlap: RootSet


class DecompositionWitness(NamedTuple):
    """Pivot and parts certifying that a basic set is decomposable.

    >>> DecompositionWitness

    """

    pivot: Root
    part_a: BasicSet
    part_b: BasicSet


class TkEmbedding(NamedTuple):
    """Closed root set T_k and its identification with the roots of rank ``n - 1``.

    >>> TkEmbedding

    """

    roots: RootSet
    phi: Dict[Root, Root]


def positive_roots(n: int) -> RootSet:
    """All positive roots alpha_{i,j}, ``1 <= i <= j <= n - 1``.

    Args:
        n: Ambient rank, at least 1.

    Returns:
        RootSet:
        The root system, of size ``n(n - 1)/2``.
    """
    if n < 1:
        raise models.RankTooSmall(f"rank must be at least 1, got {n}")
    return RootSet(n, _positive_tuple(n))


@lru_cache(maxsize=None)
def _positive_tuple(n: int) -> Tuple[Root, ...]:
    return tuple(Root(i, j) for i in range(1, n) for j in range(i, n))


def arm_roots(root: Root) -> Tuple[Root, ...]:
    """Roots on the row of ``root`` to its left: alpha_{i,l}, ``l = i..j-1``."""
    i, j = root
    return tuple(Root(i, l) for l in range(i, j))


def leg_roots(root: Root) -> Tuple[Root, ...]:
    """Roots on the column of ``root`` below it: alpha_{k,j}, ``k = i+1..j``."""
    i, j = root
    return tuple(Root(k, j) for k in range(i + 1, j + 1))


def hook_roots(root: Root) -> Tuple[Root, ...]:
    """The root together with its arm and leg."""
    return (Root(*root),) + arm_roots(root) + leg_roots(root)


def hook_parts(n: int, alpha: Root) -> HookParts:
    """Arm, leg and hook of a root.

    Args:
        n: Ambient rank.
        alpha: Root, valid for ``n``.

    Returns:
        HookParts:
        Disjoint arm and leg, and the hook of size ``2(j - i) + 1``.
    """
    alpha = check_root(n, alpha)
    return HookParts(
        arm=RootSet(n, arm_roots(alpha)),
        leg=RootSet(n, leg_roots(alpha)),
        hook=RootSet(n, hook_roots(alpha)),
    )


def interval_triangle(n: int, alpha: Root) -> RootSet:
    """Roots alpha_{k,l} with ``i <= k <= l <= j``; the roots of U_alpha."""
    i, j = check_root(n, alpha)
    return RootSet(n, (Root(k, l) for k in range(i, j + 1) for l in range(k, j + 1)))


def region_roots(n: int, alpha: Root, kind: enums.RegionKind | str) -> RootSet:
    """Root set of the base, subtriangular or radical group of a root.

    Args:
        n: Ambient rank.
        alpha: Root, valid for ``n``.
        kind: One of ``base``, ``subtri`` or ``radical``.

    Returns:
        RootSet:
        ``base`` is everything but the arm, ``subtri`` the interval triangle
        and ``radical`` its complement.
    """
    kind = enums.RegionKind(kind)
    alpha = check_root(n, alpha)
    every = positive_roots(n)
    if kind is enums.RegionKind.base:
        return every - RootSet(n, arm_roots(alpha))
    triangle = interval_triangle(n, alpha)
    if kind is enums.RegionKind.subtri:
        return triangle
    return every - triangle


def root_sum(first: Root, second: Root) -> Optional[Root]:
    """Sum of two positive roots when it is a root, else None."""
    if first.j + 1 == second.i:
        return Root(first.i, second.j)
    if second.j + 1 == first.i:
        return Root(second.i, first.j)
    return None


def closure_violation(roots: RootSet) -> Optional[Tuple[Root, Root]]:
    """First pair of members whose sum is a root missing from the set."""
    for first, second in itertools.combinations(roots, 2):
        total = root_sum(first, second)
        if total is not None and total not in roots:
            return first, second
    return None


def is_closed(roots: RootSet) -> bool:
    """True when the sum of two members is a member whenever it is a root."""
    return closure_violation(roots) is None


def classify_pair(n: int, alpha: Root, beta: Root) -> PairClassification:
    """Classify the relative position of two roots.

    Args:
        n: Ambient rank.
        alpha: First root.
        beta: Second root.

    Returns:
        PairClassification:
        ``equal``, ``arm`` (same row), ``leg`` (same column) or one of the two
        separate relations, plus the overlap of the two hooks.
    """
    alpha, beta = check_root(n, alpha), check_root(n, beta)
    overlap = RootSet(n, set(hook_roots(alpha)) & set(hook_roots(beta)))
    if alpha == beta:
        relation = enums.PairRelation.equal
    elif alpha.i == beta.i:
        relation = enums.PairRelation.arm
    elif alpha.j == beta.j:
        relation = enums.PairRelation.leg
    elif len(overlap):
        relation = enums.PairRelation.separate_crossing
    else:
        relation = enums.PairRelation.separate_disjoint
    return PairClassification(relation=relation, hook_overlap=overlap)


def is_separate(alpha: Root, beta: Root) -> bool:
    """True when the roots share neither a row nor a column."""
    return alpha.i != beta.i and alpha.j != beta.j


def validate_basic_set(n: int, roots: Iterable[Root | Tuple[int, int]]) -> BasicSet:
    """Check that a root set is a basic set.

    Args:
        n: Ambient rank.
        roots: Candidate roots.

    Returns:
        BasicSet:
        The validated basic set.

    Raises:
        EmptySetError: If no roots are given.
        SameRowError: If two roots share a row.
        SameColumnError: If two roots share a column.
    """
    candidate = RootSet(n, roots)
    if not len(candidate):
        raise models.EmptySetError("a basic set must be nonempty")
    for first, second in itertools.combinations(candidate, 2):
        if first.i == second.i:
            raise models.SameRowError(first, second)
        if first.j == second.j:
            raise models.SameColumnError(first, second)
    return BasicSet(n, candidate)


def is_decomposition_witness(n: int, basic: BasicSet, witness: DecompositionWitness) -> bool:
    """Re-check the three defining predicates of a decomposition independently."""
    triangle = interval_triangle(n, witness.pivot)
    if not (len(witness.part_a) and len(witness.part_b)):
        return False
    if not witness.part_a.isdisjoint(witness.part_b):
        return False
    if (witness.part_a | witness.part_b) != RootSet(n, basic):
        return False
    if not witness.part_a.issubset(triangle):
        return False
    return all(triangle.isdisjoint(RootSet(n, hook_roots(root))) for root in witness.part_b)


def decompose_basic_set(n: int, basic: BasicSet | Iterable[Root]) -> Optional[DecompositionWitness]:
    """Search for a pivot splitting a basic set into a triangle part and a far part.

    Args:
        n: Ambient rank.
        basic: A valid basic set.

    Returns:
        DecompositionWitness | None:
        The first witness in canonical pivot order, or None when the set is
        indecomposable.
    """
    basic = validate_basic_set(n, basic)
    for pivot in positive_roots(n):
        triangle = interval_triangle(n, pivot)
        part_a = basic & triangle
        part_b = basic - triangle
        if not (len(part_a) and len(part_b)):
            continue
        if all(triangle.isdisjoint(RootSet(n, hook_roots(root))) for root in part_b):
            return DecompositionWitness(
                pivot=pivot, part_a=BasicSet(n, part_a), part_b=BasicSet(n, part_b)
            )
    return None


def graph_auto(n: int, alpha: Root) -> Root:
    """Image of a root under the graph automorphism: alpha_{i,j} -> alpha_{n-j,n-i}."""
    i, j = check_root(n, alpha)
    return Root(n - j, n - i)


def graph_auto_set(n: int, roots: Iterable[Root]) -> RootSet:
    """Image of a root set under the graph automorphism."""
    return RootSet(n, (graph_auto(n, root) for root in roots))


def mu(n: int) -> int:
    """Largest exponent e with an irreducible of degree q^e in U_n(q)."""
    if n < 1:
        raise models.RankTooSmall(f"rank must be at least 1, got {n}")
    m, odd = divmod(n, 2)
    return m * m if odd else m * (m - 1)


def t_k_embedding(n: int, k: int) -> TkEmbedding:
    """Closed root set T_k and its identification with the roots of rank ``n - 1``.

    T_k drops alpha_{1,k}, alpha_{k+1,n-1}, the leg of the first and the arm of
    the second; in matrix terms these are the entries in column and row
    ``k + 1``, so T_k is the pattern of the remaining indices.

    Args:
        n: Ambient rank.
        k: Cut index, ``1 <= k < n - 1``.

    Returns:
        TkEmbedding:
        The root set and the map onto ``positive_roots(n - 1)``.
    """
    if not 1 <= k < n - 1:
        raise models.RankTooSmall(f"cut index k={k} must satisfy 1 <= k < {n - 1}")
    first, second = Root(1, k), Root(k + 1, n - 1)
    removed = {first, second, *leg_roots(first), *arm_roots(second)}
    roots = positive_roots(n) - RootSet(n, removed)
    violation = closure_violation(roots)
    assert violation is None, f"T_{k} is not closed: {violation}"

    def renumber(index: int) -> int:
        return index if index <= k else index - 1

    phi = {}
    for root in roots:
        row, column = root.entry
        phi[root] = Root(renumber(row), renumber(column) - 1)
    assert sorted(phi.values()) == list(_positive_tuple(n - 1)), "phi is not a bijection"
    return TkEmbedding(roots=roots, phi=phi)


def enumerate_basic_sets(n: int) -> List[BasicSet]:
    """Every basic set of rank ``n``, ordered by size then canonical roots."""
    found = []

    def extend(start: int, chosen: Tuple[Root, ...], rows: frozenset, columns: frozenset):
        if chosen:
            found.append(chosen)
        for index in range(start, len(every)):
            root = every[index]
            if root.i in rows or root.j in columns:
                continue
            extend(index + 1, chosen + (root,), rows | {root.i}, columns | {root.j})

    every = _positive_tuple(n)
    extend(0, (), frozenset(), frozenset())
    found.sort(key=lambda roots: (len(roots), roots))
    return [BasicSet(n, roots) for roots in found]


def count_basic_sets(n: int) -> int:
    """Number of nonempty basic sets; the Bell number B_n minus one."""
    return len(enumerate_basic_sets(n))
