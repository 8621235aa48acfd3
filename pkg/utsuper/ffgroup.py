"""Finite fields GF(q) and unitriangular pattern groups over them.

Field elements are the integers ``0..q-1``; the base-``p`` digits of an
integer are the coefficients of its polynomial representative. Group
elements are stored as rows of above-diagonal entries in canonical root
order, so whole batches of elements are multiplied with numpy table
lookups.
"""

import itertools
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from utsuper import logger, models
from utsuper.rootsys import Root, RootSet, check_root, closure_violation, positive_roots

# Fixed moduli, low degree first: GF(4) x^2+x+1, GF(8) x^3+x+1, GF(9) x^2+1.
MODULI = {4: (2, (1, 1, 1)), 8: (2, (1, 1, 0, 1)), 9: (3, (1, 0, 1))}
PRIMES = (2, 3, 5, 7)
SUPPORTED = (2, 3, 4, 5, 7, 8, 9)


class FieldSpec:
    """Exact arithmetic in GF(q) through lookup tables.

    >>> FieldSpec

    """

    def __init__(self, q: int):
        """Instantiates the ``FieldSpec`` object with the required tables.

        Args:
            q: Field size, one of ``SUPPORTED``.
        """
        if q not in SUPPORTED:
            raise models.UnsupportedField(f"GF({q}) is not supported; use one of {SUPPORTED}")
        if q in MODULI:
            self.p, self.modulus = MODULI[q]
            self.k = len(self.modulus) - 1
        else:
            self.p, self.modulus, self.k = q, (), 1
        self.q = q
        digits = [self._digits(a) for a in range(q)]
        self.add_table = np.array(
            [[self._pack([(x + y) % self.p for x, y in zip(a, b)]) for b in digits] for a in digits],
            dtype=np.uint8,
        )
        self.mul_table = np.array(
            [[self._pack(self._poly_mul(a, b)) for b in digits] for a in digits], dtype=np.uint8
        )
        self.neg_table = np.array([self._pack([(-x) % self.p for x in a]) for a in digits], dtype=np.uint8)
        self.inv_table = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            self.inv_table[a] = int(np.flatnonzero(self.mul_table[a] == 1)[0])
        self.trace_table = np.array([self._trace(a) for a in range(q)], dtype=np.uint8)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def _digits(self, a: int) -> List[int]:
        return [(a // self.p**t) % self.p for t in range(self.k)]

    def _pack(self, coefficients: Sequence[int]) -> int:
        return sum(c * self.p**t for t, c in enumerate(coefficients))

    def _poly_mul(self, a: List[int], b: List[int]) -> List[int]:
        product = [0] * (2 * self.k - 1)
        for s, x in enumerate(a):
            for t, y in enumerate(b):
                product[s + t] = (product[s + t] + x * y) % self.p
        # reduce by the monic modulus from the top degree down
        for top in range(len(product) - 1, self.k - 1, -1):
            lead = product[top]
            if lead:
                for t, c in enumerate(self.modulus):
                    product[top - self.k + t] = (product[top - self.k + t] - lead * c) % self.p
        return product[: self.k]

    def _trace(self, a: int) -> int:
        total, power = 0, a
        for _ in range(self.k):
            total = self.add(total, power)
            power = self._frobenius(power)
        assert total < self.p, f"trace of {a} left the prime field"
        return total

    def _frobenius(self, a: int) -> int:
        result = 1
        for _ in range(self.p):
            result = int(self.mul_table[result, a])
        return result

    def add(self, a: int, b: int) -> int:
        """Sum in GF(q)."""
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        """Difference in GF(q)."""
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        """Product in GF(q)."""
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        """Additive inverse in GF(q)."""
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        """Multiplicative inverse in GF(q)."""
        if not a:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv_table[a])

    def trace(self, a: int) -> int:
        """Absolute trace to GF(p), as an integer ``0..p-1``."""
        return int(self.trace_table[a])

    @property
    def basis(self) -> Tuple[int, ...]:
        """Additive basis 1, x, ..., x^(k-1) over GF(p)."""
        return tuple(self.p**t for t in range(self.k))

    @property
    def nonzero(self) -> range:
        """Nonzero elements."""
        return range(1, self.q)


@lru_cache(maxsize=None)
def field_make(q: int) -> FieldSpec:
    """Shared ``FieldSpec`` for GF(q)."""
    return FieldSpec(q)


class Layout(NamedTuple):
    """Above-diagonal positions of n x n matrices in canonical root order.

    >>> Layout

    """

    n: int
    entries: Tuple[Tuple[int, int], ...]
    position: Dict[Tuple[int, int], int]
    # for each position (a, c): pairs of positions (a, b), (b, c) with a < b < c
    products: Tuple[Tuple[Tuple[int, int], ...], ...]


@lru_cache(maxsize=None)
def layout(n: int) -> Layout:
    """Positions, indexed like ``positive_roots(n)``."""
    entries = tuple(Root(i, j).entry for i in range(1, n) for j in range(i, n))
    position = {entry: index for index, entry in enumerate(entries)}
    products = tuple(
        tuple((position[(a, b)], position[(b, c)]) for b in range(a + 1, c)) for a, c in entries
    )
    return Layout(n=n, entries=entries, position=position, products=products)


def _by_gap(n: int) -> List[int]:
    lay = layout(n)
    return sorted(range(len(lay.entries)), key=lambda t: lay.entries[t][1] - lay.entries[t][0])


class UTMat(NamedTuple):
    """Unitriangular matrix over GF(q) with implicit unit diagonal.

    >>> UTMat

    """

    n: int
    q: int
    entries: Tuple[int, ...]

    def to_matrix(self) -> List[List[int]]:
        """Full matrix as nested lists of field labels."""
        rows = [[int(a == b) for b in range(1, self.n + 1)] for a in range(1, self.n + 1)]
        for (a, b), value in zip(layout(self.n).entries, self.entries):
            rows[a - 1][b - 1] = value
        return rows

    def to_json(self) -> List[int]:
        """Above-diagonal entries in canonical order."""
        return list(self.entries)


def batch_mul(field: FieldSpec, n: int, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Products ``left[t] @ right[t]`` of unitriangular batches (broadcasting rows).

    Args:
        field: Coefficient field.
        n: Matrix size.
        left: Array of shape ``(N, P)`` or ``(1, P)``.
        right: Array of shape ``(N, P)`` or ``(1, P)``.

    Returns:
        np.ndarray:
        Entry rows of the products.
    """
    left, right = np.broadcast_arrays(np.atleast_2d(left), np.atleast_2d(right))
    add, mul = field.add_table, field.mul_table
    result = add[left, right]
    for target, pairs in enumerate(layout(n).products):
        for ab, bc in pairs:
            result[:, target] = add[result[:, target], mul[left[:, ab], right[:, bc]]]
    return result


def batch_inv(field: FieldSpec, n: int, batch: np.ndarray) -> np.ndarray:
    """Inverses of a batch of unitriangular matrices."""
    batch = np.atleast_2d(batch)
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    result = np.zeros_like(batch)
    products = layout(n).products
    for target in _by_gap(n):
        acc = batch[:, target].copy()
        for ab, bc in products[target]:
            acc = add[acc, mul[batch[:, ab], result[:, bc]]]
        result[:, target] = neg[acc]
    return result


class GroupHandle:
    """Pattern subgroup of U_n(q) generated by the root subgroups of a closed root set.

    >>> GroupHandle

    """

    def __init__(self, n: int, q: int, roots: Optional[RootSet] = None):
        """Instantiates the ``GroupHandle``; use ``subgroup_from_roots`` to validate closure.

        Args:
            n: Ambient rank.
            q: Field size.
            roots: Closed root set; defaults to all positive roots.
        """
        self.n = n
        self.q = q
        self.field = field_make(q)
        self.roots = roots if roots is not None else positive_roots(n)
        lay = layout(n)
        self.positions = np.array([lay.position[root.entry] for root in self.roots], dtype=np.int64)
        self.width = len(lay.entries)
        self.order = q ** len(self.roots)
        size = len(self.roots)
        self.weights = np.array([q ** (size - 1 - t) for t in range(size)], dtype=np.int64)
        outside = np.ones(self.width, dtype=bool)
        outside[self.positions] = False
        self.outside = outside

    def __repr__(self) -> str:
        return f"GroupHandle(n={self.n}, q={self.q}, roots={len(self.roots)}, order={self.order})"

    @cached_property
    def key(self) -> str:
        """Stable identifier of the group, used for cache file names."""
        roots = "-".join(f"{i}.{j}" for i, j in self.roots)
        return f"n{self.n}q{self.q}-{roots}"

    @property
    def identity(self) -> np.ndarray:
        """Entry row of the identity."""
        return np.zeros((1, self.width), dtype=np.uint8)

    def element(self, entries: Dict[Root, int] | Sequence[int]) -> UTMat:
        """Build an element from root coordinates or a full entry row."""
        if isinstance(entries, dict):
            row = [0] * self.width
            lay = layout(self.n)
            for root, value in entries.items():
                row[lay.position[Root(*root).entry]] = value
            entries = row
        return UTMat(self.n, self.q, tuple(int(v) for v in entries))

    def as_rows(self, elements: Iterable[UTMat] | np.ndarray) -> np.ndarray:
        """Stack elements into an entry-row array."""
        if isinstance(elements, np.ndarray):
            return np.atleast_2d(elements).astype(np.uint8)
        return np.array([element.entries for element in elements], dtype=np.uint8).reshape(-1, self.width)

    def contains(self, rows: np.ndarray) -> np.ndarray:
        """Membership mask: support contained in the group's roots."""
        rows = np.atleast_2d(rows)
        return ~np.any(rows[:, self.outside] != 0, axis=1)

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        """Indices of member elements in the canonical enumeration."""
        rows = np.atleast_2d(rows)
        return rows[:, self.positions].astype(np.int64) @ self.weights

    def rows_of(self, indices: np.ndarray | Sequence[int]) -> np.ndarray:
        """Entry rows of the elements with the given indices."""
        indices = np.asarray(indices, dtype=np.int64).reshape(-1)
        rows = np.zeros((len(indices), self.width), dtype=np.uint8)
        for t, weight in enumerate(self.weights):
            rows[:, self.positions[t]] = (indices // weight) % self.q
        return rows

    def mul(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Batch product."""
        return batch_mul(self.field, self.n, left, right)

    def inv(self, rows: np.ndarray) -> np.ndarray:
        """Batch inverse."""
        return batch_inv(self.field, self.n, rows)

    def conj(self, rows: np.ndarray, by: np.ndarray) -> np.ndarray:
        """Batch conjugate ``by^-1 @ rows @ by``."""
        return self.mul(self.mul(self.inv(by), rows), by)

    def root_row(self, root: Root, value: int) -> np.ndarray:
        """Entry row of x_alpha(value)."""
        row = np.zeros((1, self.width), dtype=np.uint8)
        row[0, layout(self.n).position[Root(*root).entry]] = value
        return row

    @cached_property
    def generator_roots(self) -> Tuple[Root, ...]:
        """Roots of the group that are not a sum of two of its roots."""
        members = self.roots
        sums = set()
        for first, second in itertools.combinations(members, 2):
            if first.j + 1 == second.i:
                sums.add(Root(first.i, second.j))
            elif second.j + 1 == first.i:
                sums.add(Root(second.i, first.j))
        return tuple(root for root in members if root not in sums)

    @cached_property
    def generators(self) -> np.ndarray:
        """x_alpha(b) for generator roots alpha and b in the additive basis of GF(q)."""
        rows = [self.root_row(root, b)[0] for root in self.generator_roots for b in self.field.basis]
        return np.array(rows, dtype=np.uint8).reshape(-1, self.width)

    def is_subgroup_of(self, other: "GroupHandle") -> bool:
        """True when the group's roots lie in ``other``'s roots of the same ambient."""
        return (self.n, self.q) == (other.n, other.q) and self.roots.issubset(other.roots)


def group_arith(group: GroupHandle, op: str, *args) -> UTMat:
    """Single-element arithmetic: ``root_elem``, ``mul``, ``inv`` or ``commutator``.

    Args:
        group: Ambient handle fixing n and q.
        op: Operation name.
        args: ``(root, c)`` for root_elem, otherwise one or two ``UTMat``.

    Returns:
        UTMat:
        The resulting element.
    """
    if op == "root_elem":
        root, value = args
        check_root(group.n, root)
        return group.element({Root(*root): value})
    for element in args:
        if (element.n, element.q) != (group.n, group.q):
            raise models.AmbientMismatch(f"element of U_{element.n}({element.q}) used in {group}")
    rows = [group.as_rows([element]) for element in args]
    if op == "mul":
        result = group.mul(rows[0], rows[1])
    elif op == "inv":
        result = group.inv(rows[0])
    elif op == "commutator":
        a, b = rows
        result = group.mul(group.mul(group.inv(a), group.inv(b)), group.mul(a, b))
    else:
        raise ValueError(f"unknown group operation {op!r}")
    return group.element(result[0])


def power(group: GroupHandle, rows: np.ndarray, exponent: int) -> np.ndarray:
    """Batch power ``rows ** exponent`` by repeated squaring."""
    base = np.atleast_2d(rows)
    result = np.zeros_like(base)
    while exponent:
        if exponent & 1:
            result = group.mul(result, base)
        base = group.mul(base, base)
        exponent >>= 1
    return result


def element_order(group: GroupHandle, rows: np.ndarray) -> np.ndarray:
    """Order of each element, always a power of the characteristic."""
    current = np.atleast_2d(rows).copy()
    orders = np.ones(len(current), dtype=np.int64)
    pending = current.any(axis=1)
    while pending.any():
        orders[pending] *= group.field.p
        current = power(group, current, group.field.p)
        pending = current.any(axis=1)
    return orders


def is_member(group: GroupHandle, element: UTMat) -> bool:
    """True when the element lies in the pattern group."""
    if (element.n, element.q) != (group.n, group.q):
        return False
    return bool(group.contains(group.as_rows([element]))[0])


def embed(sub: GroupHandle, group: GroupHandle, indices: np.ndarray | Sequence[int]) -> np.ndarray:
    """Indices in ``group`` of the elements of ``sub`` with the given indices."""
    if not sub.is_subgroup_of(group):
        raise models.NotASubgroup(f"{sub!r} is not contained in {group!r}")
    return group.index_of(sub.rows_of(indices))


def full_group(n: int, q: int) -> GroupHandle:
    """U_n(q) itself."""
    return GroupHandle(n, q)


def subgroup_from_roots(n: int, q: int, roots: RootSet | Iterable[Root]) -> GroupHandle:
    """Pattern subgroup generated by the root subgroups of a closed root set.

    Args:
        n: Ambient rank.
        q: Field size.
        roots: Root set, closed under root addition.

    Returns:
        GroupHandle:
        Handle of order ``q^|roots|``.

    Raises:
        NotClosedError: Naming a pair whose sum is a missing root.
    """
    roots = roots if isinstance(roots, RootSet) else RootSet(n, roots)
    violation = closure_violation(roots)
    if violation is not None:
        raise models.NotClosedError(*violation)
    return GroupHandle(n, q, RootSet(n, roots))


def enumerate_elements(group: GroupHandle, cap: Optional[int] = None) -> np.ndarray:
    """Entry rows of every element; row ``t`` is the element of index ``t``.

    Raises:
        CapExceeded: When the order exceeds the enumeration cap.
    """
    cap = cap or models.config.enum_cap
    if group.order > cap:
        raise models.CapExceeded("enumeration", group.order, cap)
    return group.rows_of(np.arange(group.order, dtype=np.int64))


class ClassData:
    """Conjugacy classes of a pattern group.

    >>> ClassData

    """

    def __init__(self, group: GroupHandle, class_of: np.ndarray):
        """Instantiates the ``ClassData`` from a class label per element index.

        Args:
            group: Owner group.
            class_of: Class index of every element, classes numbered by minimal member.
        """
        self.group = group
        self.class_of = class_of
        self.sizes = np.bincount(class_of)
        reps = np.full(len(self.sizes), group.order, dtype=np.int64)
        np.minimum.at(reps, class_of, np.arange(group.order, dtype=np.int64))
        self.reps = reps

    def __len__(self) -> int:
        return len(self.sizes)

    def __repr__(self) -> str:
        return f"ClassData({self.group!r}, classes={len(self)})"

    def classes_of_rows(self, rows: np.ndarray) -> np.ndarray:
        """Class index of each member element."""
        return self.class_of[self.group.index_of(rows)]

    @cached_property
    def rep_rows(self) -> np.ndarray:
        """Entry rows of the class representatives."""
        return self.group.rows_of(self.reps)

    @cached_property
    def inverse_class(self) -> np.ndarray:
        """Class of the inverses of each class."""
        return self.classes_of_rows(self.group.inv(self.rep_rows))

    def power_map(self, exponent: int) -> np.ndarray:
        """``pm[r, e]`` is the class of ``g_r ** e`` for ``0 <= e < exponent``."""
        reps = self.rep_rows
        current = np.zeros_like(reps)
        table = np.zeros((len(self), exponent), dtype=np.int64)
        for e in range(exponent):
            table[:, e] = self.classes_of_rows(current)
            current = self.group.mul(current, reps)
        return table

    @cached_property
    def central(self) -> np.ndarray:
        """Indices of classes of size one."""
        return np.flatnonzero(self.sizes == 1)

    def to_json(self) -> models.ClassesJSON:
        """Serialized representatives and sizes."""
        return models.ClassesJSON(reps=[int(r) for r in self.reps], sizes=[int(s) for s in self.sizes])


def conjugation_permutations(group: GroupHandle, elements: np.ndarray) -> List[np.ndarray]:
    """Index permutation induced by conjugation with each generator."""
    perms = []
    for generator in group.generators:
        image = group.conj(elements, generator[None, :])
        perms.append(group.index_of(image))
    return perms


_class_cache: Dict[str, ClassData] = {}


def conjugacy_classes(group: GroupHandle, cap: Optional[int] = None) -> ClassData:
    """Conjugacy classes as orbits of conjugation by the generators.

    Args:
        group: Group to split.
        cap: Optional enumeration cap override.

    Returns:
        ClassData:
        Classes numbered by increasing minimal element index.
    """
    if cached := _class_cache.get(group.key):
        return cached
    elements = enumerate_elements(group, cap)
    order = group.order
    sources, targets = [], []
    for perm in conjugation_permutations(group, elements):
        sources.append(np.arange(order, dtype=np.int64))
        targets.append(perm)
    if sources:
        src, dst = np.concatenate(sources), np.concatenate(targets)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(order, order))
    _, labels = connected_components(graph, directed=True, connection="weak")
    minimum = np.full(labels.max() + 1, order, dtype=np.int64)
    np.minimum.at(minimum, labels, np.arange(order, dtype=np.int64))
    rank = np.empty_like(minimum)
    rank[np.argsort(minimum)] = np.arange(len(minimum))
    classes = ClassData(group, rank[labels])
    logger.CUSTOM_LOGGER.debug("%r: %d classes", group, len(classes))
    _class_cache[group.key] = classes
    return classes


def clear_caches() -> None:
    """Forget cached class data."""
    _class_cache.clear()


def center(group: GroupHandle) -> GroupHandle:
    """Center of the group, found by brute force and returned as a pattern subgroup."""
    elements = enumerate_elements(group)
    fixed = np.ones(group.order, dtype=bool)
    for perm in conjugation_permutations(group, elements):
        fixed &= perm == np.arange(group.order)
    members = elements[fixed]
    lay = layout(group.n)
    support = sorted({int(t) for t in np.flatnonzero(np.any(members != 0, axis=0))})
    roots = RootSet(group.n, (_root_at(lay.entries[t]) for t in support))
    handle = subgroup_from_roots(group.n, group.q, roots)
    assert handle.order == len(members), "center is not a pattern subgroup"
    return handle


def _root_at(entry: Tuple[int, int]) -> Root:
    return Root(entry[0], entry[1] - 1)


def graph_automorphism(group: GroupHandle, rows: np.ndarray) -> np.ndarray:
    """Apply g -> w0^-1 (g^t)^-1 w0 to a batch of elements of U_n(q)."""
    n = group.n
    inverse = group.inv(rows)
    lay = layout(n)
    source = [lay.position[(n + 1 - b, n + 1 - a)] for a, b in lay.entries]
    return inverse[:, source]


def normal_form(group: GroupHandle, rows: np.ndarray) -> Tuple[Tuple[Root, ...], np.ndarray]:
    """Coordinates c_alpha with g = prod x_alpha(c_alpha), roots ordered by height then row.

    Returns:
        Tuple[Tuple[Root, ...], np.ndarray]:
        The root order and a ``(N, |roots|)`` coordinate array.
    """
    order = tuple(sorted(group.roots, key=lambda root: (root.height, root.i)))
    lay = layout(group.n)
    column = {root: t for t, root in enumerate(order)}
    coords = np.zeros((len(np.atleast_2d(rows)), len(order)), dtype=np.uint8)
    current = np.atleast_2d(rows).copy()
    for height in sorted({root.height for root in order}):
        level = [root for root in order if root.height == height]
        factor = np.zeros_like(current)
        for root in level:
            coords[:, column[root]] = current[:, lay.position[root.entry]]
            step = np.zeros_like(current)
            step[:, lay.position[root.entry]] = coords[:, column[root]]
            factor = group.mul(factor, step)
        current = group.mul(group.inv(factor), current)
    assert not current.any(), "normal form left a remainder"
    return order, coords


class HomomorphismCheck(NamedTuple):
    """Outcome of ``verify_homomorphism``.

    >>> HomomorphismCheck

    """

    bijective: bool
    multiplicative: bool


def _apply_map(
    phi: Dict[Root, Optional[Root]], dom: GroupHandle, cod: GroupHandle, rows: np.ndarray
) -> np.ndarray:
    order, coords = normal_form(dom, rows)
    image = np.zeros((len(rows), cod.width), dtype=np.uint8)
    for t, root in enumerate(order):
        target = phi[root]
        if target is None:
            continue
        step = np.zeros_like(image)
        step[:, layout(cod.n).position[target.entry]] = coords[:, t]
        image = cod.mul(image, step)
    return image


def verify_homomorphism(
    phi: Dict[Root, Optional[Root]], dom: GroupHandle, cod: GroupHandle
) -> HomomorphismCheck:
    """Check that x_alpha(c) -> x_phi(alpha)(c) extends to an injective homomorphism.

    Args:
        phi: Root map on every root of ``dom``; None sends a root subgroup to 1.
        dom: Domain group.
        cod: Codomain group.

    Returns:
        HomomorphismCheck:
        Bijectivity (injective with equal orders) and multiplicativity, the
        latter on every pair when affordable, otherwise on every
        (generator, element) pair, which is equivalent.
    """
    phi = {Root(*key): (Root(*value) if value is not None else None) for key, value in phi.items()}
    for root in dom.roots:
        if root not in phi:
            raise models.UndefinedGeneratorImage(f"no image for {root}")
        if phi[root] is not None and phi[root] not in cod.roots:
            raise models.UndefinedGeneratorImage(f"image {phi[root]} of {root} is not in the codomain")
    elements = enumerate_elements(dom)
    images = _apply_map(phi, dom, cod, elements)
    injective = len(np.unique(cod.index_of(images))) == dom.order
    if dom.order**2 <= models.config.homomorphism_pair_cap:
        lefts = elements
    else:
        lefts = dom.generators
    multiplicative = True
    for left in lefts:
        left = left[None, :]
        product = _apply_map(phi, dom, cod, dom.mul(left, elements))
        expected = cod.mul(_apply_map(phi, dom, cod, left), images)
        if not np.array_equal(product, expected):
            multiplicative = False
            break
    return HomomorphismCheck(bijective=injective and dom.order == cod.order, multiplicative=multiplicative)


def complement_rows(group: GroupHandle, sub: GroupHandle) -> np.ndarray:
    """Elements supported on the group's roots outside ``sub``; one per left coset of ``sub``."""
    rest = RootSet(group.n, group.roots - sub.roots)
    return GroupHandle(group.n, group.q, rest).rows_of(np.arange(group.q ** len(rest), dtype=np.int64))


def left_coset_canon(group: GroupHandle, sub: GroupHandle, rows: np.ndarray) -> np.ndarray:
    """Canonical representative of each left coset ``g @ sub``.

    Right multiplication by x_(a,b)(c) with (a, b) in the subgroup's pattern
    changes entry (a, b) by c and only higher rows of column b, so the
    subgroup's entries are cleared row by row from the bottom.
    """
    if not sub.is_subgroup_of(group):
        raise models.NotASubgroup(f"{sub!r} is not contained in {group!r}")
    current = np.atleast_2d(rows).copy()
    lay = layout(group.n)
    for root in sorted(sub.roots, key=lambda root: -root.i):
        spot = lay.position[root.entry]
        step = np.zeros_like(current)
        step[:, spot] = group.field.neg_table[current[:, spot]]
        current = group.mul(current, step)
    return current
