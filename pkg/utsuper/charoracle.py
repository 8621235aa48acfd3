"""Exact character theory of pattern subgroups of U_n(q).

Class functions hold one reduced cyclotomic vector per class (see
``utsuper.cyclo``). Character tables are computed with class matrices over a
prime field GF(l), l = 1 mod the conductor, and lifted to exact values
through power maps.
"""

import hashlib
import json
import math
import pathlib
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import ValidationError
from sympy import FiniteField, Poly, Symbol, nextprime, primitive_root, sqrt_mod
from sympy.polys.matrices import DomainMatrix

from utsuper import cyclo, logger, models
from utsuper.cyclo import Cyclo
from utsuper.ffgroup import (
    ClassData,
    FieldSpec,
    GroupHandle,
    center,
    complement_rows,
    conjugacy_classes,
    layout,
    left_coset_canon,
    subgroup_from_roots,
)
from utsuper.rootsys import Root, RootSet, arm_roots, check_root


def psi(field: FieldSpec, c: int) -> Cyclo:
    """Additive character a -> zeta_p^Tr(a) of GF(q)."""
    return Cyclo.zeta(field.p, field.trace(c))


def group_conductor(group: GroupHandle) -> int:
    """Conductor used for every class function of a subgroup of U_n(q)."""
    return cyclo.conductor(group.n, group.field.p)


class ClassFunction:
    """Class function with exact values in Q(zeta_m), one reduced integer vector per class.

    >>> ClassFunction

    """

    __slots__ = ("classes", "values", "m")

    def __init__(self, classes: ClassData, values: np.ndarray, m: Optional[int] = None):
        self.classes = classes
        self.m = m or group_conductor(classes.group)
        self.values = np.asarray(values, dtype=np.int64)
        assert self.values.shape == (len(classes), cyclo.split_conductor(self.m)[2]), "value shape mismatch"

    @property
    def group(self) -> GroupHandle:
        return self.classes.group

    def _check_owner(self, other: "ClassFunction") -> None:
        if self.group.key != other.group.key:
            raise models.OwnerMismatch(f"{self.group!r} and {other.group!r} differ")

    def value(self, index: int) -> Cyclo:
        """Value on class ``index``."""
        return Cyclo.from_vector(self.m, self.values[index])

    @property
    def degree(self) -> int:
        """Value at the identity."""
        head = self.values[0]
        assert not head[1:].any(), "value at the identity is not rational"
        return int(head[0])

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_owner(other)
        return ClassFunction(self.classes, self.values + other.values, self.m)

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            return tensor(self, other)
        return ClassFunction(self.classes, self.values * int(other), self.m)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClassFunction)
            and self.group.key == other.group.key
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return f"ClassFunction({self.group!r}, degree={self.values[0, 0]})"

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.classes, cyclo.conjugate(self.values, self.m), self.m)


def trivial_character(classes: ClassData) -> ClassFunction:
    values = np.zeros((len(classes), cyclo.split_conductor(group_conductor(classes.group))[2]), dtype=np.int64)
    values[:, 0] = 1
    return ClassFunction(classes, values)


def regular_character(classes: ClassData) -> ClassFunction:
    values = np.zeros((len(classes), cyclo.split_conductor(group_conductor(classes.group))[2]), dtype=np.int64)
    values[0, 0] = classes.group.order
    return ClassFunction(classes, values)


def tensor(first: ClassFunction, second: ClassFunction) -> ClassFunction:
    """Pointwise product."""
    first._check_owner(second)
    return ClassFunction(first.classes, cyclo.multiply(first.values, second.values, first.m), first.m)


def restrict(function: ClassFunction, classes: ClassData) -> ClassFunction:
    """Restriction to a pattern subgroup with its own classes."""
    if not classes.group.is_subgroup_of(function.group):
        raise models.NotASubgroup(f"{classes.group!r} is not contained in {function.group!r}")
    ambient = function.classes.classes_of_rows(classes.rep_rows)
    return ClassFunction(classes, function.values[ambient], function.m)


def gram(first: np.ndarray, second: np.ndarray, sizes: np.ndarray, m: int) -> np.ndarray:
    """``out[a, b]`` is the reduced vector of sum_g |C_g| f_a(g) conj(f_b(g))."""
    conj = cyclo.conjugate(second, m)
    weighted = first * sizes[None, :, None]
    tensor_ = cyclo.product_tensor(m)
    phi = tensor_.shape[0]
    out = np.zeros((first.shape[0], second.shape[0], phi), dtype=np.int64)
    for u in range(phi):
        for v in range(phi):
            if tensor_[u, v].any():
                block = weighted[:, :, u] @ conj[:, :, v].T
                out += block[:, :, None] * tensor_[u, v][None, None, :]
    return out


def inner(first: ClassFunction, second: ClassFunction) -> Fraction:
    """Inner product (1/|G|) sum_g f(g) conj(h(g)), as an exact rational."""
    first._check_owner(second)
    total = gram(first.values[None], second.values[None], first.classes.sizes, first.m)[0, 0]
    if total[1:].any():
        raise ValueError("inner product is not rational")
    return Fraction(int(total[0]), first.group.order)


def cf_ops(op: str, first: ClassFunction, second=None):
    """Dispatch ``tensor``, ``restrict``, ``conjugate`` or ``inner``."""
    if op == "tensor":
        return tensor(first, second)
    if op == "restrict":
        return restrict(first, second)
    if op == "conjugate":
        return first.conj()
    if op == "inner":
        return inner(first, second)
    raise ValueError(f"unknown class function operation {op!r}")


def base_roots(group: GroupHandle, roots: Iterable[Root]) -> RootSet:
    """Roots of V_D inside ``group``: everything outside the arms of D."""
    arms = set()
    for root in roots:
        arms.update(arm_roots(check_root(group.n, root)))
    return RootSet(group.n, (root for root in group.roots if root not in arms))


def base_group(group: GroupHandle, roots: Iterable[Root]) -> GroupHandle:
    """The base group V_D of a set of roots."""
    return subgroup_from_roots(group.n, group.q, base_roots(group, roots))


class LinearCharacter:
    """Linear character v -> prod psi(t_alpha v_alpha) of a base group, evaluated on entry rows.

    >>> LinearCharacter

    """

    def __init__(self, group: GroupHandle, params: Mapping[Root, int]):
        """Instantiates the ``LinearCharacter`` on a base group.

        Args:
            group: The base group V_D for the roots of ``params``.
            params: Nonzero parameter of each root of D.
        """
        params = {check_root(group.n, root): t for root, t in params.items()}
        for root, t in params.items():
            if not 0 < t < group.q:
                raise models.ZeroParameter(f"parameter {t} at {root} is not a nonzero element of GF({group.q})")
        expected = base_roots(GroupHandle(group.n, group.q), params)
        if group.roots != expected:
            raise models.WrongBaseGroup(f"{group!r} is not the base group of {{{', '.join(map(str, params))}}}")
        self.group = group
        self.params = params
        lay = layout(group.n)
        self.positions = [lay.position[root.entry] for root in params]
        self.scales = list(params.values())

    def __repr__(self) -> str:
        return f"LinearCharacter({self.group!r}, {self.params})"

    def exponents(self, rows: np.ndarray) -> np.ndarray:
        """Exponent k with value zeta_p^k on each row."""
        field = self.group.field
        rows = np.atleast_2d(rows)
        total = np.zeros(len(rows), dtype=np.int64)
        for position, t in zip(self.positions, self.scales):
            total += field.trace_table[field.mul_table[t, rows[:, position]]]
        return total % field.p

    def class_function(self, classes: Optional[ClassData] = None) -> ClassFunction:
        classes = classes or conjugacy_classes(self.group)
        m = group_conductor(self.group)
        counts = np.zeros((len(classes), m), dtype=np.int64)
        counts[np.arange(len(classes)), self.exponents(classes.rep_rows) * (m // self.group.field.p)] = 1
        return ClassFunction(classes, cyclo.from_exponent_counts(counts, m), m)


def lambda_character(group: GroupHandle, params: Mapping[Root, int]) -> LinearCharacter:
    """Linear character lambda_D of V_D inside ``group``, with V_D built here."""
    return LinearCharacter(base_group(group, params), params)


def linear_lambda(group: GroupHandle, target: Root | Mapping[Root, int], t: Optional[int] = None) -> ClassFunction:
    """The linear character of a base group as a class function of that group.

    Args:
        group: V_alpha for a single root, or V_D for basic data.
        target: A root (with ``t``) or a mapping root -> parameter.
        t: Parameter for a single root.

    Returns:
        ClassFunction:
        lambda on the conjugacy classes of ``group``.
    """
    params = {Root(*target): t} if t is not None else dict(target)
    return LinearCharacter(group, params).class_function()


def induce(function: ClassFunction | LinearCharacter, classes: ClassData) -> ClassFunction:
    """Induced class function f^G(g) = sum_t f(t^-1 g t) over a left transversal of H.

    Args:
        function: Class function or linear character of a pattern subgroup H.
        classes: Classes of the overgroup G.

    Returns:
        ClassFunction:
        The induced class function on G.
    """
    sub, group = function.group, classes.group
    if not sub.is_subgroup_of(group):
        raise models.NotASubgroup(f"{sub!r} is not contained in {group!r}")
    m = group_conductor(group)
    transversal = complement_rows(group, sub)
    inverse = group.inv(transversal)
    linear = isinstance(function, LinearCharacter)
    if not linear:
        sub_classes = function.classes
    counts = np.zeros((len(classes), m), dtype=np.int64)
    values = np.zeros((len(classes), cyclo.split_conductor(m)[2]), dtype=np.int64)
    for index, rep in enumerate(classes.rep_rows):
        conj = group.mul(group.mul(inverse, rep[None, :]), transversal)
        members = conj[sub.contains(conj)]
        if not len(members):
            continue
        if linear:
            exps = function.exponents(members) * (m // group.field.p)
            counts[index] = np.bincount(exps, minlength=m)
        else:
            values[index] = function.values[sub_classes.classes_of_rows(members)].sum(axis=0)
    if linear:
        values = cyclo.from_exponent_counts(counts, m)
    return ClassFunction(classes, values, m)


def basic_character(classes: ClassData, params: Mapping[Root, int]) -> ClassFunction:
    """xi_{D,phi}: lambda_D of V_D induced to the group; the empty map gives the trivial character."""
    if not params:
        return trivial_character(classes)
    return induce(lambda_character(classes.group, params), classes)


def elementary_character(classes: ClassData, alpha: Root, t: int) -> ClassFunction:
    """lambda^U at a single root."""
    return basic_character(classes, {Root(*alpha): t})


def symbol_character(classes: ClassData, symbol) -> ClassFunction:
    """Class function of a ``superalg.BasicSymbol``."""
    return basic_character(classes, symbol.phi)


def expr_character(classes: ClassData, expr) -> ClassFunction:
    """Class function of a ``superalg.SuperExpr``."""
    m = group_conductor(classes.group)
    total = ClassFunction(classes, np.zeros((len(classes), cyclo.split_conductor(m)[2]), dtype=np.int64), m)
    for symbol, coeff in expr.expr_terms():
        total = total + symbol_character(classes, symbol) * coeff
    return total


class CharTable(NamedTuple):
    """Irreducible characters of a group, trivial first, then by (degree, values).

    >>> CharTable

    """

    classes: ClassData
    conductor: int
    degrees: Tuple[int, ...]
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.degrees)

    def character(self, index: int) -> ClassFunction:
        return ClassFunction(self.classes, self.values[index], self.conductor)

    @property
    def characters(self) -> List[ClassFunction]:
        return [self.character(index) for index in range(len(self))]


def dixon_prime(order: int, m: int) -> int:
    """Least prime l > 2 sqrt(|G|) with l = 1 mod m."""
    ell = 2 * math.isqrt(order)
    while True:
        ell = nextprime(ell)
        if ell % m == 1:
            return ell


def class_matrix(classes: ClassData, r: int) -> np.ndarray:
    """``B[s, t] = #{x in C_r : x g_s in C_t}``."""
    group = classes.group
    size = len(classes)
    members = group.rows_of(np.flatnonzero(classes.class_of == r))
    left = np.repeat(members, size, axis=0)
    right = np.tile(classes.rep_rows, (len(members), 1))
    targets = classes.classes_of_rows(group.mul(left, right))
    sources = np.tile(np.arange(size), len(members))
    return np.bincount(sources * size + targets, minlength=size * size).reshape(size, size)


def _eigen_rows(matrix: DomainMatrix, field, candidates: Optional[List[int]]) -> List[DomainMatrix]:
    """Row bases of the left eigenspaces of a square matrix over GF(l)."""
    size = matrix.shape[0]
    if candidates is None:
        roots = Poly(matrix.charpoly(), Symbol("x"), domain=field).ground_roots()
        candidates = [int(root) for root in roots]
    spaces = []
    for value in candidates:
        shifted = matrix - DomainMatrix.eye(size, field) * field(value)
        basis = shifted.transpose().nullspace()
        if basis.shape[0]:
            spaces.append(basis)
    if sum(space.shape[0] for space in spaces) != size:
        raise models.SplittingFailure(f"eigenvalues of a {size}x{size} block do not split over {field}")
    return spaces


def _split(classes: ClassData, ell: int, m: int) -> List[List[int]]:
    """Common eigenvectors of the class matrices, each scaled to 1 at the identity."""
    field = FiniteField(ell, symmetric=False)
    size = len(classes)
    spaces = [DomainMatrix.eye(size, field)]
    roots_of_unity = sorted({pow(int(primitive_root(ell)), (ell - 1) // m * k, ell) for k in range(m)})
    central = [int(r) for r in classes.central if r]
    rest = [int(r) for r in np.argsort(classes.sizes, kind="stable") if classes.sizes[r] > 1]
    for r in central + rest:
        if all(space.shape[0] == 1 for space in spaces):
            break
        transposed = DomainMatrix.from_list((class_matrix(classes, r).T % ell).tolist(), field)
        refined = []
        for space in spaces:
            if space.shape[0] == 1:
                refined.append(space)
                continue
            space, pivots = space.rref()
            block = (space * transposed).extract(range(space.shape[0]), list(pivots))
            for rows in _eigen_rows(block, field, roots_of_unity if r in central else None):
                refined.append((rows * space).rref()[0])
        spaces = refined
        logger.CUSTOM_LOGGER.debug("class %d: %d/%d eigenspaces", r, len(spaces), size)
    if len(spaces) != size:
        raise models.SplittingFailure(f"{len(spaces)} common eigenspaces for {size} classes")
    vectors = []
    for space in spaces:
        row = [int(value) % ell for value in space.to_list()[0]]
        scale = pow(row[0], -1, ell)
        vectors.append([value * scale % ell for value in row])
    return vectors


def irr_table(group: GroupHandle, cache: Optional["TableCache"] = None) -> CharTable:
    """Complete table of irreducible characters with exact values.

    Args:
        group: Pattern group within the table caps.
        cache: Optional on-disk cache.

    Returns:
        CharTable:
        Irreducibles that pass row orthogonality and sum d^2 = |G|.

    Raises:
        CapExceeded: Group order or class count beyond the configured caps.
        SplittingFailure: The eigenspaces did not split into lines.
    """
    if cached := _tables.get(group.key):
        return cached
    if group.order > models.config.table_cap:
        raise models.CapExceeded("table order", group.order, models.config.table_cap)
    classes = conjugacy_classes(group)
    if len(classes) > models.config.class_cap:
        raise models.CapExceeded("table classes", len(classes), models.config.class_cap)
    table = cache.load(classes) if cache else None
    if table is None:
        table = _dixon(classes)
        if cache:
            cache.store(table)
    _tables[group.key] = table
    return table


def _dixon(classes: ClassData) -> CharTable:
    group = classes.group
    order, m = group.order, group_conductor(group)
    ell = dixon_prime(order, m)
    logger.CUSTOM_LOGGER.info("table of %r: %d classes, prime %d", group, len(classes), ell)
    sizes = classes.sizes % ell
    inverse = classes.inverse_class
    power = classes.power_map(m)
    z = pow(int(primitive_root(ell)), (ell - 1) // m, ell)
    fourier = np.array([[pow(z, (-j * k) % m, ell) for k in range(m)] for j in range(m)], dtype=np.int64)
    inv_m = pow(m, -1, ell)
    found = []
    for psi_row in _split(classes, ell, m):
        psi_row = np.array(psi_row, dtype=np.int64)
        dot = int((sizes * psi_row % ell * psi_row[inverse] % ell).sum() % ell)
        square = order * pow(dot, -1, ell) % ell
        roots = sqrt_mod(square, ell, all_roots=True) or []
        degrees = [int(root) for root in roots if int(root) ** 2 <= order]
        if len(degrees) != 1:
            raise models.SplittingFailure(f"no degree for an eigenvector (square {square} mod {ell})")
        degree = degrees[0]
        modular = psi_row * degree % ell
        counts = (modular[power] @ fourier) % ell * inv_m % ell
        assert np.all(counts.sum(axis=1) == degree), "eigenvalue multiplicities do not add up to the degree"
        found.append((degree, cyclo.from_exponent_counts(counts, m)))
    found.sort(key=lambda item: (item[0], item[1].ravel().tolist()))
    trivial = next(index for index, (degree, values) in enumerate(found) if _is_trivial(values))
    found.insert(0, found.pop(trivial))
    table = CharTable(
        classes=classes,
        conductor=m,
        degrees=tuple(degree for degree, _ in found),
        values=np.stack([values for _, values in found]),
    )
    if not orthogonality_check(table):
        raise models.SplittingFailure(f"table of {group!r} fails orthogonality")
    return table


def _is_trivial(values: np.ndarray) -> bool:
    return bool(np.all(values[:, 0] == 1) and not values[:, 1:].any())


def orthogonality_check(table: CharTable) -> bool:
    """Row orthogonality, sum of squared degrees and table size."""
    group = table.classes.group
    if len(table) != len(table.classes) or sum(d * d for d in table.degrees) != group.order:
        return False
    products = gram(table.values, table.values, table.classes.sizes, table.conductor)
    expected = np.zeros_like(products)
    expected[:, :, 0] = np.eye(len(table), dtype=np.int64) * group.order
    return bool(np.array_equal(products, expected))


def degree_histogram(table: CharTable, q: int) -> Dict[int, int]:
    """Number of irreducibles of each degree q^e, keyed by e.

    Raises:
        NonPowerDegree: A degree is not a power of q.
    """
    histogram: Dict[int, int] = {}
    for degree in table.degrees:
        exponent, rest = 0, degree
        while rest % q == 0:
            rest //= q
            exponent += 1
        if rest != 1:
            raise models.NonPowerDegree(f"degree {degree} is not a power of {q}")
        histogram[exponent] = histogram.get(exponent, 0) + 1
    return dict(sorted(histogram.items()))


def decompose_into_irr(function: ClassFunction, table: CharTable) -> List[Tuple[int, int]]:
    """Multiplicity of every irreducible constituent, as (index, multiplicity) pairs.

    Raises:
        OwnerMismatch: The class function lives on another group.
        NonIntegralMultiplicity: The class function is not a character.
    """
    if function.group.key != table.classes.group.key:
        raise models.OwnerMismatch(f"{function.group!r} is not the table's group")
    order = function.group.order
    products = gram(table.values, function.values[None], table.classes.sizes, table.conductor)[:, 0]
    if products[:, 1:].any() or np.any(products[:, 0] % order):
        raise models.NonIntegralMultiplicity("inner products with the irreducibles are not integers")
    multiplicities = products[:, 0] // order
    if np.any(multiplicities < 0):
        raise models.NonIntegralMultiplicity("negative multiplicity")
    rebuilt = np.tensordot(multiplicities, table.values, axes=1)
    assert np.array_equal(rebuilt, function.values), "constituents do not rebuild the class function"
    return [(int(index), int(multiplicities[index])) for index in np.flatnonzero(multiplicities)]


class AlmostFaithful(NamedTuple):
    """Irreducibles nontrivial on the center, bucketed by central character.

    >>> AlmostFaithful

    """

    indices: List[int]
    buckets: List[List[int]]


def almost_faithful_subset(table: CharTable, center_group: GroupHandle) -> AlmostFaithful:
    """Irreducibles whose restriction to Z(G) is not chi(1) times the trivial character."""
    group = table.classes.group
    if center_group.roots != center(group).roots:
        raise models.WrongBaseGroup(f"{center_group!r} is not the center of {group!r}")
    central = table.classes.classes_of_rows(
        center_group.rows_of(np.arange(center_group.order, dtype=np.int64))
    )
    buckets: Dict[tuple, List[int]] = {}
    for index, degree in enumerate(table.degrees):
        on_center = table.values[index][central]
        if np.all(on_center[:, 0] == degree) and not on_center[:, 1:].any():
            continue
        key = tuple((on_center // degree).ravel().tolist())
        buckets.setdefault(key, []).append(index)
    ordered = [buckets[key] for key in sorted(buckets)]
    return AlmostFaithful(indices=sorted(i for bucket in ordered for i in bucket), buckets=ordered)


def mackey_inner(
    group: GroupHandle, first: Mapping[Root, int], second: Mapping[Root, int]
) -> int:
    """<lambda_D^G, lambda_D'^G> by double cosets, without character tables.

    Left cosets of K = V_D' are orbits of canonical forms; H = V_D acts on
    them from the left. A double coset H x K contributes one exactly when
    lambda_D and y -> lambda_D'(x^-1 y x) agree on the Schreier generators of
    the stabilizer H ∩ x K x^-1.

    Args:
        group: Ambient group.
        first: Basic data (D, phi).
        second: Basic data (D', phi').

    Returns:
        int:
        The intertwining number.

    Raises:
        CapExceeded: When |G : V_D'| is beyond the Mackey coset cap.
    """
    left = lambda_character(group, first)
    right = lambda_character(group, second)
    sub_h, sub_k = left.group, right.group
    index = group.order // sub_k.order
    if index > models.config.mackey_coset_cap:
        raise models.CapExceeded("mackey cosets", index, models.config.mackey_coset_cap)
    cosets = complement_rows(group, sub_k)
    coset_index = GroupHandle(group.n, group.q, RootSet(group.n, group.roots - sub_k.roots))
    generators = sub_h.generators
    visited = np.zeros(index, dtype=bool)
    # witness[c] is an element h of H with h x K = c for the orbit's base x
    witness = np.zeros((index, group.width), dtype=np.uint8)
    total = 0
    for start in range(index):
        if visited[start]:
            continue
        base = cosets[start : start + 1]
        base_inv = group.inv(base)
        visited[start] = True
        frontier = np.array([start], dtype=np.int64)
        agree = True
        while len(frontier):
            words = witness[frontier]
            reached = []
            for generator in generators:
                moved = group.mul(np.repeat(generator[None, :], len(words), axis=0), words)
                targets = coset_index.index_of(left_coset_canon(group, sub_k, group.mul(moved, base)))
                fresh = np.flatnonzero(~visited[targets])
                new_targets, first_seen = np.unique(targets[fresh], return_index=True)
                witness[new_targets] = moved[fresh[first_seen]]
                visited[new_targets] = True
                reached.append(new_targets)
                if agree:
                    stabilizer = group.mul(group.inv(witness[targets]), moved)
                    inside = group.mul(group.mul(base_inv, stabilizer), base)
                    agree = bool(np.array_equal(left.exponents(stabilizer), right.exponents(inside)))
            frontier = np.concatenate(reached)
        total += agree
    logger.CUSTOM_LOGGER.debug("mackey over %d cosets of %r: %d", index, sub_k, total)
    return total


def table_document(table: CharTable) -> models.TableDocument:
    """Versioned JSON document of a table."""
    group = table.classes.group
    return models.TableDocument(
        n=group.n,
        q=group.q,
        roots=[[root.i, root.j] for root in group.roots],
        classes=table.classes.to_json(),
        conductor=table.conductor,
        irreducibles=[
            models.IrreducibleJSON(degree=degree, values=[[str(int(c)) for c in row] for row in values])
            for degree, values in zip(table.degrees, table.values)
        ],
    )


def _integral(coefficient: str) -> int:
    value = Fraction(coefficient)
    if value.denominator != 1:
        raise ValueError(f"table coefficient {coefficient} is not an integer")
    return int(value)


def load_table_document(document: models.TableDocument, classes: ClassData) -> CharTable:
    """Table from a document, checked against freshly computed classes.

    Raises:
        ValueError: When the document does not belong to the classes or fails orthogonality.
    """
    group = classes.group
    if (document.n, document.q) != (group.n, group.q):
        raise ValueError("table document is for another ambient group")
    if [tuple(root) for root in document.roots] != [tuple(root) for root in group.roots]:
        raise ValueError("table document is for another root set")
    if document.classes != classes.to_json() or document.conductor != group_conductor(group):
        raise ValueError("table document classes do not match")
    values = np.array(
        [[[_integral(c) for c in row] for row in irreducible.values] for irreducible in document.irreducibles],
        dtype=np.int64,
    )
    table = CharTable(
        classes=classes,
        conductor=document.conductor,
        degrees=tuple(irreducible.degree for irreducible in document.irreducibles),
        values=values,
    )
    if not orthogonality_check(table):
        raise ValueError("cached table fails orthogonality")
    return table


class TableCache:
    """Directory of table documents keyed by (n, q, hash of the group's roots).

    >>> TableCache

    """

    def __init__(self, directory: pathlib.Path | str):
        self.directory = pathlib.Path(directory)

    def __repr__(self) -> str:
        return f"TableCache({str(self.directory)!r})"

    def path_for(self, group: GroupHandle) -> pathlib.Path:
        digest = hashlib.sha256(group.key.encode()).hexdigest()[:16]
        return self.directory / f"table-n{group.n}-q{group.q}-{digest}.json"

    def load(self, classes: ClassData) -> Optional[CharTable]:
        """Cached table, or None when missing or not trustworthy."""
        path = self.path_for(classes.group)
        if not path.is_file():
            logger.CUSTOM_LOGGER.debug("cache miss: %s", path.name)
            return None
        try:
            document = models.TableDocument.model_validate(json.loads(path.read_text()))
            table = load_table_document(document, classes)
        except (ValidationError, ValueError, TypeError) as error:
            logger.CUSTOM_LOGGER.warning("discarding cached table %s: %s", path.name, error)
            return None
        logger.CUSTOM_LOGGER.debug("cache hit: %s", path.name)
        return table

    def store(self, table: CharTable) -> pathlib.Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(table.classes.group)
        path.write_text(table_document(table).model_dump_json(by_alias=True))
        return path


_tables: Dict[str, CharTable] = {}


def clear_caches() -> None:
    """Forget tables computed in this process."""
    _tables.clear()
