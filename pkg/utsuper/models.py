import os
import pathlib
from typing import Any, Dict, Iterable, List, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class OracleConfig(BaseModel):
    """Model for the caps and cache location used by the concrete oracle.

    >>> OracleConfig

    """

    enum_cap: int = Field(default=2**21, description="Largest group that may be enumerated.")
    table_cap: int = Field(default=2**16, description="Largest group a character table is built for.")
    class_cap: int = Field(default=4096, description="Largest number of conjugacy classes for a table.")
    mackey_coset_cap: int = Field(default=2**14, description="Largest index |G:V_D| for Mackey norms.")
    homomorphism_pair_cap: int = Field(
        default=2**20, description="Largest number of element pairs checked exhaustively."
    )
    cache_dir: pathlib.Path = Field(
        default=pathlib.Path(".utsuper-cache"), description="Directory for cached character tables."
    )


def get_setting(keys: Iterable[str], kwargs: Dict[str, Any]) -> Any:
    """Helper function to retrieve a setting from kwargs or environment variables.

    Args:
        keys: Iterable of keys to look for in kwargs and environment variables.
        kwargs: Key-value pairs to search for settings, takes precedence over environment variables.

    Returns:
        Any:
        The first found setting value or None if not found.
    """
    for key in keys:
        if (value := kwargs.get(key)) is not None:
            return value
        if value := os.getenv(key):
            return value
    return None


def env_loader(**kwargs) -> OracleConfig:
    """Loads keyword arguments and environment variables into the OracleConfig model.

    See Also:
        - Tries to resolve every setting through kwargs.
        - Uses ``UTSUPER_*`` environment variables as fallback.
        - Anything left unresolved keeps the model default.

    Returns:
        OracleConfig:
        An instance of OracleConfig with loaded settings.
    """
    lookups = {
        "enum_cap": ["enum_cap", "UTSUPER_ENUM_CAP"],
        "table_cap": ["table_cap", "UTSUPER_TABLE_CAP"],
        "class_cap": ["class_cap", "UTSUPER_CLASS_CAP"],
        "mackey_coset_cap": ["mackey_coset_cap", "UTSUPER_MACKEY_COSET_CAP"],
        "homomorphism_pair_cap": ["homomorphism_pair_cap", "UTSUPER_PAIR_CAP"],
        "cache_dir": ["cache_dir", "UTSUPER_CACHE_DIR", "cache"],
    }
    resolved = {}
    for name, keys in lookups.items():
        value = get_setting(keys, kwargs)
        if value is not None:
            resolved[name] = value
    return OracleConfig(**resolved)


# Serialization models, all JSON leaves the package through these.


class RootJSON(BaseModel):
    """Serialized positive root.

    >>> RootJSON

    """

    i: int
    j: int


class PairJSON(BaseModel):
    """Serialized classification of a root pair.

    >>> PairJSON

    """

    other: RootJSON
    relation: str
    hook_overlap: List[RootJSON]


class RootsDocument(BaseModel):
    """Root combinatorics printed by ``roots``.

    >>> RootsDocument

    """

    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    n: int
    mu: int
    positive_roots: List[RootJSON]
    basic_sets: int
    root: Optional[RootJSON] = None
    regions: Dict[str, List[RootJSON]] = Field(default_factory=dict)
    graph_auto: Optional[RootJSON] = None
    pair: Optional[PairJSON] = None

    model_config = {"populate_by_name": True}


class FactorJSON(BaseModel):
    """Serialized elementary factor of a basic character.

    >>> FactorJSON

    """

    root: RootJSON
    param: int


class TermJSON(BaseModel):
    """Serialized basic character with its coefficient.

    >>> TermJSON

    """

    factors: List[FactorJSON]
    coeff: int


class PolyJSON(BaseModel):
    """Serialized counting polynomial.

    >>> PolyJSON

    """

    basis: str = "q"
    coeffs: List[int]


class StatJSON(BaseModel):
    """Serialized row of constituent statistics.

    >>> StatJSON

    """

    degree_exponent: int
    count: PolyJSON
    multiplicity: PolyJSON


class ExprDocument(BaseModel):
    """Serialized normalized expression, as printed by ``decompose``.

    >>> ExprDocument

    """

    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    n: int
    q: int
    terms: List[TermJSON]
    total_degree: PolyJSON
    expected_degree: PolyJSON
    conserved: bool
    stats: Optional[List[List[StatJSON]]] = None

    model_config = {"populate_by_name": True}


class CountDocument(BaseModel):
    """Serialized counting polynomial, as printed by ``count``.

    >>> CountDocument

    """

    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    n: int
    which: str
    variant: Optional[str] = None
    polynomial: PolyJSON
    seeds: Dict[str, PolyJSON] = Field(default_factory=dict)
    value: Optional[int] = None

    model_config = {"populate_by_name": True}


class SeedJSON(BaseModel):
    """Serialized seed value N_{n,e}, either a polynomial or an integer at one q.

    >>> SeedJSON

    """

    n: int
    e: int
    q: Optional[int] = None
    value: Optional[int] = None
    poly: Optional[PolyJSON] = None


class SeedsDocument(BaseModel):
    """Seeds file read by ``count --seeds`` and written from oracle histograms.

    >>> SeedsDocument

    """

    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    seeds: List[SeedJSON] = Field(default_factory=list)

    model_config = {"populate_by_name": True}


class ClassesJSON(BaseModel):
    """Serialized conjugacy class data.

    >>> ClassesJSON

    """

    reps: List[int]
    sizes: List[int]


class IrreducibleJSON(BaseModel):
    """Serialized irreducible character, values as rational coefficient strings.

    >>> IrreducibleJSON

    """

    degree: int
    values: List[List[str]]


class TableDocument(BaseModel):
    """Versioned character table document cached between runs.

    >>> TableDocument

    """

    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    n: int
    q: int
    roots: List[List[int]]
    classes: ClassesJSON
    conductor: int
    irreducibles: List[IrreducibleJSON]

    model_config = {"populate_by_name": True}


class HistogramDocument(BaseModel):
    """Degree histogram printed by ``table``, keyed by the exponent e of q^e.

    >>> HistogramDocument

    """

    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    n: int
    q: int
    classes: int
    histogram: Dict[str, int]

    model_config = {"populate_by_name": True}


class CheckRecord(BaseModel):
    """Outcome of one verification check.

    >>> CheckRecord

    """

    id: str
    anchor: str
    status: str
    witness: Dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    """Machine-readable report of a verification suite.

    >>> Report

    """

    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    suite: str
    config: Dict[str, Any] = Field(default_factory=dict)
    checks: List[CheckRecord] = Field(default_factory=list)
    elapsed_ms: int = 0

    model_config = {"populate_by_name": True}

    @property
    def failed(self) -> bool:
        """True when any check failed."""
        return any(check.status == "fail" for check in self.checks)

    @property
    def skipped(self) -> bool:
        """True when any check was skipped."""
        return any(check.status == "skipped" for check in self.checks)


# Exceptions


class UTSuperError(Exception):
    """Base class for every error raised by the package.

    >>> UTSuperError

    """


class RootOutOfBounds(UTSuperError):
    """Raised when a root does not satisfy ``1 <= i <= j <= n - 1``.

    >>> RootOutOfBounds

    """

    def __init__(self, n: int, i: int, j: int):
        """Instantiates the ``RootOutOfBounds`` object.

        Args:
            n: Ambient rank.
            i: Row index of the offending root.
            j: Column index of the offending root.
        """
        self.n = n
        self.i = i
        self.j = j
        super().__init__(f"root ({i},{j}) out of bounds for n={n}")


class SameRowError(UTSuperError):
    """Raised when two roots of a would-be basic set share a row.

    >>> SameRowError

    """

    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__(f"{first} and {second} lie on the same row")


class SameColumnError(UTSuperError):
    """Raised when two roots of a would-be basic set share a column.

    >>> SameColumnError

    """

    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__(f"{first} and {second} lie on the same column")


class EmptySetError(UTSuperError):
    """Raised when a basic set is empty.

    >>> EmptySetError

    """


class NotClosedError(UTSuperError):
    """Raised when a root set is not closed under root addition.

    >>> NotClosedError

    """

    def __init__(self, first, second):
        """Instantiates the ``NotClosedError`` object.

        Args:
            first: First root of the violating pair.
            second: Second root of the violating pair.
        """
        self.first = first
        self.second = second
        super().__init__(f"{first} + {second} is a root missing from the set")


class AmbientMismatch(UTSuperError):
    """Raised when objects built for different (n, q) are combined.

    >>> AmbientMismatch

    """


class ZeroParameter(UTSuperError):
    """Raised when a character parameter is zero in GF(q).

    >>> ZeroParameter

    """


class UnsupportedConfiguration(UTSuperError):
    """Raised for basic sets whose constituent data is not known in closed form.

    >>> UnsupportedConfiguration

    """


class MissingSeed(UTSuperError):
    """Raised when a recursion needs a seed value that was never supplied.

    >>> MissingSeed

    """

    def __init__(self, n: int, e: int, q: Optional[int] = None):
        self.n = n
        self.e = e
        self.q = q
        where = f" at q={q}" if q is not None else ""
        super().__init__(f"missing seed N_{{{n},{e}}}{where}")


class RankTooSmall(UTSuperError):
    """Raised when a rank is below the validity threshold of a formula.

    >>> RankTooSmall

    """


class UnsupportedField(UTSuperError):
    """Raised for field sizes outside the supported list.

    >>> UnsupportedField

    """


class CapExceeded(UTSuperError):
    """Raised when a computation would exceed a configured cap.

    >>> CapExceeded

    """

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: {size} exceeds cap {cap}")


class OwnerMismatch(UTSuperError):
    """Raised when class functions of different groups are combined.

    >>> OwnerMismatch

    """


class SplittingFailure(UTSuperError):
    """Raised when the class-matrix eigenspaces do not split into lines.

    >>> SplittingFailure

    """


class NonPowerDegree(UTSuperError):
    """Raised when an irreducible degree is not a power of q.

    >>> NonPowerDegree

    """


class NonIntegralMultiplicity(UTSuperError):
    """Raised when a class function decomposes with a non-integral multiplicity.

    >>> NonIntegralMultiplicity

    """


class NotASubgroup(UTSuperError):
    """Raised when a group handle is not contained in the expected overgroup.

    >>> NotASubgroup

    """


class WrongBaseGroup(UTSuperError):
    """Raised when a linear character is requested on the wrong base group.

    >>> WrongBaseGroup

    """


class UndefinedGeneratorImage(UTSuperError):
    """Raised when a generator map misses one of the domain's roots.

    >>> UndefinedGeneratorImage

    """


class FactorParseError(UTSuperError):
    """Raised when a factor list such as ``"(1,2):1,(2,3):1"`` cannot be parsed.

    >>> FactorParseError

    """

    def __init__(self, text: str, position: int, detail: str):
        """Instantiates the ``FactorParseError`` object.

        Args:
            text: The text being parsed.
            position: Zero-based character position of the problem.
            detail: Reason for failure.
        """
        self.text = text
        self.position = position
        self.detail = detail
        super().__init__(f"{detail} at position {position}: {text!r}")


config = OracleConfig()
