from enum import IntEnum, StrEnum


class RegionKind(StrEnum):
    """Root-set regions attached to a single root.

    >>> RegionKind

    """

    base = "base"
    subtri = "subtri"
    radical = "radical"


class PairRelation(StrEnum):
    """Relative position of two positive roots.

    >>> PairRelation

    """

    equal = "equal"
    arm = "arm"
    leg = "leg"
    separate_disjoint = "separate_disjoint"
    separate_crossing = "separate_crossing"


class Basis(StrEnum):
    """Basis a counting polynomial is printed in.

    >>> Basis

    """

    q = "q"
    qm1 = "q-1"


class Which(StrEnum):
    """Which of the three highest degrees to count.

    >>> Which

    """

    top = "top"
    second = "second"
    third = "third"


class SecondMode(StrEnum):
    """Closed form or recursion for the second highest degree count.

    >>> SecondMode

    """

    closed = "closed"
    recursion = "recursion"


class ThirdVariant(StrEnum):
    """Coefficient on the second term of the third highest degree recursion.

    >>> ThirdVariant

    """

    prose = "prose"
    theorem = "theorem"


class CheckStatus(StrEnum):
    """Outcome of a single verification check.

    >>> CheckStatus

    """

    passed = "pass"
    failed = "fail"
    skipped = "skipped"


class Suite(StrEnum):
    """Named verification suites of the command line.

    >>> Suite

    """

    roots = "roots"
    lemma21 = "lemma21"
    lemma22 = "lemma22"
    lemma32 = "lemma32"
    lemma34 = "lemma34"
    thm_partition = "thm-partition"
    factorization = "factorization"
    lemma433 = "lemma433"
    extremal = "extremal"
    mackey7 = "mackey7"


class ExitCode(IntEnum):
    """Process exit codes of the command line.

    >>> ExitCode

    """

    ok = 0
    check_failure = 1
    usage = 2
    cap_exceeded = 3
