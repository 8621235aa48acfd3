from utsuper import enums


def test_suite_names():
    assert [suite.value for suite in enums.Suite] == [
        "roots",
        "lemma21",
        "lemma22",
        "lemma32",
        "lemma34",
        "thm-partition",
        "factorization",
        "lemma433",
        "extremal",
        "mackey7",
    ]


def test_enums_are_strings():
    for enum in (enums.RegionKind, enums.PairRelation, enums.Basis, enums.Which, enums.ThirdVariant):
        for member in enum:
            assert isinstance(member, str)


def test_lookup_by_value():
    assert enums.Basis("q-1") is enums.Basis.qm1
    assert enums.CheckStatus("pass") is enums.CheckStatus.passed
    assert enums.Suite("thm-partition") is enums.Suite.thm_partition


def test_exit_codes():
    assert [int(code) for code in enums.ExitCode] == [0, 1, 2, 3]
    assert enums.ExitCode.cap_exceeded == 3
