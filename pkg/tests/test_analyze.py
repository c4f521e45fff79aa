import pytest
from hypothesis import given
from hypothesis import strategies as st

from wdlat import (
    DegreeFunction,
    Ideal,
    Poset,
    UnverifiedPosetError,
    WeightPolicy,
    construct,
    derived_relations,
    orphan_report,
    triple_orphan_check,
    verify_differential,
)
from conftest import GOLDEN12_COVERS, build_named

D1 = DegreeFunction.constant(1)
D2 = DegreeFunction.constant(2)


def names(poset, ids):
    return sorted(poset.name(p) for p in ids)


# -- verify_differential -------------------------------------------------------


def test_verify_clean_on_constructed_fixture(y2_h3):
    report = verify_differential(y2_h3, D2, 3)
    assert report.ok
    assert report.checked_horizon == 3
    assert report.ideal_count == 1 + 2 + 5 + 10


def test_verify_empty_poset_violates_at_empty_ideal():
    report = verify_differential(Poset(), D1, 0)
    assert report.violations == ((Ideal(), 0, 1),)
    assert report.ideal_count == 1


def test_verify_detects_missing_point_minimal_first():
    # Dropping G from the worked example leaves {A,C} one insertion point
    # short: weight 2 against deletion weight 1 plus degree 2.
    covers = [(n, c) for n, c in GOLDEN12_COVERS if n != "G"]
    poset = build_named(covers)
    report = verify_differential(poset, D2, 3)
    assert not report.ok
    ideal, lhs, rhs = report.violations[0]
    assert ideal.label(poset) == "{A,C}"
    assert (lhs, rhs) == (2, 3)


def test_verify_truncation_artifacts_on_unfinished_prefix(golden12):
    # The 12-point prefix stops mid-run: the frontier ideals of size 3
    # never had their insertion points created, so checking them reports
    # violations even though the finished construction is clean.
    report = verify_differential(golden12, D2, 3)
    labels = {ideal.label(golden12) for ideal, _, _ in report.violations}
    assert labels == {"{A,C,G}", "{A,D,H}", "{B,E,J}", "{B,F,K}"}
    assert verify_differential(golden12, D2, 2).ok


def test_verify_monotone_in_horizon():
    covers = [(n, c) for n, c in GOLDEN12_COVERS if n != "G"]
    poset = build_named(covers)
    at2 = verify_differential(poset, D2, 2)
    at3 = verify_differential(poset, D2, 3)
    assert at2.violations[0] in at3.violations
    assert set(at2.violations) <= set(at3.violations)


def test_verify_blind_to_transitively_redundant_edges(y2_h3):
    # Recording an extra arrow below an already-comparable pair leaves the
    # ideal family, insertion points, and deletion points unchanged: the
    # mutated structure encodes the same lattice, so verification stays
    # clean. Mutation coverage therefore only flips true Hasse edges.
    a, g = y2_h3.id_of("A"), y2_h3.id_of("G")
    assert y2_h3.less_equal(a, g)
    mutant = Poset()
    for pid in y2_h3.point_ids():
        covers = set(y2_h3.lower_covers(pid))
        if pid == g:
            covers.add(a)
        mutant.add_point(y2_h3.weight(pid), covers, name=y2_h3.name(pid))
    assert verify_differential(mutant, D2, 3).ok


def test_verify_with_size_table():
    result = construct(DegreeFunction.by_size([2, 1, 1]), WeightPolicy.unit(), 2)
    report = verify_differential(result.poset, DegreeFunction.by_size([2, 1, 1]), 2)
    assert report.ok


# -- orphan_report --------------------------------------------------------------


def test_orphan_report_worked_example(golden12):
    report = orphan_report(golden12)
    assert names(golden12, report.orphans) == list("CDEFGHJK")
    assert report.multi_orphan_parents == ()


def test_orphan_report_star(star):
    report = orphan_report(star)
    assert [(star.name(p), k) for p, k in report.multi_orphan_parents] == [("P", 3)]
    assert names(star, report.orphans) == ["A1", "A2", "A3", "B3", "E1"]


def test_orphan_report_single_point():
    poset = Poset()
    poset.add_point(1, [])
    report = orphan_report(poset)
    assert report.orphans == frozenset()
    assert report.multi_orphan_parents == ()


@given(st.data())
def test_orphan_iff_single_lower_cover(data):
    poset = Poset()
    n = data.draw(st.integers(min_value=0, max_value=8))
    for i in range(n):
        covers = (
            data.draw(st.sets(st.integers(min_value=0, max_value=i - 1), max_size=3))
            if i
            else set()
        )
        poset.add_point(1, covers)
    report = orphan_report(poset)
    for p in poset.point_ids():
        assert (p in report.orphans) == (len(poset.lower_covers(p)) == 1)


# -- derived relations ------------------------------------------------------------


def test_derived_relations_first_quadrant_root(y2_h3):
    a = y2_h3.id_of("A")
    rel = derived_relations(y2_h3, 2, a)
    assert rel.all_hold
    assert names(y2_h3, rel.orphans) == ["C", "D"]
    assert names(y2_h3, rel.side_insertions) == ["B"]
    c, d = y2_h3.id_of("C"), y2_h3.id_of("D")
    assert names(y2_h3, rel.orphan_extensions[c]) == ["G"]
    assert names(y2_h3, rel.orphan_extensions[d]) == ["H"]
    assert names(y2_h3, rel.pair_extensions[(c, d)]) == ["I"]
    base = [chk for chk in rel.checks if chk.relation == "base"]
    assert base[0].lhs == base[0].rhs == 3
    orphan_c = [
        chk for chk in rel.checks if chk.relation == "orphan" and chk.subject == (c,)
    ]
    assert orphan_c[0].lhs == orphan_c[0].rhs == 1


def test_derived_relations_second_quadrant_root(y2_h3):
    b = y2_h3.id_of("B")
    rel = derived_relations(y2_h3, 2, b)
    assert rel.all_hold
    assert names(y2_h3, rel.orphans) == ["E", "F"]
    e, f = y2_h3.id_of("E"), y2_h3.id_of("F")
    assert names(y2_h3, rel.orphan_extensions[e]) == ["J"]
    assert names(y2_h3, rel.orphan_extensions[f]) == ["K"]
    assert names(y2_h3, rel.pair_extensions[(e, f)]) == ["L"]


def test_derived_relations_hold_at_star_roots(star):
    # The padded star satisfies the condition through size 3, and every
    # forced identity holds; the contradiction only appears at the
    # size-4 ideal joining the three orphans.
    rel = derived_relations(star, 2, star.id_of("P"))
    assert rel.all_hold
    assert names(star, rel.orphans) == ["A1", "A2", "A3"]
    pairs = {
        tuple(sorted((star.name(a), star.name(b)))): names(star, ext)
        for (a, b), ext in rel.pair_extensions.items()
    }
    assert pairs == {
        ("A1", "A2"): ["C12"],
        ("A1", "A3"): ["C13"],
        ("A2", "A3"): ["C23"],
    }


def test_derived_relations_refuse_unverified_prefix(golden12):
    with pytest.raises(UnverifiedPosetError):
        derived_relations(golden12, 2, golden12.id_of("A"))


# -- triple orphan check ------------------------------------------------------------


@pytest.mark.parametrize("d", [1, 2, 3])
def test_triple_orphan_check_on_constructions(d):
    degree = DegreeFunction.constant(d)
    poset = construct(degree, WeightPolicy.unit(), 6).poset
    assert triple_orphan_check(poset, d, 6) == []


def test_star_fails_verification_within_theorem_horizon(star):
    assert verify_differential(star, D2, 3).ok
    report = verify_differential(star, D2, 4)
    assert not report.ok
    ideal, lhs, rhs = report.violations[0]
    assert ideal == Ideal((0, 1, 2, 3))
    assert (lhs, rhs) == (8, 6)


def test_triple_orphan_check_guards_on_star(star):
    with pytest.raises(UnverifiedPosetError):
        triple_orphan_check(star, 2, 4)
    assert triple_orphan_check(star, 2, 3) == [star.id_of("P")]
