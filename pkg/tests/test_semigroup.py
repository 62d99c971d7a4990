import pytest

from substratum import (
    ColumnMap,
    closure,
    graded_reachability,
    min_rank,
    structure_semigroup,
)


def vectors(maps) -> set[str]:
    return {m.vector() for m in maps}


def test_closure_period_doubling_columns(pd):
    cl = closure(pd.columns())
    # swapping column squares to the identity, which then breeds (b,b)
    assert vectors(cl.elements) == {"(a,a)^T", "(b,a)^T", "(a,b)^T", "(b,b)^T"}
    assert cl.contains_id
    assert cl.min_rank == 1


def test_closure_identity_alone(pd):
    ident = ColumnMap.identity(pd.alphabet)
    cl = closure([ident])
    assert cl.elements == (ident,)
    assert cl.min_rank == 2


def test_closure_idempotent(bigdiag):
    cl = closure(bigdiag.columns())
    again = closure(cl.elements)
    assert set(again.elements) == set(cl.elements)


def test_closure_bigdiag_has_coincidence(bigdiag):
    assert closure(bigdiag.columns()).min_rank == 1


def test_min_rank_thue_morse(thue_morse):
    cl = closure(thue_morse.columns())
    assert min_rank(cl) == 2
    assert all(m.image_size() == 2 for m in cl.elements)


def test_graded_reachability_period_doubling(pd2):
    graded = graded_reachability(pd2)
    const_a = pd2.column(0)
    assert const_a.vector() == "(a,a)^T"
    ls = graded.length_sets[const_a]
    assert all(k in ls for k in range(1, 12))
    assert ls.hits_all_multiples()


def test_graded_identity_at_zero(pd):
    graded = graded_reachability(pd)
    ident = ColumnMap.identity(pd.alphabet)
    assert 0 in graded.length_sets[ident]


def test_graded_bigdiag_rotation_lengths(bigdiag):
    # the 3-cycle column (c,a,b)^T only occurs at product lengths = 1 mod 3
    graded = graded_reachability(bigdiag)
    rot = bigdiag.column(1)
    assert rot.vector() == "(c,a,b)^T"
    ls = graded.length_sets[rot]
    members = [k for k in range(1, 40) if k in ls]
    assert members == [k for k in range(1, 40) if k % 3 == 1]
    assert not ls.hits_all_multiples()


def test_bigdiag_alpha_columns_are_rotation_powers(bigdiag):
    # the column at index (3^n - 1)/2 of theta^n is the n-th power of (c,a,b)^T
    rot = bigdiag.column(1)
    for n in range(1, 6):
        alpha = (3**n - 1) // 2
        assert bigdiag.power(n).column(alpha) == rot.iterate(n)


def test_structure_semigroup_period_doubling(pd):
    struct = structure_semigroup(pd)
    assert vectors(struct.elements) == {"(a,b)^T", "(a,a)^T", "(b,b)^T"}
    assert struct.stabilizing_exponent == 2
    assert struct.anti_chain_ok


def test_structure_semigroup_simplified_input(pd2):
    struct = structure_semigroup(pd2)
    assert vectors(struct.elements) == {"(a,b)^T", "(a,a)^T", "(b,b)^T"}
    assert struct.stabilizing_exponent == 1


def test_structure_semigroup_bigdiag(bigdiag):
    # products of 3k columns never reproduce the pure rotations, so the
    # intersection drops (c,a,b)^T and (b,c,a)^T and stabilizes at exponent 3
    struct = structure_semigroup(bigdiag)
    assert len(struct.elements) == 22
    assert struct.stabilizing_exponent == 3
    monoid = closure(list(bigdiag.columns()) + [ColumnMap.identity(bigdiag.alphabet)])
    assert set(struct.elements) < set(monoid.elements)
    missing = vectors(monoid.elements) - vectors(struct.elements)
    assert missing == {"(c,a,b)^T", "(b,c,a)^T"}


def test_structure_semigroup_matches_explicit_powers(bigdiag):
    ident = ColumnMap.identity(bigdiag.alphabet)
    explicit = None
    for n in range(1, 7):
        monoid = set(closure(list(bigdiag.power(n).columns()) + [ident]).elements)
        explicit = monoid if explicit is None else explicit & monoid
    assert set(structure_semigroup(bigdiag).elements) == explicit


def test_structure_semigroup_power_invariant(pd, bigdiag, thue_morse):
    for sub in (pd, bigdiag, thue_morse):
        base = set(structure_semigroup(sub).elements)
        for k in range(2, 7):
            assert set(structure_semigroup(sub.power(k)).elements) == base


def test_structure_semigroup_anti_chain(pd, bigdiag, thue_morse):
    for sub in (pd, bigdiag, thue_morse):
        assert structure_semigroup(sub).anti_chain_ok


def test_bijective_substitution_gives_group(thue_morse):
    struct = structure_semigroup(thue_morse)
    assert vectors(struct.elements) == {"(a,b)^T", "(b,a)^T"}
    elements = set(struct.elements)
    for m in elements:
        assert any(m.compose(inv).is_identity() for inv in elements)


def test_structure_contained_in_every_monoid(pd, bigdiag):
    ident_pd = ColumnMap.identity(pd.alphabet)
    ident_big = ColumnMap.identity(bigdiag.alphabet)
    for sub, ident in ((pd, ident_pd), (bigdiag, ident_big)):
        struct = set(structure_semigroup(sub).elements)
        for n in range(1, 6):
            monoid = set(closure(list(sub.power(n).columns()) + [ident]).elements)
            assert struct <= monoid


def test_closure_requires_generators():
    with pytest.raises(ValueError):
        closure([])
