import pytest

from substratum import (
    BadSeed,
    ColumnMap,
    DigitOutOfRange,
    NontrivialHeight,
    Overflow,
    RuleLengthMismatch,
    Substitution,
    UnknownLetter,
    validate,
)


def test_validate_period_doubling():
    sub = validate(["a", "b"], 2, {"a": "ab", "b": "aa"}, seed=["a", "a"])
    assert sub.length == 2
    assert sub.alphabet.letters == ("a", "b")


def test_validate_rule_length_mismatch():
    with pytest.raises(RuleLengthMismatch):
        validate(["a", "b"], 2, {"a": "ab", "b": "a"})


def test_validate_unknown_letter():
    with pytest.raises(UnknownLetter):
        validate(["a", "b"], 2, {"a": "ab", "b": "ax"})


def test_validate_bigdiag_seed_accepted():
    sub = validate(["a", "b", "c"], 3, {"a": "acb", "b": "baa", "c": "bba"}, seed=["b", "a"])
    assert sub.seed_periods() == (1, 2)


def test_validate_bad_seed():
    # b is not periodic under the first column of period-doubling
    with pytest.raises(BadSeed):
        validate(["a", "b"], 2, {"a": "ab", "b": "aa"}, seed=["a", "b"])


def test_columns_period_doubling(pd):
    assert pd.column(0).vector() == "(a,a)^T"
    assert pd.column(1).vector() == "(b,a)^T"


def test_column_bigdiag(bigdiag):
    assert bigdiag.column(2).vector() == "(b,a,a)^T"


def test_column_out_of_range(pd):
    with pytest.raises(DigitOutOfRange):
        pd.column(2)


def test_power_period_doubling(pd):
    squared = pd.power(2)
    words = [pd.alphabet.word_str(rule) for rule in squared.rules]
    assert words == ["abaa", "abab"]
    assert squared.length == 4


def test_power_identity(pd):
    assert pd.power(1).rules == pd.rules


def test_power_bigdiag_first_row(bigdiag):
    squared = bigdiag.power(2)
    assert bigdiag.alphabet.word_str(squared.rules[0]) == "acbbbabaa"


def test_power_overflow(pd):
    with pytest.raises(Overflow):
        pd.power(40)


def test_power_composition_invariant(pd, bigdiag, thue_morse):
    for sub in (pd, bigdiag, thue_morse):
        squared = sub.power(2)
        for i in range(sub.length):
            for j in range(sub.length):
                expected = sub.column(j).compose(sub.column(i))
                assert squared.column(i * sub.length + j) == expected


def test_simplify_period_doubling(pd):
    simplified, exponent = pd.simplify()
    assert exponent == 2
    assert [pd.alphabet.word_str(r) for r in simplified.rules] == ["abaa", "abab"]
    assert simplified.column(0).is_idempotent()
    assert simplified.column(simplified.length - 1).is_idempotent()


def test_simplify_fixpoint(pd2):
    again, exponent = pd2.simplify()
    assert exponent == 1
    assert again is pd2


def test_simplify_bigdiag(bigdiag):
    # the last column (b,a,a)^T swaps a and b, so one power is not enough
    assert not bigdiag.is_simplified()
    simplified, exponent = bigdiag.simplify()
    assert exponent == 2
    assert simplified.column(0).is_idempotent()
    assert simplified.column(simplified.length - 1).is_idempotent()


def test_simplify_least_exponent(pd, bigdiag, thue_morse):
    for sub in (pd, bigdiag, thue_morse):
        _, exponent = sub.simplify()
        for n in range(1, exponent):
            p = sub.power(n)
            assert not (
                p.column(0).is_idempotent() and p.column(p.length - 1).is_idempotent()
            )


def test_fixed_point_window_bigdiag(bigdiag):
    assert "".join(bigdiag.fixed_point_window(0, 8)) == "acbbbabaa"
    assert "".join(bigdiag.fixed_point_window(-1, 0)) == "ba"
    assert "".join(bigdiag.fixed_point_window(-9, -1)) == "baaacbacb"


def test_fixed_point_window_pd2(pd2):
    assert "".join(pd2.fixed_point_window(0, 3)) == "abaa"
    assert "".join(pd2.fixed_point_window(-4, -1)) == "abaa"


def test_fixed_point_substitution_invariance(pd2, bigdiag):
    for sub in (pd2, bigdiag):
        p = sub.seed_period()
        factor = sub.length**p
        lo, hi = -7, 7
        window = sub.fixed_point_window(lo, hi)
        ords = [sub.alphabet.index(s) for s in window]
        for _ in range(p):
            ords = list(sub.apply(ords))
        expanded = sub.fixed_point_window(factor * lo, factor * hi + factor - 1)
        assert tuple(sub.alphabet[o] for o in ords) == expanded


def test_is_primitive(pd, bigdiag):
    assert pd.is_primitive()
    assert bigdiag.is_primitive()
    split = Substitution.from_parts(["a", "b"], 2, {"a": "aa", "b": "bb"})
    assert not split.is_primitive()


def test_is_primitive_powers(pd, bigdiag):
    for sub in (pd, bigdiag):
        for k in range(1, 6):
            assert sub.power(k).is_primitive() == sub.is_primitive()


def test_height_trivial(pd2, bigdiag, thue_morse):
    assert pd2.height() == 1
    assert bigdiag.height() == 1
    assert thue_morse.height() == 1


def test_height_two(height_two):
    assert height_two.height() == 2


def test_column_number(pd, bigdiag, thue_morse):
    assert pd.column_number() == 1
    assert bigdiag.column_number() == 1
    assert thue_morse.column_number() == 2


def test_column_number_power_invariant(pd, bigdiag, thue_morse):
    from substratum import closure

    for sub in (pd, bigdiag, thue_morse):
        base = closure(sub.columns()).min_rank
        for k in range(2, 7):
            assert closure(sub.power(k).columns()).min_rank == base


def test_column_number_refuses_nontrivial_height(height_two):
    with pytest.raises(NontrivialHeight):
        height_two.column_number()


def test_aperiodicity_heuristic(pd2, bigdiag, height_two):
    assert pd2.is_aperiodic_heuristic()
    assert bigdiag.is_aperiodic_heuristic()
    assert not height_two.is_aperiodic_heuristic()


def test_column_map_composition_order(pd):
    c0, c1 = pd.column(0), pd.column(1)
    swap_then_const = c0.compose(c1)  # applies c1 first
    assert swap_then_const.table == tuple(c0.table[x] for x in c1.table)


def test_column_map_identity_unit(bigdiag):
    ident = ColumnMap.identity(bigdiag.alphabet)
    for i in range(3):
        col = bigdiag.column(i)
        assert col.compose(ident) == col
        assert ident.compose(col) == col


def test_occurring_letters(bigdiag, constant_sub):
    assert bigdiag.occurring_letters() == frozenset({0, 1, 2})
    assert constant_sub.occurring_letters() == frozenset({0})


def test_multicharacter_letters_use_array_rules():
    sub = validate(
        ["lo", "hi"],
        2,
        {"lo": ["lo", "hi"], "hi": ["lo", "lo"]},
        seed=["lo", "lo"],
    )
    assert sub.alphabet.word_str(sub.rules[0]) == "lo hi"
    assert "".join(sub.fixed_point_window(0, 3)) == "lohilolo"


def test_seed_letter_must_exist():
    with pytest.raises(UnknownLetter):
        validate(["a", "b"], 2, {"a": "ab", "b": "aa"}, seed=["a", "z"])


def test_budget_env_override(pd, monkeypatch):
    monkeypatch.setenv("SUBSTRATUM_BUDGET", "8")
    with pytest.raises(Overflow):
        pd.power(4)
    monkeypatch.setenv("SUBSTRATUM_BUDGET", "1000000")
    assert pd.power(4).length == 16
