import pytest

from substratum import Substitution


@pytest.fixture(scope="session")
def pd():
    """Period-doubling substitution, seeded with its unique two-sided seed pair."""
    return Substitution.from_parts(["a", "b"], 2, {"a": "ab", "b": "aa"}, seed=["a", "a"])


@pytest.fixture(scope="session")
def pd2(pd):
    """Simplified period-doubling: a->abaa, b->abab over base 4."""
    simplified, exponent = pd.simplify()
    assert exponent == 2
    return simplified


@pytest.fixture(scope="session")
def bigdiag():
    """Three-letter worked example: a->acb, b->baa, c->bba with seed b·a."""
    return Substitution.from_parts(
        ["a", "b", "c"], 3, {"a": "acb", "b": "baa", "c": "bba"}, seed=["b", "a"]
    )


@pytest.fixture(scope="session")
def thue_morse():
    return Substitution.from_parts(["a", "b"], 2, {"a": "ab", "b": "ba"}, seed=["b", "a"])


@pytest.fixture(scope="session")
def constant_sub():
    return Substitution.from_parts(["a"], 2, {"a": "aa"}, seed=["a", "a"])


@pytest.fixture(scope="session")
def height_two():
    """Periodic fixed point ababab... with ell = 3, so the height is 2."""
    return Substitution.from_parts(["a", "b"], 3, {"a": "aba", "b": "bab"}, seed=["b", "a"])
