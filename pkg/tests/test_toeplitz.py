import pytest

from substratum import (
    NontrivialHeight,
    NotToeplitz,
    WindowTooShort,
    aperiodic_in_range,
    decide_per,
    expand,
    per_k_window,
    reduced_graph,
    to_digits,
)

BIGDIAG_APERIODIC_50 = (
    -50, -49, -48, -47, -46, -42, -41, -40, -36, -35, -34, -33, -32, -31, -30,
    -29, -28, -27, -26, -25, -24, -23, -22, -21, -20, -19, -18, -17, -16, -14,
    -12, -11, -10, -9, -8, -7, -6, -5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6, 7,
    8, 9, 10, 11, 13, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28,
    29, 30, 31, 32, 33, 34, 35, 39, 40, 41, 45, 46, 47, 48, 49, 50,
)


def test_decide_per_pd2_values(pd2):
    v = decide_per(pd2, 0)
    assert v.is_periodic() and v.period == 4 and v.letter == "a"
    v = decide_per(pd2, 7)
    assert v.is_periodic() and v.period == 16 and v.letter == "b"
    v = decide_per(pd2, 3)
    assert v.is_periodic() and v.period == 16 and v.letter == "a"
    v = decide_per(pd2, -1)
    assert not v.is_periodic() and v.period is None and v.letter is None


def test_decide_per_periodic_evidence_is_constant(pd2):
    v = decide_per(pd2, 6)
    assert v.state_pos.is_constant()
    assert v.state_neg.is_constant()
    assert v.state_pos.table[0] == pd2.alphabet.index(v.letter)


def test_decide_per_on_the_unsimplified_form(pd):
    # base-2 reading gives the finer certified periods
    assert decide_per(pd, 0).period == 2
    v = decide_per(pd, 7)
    assert v.period == 16 and v.letter == "b"
    assert not decide_per(pd, -1).is_periodic()


def test_periodic_aperiodic_membership_agrees_across_powers(pd, pd2):
    for n in range(-40, 41):
        assert decide_per(pd, n).is_periodic() == decide_per(pd2, n).is_periodic()


def test_aperiodic_in_range_pd2(pd2):
    report = aperiodic_in_range(pd2, -100, 100, certify=True)
    assert report.aperiodic == (-1,)
    assert report.inconsistencies == ()
    assert report.aperiodic_heuristic
    assert report.summary() == "Aper ∩ [-100,100] = {-1}"


def test_aperiodic_in_range_partition(pd2):
    report = aperiodic_in_range(pd2, -20, 20)
    periodic = {v.index for v in report.verdicts if v.is_periodic()}
    assert periodic | set(report.aperiodic) == set(range(-20, 21))
    assert periodic & set(report.aperiodic) == set()


def test_thue_morse_refused(thue_morse):
    with pytest.raises(NotToeplitz):
        decide_per(thue_morse, 0)
    with pytest.raises(NotToeplitz):
        aperiodic_in_range(thue_morse, -5, 5)


def test_height_two_refused(height_two):
    with pytest.raises(NontrivialHeight):
        decide_per(height_two, 0)


def test_bigdiag_fixed_point_is_far_from_toeplitz(bigdiag):
    report = aperiodic_in_range(bigdiag, -50, 50, certify=True)
    assert report.aperiodic == BIGDIAG_APERIODIC_50
    assert report.inconsistencies == ()


def test_single_letter_alphabet_is_all_periodic(constant_sub):
    v = decide_per(constant_sub, 9)
    assert v.is_periodic() and v.period == 1 and v.letter == "a"


def test_per_k_window_pd2(pd2):
    window = expand(pd2, 5)
    evens = per_k_window(window, 2, "a")
    assert evens == frozenset(i for i in range(window.lo, window.hi + 1) if i % 2 == 0)
    ones_mod_four = per_k_window(window, 4, "b")
    assert ones_mod_four == frozenset(
        i for i in range(window.lo, window.hi + 1) if i % 4 == 1
    )


def test_per_k_window_constant_sequence(constant_sub):
    window = expand(constant_sub, 4)
    full = per_k_window(window, 5, "a")
    assert full == frozenset(range(window.lo, window.hi + 1))


def test_per_k_window_too_short(pd2):
    window = expand(pd2, 1)
    with pytest.raises(WindowTooShort):
        per_k_window(window, 100, "a")


def test_reduced_graph_pd2(pd2):
    graph = reduced_graph(pd2)
    assert graph.vertex_labels == ("(a,b)^T",)
    assert graph.removed == 2
    vertex = graph.vertices[0]
    assert graph.edges == ((vertex, 3, vertex),)
    assert graph.sccs == ((vertex,),)
    assert len(graph.cycles) == 1
    cycle = graph.cycles[0]
    assert cycle.cycle_digits == (3,)
    assert cycle.prefix_digits == ()
    assert cycle.address == -1


def test_reduced_graph_pd_original_spells_minus_one(pd):
    graph = reduced_graph(pd)
    addresses = {c.address for c in graph.cycles}
    assert addresses == {-1}


def test_reduced_graph_vertices_are_never_constant(bigdiag):
    graph = reduced_graph(bigdiag)
    machine = graph.machine
    for v in graph.vertices:
        assert machine.state_maps[v].image_size() >= 2
    for _, _, target in graph.edges:
        assert target in set(graph.vertices)


def test_aperiodic_walks_stay_in_reduced_graph(bigdiag):
    graph = reduced_graph(bigdiag)
    machine = graph.machine.dfao
    vertices = set(graph.vertices)
    tail_steps = machine.num_states + 1
    for n in range(-30, 31):
        digits = to_digits(n, bigdiag.length).digits
        tail = 0 if n >= 0 else bigdiag.length - 1
        state = machine.initial_nonneg
        inside = state in vertices
        for d in tuple(reversed(digits)) + (tail,) * tail_steps:
            state = machine.delta[state][d]
            inside = inside and state in vertices
        assert inside == (not decide_per(bigdiag, n).is_periodic())


def test_reduced_graph_refuses_non_coincidence(thue_morse):
    with pytest.raises(NotToeplitz):
        reduced_graph(thue_morse)
