import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chirascope.symlab import (
    FiniteDistribution,
    FiniteMap,
    FinitePermutation,
    accumulated_pushforward,
    check_distribution_preservation,
    check_element_preservation,
    check_mapping_preservation,
    check_permuted_commutativity,
    commutes,
    compose_maps,
    conjugate_by,
    constant_map,
    corrupt_commuting_map,
    identity_map,
    is_dist_symmetric,
    is_element_symmetric,
    mod3_family,
    non_implication_witnesses,
    orbits,
    pushforward,
    random_commuting_map,
    random_map,
    random_permutation,
    random_symmetric_distribution,
    run_property_suite,
)


def gen(seed=0):
    return np.random.Generator(np.random.Philox(key=np.array([seed, 2], dtype=np.uint64)))


@st.composite
def permutations_and_maps(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    perm = draw(st.permutations(list(range(n))))
    mapping = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return FinitePermutation(tuple(perm)), FiniteMap(tuple(mapping))


# -------------------------------------------------------------------- domain


def test_map_and_permutation_validation():
    FiniteMap((0, 0, 1))
    with pytest.raises(ValueError):
        FiniteMap(())
    with pytest.raises(ValueError):
        FiniteMap((0, 3, 1))
    FinitePermutation((2, 0, 1))
    with pytest.raises(ValueError):
        FinitePermutation((0, 0, 1))


def test_distribution_validation():
    FiniteDistribution((0.5, 0.5))
    with pytest.raises(ValueError):
        FiniteDistribution((0.5, 0.6))
    with pytest.raises(ValueError):
        FiniteDistribution((-0.1, 1.1))


def test_permutation_inverse():
    T = FinitePermutation((2, 0, 1))
    assert compose_maps(T, T.inverse()).mapping == (0, 1, 2)


def test_orbits_partition_in_application_order():
    T = FinitePermutation((1, 2, 0, 4, 3, 5))
    assert orbits(T).orbits == ((0, 1, 2), (3, 4), (5,))
    assert orbits(T).generators == (0, 3, 5)


def test_orbits_of_identity_are_singletons():
    assert orbits(FinitePermutation((0, 1, 2))).orbits == ((0,), (1,), (2,))


@settings(max_examples=50)
@given(permutations_and_maps())
def test_orbits_partition_property(tj):
    T, _ = tj
    decomposition = orbits(T)
    members = [m for orbit in decomposition.orbits for m in orbit]
    assert sorted(members) == list(range(T.n))
    for orbit in decomposition.orbits:
        for k, member in enumerate(orbit):
            assert T(member) == orbit[(k + 1) % len(orbit)]


def test_compose_and_commute_examples():
    T = FinitePermutation((1, 0))
    J = constant_map(2, 0)
    assert compose_maps(J, T).mapping == (0, 0)
    assert compose_maps(T, J).mapping == (1, 1)
    assert not commutes(T, J)
    assert commutes(T, identity_map(2))
    assert commutes(T, T.as_map())


def test_conjugate_of_constant_map():
    T = FinitePermutation((1, 2, 0))
    assert conjugate_by(T, constant_map(3, 0)).mapping == (1, 1, 1)


def test_pushforward_example_and_mass():
    D = FiniteDistribution((0.25, 0.25, 0.25, 0.25))
    J = FiniteMap((0, 0, 2, 3))
    assert pushforward(D, J).probs == (0.5, 0.0, 0.25, 0.25)


@settings(max_examples=50)
@given(permutations_and_maps())
def test_pushforward_conserves_mass(tj):
    T, J = tj
    weights = list(range(1, T.n + 1))
    D = FiniteDistribution(tuple(w / sum(weights) for w in weights))
    assert sum(pushforward(D, J).probs) == pytest.approx(1.0, abs=1e-12)


def test_symmetry_predicates():
    T = FinitePermutation((1, 0, 2))
    assert is_element_symmetric(2, T) and not is_element_symmetric(0, T)
    assert is_dist_symmetric(FiniteDistribution((0.3, 0.3, 0.4)), T)
    assert not is_dist_symmetric(FiniteDistribution((0.5, 0.3, 0.2)), T)


# -------------------------------------------------------------- preservation


def test_element_preservation_both_directions():
    T = FinitePermutation((1, 0, 2, 3))
    good = FiniteMap((0, 1, 3, 2))     # fixed points map to fixed points
    report = check_element_preservation(T, good)
    assert report.preserves and report.commutes_on_scope and report.biconditional_holds

    bad = FiniteMap((0, 1, 0, 2))      # sends the fixed point 2 into the swap
    report = check_element_preservation(T, bad)
    assert not report.preserves and not report.commutes_on_scope
    assert report.biconditional_holds
    assert report.witnesses


def test_element_preservation_is_vacuous_without_fixed_points():
    T = FinitePermutation((1, 0, 3, 2))
    report = check_element_preservation(T, FiniteMap((0, 0, 2, 3)))
    assert report.preserves and report.commutes_on_scope


def test_mapping_preservation_both_directions():
    T = FinitePermutation((1, 2, 0))
    rotation_power = compose_maps(T, T.as_map())
    report = check_mapping_preservation(T, FiniteMap(rotation_power.mapping))
    assert report.preserves and report.commutes_on_scope

    report = check_mapping_preservation(T, constant_map(3, 0))
    assert not report.preserves and not report.commutes_on_scope
    assert report.biconditional_holds


@settings(max_examples=200)
@given(permutations_and_maps())
def test_biconditionals_hold_on_random_pairs(tj):
    T, J = tj
    assert check_element_preservation(T, J).biconditional_holds
    assert check_mapping_preservation(T, J).biconditional_holds


def test_distribution_preservation_full_report():
    T = FinitePermutation((1, 0, 2))
    J = FiniteMap((2, 2, 2))           # collapse everything onto the fixed point
    D = FiniteDistribution((1 / 3, 1 / 3, 1 / 3))
    report = check_distribution_preservation(T, J, D)
    assert report.ok
    assert report.pushforward_symmetric
    assert report.orbit_images_are_orbits
    assert report.kernel_counts_match
    assert report.reconstruction_error <= 1e-12


def test_distribution_preservation_gates():
    T = FinitePermutation((1, 0))
    asymmetric = FiniteDistribution((0.9, 0.1))
    report = check_distribution_preservation(T, identity_map(2), asymmetric)
    assert not report.applicable and report.pushforward_symmetric is None

    uniform = FiniteDistribution((0.5, 0.5))
    report = check_distribution_preservation(T, constant_map(2, 0), uniform)
    assert report.applicable and not report.commutes
    assert report.pushforward_symmetric is None


def test_distribution_size_mismatch():
    with pytest.raises(ValueError):
        check_distribution_preservation(
            FinitePermutation((1, 0)), identity_map(3), FiniteDistribution((0.5, 0.5)))


# ------------------------------------------------- accumulation / permutation


def test_accumulated_pushforward_of_mod3_family_is_uniform():
    T, family = mod3_family()
    D = FiniteDistribution((1 / 3, 1 / 3, 1 / 3))
    assert accumulated_pushforward(D, family).probs == pytest.approx((1 / 3,) * 3)
    assert all(not commutes(T, J) for J in family)


def test_accumulated_pushforward_requires_family():
    with pytest.raises(ValueError):
        accumulated_pushforward(FiniteDistribution((1.0,)), [])


def test_permuted_commutativity_finds_the_rotation():
    T, family = mod3_family()
    report = check_permuted_commutativity(T, family, FiniteDistribution((1 / 3,) * 3))
    assert report.sigma == (1, 2, 0)
    assert report.accumulated_symmetric


def test_permuted_commutativity_absent():
    T = FinitePermutation((1, 0))
    report = check_permuted_commutativity(T, [constant_map(2, 0)])
    assert not report.found and report.sigma is None


def test_permuted_commutativity_trivial_for_commuting_member():
    T = FinitePermutation((1, 0))
    report = check_permuted_commutativity(T, [identity_map(2)])
    assert report.sigma == (0,)


def test_permuted_commutativity_family_size_guard():
    T = FinitePermutation((0,))
    with pytest.raises(ValueError, match="too large"):
        check_permuted_commutativity(T, [identity_map(1)] * 9)


def test_non_implication_witnesses_all_verify():
    report = non_implication_witnesses()
    assert report.element_without_distribution
    assert report.distribution_without_element
    assert report.noncommuting_family_preserves
    assert report.ok


# ----------------------------------------------------------------- generators


def test_random_commuting_map_always_commutes():
    g = gen(1)
    for _ in range(200):
        n = int(g.integers(1, 13))
        T = random_permutation(n, g)
        assert commutes(T, random_commuting_map(T, g))


def test_random_symmetric_distribution_is_orbit_constant():
    g = gen(2)
    for _ in range(100):
        n = int(g.integers(1, 13))
        T = random_permutation(n, g)
        D = random_symmetric_distribution(T, g)
        assert sum(D.probs) == pytest.approx(1.0, abs=1e-12)
        for x in range(n):
            assert D.probs[x] == D.probs[T(x)]  # bitwise, not approx


def test_random_map_and_permutation_are_valid():
    g = gen(3)
    for _ in range(50):
        n = int(g.integers(1, 13))
        random_permutation(n, g)
        random_map(n, g)


def test_corrupt_commuting_map_breaks_commutation():
    g = gen(4)
    broke = 0
    for _ in range(100):
        n = int(g.integers(2, 13))
        T = random_permutation(n, g)
        if all(len(o) == 1 for o in orbits(T).orbits):
            continue
        J = random_commuting_map(T, g)
        assert not commutes(T, corrupt_commuting_map(T, J, g))
        broke += 1
    assert broke > 50


def test_corrupt_is_noop_for_identity_symmetry():
    T = FinitePermutation((0, 1, 2))
    J = identity_map(3)
    assert corrupt_commuting_map(T, J, gen(5)).mapping == J.mapping


# ---------------------------------------------------------------------- suite


def test_property_suite_passes():
    results = run_property_suite(max_n=10, trials=150, seed=0)
    assert len(results) == 5
    assert all(r.passed for r in results)


def test_property_suite_catches_injected_fault():
    results = run_property_suite(max_n=10, trials=60, seed=0, inject_fault=True)
    by_name = {r.name: r for r in results}
    failing = by_name["commuting pushforward symmetry and kernel reconstruction"]
    assert not failing.passed
    assert failing.witnesses


def test_property_suite_degenerate_domain():
    results = run_property_suite(max_n=1, trials=20, seed=0)
    assert all(r.passed for r in results)


def test_property_suite_validation():
    with pytest.raises(ValueError):
        run_property_suite(max_n=0)
    with pytest.raises(ValueError):
        run_property_suite(trials=0)
