"""
The symmetry lab: why residuals predict distributions
=====================================================

The image-level story rests on finite facts that can be checked exhaustively
on small domains: an operator commuting with a symmetry maps symmetric
distributions to symmetric distributions, and the three preservation notions
(elements, mappings, distributions) are genuinely independent.  This script
walks the core objects on domains small enough to print.
"""
from chirascope.symlab import (
    FiniteDistribution,
    FiniteMap,
    FinitePermutation,
    check_distribution_preservation,
    check_permuted_commutativity,
    commutes,
    mod3_family,
    non_implication_witnesses,
    orbits,
    pushforward,
    run_property_suite,
)

# a 5-element symmetry: one 2-cycle, one 3-cycle
T = FinitePermutation((1, 0, 3, 4, 2))
print("T =", T.mapping, "orbits:", orbits(T).orbits)

# J collapses the 2-cycle onto a 3-cycle element equivariantly?  No: orbit
# sizes must divide, so the 2-cycle can only land on a fixed point -- here
# there is none, so J maps it onto itself, swapped
J = FiniteMap((1, 0, 4, 2, 3))
print("J =", J.mapping, "commutes:", commutes(T, J))

D = FiniteDistribution((0.2,) * 5)
report = check_distribution_preservation(T, J, D)
print("pushforward", pushforward(D, J).probs,
      "symmetric:", report.pushforward_symmetric,
      "kernel reconstruction error:", report.reconstruction_error)

print("\nindependence witnesses:")
witnesses = non_implication_witnesses()
for note in witnesses.witnesses:
    print("  ", note)

print("\nglide-commutativity in miniature (the mod-3 family):")
T3, family = mod3_family()
print("  members:", [f.mapping for f in family],
      "none commutes:", not any(commutes(T3, f) for f in family))
report = check_permuted_commutativity(T3, family, FiniteDistribution((1 / 3,) * 3))
print("  sigma:", report.sigma, "accumulated symmetric:", report.accumulated_symmetric)

print("\nrandomized suite (200 trials per proposition):")
for result in run_property_suite(max_n=10, trials=200, seed=0):
    print(f"  {'PASS' if result.passed else 'FAIL'} {result.name}")
