"""Brute-force verification of the symmetry-preservation propositions on
small finite domains.

Elements are ids 0..n-1, the symmetry T is a permutation, the operator J an
arbitrary total map, and D a distribution.  Everything is small enough to
enumerate, so each proposition is checked by computing both of its sides
through independent code paths (direct element loops on one side, composed
mapping tables on the other) and comparing.
"""
from __future__ import annotations

import dataclasses
import itertools

import numpy as np

TOLERANCE = 1e-12


# ------------------------------------------------------------------- domain


@dataclasses.dataclass(frozen=True)
class FiniteMap:
    """Total function on 0..n-1, not necessarily invertible."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        n = len(self.mapping)
        if n == 0:
            raise ValueError("empty domain")
        if any(not 0 <= v < n for v in self.mapping):
            raise ValueError(f"mapping not total on 0..{n - 1}: {self.mapping}")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]


@dataclasses.dataclass(frozen=True)
class FinitePermutation:
    """Bijection on 0..n-1."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        n = len(self.mapping)
        if n == 0:
            raise ValueError("empty domain")
        if sorted(self.mapping) != list(range(n)):
            raise ValueError(f"not a bijection on 0..{n - 1}: {self.mapping}")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def inverse(self) -> "FinitePermutation":
        inv = [0] * self.n
        for i, v in enumerate(self.mapping):
            inv[v] = i
        return FinitePermutation(tuple(inv))

    def as_map(self) -> FiniteMap:
        return FiniteMap(self.mapping)


@dataclasses.dataclass(frozen=True)
class FiniteDistribution:
    """Probabilities over 0..n-1 summing to 1 within tolerance."""

    probs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if not self.probs:
            raise ValueError("empty domain")
        if any(p < 0 for p in self.probs):
            raise ValueError("negative probability")
        if abs(sum(self.probs) - 1.0) > TOLERANCE:
            raise ValueError(f"probabilities sum to {sum(self.probs)}, not 1")

    @property
    def n(self) -> int:
        return len(self.probs)


@dataclasses.dataclass(frozen=True)
class OrbitDecomposition:
    """Cycles of T, each listed from its generator in application order:
    orbit[k] = T^k(generator)."""

    orbits: tuple[tuple[int, ...], ...]

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(orbit[0] for orbit in self.orbits)


def identity_map(n: int) -> FiniteMap:
    return FiniteMap(tuple(range(n)))


def constant_map(n: int, value: int) -> FiniteMap:
    return FiniteMap((value,) * n)


def compose_maps(outer: FiniteMap | FinitePermutation,
                 inner: FiniteMap | FinitePermutation) -> FiniteMap:
    """(outer o inner)(x) = outer(inner(x))."""
    if outer.n != inner.n:
        raise ValueError("domain size mismatch")
    return FiniteMap(tuple(outer.mapping[v] for v in inner.mapping))


def commutes(T: FinitePermutation, J: FiniteMap) -> bool:
    return compose_maps(J, T).mapping == compose_maps(T, J).mapping


def conjugate_by(T: FinitePermutation, J: FiniteMap) -> FiniteMap:
    """T o J o T^-1, the translate of J along T."""
    return compose_maps(compose_maps(T, J), T.inverse())


def orbits(T: FinitePermutation) -> OrbitDecomposition:
    """Cycle decomposition; an element sits in a size-1 orbit iff it is
    symmetric (fixed by T)."""
    seen = [False] * T.n
    cycles = []
    for start in range(T.n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        nxt = T(start)
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = T(nxt)
        cycles.append(tuple(cycle))
    return OrbitDecomposition(tuple(cycles))


def pushforward(D: FiniteDistribution, J: FiniteMap) -> FiniteDistribution:
    """Image distribution: mass of y is the D-mass of its preimage J^-1(y)."""
    if D.n != J.n:
        raise ValueError("domain size mismatch")
    out = [0.0] * D.n
    for x, p in enumerate(D.probs):
        out[J(x)] += p
    return FiniteDistribution(tuple(out))


def is_element_symmetric(x: int, T: FinitePermutation) -> bool:
    return T(x) == x


def is_dist_symmetric(D: FiniteDistribution, T: FinitePermutation,
                      tol: float = TOLERANCE) -> bool:
    if D.n != T.n:
        raise ValueError("domain size mismatch")
    return all(abs(D.probs[x] - D.probs[T(x)]) <= tol for x in range(D.n))


# ------------------------------------------------------------ the propositions


@dataclasses.dataclass(frozen=True)
class PreservationReport:
    """Two sides of a preservation proposition plus their agreement."""

    preserves: bool
    commutes_on_scope: bool
    witnesses: tuple[str, ...] = ()

    @property
    def biconditional_holds(self) -> bool:
        return self.preserves == self.commutes_on_scope


def check_element_preservation(T: FinitePermutation, J: FiniteMap) -> PreservationReport:
    """On symmetric elements: J keeps them symmetric iff J commutes with T there.

    Side one walks the symmetric elements checking J(x) = T(J(x)) directly;
    side two compares the composed tables J o T and T o J restricted to the
    same scope.  Vacuously true on domains with no symmetric element.
    """
    scope = [x for x in range(T.n) if is_element_symmetric(x, T)]
    witnesses = []
    preserves = True
    for x in scope:
        if J(x) != T(J(x)):
            preserves = False
            witnesses.append(f"x={x}: J(x)={J(x)} not fixed by T")
    jt, tj = compose_maps(J, T), compose_maps(T, J)
    commutes_on_scope = True
    for x in scope:
        if jt(x) != tj(x):
            commutes_on_scope = False
            witnesses.append(f"x={x}: J(T(x))={jt(x)} != T(J(x))={tj(x)}")
    return PreservationReport(preserves, commutes_on_scope, tuple(witnesses))


def check_mapping_preservation(T: FinitePermutation, J: FiniteMap) -> PreservationReport:
    """J carries every T-related pair to a T-related pair iff J and T commute.

    Side one is whole-table commutativity; side two enumerates the pairs
    (x, T(x)) and checks J(T(x)) = T(J(x)) pointwise without composing tables.
    """
    commutes_everywhere = commutes(T, J)
    witnesses = []
    pairs_preserved = True
    for x_a in range(T.n):
        x_b = T(x_a)
        if J.mapping[x_b] != T(J.mapping[x_a]):
            pairs_preserved = False
            witnesses.append(
                f"pair ({x_a},{x_b}): J(x_b)={J.mapping[x_b]} != T(J(x_a))={T(J.mapping[x_a])}"
            )
    return PreservationReport(pairs_preserved, commutes_everywhere, tuple(witnesses))


@dataclasses.dataclass(frozen=True)
class DistributionReport:
    applicable: bool
    commutes: bool
    pushforward_symmetric: bool | None = None
    orbit_images_are_orbits: bool | None = None
    kernel_counts_match: bool | None = None
    reconstruction_error: float | None = None
    witnesses: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return bool(
            self.applicable
            and self.commutes
            and self.pushforward_symmetric
            and self.orbit_images_are_orbits
            and self.kernel_counts_match
            and self.reconstruction_error is not None
            and self.reconstruction_error <= TOLERANCE
        )


def check_distribution_preservation(T: FinitePermutation, J: FiniteMap,
                                    D: FiniteDistribution) -> DistributionReport:
    """For commuting J and symmetric D: the pushforward stays symmetric, J maps
    orbits onto orbits, and rebuilding the pushforward from per-orbit kernel
    multiplicities reproduces the direct computation.

    The rebuild route follows the homomorphism picture: orbit of x_i maps onto
    the orbit of J(x_i); each image element receives D(x_i) times the kernel
    count, the number of orbit members landing on J(x_i), which must equal
    |orbit| / |image orbit|.
    """
    if not (T.n == J.n == D.n):
        raise ValueError("domain size mismatch")
    if not is_dist_symmetric(D, T):
        return DistributionReport(applicable=False, commutes=commutes(T, J))
    if not commutes(T, J):
        return DistributionReport(applicable=True, commutes=False)

    direct = pushforward(D, J)
    symmetric = is_dist_symmetric(direct, T)
    decomposition = orbits(T)
    orbit_index = {}
    for idx, orbit in enumerate(decomposition.orbits):
        for member in orbit:
            orbit_index[member] = idx

    witnesses = []
    images_ok = True
    kernels_ok = True
    rebuilt = [0.0] * D.n
    for orbit in decomposition.orbits:
        generator = orbit[0]
        image_orbit = decomposition.orbits[orbit_index[J(generator)]]
        if {J(member) for member in orbit} != set(image_orbit):
            images_ok = False
            witnesses.append(f"orbit {orbit}: image {{J}}={sorted({J(m) for m in orbit})}")
            continue
        kernel_count = sum(1 for member in orbit if J(member) == J(generator))
        if kernel_count * len(image_orbit) != len(orbit):
            kernels_ok = False
            witnesses.append(
                f"orbit {orbit}: kernel {kernel_count} != {len(orbit)}/{len(image_orbit)}"
            )
        for y in image_orbit:
            rebuilt[y] += D.probs[generator] * kernel_count
    error = max(abs(a - b) for a, b in zip(rebuilt, direct.probs))
    if not symmetric:
        witnesses.append(f"pushforward {direct.probs} asymmetric under {T.mapping}")
    return DistributionReport(
        applicable=True,
        commutes=True,
        pushforward_symmetric=symmetric,
        orbit_images_are_orbits=images_ok,
        kernel_counts_match=kernels_ok,
        reconstruction_error=error,
        witnesses=tuple(witnesses),
    )


# ------------------------------------------------- accumulation and permutation


def accumulated_pushforward(D: FiniteDistribution,
                            family: list[FiniteMap]) -> FiniteDistribution:
    """Average of the pushforwards over a family of maps (uniform choice of
    which map was applied), normalized so total mass stays 1."""
    if not family:
        raise ValueError("family must be non-empty")
    out = np.zeros(D.n)
    for J in family:
        out += np.asarray(pushforward(D, J).probs)
    return FiniteDistribution(tuple(out / len(family)))


@dataclasses.dataclass(frozen=True)
class PermutedCommutativityReport:
    sigma: tuple[int, ...] | None
    accumulated_symmetric: bool | None = None

    @property
    def found(self) -> bool:
        return self.sigma is not None


def check_permuted_commutativity(T: FinitePermutation, family: list[FiniteMap],
                                 D: FiniteDistribution | None = None
                                 ) -> PermutedCommutativityReport:
    """Search for a permutation sigma of the family with T o J_j = J_sigma(j) o T.

    When such a sigma exists the family as a whole commutes with T even though
    no single member needs to, and a symmetric D has a symmetric accumulated
    pushforward; that consequence is verified when D is supplied.
    """
    if not family:
        raise ValueError("family must be non-empty")
    if len(family) > 8:
        raise ValueError("family too large for brute-force sigma search")
    lefts = [compose_maps(T, J).mapping for J in family]
    rights = [compose_maps(J, T).mapping for J in family]
    sigma = None
    for candidate in itertools.permutations(range(len(family))):
        if all(lefts[j] == rights[candidate[j]] for j in range(len(family))):
            sigma = candidate
            break
    accumulated_symmetric = None
    if sigma is not None and D is not None and is_dist_symmetric(D, T):
        accumulated_symmetric = is_dist_symmetric(accumulated_pushforward(D, family), T)
    return PermutedCommutativityReport(sigma, accumulated_symmetric)


def mod3_family() -> tuple[FinitePermutation, list[FiniteMap]]:
    """The 3-cycle with the three constant maps related by conjugation:
    T o J_k = J_(k+1 mod 3) o T, no member commuting on its own."""
    T = FinitePermutation((1, 2, 0))
    j0 = constant_map(3, 0)
    j1 = conjugate_by(T, j0)
    j2 = conjugate_by(T, j1)
    return T, [j0, j1, j2]


# --------------------------------------------------------------- witnesses


@dataclasses.dataclass(frozen=True)
class WitnessReport:
    element_without_distribution: bool
    distribution_without_element: bool
    noncommuting_family_preserves: bool
    witnesses: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (
            self.element_without_distribution
            and self.distribution_without_element
            and self.noncommuting_family_preserves
        )


def non_implication_witnesses() -> WitnessReport:
    """Concrete finite counterexamples showing the preservation notions are
    independent, plus a non-commuting family whose accumulation preserves."""
    notes = []

    # (a) two 2-orbits, J collapses one asymmetrically: no symmetric elements,
    # so element preservation is vacuous, yet the pushforward is asymmetric.
    T_a = FinitePermutation((1, 0, 3, 2))
    J_a = FiniteMap((0, 0, 2, 3))
    D_a = FiniteDistribution((0.25,) * 4)
    element_vacuous = check_element_preservation(T_a, J_a).preserves
    push_a = pushforward(D_a, J_a)
    a_ok = element_vacuous and not is_dist_symmetric(push_a, T_a)
    notes.append(f"(a) pushforward={push_a.probs}")

    # (b) swap the fixed point 2 with orbit member 0: the permuted uniform
    # distribution stays uniform, but a symmetric element maps to an
    # asymmetric one.
    T_b = FinitePermutation((1, 0, 2))
    J_b = FiniteMap((2, 1, 0))
    D_b = FiniteDistribution((1 / 3,) * 3)
    push_b = pushforward(D_b, J_b)
    element_report_b = check_element_preservation(T_b, J_b)
    b_ok = is_dist_symmetric(push_b, T_b) and not element_report_b.preserves
    notes.append(f"(b) J(2)={J_b(2)} breaks symmetry; pushforward={push_b.probs}")

    # (c) no member of the mod-3 family commutes, yet a permutation of the
    # family does, and the accumulated distribution stays symmetric.
    T_c, family = mod3_family()
    D_c = FiniteDistribution((1 / 3,) * 3)
    none_commute = not any(commutes(T_c, J) for J in family)
    permuted = check_permuted_commutativity(T_c, family, D_c)
    c_ok = bool(none_commute and permuted.found and permuted.accumulated_symmetric)
    notes.append(f"(c) sigma={permuted.sigma}")

    return WitnessReport(a_ok, b_ok, c_ok, tuple(notes))


# ------------------------------------------------------------------ generators


def random_permutation(n: int, gen: np.random.Generator) -> FinitePermutation:
    return FinitePermutation(tuple(int(v) for v in gen.permutation(n)))


def random_map(n: int, gen: np.random.Generator) -> FiniteMap:
    return FiniteMap(tuple(int(v) for v in gen.integers(0, n, size=n)))


def random_symmetric_distribution(T: FinitePermutation,
                                  gen: np.random.Generator) -> FiniteDistribution:
    """Equal mass within each orbit of T, so D(T(x)) is bitwise D(x)."""
    decomposition = orbits(T)
    weights = [int(gen.integers(0, 9)) for _ in decomposition.orbits]
    if not any(weights):
        weights[0] = 1
    total = sum(w * len(o) for w, o in zip(weights, decomposition.orbits))
    probs = [0.0] * T.n
    for weight, orbit in zip(weights, decomposition.orbits):
        for member in orbit:
            probs[member] = weight / total
    return FiniteDistribution(tuple(probs))


def random_commuting_map(T: FinitePermutation,
                         gen: np.random.Generator) -> FiniteMap:
    """Pick an image for each orbit generator whose own orbit size divides the
    source orbit size, then extend equivariantly: J(T^k g) = T^k(J(g))."""
    decomposition = orbits(T)
    position = {}
    for idx, orbit in enumerate(decomposition.orbits):
        for k, member in enumerate(orbit):
            position[member] = (idx, k)
    mapping = [0] * T.n
    for orbit in decomposition.orbits:
        size = len(orbit)
        candidates = [
            y for y in range(T.n) if size % len(decomposition.orbits[position[y][0]]) == 0
        ]
        target = candidates[int(gen.integers(0, len(candidates)))]
        target_orbit = decomposition.orbits[position[target][0]]
        target_pos = position[target][1]
        for k, member in enumerate(orbit):
            mapping[member] = target_orbit[(target_pos + k) % len(target_orbit)]
    return FiniteMap(tuple(mapping))


def corrupt_commuting_map(T: FinitePermutation, J: FiniteMap,
                          gen: np.random.Generator) -> FiniteMap:
    """Break a commuting J with a single-entry edit (negative-control helper).

    Changing only the value at a generator of a size >= 2 orbit necessarily
    destroys commutativity there.  Returns J unchanged if T is the identity,
    where every map commutes and no corruption is possible.
    """
    decomposition = orbits(T)
    big = [o for o in decomposition.orbits if len(o) >= 2]
    if not big:
        return J
    orbit = big[int(gen.integers(0, len(big)))]
    x = orbit[0]
    mapping = list(J.mapping)
    mapping[x] = (mapping[x] + 1 + int(gen.integers(0, T.n - 1))) % T.n
    if mapping[x] == J.mapping[x]:
        mapping[x] = (mapping[x] + 1) % T.n
    return FiniteMap(tuple(mapping))


# -------------------------------------------------------------- property suite


@dataclasses.dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str
    witnesses: tuple[str, ...] = ()


def run_property_suite(max_n: int = 12, trials: int = 1000, seed: int = 0,
                       inject_fault: bool = False) -> list[PropertyResult]:
    """Randomized plus fixed checks behind the verify-props command.

    inject_fault corrupts the commuting-map generator on purpose so the suite
    demonstrates it can catch a violation; a healthy run must then fail.
    """
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    gen = np.random.Generator(np.random.Philox(key=np.array(
        [seed & (2**64 - 1), 0x53594D4C], dtype=np.uint64)))
    results = []

    failures, witnesses = 0, []
    for _ in range(trials):
        n = int(gen.integers(1, max_n + 1))
        T, J = random_permutation(n, gen), random_map(n, gen)
        if not check_element_preservation(T, J).biconditional_holds:
            failures += 1
            if len(witnesses) < 3:
                witnesses.append(f"T={T.mapping} J={J.mapping}")
    results.append(PropertyResult(
        "element-symmetry preservation equivalence", failures == 0,
        f"{trials} random (T, J) pairs, n <= {max_n}", tuple(witnesses)))

    failures, witnesses = 0, []
    for _ in range(trials):
        n = int(gen.integers(1, max_n + 1))
        T, J = random_permutation(n, gen), random_map(n, gen)
        if not check_mapping_preservation(T, J).biconditional_holds:
            failures += 1
            if len(witnesses) < 3:
                witnesses.append(f"T={T.mapping} J={J.mapping}")
    results.append(PropertyResult(
        "mapping preservation equivalence", failures == 0,
        f"{trials} random (T, J) pairs, n <= {max_n}", tuple(witnesses)))

    failures, witnesses = 0, []
    for _ in range(trials):
        n = int(gen.integers(2 if inject_fault else 1, max_n + 1))
        T = random_permutation(n, gen)
        if inject_fault:
            while all(len(o) == 1 for o in orbits(T).orbits):
                T = random_permutation(n, gen)
        J = random_commuting_map(T, gen)
        if inject_fault:
            J = corrupt_commuting_map(T, J, gen)
        D = random_symmetric_distribution(T, gen)
        # generator contract first: a non-commuting J here is itself a failure
        if not commutes(T, J):
            failures += 1
            if len(witnesses) < 3:
                witnesses.append(f"generator emitted non-commuting J: T={T.mapping} J={J.mapping}")
            continue
        report = check_distribution_preservation(T, J, D)
        if not report.ok:
            failures += 1
            if len(witnesses) < 3:
                witnesses.append(
                    f"T={T.mapping} J={J.mapping} D={D.probs} -> {report.witnesses}")
    results.append(PropertyResult(
        "commuting pushforward symmetry and kernel reconstruction", failures == 0,
        f"{trials} random commuting (T, J) with symmetric D", tuple(witnesses)))

    witness_report = non_implication_witnesses()
    results.append(PropertyResult(
        "non-implication witnesses", witness_report.ok,
        "element/distribution preservation are independent; a non-commuting "
        "family can still preserve", witness_report.witnesses))

    permuted_failures, witnesses = 0, []
    T3, family3 = mod3_family()
    report3 = check_permuted_commutativity(T3, family3, FiniteDistribution((1 / 3,) * 3))
    if not (report3.sigma == (1, 2, 0) and report3.accumulated_symmetric):
        permuted_failures += 1
        witnesses.append(f"mod-3 family: sigma={report3.sigma}")
    for _ in range(max(1, trials // 10)):
        # closure under conjugation is what guarantees a sigma exists; keep n
        # small so the orbit of J under conjugation stays brute-forceable
        n = int(gen.integers(1, min(max_n, 6) + 1))
        T = random_permutation(n, gen)
        J = random_map(n, gen)
        D = random_symmetric_distribution(T, gen)
        family = [J]
        current = conjugate_by(T, J)
        while current.mapping != J.mapping:
            family.append(current)
            current = conjugate_by(T, current)
        orbit_report = check_permuted_commutativity(T, family, D)
        if not (orbit_report.found and orbit_report.accumulated_symmetric):
            permuted_failures += 1
            if len(witnesses) < 3:
                witnesses.append(f"conjugation orbit: T={T.mapping} J={J.mapping}")
    results.append(PropertyResult(
        "permuted commutativity", permuted_failures == 0,
        "mod-3 constant family plus random conjugation orbits", tuple(witnesses)))

    return results
