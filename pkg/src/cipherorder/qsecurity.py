"""Security at data complexity q: tuple actions, coset projections, orderings.

An adversary holding the images of a q-tuple p of distinct plaintexts knows
the realized permutation only up to the left coset of Stab(p) it lies in.
Projecting a cipher distribution onto those cosets yields the vector behind
both q-query metrics: NCPA advantage (variation distance of the coset masses
from uniform) and conditional guesswork (guesswork of the summed sorted
per-coset profiles).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dist import CipherDist
from .groups import GroupTable, left_cosets, stabilizer
from .majorize import MajorizationVerdict, Relation, compare
from .metrics import guesswork, variation_to_uniform

_ZERO = Fraction(0)


def distinct_tuples(m: int, q: int) -> list[tuple[int, ...]]:
    """All ordered q-tuples of distinct points of {0..m-1}, lexicographic."""
    if not 1 <= q <= m:
        raise ValueError(f"q must satisfy 1 <= q <= {m}, got {q}")
    return list(itertools.permutations(range(m), q))


def _check_tuple(p: tuple[int, ...], degree: int) -> None:
    if len(set(p)) != len(p):
        raise ValueError(f"tuple points must be distinct: {p}")
    for v in p:
        if not 0 <= v < degree:
            raise ValueError(f"point {v} out of range for degree {degree}")


@dataclass(frozen=True)
class ImageProjection:
    """A cipher distribution seen through the images of one plaintext tuple.

    ``coset_masses[i]`` is the mass on the i-th left coset of the tuple's
    stabilizer (canonical transversal order); ``coset_profiles[i]`` is that
    coset's sub-distribution sorted decreasingly.
    """

    points: tuple[int, ...]
    stabilizer: GroupTable
    coset_masses: tuple[Fraction, ...]
    coset_profiles: tuple[tuple[Fraction, ...], ...]

    def profile_sum(self) -> tuple[Fraction, ...]:
        """Componentwise sum of the sorted per-coset profiles (a probability
        vector; its guesswork is the conditional guesswork)."""
        size = len(self.coset_profiles[0])
        return tuple(
            sum((prof[i] for prof in self.coset_profiles), _ZERO)
            for i in range(size)
        )


def project(x: CipherDist, p: tuple[int, ...]) -> ImageProjection:
    """Project a distribution onto the left cosets of Stab(p)."""
    group = x.group
    _check_tuple(p, group.degree)
    stab = stabilizer(group, p)
    cosets = left_cosets(group, stab)
    masses = []
    profiles = []
    for block in cosets.blocks:
        sub = sorted((x.mass[i] for i in block), reverse=True)
        masses.append(sum(sub, _ZERO))
        profiles.append(tuple(sub))
    return ImageProjection(tuple(p), stab, tuple(masses), tuple(profiles))


def ncpa_advantage(x: CipherDist, p: tuple[int, ...]) -> Fraction:
    """Nonadaptive chosen-plaintext advantage for the tuple p: the variation
    distance of the coset-mass vector from uniform over the coset space."""
    return variation_to_uniform(project(x, p).coset_masses)


def max_ncpa_advantage(
    x: CipherDist, q: int
) -> tuple[Fraction, tuple[int, ...]]:
    """Maximum advantage over all distinct q-tuples, with the
    lexicographically first maximizing tuple."""
    best = None
    witness = None
    for p in distinct_tuples(x.group.degree, q):
        adv = ncpa_advantage(x, p)
        if best is None or adv > best:
            best, witness = adv, p
    assert best is not None and witness is not None
    return best, witness


def conditional_guesswork(x: CipherDist, p: tuple[int, ...]) -> Fraction:
    """Expected optimal guesses for the realized permutation given the
    images of p: the guesswork of the summed sorted coset profiles."""
    return guesswork(project(x, p).profile_sum())


def conditional_guesswork_oracle(x: CipherDist, p: tuple[int, ...]) -> Fraction:
    """Brute-force reference: group permutations by their actual image of p,
    sort each group's posterior decreasingly, and sum the per-ciphertext
    optimal guess counts weighted by the ciphertext probability.

    Independent of the coset machinery; must agree with
    ``conditional_guesswork`` exactly.
    """
    group = x.group
    _check_tuple(p, group.degree)
    pt = tuple(p)
    by_image: dict[tuple[int, ...], list[Fraction]] = {}
    for i, g in enumerate(group.elements):
        by_image.setdefault(g.apply(pt), []).append(x.mass[i])
    total = _ZERO
    for masses in by_image.values():
        prob = sum(masses, _ZERO)
        if prob == 0:
            continue
        posterior = sorted((m / prob for m in masses), reverse=True)
        expected = sum(
            (Fraction(i) * v for i, v in enumerate(posterior, start=1)), _ZERO
        )
        total += prob * expected
    return total


@dataclass(frozen=True)
class TupleComparison:
    """Both ciphers' q-query metrics for one plaintext tuple."""

    points: tuple[int, ...]
    advantage_left: Fraction
    advantage_right: Fraction
    guesswork_left: Fraction
    guesswork_right: Fraction
    coset_verdict: MajorizationVerdict
    profile_verdict: MajorizationVerdict


@dataclass(frozen=True)
class LevelComparison:
    """All tuple comparisons at one data complexity q, with aggregates."""

    q: int
    tuples: tuple[TupleComparison, ...]
    max_advantage_left: Fraction
    max_advantage_left_tuple: tuple[int, ...]
    max_advantage_right: Fraction
    max_advantage_right_tuple: tuple[int, ...]
    min_guesswork_left: Fraction
    min_guesswork_left_tuple: tuple[int, ...]
    min_guesswork_right: Fraction
    min_guesswork_right_tuple: tuple[int, ...]
    verdict: str


@dataclass(frozen=True)
class ComparisonReport:
    """Per-q metric values and ordering verdicts for a pair of ciphers.

    Verdict strings: ``left-no-less-secure`` means every metric at every
    tuple favors (or ties) the left cipher; ``equivalent`` means everything
    ties; ``mixed`` means the metrics disagree in direction.
    """

    levels: tuple[LevelComparison, ...]
    overall: str


_LEFT, _RIGHT, _EQUAL, _MIXED = (
    "left-no-less-secure",
    "right-no-less-secure",
    "equivalent",
    "mixed",
)


def _direction_of_verdict(v: MajorizationVerdict) -> str:
    if v.relation is Relation.EQUAL_UP_TO_PERMUTATION:
        return _EQUAL
    if v.is_strictly_below:
        return _LEFT
    if v.is_strictly_above:
        return _RIGHT
    return _MIXED


def _combine(directions: Sequence[str]) -> str:
    seen = set(directions)
    if _MIXED in seen or (_LEFT in seen and _RIGHT in seen):
        return _MIXED
    if _LEFT in seen:
        return _LEFT
    if _RIGHT in seen:
        return _RIGHT
    return _EQUAL


def _tuple_directions(tc: TupleComparison) -> list[str]:
    adv = (
        _EQUAL
        if tc.advantage_left == tc.advantage_right
        else (_LEFT if tc.advantage_left < tc.advantage_right else _RIGHT)
    )
    gw = (
        _EQUAL
        if tc.guesswork_left == tc.guesswork_right
        else (_LEFT if tc.guesswork_left > tc.guesswork_right else _RIGHT)
    )
    return [adv, gw, _direction_of_verdict(tc.coset_verdict),
            _direction_of_verdict(tc.profile_verdict)]


def _compare_at_tuple(
    left: CipherDist, right: CipherDist, p: tuple[int, ...]
) -> TupleComparison:
    proj_l = project(left, p)
    proj_r = project(right, p)
    return TupleComparison(
        points=tuple(p),
        advantage_left=variation_to_uniform(proj_l.coset_masses),
        advantage_right=variation_to_uniform(proj_r.coset_masses),
        guesswork_left=guesswork(proj_l.profile_sum()),
        guesswork_right=guesswork(proj_r.profile_sum()),
        coset_verdict=compare(proj_l.coset_masses, proj_r.coset_masses),
        profile_verdict=compare(proj_l.profile_sum(), proj_r.profile_sum()),
    )


def compare_q(left: CipherDist, right: CipherDist, q_max: int) -> ComparisonReport:
    """Compare two ciphers on the same group at every q from 0 to q_max.

    q = 0 is the zero-data-complexity row: the projection through the empty
    tuple, whose coset space is a single point and whose profile sum is the
    raw distribution.  Results are deterministic: tuples are visited in
    lexicographic order and aggregates keep the first extremal witness.
    """
    if left.group != right.group:
        raise ValueError("ciphers live on different groups")
    m = left.group.degree
    if q_max > m:
        raise ValueError(f"q_max {q_max} exceeds message count {m}")
    levels = []
    for q in range(q_max + 1):
        tuples = [()] if q == 0 else distinct_tuples(m, q)
        rows = tuple(_compare_at_tuple(left, right, p) for p in tuples)
        max_adv_l = max(rows, key=lambda r: r.advantage_left)
        max_adv_r = max(rows, key=lambda r: r.advantage_right)
        min_gw_l = min(rows, key=lambda r: r.guesswork_left)
        min_gw_r = min(rows, key=lambda r: r.guesswork_right)
        verdict = _combine([d for row in rows for d in _tuple_directions(row)])
        levels.append(
            LevelComparison(
                q=q,
                tuples=rows,
                max_advantage_left=max_adv_l.advantage_left,
                max_advantage_left_tuple=max_adv_l.points,
                max_advantage_right=max_adv_r.advantage_right,
                max_advantage_right_tuple=max_adv_r.points,
                min_guesswork_left=min_gw_l.guesswork_left,
                min_guesswork_left_tuple=min_gw_l.points,
                min_guesswork_right=min_gw_r.guesswork_right,
                min_guesswork_right_tuple=min_gw_r.points,
                verdict=verdict,
            )
        )
    overall = _combine([lvl.verdict for lvl in levels])
    return ComparisonReport(tuple(levels), overall)
