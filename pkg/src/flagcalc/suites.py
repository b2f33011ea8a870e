"""Built-in brute-force property suites.

Each suite sweeps one family of algebraic laws over a small exhaustive or
seeded universe and reports the number of checks performed plus any
counterexamples found.  The CLI exposes them through ``check <suite|all>``;
they use fixed internal generator sets and seeds, so their output is
deterministic regardless of session state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Callable, Sequence

from . import abelian, plane, trees, words
from .words import MINUS, PLUS, GeneratorSet

_SIGNS = (PLUS, MINUS)
_SEED = 514


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def tick(self, ok: bool, detail: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(detail)


def involution_suite() -> SuiteResult:
    """Involution is an anti-automorphism of order two; fibers are classes."""
    result = SuiteResult("involution")
    gens = GeneratorSet.of("a", "b", "c")
    universe = list(words.iter_words(gens, 4))
    for w in universe:
        result.tick(w.involution().involution() == w, f"double involution moved {w!r}")
        result.tick(
            words.class_of(w) == words.class_of(w.involution()),
            f"fiber of {w!r} split",
        )
    for u in universe:
        for v in universe:
            if len(u) + len(v) > 4:
                continue
            result.tick(
                u.concat(v).involution() == v.involution().concat(u.involution()),
                f"anti-automorphism failed on {u!r} * {v!r}",
            )
    return result


def laws_suite() -> SuiteResult:
    """The four pairing commutation identities over all generator pairs."""
    result = SuiteResult("laws")
    gens = GeneratorSet.of("a", "b", "c", "d")
    classes = [
        words.class_of(words.parse_word(f"{name}+", gens)) for name in gens.names
    ]
    for a in classes:
        for b in classes:
            for sigma in _SIGNS:
                for tau in _SIGNS:
                    result.tick(
                        words.check_commutation_law(a, sigma, tau, b),
                        f"law broke at ({a}, {words.sign_char(sigma)}, "
                        f"{words.sign_char(tau)}, {b})",
                    )
    return result


def trees_suite() -> SuiteResult:
    """Flip realizes the involution; word round-trips; orbits stay in class."""
    result = SuiteResult("trees")
    gens = GeneratorSet.of("a", "b")
    for size in range(2, 6):
        for tree in trees.all_trees(size, len(gens)):
            flipped = trees._eval(trees.flip(tree), gens)
            straight = trees._eval(tree, gens)
            result.tick(
                flipped == straight.involution(),
                f"flip mismatch on a {size}-leaf tree",
            )
    for w in words.iter_words(gens, 5):
        if len(w) == 0:
            continue
        result.tick(
            trees.eval_tree(trees.word_to_tree(w), gens) == w,
            f"round trip moved {w!r}",
        )
    visited: set[trees.RootedPresentation] = set()
    for size in range(1, 5):
        for rooted in trees.iter_rooted(size, len(gens)):
            if rooted in visited:
                continue
            orbit = trees.move_closure(rooted)
            visited.update(orbit)
            cls = words.class_of(trees.eval_tree(rooted, gens))
            result.tick(
                all(
                    words.class_of(trees.eval_tree(member, gens)) == cls
                    for member in orbit
                ),
                f"orbit of a {size}-leaf presentation left its class",
            )
    return result


def assoc_suite() -> SuiteResult:
    """Pair-based triple products agree as words for all generator triples."""
    result = SuiteResult("assoc")
    gens = GeneratorSet.of("a", "b", "c")
    classes = [
        words.class_of(words.parse_word(f"{name}+", gens)) for name in gens.names
    ]

    def keep_product(x: words.PresentationClass, y: words.PresentationClass):
        return words.PresentationClass.from_canonical(words.pair(x, PLUS, MINUS, y))

    for a in classes:
        for b in classes:
            for c in classes:
                left = words.pair(keep_product(a, b), PLUS, MINUS, c)
                right = words.pair(a, PLUS, MINUS, keep_product(b, c))
                result.tick(
                    left == right,
                    f"triple product disagreed at ({a}, {b}, {c})",
                )
    return result


def monoid_suite() -> SuiteResult:
    """Cancellation fails wordwise but succeeds in the abelian shadow."""
    result = SuiteResult("monoid")
    gens = GeneratorSet.of("a", "b", "c")
    for length in range(1, 4):
        for w in words.words_of_length(gens, length):
            back_and_forth = w.concat(w.involution())
            result.tick(
                len(back_and_forth) > 0,
                f"{w!r} cancelled against its involution",
            )
            result.tick(
                abelian.abelianize(back_and_forth).is_zero,
                f"{w!r} * involution did not abelianize to zero",
            )
    return result


def _exact_member(rows: Sequence[Sequence[int]], vec: Sequence[int]) -> bool | None:
    """Decide membership in the integer row span by rational elimination.

    Solves ``y * rows = vec`` over the rationals.  With independent rows the
    preimage is unique, so membership is exactly integrality of the solution.
    Returns None when the rows are dependent and the verdict is ambiguous.
    """
    k = len(rows)
    dim = len(vec)
    aug = [
        [Fraction(rows[i][j]) for i in range(k)] + [Fraction(vec[j])]
        for j in range(dim)
    ]
    rank = 0
    for col in range(k):
        pivot_row = next((j for j in range(rank, dim) if aug[j][col]), None)
        if pivot_row is None:
            continue
        aug[rank], aug[pivot_row] = aug[pivot_row], aug[rank]
        scale = aug[rank][col]
        aug[rank] = [x / scale for x in aug[rank]]
        for j in range(dim):
            if j != rank and aug[j][col]:
                factor = aug[j][col]
                aug[j] = [x - factor * y for x, y in zip(aug[j], aug[rank])]
        rank += 1
        if rank == dim:
            break
    if any(aug[j][k] for j in range(rank, dim)):
        return False
    if rank < k:
        return None
    return all(aug[i][k].denominator == 1 for i in range(k))


def homology_suite() -> SuiteResult:
    """Additivity of the tower maps plus lattice reduction against brute force."""
    result = SuiteResult("homology")
    gens = GeneratorSet.of("a", "b")
    universe = list(words.iter_words(gens, 3))
    lattice = abelian.RelationLattice.from_rows([[2, 0]])
    for u in universe:
        for v in universe:
            uv = u.concat(v)
            result.tick(
                abelian.multiset_quotient(uv)
                == abelian.multiset_quotient(u) + abelian.multiset_quotient(v),
                f"multiset additivity failed on {u!r}, {v!r}",
            )
            result.tick(
                abelian.abelianize(uv)
                == abelian.abelianize(u) + abelian.abelianize(v),
                f"abelianize additivity failed on {u!r}, {v!r}",
            )
            result.tick(
                abelian.diagram_check(u, v, lattice),
                f"diagram check failed on {u!r}, {v!r}",
            )
    rng = Random(_SEED)
    zero = (0, 0, 0)
    for trial in range(100):
        rows = [
            [rng.randint(-3, 3) for _ in range(3)]
            for _ in range(rng.randint(1, 3))
        ]
        lat = abelian.RelationLattice.from_rows(rows, dim=3)
        members = [
            tuple(
                sum(c * row[j] for c, row in zip(coeffs, rows)) for j in range(3)
            )
            for coeffs in (
                [rng.randint(-9, 9) for _ in rows],
                [rng.randint(-9, 9) for _ in rows],
            )
        ]
        others = [tuple(rng.randint(-6, 6) for _ in range(3)) for _ in range(3)]
        for vec in members:
            result.tick(
                lat.contains(vec),
                f"built member rejected at trial {trial}: {vec}",
            )
            result.tick(
                lat.reduce(vec) == zero,
                f"member not reduced to zero at trial {trial}: {vec}",
            )
        for vec in others:
            verdict = _exact_member(rows, vec)
            if verdict is None:
                continue
            result.tick(
                lat.contains(vec) == verdict,
                f"membership mismatch at trial {trial} for {vec}",
            )
            if not verdict:
                result.tick(
                    lat.reduce(vec) != zero,
                    f"non-member reduced to zero at trial {trial}: {vec}",
                )
        for vec in members + others:
            reduced = lat.reduce(vec)
            result.tick(
                lat.reduce(reduced) == reduced,
                f"reduction not idempotent at trial {trial} for {vec}",
            )
            for row in rows:
                shifted = tuple(a + b for a, b in zip(vec, row))
                result.tick(
                    lat.reduce(shifted) == reduced,
                    f"reduction not shift-invariant at trial {trial} for {vec}",
                )
    return result


def oracle_suite() -> SuiteResult:
    """Exact-geometry sweeps: group law, signed addition, crossing words."""
    result = SuiteResult("oracle")
    one = plane.PuncturedPlane((plane.Point.of(0, 0),))
    report = plane.verify_group_law(one, samples=50, seed=_SEED)
    for name, count in report.counts:
        result.checks += count
    for failure in report.failures:
        result.failures.append(f"group law [{failure.check}]: {failure.detail}")

    loops = plane.sample_loops(one, 100, _SEED + 1)
    origin = one.punctures[0]
    for i in range(50):
        l1, l2 = loops[2 * i], loops[2 * i + 1]
        w1 = plane.winding_number(l1, origin)
        w2 = plane.winding_number(l2, origin)
        for sigma in _SIGNS:
            for tau in _SIGNS:
                total = plane.winding_number(
                    plane.connected_sum_auto(l1, sigma, tau, l2, one), origin
                )
                result.tick(
                    total == sigma * w1 - tau * w2,
                    f"signed addition failed on pair {i} at "
                    f"({words.sign_char(sigma)},{words.sign_char(tau)})",
                )

    two = plane.PuncturedPlane((plane.Point.of(0, 0), plane.Point.of(10, 0)))
    pairs = plane.sample_loops(two, 100, _SEED + 2)
    base = plane.DEFAULT_BASE_POINTS[0]
    for i in range(50):
        l1, l2 = pairs[2 * i], pairs[2 * i + 1]
        n1 = plane.normalize_flag(l1, base, two)
        n2 = plane.normalize_flag(l2, base, two)
        summed = plane.connected_sum(l1, PLUS, MINUS, l2, base, two)
        result.tick(
            plane.crossing_word(summed, two)
            == plane.crossing_word(n1, two) * plane.crossing_word(n2, two),
            f"crossing word of pair {i} is not the reduced product",
        )
        result.tick(
            plane.crossing_word(summed, two).exponent_sums(2)
            == plane.winding_profile(summed, two),
            f"crossing exponents disagree with windings on pair {i}",
        )
    return result


SUITES: dict[str, Callable[[], SuiteResult]] = {
    "involution": involution_suite,
    "laws": laws_suite,
    "trees": trees_suite,
    "assoc": assoc_suite,
    "monoid": monoid_suite,
    "homology": homology_suite,
    "oracle": oracle_suite,
}


def run_suites(names: list[str]) -> list[SuiteResult]:
    return [SUITES[name]() for name in names]
