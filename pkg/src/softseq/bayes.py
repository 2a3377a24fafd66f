"""Conditional odds of finite events as provability in a weighted theory.

A density over finitely many outcomes becomes a theory whose atoms carry
the outcome masses (with the mix-star rule enabled); an event maps to the
left-associated soft-or over its outcomes sorted by name.  The odds of B
given A are the provability of  A |- A-and-B  at hardness 1, which lands
exactly on mass(A and B) / mass(A) per the residuation table; a density
with mass(A) = 0 yields infinity, and an empty intersection is reported
as such with value 0 (only the zero-validity proof exists).

Events are multisets of distinct atoms here; nothing guards against
interpreting the formulas over repeated outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .alethic import Hardness, Value, from_rational, parse_rational, residual
from .calculus import Theory
from .fixtures import plor_fold
from .prover import Prover, ProverOptions
from .syntax import Formula, sequent

DEFAULT_COMPLEXITY_CAP = 8  # fits events over up to four outcomes


class DensityError(ValueError):
    pass


@dataclass(frozen=True)
class Density:
    outcomes: tuple[str, ...]
    mass: tuple[tuple[str, Fraction], ...]

    @staticmethod
    def make(mass: dict[str, Fraction]) -> "Density":
        if not mass:
            raise DensityError("a density needs at least one outcome")
        total = Fraction(0)
        for name, m in mass.items():
            if m < 0:
                raise DensityError(f"outcome {name!r} has negative mass")
            total += m
        if total != 1:
            raise DensityError(f"masses sum to {total}, not 1")
        items = tuple(sorted(mass.items()))
        return Density(tuple(name for name, _ in items), items)

    def mass_of(self, name: str) -> Fraction:
        for key, m in self.mass:
            if key == name:
                return m
        raise DensityError(f"unknown outcome {name!r}")

    def event_mass(self, event: set[str]) -> Fraction:
        return sum((self.mass_of(name) for name in event), Fraction(0))


def parse_density(text: str) -> Density:
    """Density file: lines ``<outcome> = <rational>``."""
    mass: dict[str, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("=")]
        if len(parts) != 2:
            raise DensityError(f"density line {lineno}: expected '<outcome> = <mass>'")
        value = parse_rational(parts[1])
        if value is None:
            raise DensityError(f"density line {lineno}: masses must be finite")
        mass[parts[0]] = value
    return Density.make(mass)


def bayes_theory(d: Density, hardness: Hardness = Hardness.finite(1)) -> Theory:
    atoms = {name: from_rational(hardness, m) for name, m in d.mass}
    return Theory.make(atoms, mix_star=True)


def event_formula(event: set[str]) -> Formula:
    """Left-associated soft-or over the outcomes, sorted by name."""
    if not event:
        raise DensityError("the empty event has no formula")
    return plor_fold(sorted(event))


@dataclass(frozen=True)
class OddsResult:
    value: Value
    empty_intersection: bool
    nonstandard_hardness: bool


def conditional_odds(d: Density, given: set[str], event: set[str],
                     hardness: Hardness = Hardness.finite(1),
                     complexity_cap: int | None = DEFAULT_COMPLEXITY_CAP) -> OddsResult:
    """Odds of ``event`` given ``given``, computed by proof search."""
    if not given:
        raise DensityError("the conditioning event must be nonempty")
    unknown = (given | event) - set(d.outcomes)
    if unknown:
        raise DensityError(f"unknown outcomes: {sorted(unknown)}")
    theory = bayes_theory(d, hardness)
    intersection = given & event
    consequent = event_formula(intersection) if intersection else Formula("bot")
    target = sequent([event_formula(given)], [consequent])
    prover = Prover(hardness, theory, ProverOptions(complexity_cap=complexity_cap))
    value = prover.value_of(target)
    return OddsResult(value, not intersection, hardness != Hardness.finite(1))


def direct_odds_oracle(d: Density, given: set[str], event: set[str],
                       hardness: Hardness = Hardness.finite(1)) -> Value:
    """mass(given-and-event) / mass(given) through the residuation table."""
    return residual(from_rational(hardness, d.event_mass(given)),
                    from_rational(hardness, d.event_mass(given & event)))
