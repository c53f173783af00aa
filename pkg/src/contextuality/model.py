"""Empirical models (exact-rational probability tables per context) and
possibilistic support models, with no-signalling and overlap-consistency
checking and generators for one-hot and parity supports.

All probabilities are `fractions.Fraction`; nothing in this module touches
floating point, so marginal comparisons are exact equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scenario import (
    Scenario,
    Section,
    canonical_subset,
    enumerate_sections,
    restrict_section,
)


@dataclass(frozen=True)
class SignallingViolation:
    """A context pair whose marginals disagree at one restricted section."""

    first: int
    second: int
    section: Section
    first_marginal: Fraction
    second_marginal: Fraction


@dataclass(frozen=True)
class SupportViolation:
    """A restricted section possible in one context of a pair but not the other."""

    first: int
    second: int
    section: Section
    present_in: int


class SignallingError(ValueError):
    """A model failed marginal compatibility (probabilistic or possibilistic)."""

    def __init__(self, message: str, violations: Sequence = ()):  # noqa: ANN001
        super().__init__(message)
        self.violations = tuple(violations)


@dataclass(frozen=True)
class EmpiricalModel:
    """Per-context probability tables over the sections of each context."""

    scenario: Scenario
    tables: tuple[dict[Section, Fraction], ...]


@dataclass(frozen=True)
class SupportModel:
    """Per-context sets of possible sections."""

    scenario: Scenario
    supports: tuple[frozenset[Section], ...]

    def support_list(self, index: int) -> list[Section]:
        """Support of one context in canonical section order."""
        members = self.scenario.contexts[index].members
        return [s for s in enumerate_sections(self.scenario, members) if s in self.supports[index]]


def empirical_model(
    scenario: Scenario,
    tables: Sequence[Mapping[Section, Fraction | int]],
) -> EmpiricalModel:
    """Validate probability tables: keys within E(C), values nonnegative,
    sums exactly 1.  Missing sections are filled with probability 0."""
    if len(tables) != len(scenario.contexts):
        raise ValueError(
            f"expected {len(scenario.contexts)} tables, got {len(tables)}"
        )
    full: list[dict[Section, Fraction]] = []
    for ctx, table in zip(scenario.contexts, tables):
        sections = enumerate_sections(scenario, ctx.members)
        allowed = set(sections)
        for key in table:
            if key not in allowed:
                raise ValueError(
                    f"context {ctx.index}: {key} is not a section of {ctx.members}"
                )
        filled = {}
        for s in sections:
            p = Fraction(table.get(s, 0))
            if p < 0:
                raise ValueError(
                    f"context {ctx.index}: negative probability {p} at {s.outcome_string()}"
                )
            filled[s] = p
        total = sum(filled.values())
        if total != 1:
            raise ValueError(f"context {ctx.index}: probabilities sum to {total}, expected 1")
        full.append(filled)
    return EmpiricalModel(scenario, tuple(full))


def support_model(
    scenario: Scenario, supports: Sequence[Iterable[Section]]
) -> SupportModel:
    """Validate per-context support sets: nonempty subsets of E(C)."""
    if len(supports) != len(scenario.contexts):
        raise ValueError(
            f"expected {len(scenario.contexts)} support sets, got {len(supports)}"
        )
    frozen: list[frozenset[Section]] = []
    for ctx, support in zip(scenario.contexts, supports):
        allowed = set(enumerate_sections(scenario, ctx.members))
        sections = frozenset(support)
        if not sections:
            raise ValueError(f"context {ctx.index}: support must be nonempty")
        for s in sections:
            if s not in allowed:
                raise ValueError(
                    f"context {ctx.index}: {s} is not a section of {ctx.members}"
                )
        frozen.append(sections)
    return SupportModel(scenario, tuple(frozen))


def marginalize(
    table: Mapping[Section, Fraction], target: Iterable[str]
) -> dict[Section, Fraction]:
    """Marginal of a distribution on E(U') to a subset U: sum over fibers."""
    keys = list(table)
    if not keys:
        raise ValueError("cannot marginalize an empty table")
    wanted = set(target)
    if not wanted <= set(keys[0].domain):
        raise ValueError(
            f"target {sorted(wanted)} is not a subset of the table domain {keys[0].domain}"
        )
    out: dict[Section, Fraction] = {}
    for section, p in table.items():
        reduced = restrict_section(section, wanted)
        out[reduced] = out.get(reduced, Fraction(0)) + p
    return out


def check_no_signalling(model: EmpiricalModel) -> list[SignallingViolation]:
    """Marginal disagreements across intersecting context pairs, one
    violation per disagreeing pair (at the first restricted section where
    the marginals differ, in canonical order).

    Empty result means the model's tables form a compatible family.
    """
    scenario = model.scenario
    violations: list[SignallingViolation] = []
    n = len(scenario.contexts)
    for i in range(n):
        for j in range(i + 1, n):
            common = set(scenario.contexts[i].members) & set(scenario.contexts[j].members)
            if not common:
                continue
            target = canonical_subset(scenario, common)
            left = marginalize(model.tables[i], target)
            right = marginalize(model.tables[j], target)
            for section in enumerate_sections(scenario, target):
                a = left.get(section, Fraction(0))
                b = right.get(section, Fraction(0))
                if a != b:
                    violations.append(SignallingViolation(i, j, section, a, b))
                    break
    return violations


def support_of(model: EmpiricalModel) -> SupportModel:
    """Support sets of a no-signalling model; signalling models are rejected
    because their restricted supports would depend on the context chosen."""
    violations = check_no_signalling(model)
    if violations:
        raise SignallingError(
            f"model is signalling on {len(violations)} context pair(s)", violations
        )
    supports = [
        frozenset(s for s, p in table.items() if p != 0) for table in model.tables
    ]
    return support_model(model.scenario, supports)


def support_violations(model: SupportModel) -> list[SupportViolation]:
    """Overlap-consistency failures of a support model.

    For each intersecting context pair, the two sets of restricted possible
    sections must coincide; any one-sided section is reported.
    """
    scenario = model.scenario
    out: list[SupportViolation] = []
    n = len(scenario.contexts)
    for i in range(n):
        for j in range(i + 1, n):
            common = set(scenario.contexts[i].members) & set(scenario.contexts[j].members)
            if not common:
                continue
            target = canonical_subset(scenario, common)
            left = {restrict_section(s, target) for s in model.supports[i]}
            right = {restrict_section(s, target) for s in model.supports[j]}
            for section in enumerate_sections(scenario, target):
                if section in left and section not in right:
                    out.append(SupportViolation(i, j, section, i))
                elif section in right and section not in left:
                    out.append(SupportViolation(i, j, section, j))
    return out


def _require_binary(scenario: Scenario) -> None:
    if set(scenario.outcomes) != {"0", "1"}:
        raise ValueError(f'outcomes must be exactly "0" and "1", got {scenario.outcomes}')


def ks_support(scenario: Scenario) -> SupportModel:
    """One-hot supports: per context, the sections assigning 1 to exactly one
    measurement and 0 to the rest."""
    _require_binary(scenario)
    supports = []
    for ctx in scenario.contexts:
        sections = {
            Section(ctx.members, tuple("1" if m == chosen else "0" for m in ctx.members))
            for chosen in ctx.members
        }
        supports.append(sections)
    return support_model(scenario, supports)


def parity_support(scenario: Scenario, parities: Sequence[int]) -> SupportModel:
    """Per-context parity supports: sections whose number of 1-outcomes is
    odd where the context's bit is 1, even where it is 0."""
    _require_binary(scenario)
    if len(parities) != len(scenario.contexts):
        raise ValueError(
            f"expected {len(scenario.contexts)} parity bits, got {len(parities)}"
        )
    supports = []
    for ctx, bit in zip(scenario.contexts, parities):
        if bit not in (0, 1):
            raise ValueError(f"parity bit must be 0 or 1, got {bit!r}")
        supports.append(
            {
                s
                for s in enumerate_sections(scenario, ctx.members)
                if s.values.count("1") % 2 == bit
            }
        )
    return support_model(scenario, supports)


def assignment_count(scenario: Scenario) -> int:
    """|O| ** |X|, the size of the global assignment space."""
    return len(scenario.outcomes) ** len(scenario.measurements)
