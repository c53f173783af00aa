"""Brute-force ground truth for contextuality: enumerate every global
assignment compatible with all context supports, and classify the model.

The search backtracks over measurements in canonical order, pruning as soon
as a fully assigned context falls outside its support.  The corpus is tiny,
so clarity wins over cleverness; every returned global section is re-checked
against all supports independently of the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import SupportModel
from .scenario import Context, Section, restrict_section


class Verdict(Enum):
    NON_CONTEXTUAL = "non_contextual_possibilistic"
    CONTEXTUAL = "contextual"
    STRONGLY_CONTEXTUAL = "strongly_contextual"


@dataclass(frozen=True)
class Classification:
    """Model verdict plus the full per-support-section extendability map."""

    verdict: Verdict
    extendable: dict[tuple[int, Section], bool]
    global_sections: tuple[Section, ...]


def global_sections(model: SupportModel) -> list[Section]:
    """All assignments on the full measurement set whose restriction to every
    context lies in that context's support, in canonical order."""
    scenario = model.scenario
    measurements = scenario.measurements
    position = {m: k for k, m in enumerate(measurements)}
    # Contexts become checkable once their last measurement is assigned.
    ready: list[list[Context]] = [[] for _ in measurements]
    for ctx in scenario.contexts:
        ready[max(position[m] for m in ctx.members)].append(ctx)

    found: list[Section] = []
    values: list[str] = []

    def consistent(ctx: Context) -> bool:
        restricted = Section(ctx.members, tuple(values[position[m]] for m in ctx.members))
        return restricted in model.supports[ctx.index]

    def extend(k: int) -> None:
        if k == len(measurements):
            found.append(Section(measurements, tuple(values)))
            return
        for outcome in scenario.outcomes:
            values.append(outcome)
            if all(consistent(ctx) for ctx in ready[k]):
                extend(k + 1)
            values.pop()

    extend(0)

    for g in found:  # soundness re-check, independent of the search
        for ctx in scenario.contexts:
            if restrict_section(g, ctx.members) not in model.supports[ctx.index]:
                raise RuntimeError(f"search produced a non-global section {g}")
    return found


def is_extendable_at(model: SupportModel, context: Context, section: Section) -> bool:
    """True iff some global section restricts to `section` on the context."""
    if section not in model.supports[context.index]:
        raise ValueError(
            f"{section.outcome_string()} is not in the support of context {context.index}"
        )
    return any(
        restrict_section(g, context.members) == section for g in global_sections(model)
    )


def classify(model: SupportModel) -> Classification:
    """Verdict from the full extendability map.

    All support sections extendable: not contextual at the possibilistic
    level.  None extendable (equivalently: no global section): strongly
    contextual.  Otherwise: contextual.
    """
    sections = global_sections(model)
    flags: dict[tuple[int, Section], bool] = {}
    for ctx in model.scenario.contexts:
        restrictions = {restrict_section(g, ctx.members) for g in sections}
        for s in model.support_list(ctx.index):
            flags[(ctx.index, s)] = s in restrictions
    if all(flags.values()):
        verdict = Verdict.NON_CONTEXTUAL
    elif not any(flags.values()):
        verdict = Verdict.STRONGLY_CONTEXTUAL
    else:
        verdict = Verdict.CONTEXTUAL
    return Classification(verdict, flags, tuple(sections))
