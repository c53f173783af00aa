"""Shared test machinery: independent oracles and random model generators.

The oracles here deliberately avoid the library's search and solver paths:
global sections are enumerated by brute force over the full assignment
space, compatibility of combination families is checked pairwise and
directly, and connectivity is re-derived with union-find.
"""

from __future__ import annotations

import random
from itertools import product

from contextuality import (
    Ring,
    Scenario,
    Section,
    SupportModel,
    build_scenario,
    combination,
    enumerate_sections,
    restrict_combination,
    restrict_section,
    support_at,
    support_model,
    support_violations,
    zero_cochain,
)
from contextuality.cohomology import Cochain, cochain
from contextuality.scenario import nerve

BINARY = ("0", "1")


# ---------------------------------------------------------------------------
# Independent oracles


def exhaustive_global_sections(model: SupportModel) -> set[Section]:
    """Every global assignment compatible with all supports, by full product
    enumeration (no backtracking, no pruning)."""
    scenario = model.scenario
    out = set()
    for values in product(scenario.outcomes, repeat=len(scenario.measurements)):
        g = Section(scenario.measurements, values)
        if all(
            restrict_section(g, ctx.members) in model.supports[ctx.index]
            for ctx in scenario.contexts
        ):
            out.add(g)
    return out


def pairwise_compatible(omega: Cochain) -> bool:
    """Direct check that a 0-cochain's family agrees on every overlap."""
    scenario = omega.model.scenario
    n = len(scenario.contexts)
    for i in range(n):
        for j in range(i + 1, n):
            common = set(scenario.contexts[i].members) & set(scenario.contexts[j].members)
            if not common:
                continue
            left = restrict_combination(omega.values[(i,)], common)
            right = restrict_combination(omega.values[(j,)], common)
            if left != right:
                return False
    return True


def connected_by_union_find(scenario: Scenario) -> bool:
    n = len(scenario.contexts)
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in range(n):
        for j in range(i + 1, n):
            if set(scenario.contexts[i].members) & set(scenario.contexts[j].members):
                parent[find(i)] = find(j)
    return len({find(v) for v in range(n)}) == 1


# ---------------------------------------------------------------------------
# Random generators


def random_scenario(
    rng: random.Random,
    max_measurements: int = 6,
    max_contexts: int = 5,
    antichain: bool = False,
) -> Scenario:
    """A random binary-outcome scenario.  The measurement set is shrunk to
    the union of the generated contexts so the cover property always holds."""
    n_meas = rng.randint(2, max_measurements)
    labels = [f"m{i}" for i in range(n_meas)]
    n_ctx = rng.randint(1, max_contexts)
    contexts: list[tuple[str, ...]] = []
    attempts = 0
    while len(contexts) < n_ctx and attempts < 60:
        attempts += 1
        size = rng.randint(1, min(4, n_meas))
        members = tuple(sorted(rng.sample(labels, size)))
        if members in contexts:
            continue
        if antichain and any(
            set(members) <= set(c) or set(c) <= set(members) for c in contexts
        ):
            continue
        contexts.append(members)
    covered = sorted({m for ctx in contexts for m in ctx})
    return build_scenario(covered, BINARY, contexts)


def random_image_support(rng: random.Random, scenario: Scenario) -> SupportModel:
    """Supports generated as restrictions of a random set of global
    assignments: always overlap-consistent, every support section extends."""
    space = list(product(scenario.outcomes, repeat=len(scenario.measurements)))
    count = rng.randint(1, min(6, len(space)))
    chosen = [Section(scenario.measurements, v) for v in rng.sample(space, count)]
    supports = [
        {restrict_section(g, ctx.members) for g in chosen} for ctx in scenario.contexts
    ]
    return support_model(scenario, supports)


def random_any_support(rng: random.Random, scenario: Scenario) -> SupportModel:
    """Arbitrary nonempty supports; overlap consistency not guaranteed."""
    supports = []
    for ctx in scenario.contexts:
        sections = enumerate_sections(scenario, ctx.members)
        count = rng.randint(1, min(8, len(sections)))
        supports.append(set(rng.sample(sections, count)))
    return support_model(scenario, supports)


def random_consistent_support(rng: random.Random) -> SupportModel:
    """A consistent random model: restriction images of global sets on any
    cover, or one-hot / parity supports on antichain covers (the latter two
    are frequently contextual)."""
    from contextuality import ks_support, parity_support

    kind = rng.randrange(3)
    if kind == 0:
        scenario = random_scenario(rng)
        return random_image_support(rng, scenario)
    scenario = random_scenario(rng, antichain=True)
    if kind == 1:
        model = ks_support(scenario)
    else:
        model = parity_support(
            scenario, [rng.randint(0, 1) for _ in scenario.contexts]
        )
    assert support_violations(model) == []
    return model


def random_cochain(rng: random.Random, model: SupportModel, ring: Ring, degree: int):
    """Random cochain with coefficients drawn on the support bases."""
    values = {}
    for simplex in nerve(model.scenario, degree)[degree]:
        coeffs = {}
        for section in support_at(model, simplex.carrier):
            c = rng.randint(0, 1) if ring is Ring.Z2 else rng.randint(-2, 2)
            if c:
                coeffs[section] = c
        values[simplex.vertices] = combination(ring, simplex.carrier, coeffs)
    return cochain(model, ring, degree, values)


def compatible_cochain(rng: random.Random, model: SupportModel, ring: Ring):
    """A pairwise-compatible 0-cochain: a random combination of restrictions
    of global assignments (any assignments; restriction commutes with
    overlaps, so compatibility is automatic).  Only valid as a cochain when
    the restrictions stay inside the supports, so use image-type models."""
    scenario = model.scenario
    space = list(product(scenario.outcomes, repeat=len(scenario.measurements)))
    chosen = []
    for values in space:
        g = Section(scenario.measurements, values)
        if all(
            restrict_section(g, ctx.members) in model.supports[ctx.index]
            for ctx in scenario.contexts
        ):
            chosen.append(g)
    if not chosen:
        return zero_cochain(model, ring, 0)
    weights = {
        g: (rng.randint(0, 1) if ring is Ring.Z2 else rng.randint(-2, 2)) for g in chosen
    }
    values = {}
    for ctx in scenario.contexts:
        coeffs: dict[Section, int] = {}
        for g, w in weights.items():
            if not w:
                continue
            r = restrict_section(g, ctx.members)
            coeffs[r] = coeffs.get(r, 0) + w
        values[(ctx.index,)] = combination(ring, ctx.members, coeffs)
    return cochain(model, ring, 0, values)


def sections_of(model: SupportModel) -> list[tuple[int, Section]]:
    out = []
    for ctx in model.scenario.contexts:
        for s in model.support_list(ctx.index):
            out.append((ctx.index, s))
    return out


def section(domain: tuple[str, ...] | list[str], text: str) -> Section:
    return Section(tuple(domain), tuple(text.split(",")))
