"""Bundled example models.

The corpus ships the standard small models whose analysis this package
reproduces: the Hardy support, the PR box, GHZ, the one-hot triangle, the
18-vector Kochen-Specker configuration, the Peres-Mermin parity square, and
a five-context one-hot cover that is strongly contextual yet admits a
vanishing integer obstruction (a permanent regression test for the method's
known false positives).
"""

from __future__ import annotations

from importlib import resources

from .documents import ScenarioDocument, parse_scenario

EXAMPLE_NAMES = (
    "hardy",
    "prbox",
    "ghz",
    "triangle",
    "ks18",
    "peres-mermin",
    "ks-false-positive",
)


def example_text(name: str) -> str:
    """Raw JSON of a bundled example."""
    if name not in EXAMPLE_NAMES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
    return (
        resources.files("contextuality.data").joinpath(f"{name}.json").read_text("utf-8")
    )


def load_example(name: str) -> ScenarioDocument:
    """Parse a bundled example into a document."""
    return parse_scenario(example_text(name))
