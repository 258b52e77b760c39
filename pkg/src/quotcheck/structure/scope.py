"""Verdicts with an explicit quantifier scope."""

from __future__ import annotations

from dataclasses import dataclass, field

EXHAUSTIVE = "exhaustive"
UNIVERSE = "universe-relative"


def universe_scope(complete: bool) -> str:
    """Scope of a check quantified over every object of the universe."""
    return EXHAUSTIVE if complete else UNIVERSE


def sampled_scope(seed: int, n: int) -> str:
    return f"sampled(seed={seed}, n={n})"


def weakest(*scopes: str) -> str:
    """The weakest of several scopes: sampled < universe-relative < exhaustive."""
    for s in scopes:
        if s.startswith("sampled"):
            return s
    if UNIVERSE in scopes:
        return UNIVERSE
    return EXHAUSTIVE


@dataclass
class Verdict:
    """A named yes/no/inconclusive outcome with its scope and supporting data."""

    name: str
    value: object
    scope: str
    details: dict = field(default_factory=dict)

    @property
    def positive(self) -> bool:
        return self.value is True or self.value in ("abelian", "true")

    @property
    def negative(self) -> bool:
        """A definite no: False or a counterexample (inconclusive and counts are not)."""
        return self.value is False or self.value == "counterexample"

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "scope": self.scope, "details": self.details}
