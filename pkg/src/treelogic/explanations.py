"""Explanation values and the query bundle the explainers operate on."""

from __future__ import annotations

from dataclasses import dataclass

from .literals import BoolInstance, LiteralTable, Thresholds, booleanize, build_literal_table, compute_thresholds
from .models import Instance, Model, Prediction, check_instance, instance_hash, model_hash, predict

DT_SUFFICIENT = "dt-sufficient"
DT_CONTRASTIVE = "dt-contrastive"
RF_SUFFICIENT = "rf-sufficient"
RF_CONTRASTIVE = "rf-contrastive"
RF_MAJORITY = "rf-majority"
BT_TREE_SPECIFIC = "bt-tree-specific"

ALL_KINDS = (DT_SUFFICIENT, DT_CONTRASTIVE, RF_SUFFICIENT, RF_CONTRASTIVE,
             RF_MAJORITY, BT_TREE_SPECIFIC)

# explanation kinds applicable per model kind
KINDS_BY_MODEL = {
    "dt": (DT_SUFFICIENT, DT_CONTRASTIVE),
    "rf": (RF_SUFFICIENT, RF_CONTRASTIVE, RF_MAJORITY),
    "bt": (BT_TREE_SPECIFIC,),
}

# kinds for which complete enumeration is offered
ENUMERABLE_KINDS = (DT_SUFFICIENT, DT_CONTRASTIVE, RF_CONTRASTIVE, RF_MAJORITY)


class ExplanationImpossible(RuntimeError):
    """No explanation of the requested kind exists for this (model, instance)."""


class ContrastiveImpossible(ExplanationImpossible):
    """The model output cannot be changed by any literal change (constant side)."""


@dataclass(frozen=True)
class Explanation:
    """A set of instance literals with its kind tag and provenance hashes.

    ``literals`` is always a subset of the instance term; ``tests`` renders
    each literal with its instance-side polarity.
    """

    kind: str
    literals: tuple
    tests: tuple
    model_hash: str
    instance_hash: str

    @property
    def literal_set(self) -> frozenset:
        return frozenset(self.literals)


@dataclass(frozen=True)
class Query:
    """Everything the explainers need for one (model, instance) pair."""

    model: Model
    instance: Instance
    table: LiteralTable
    bi: BoolInstance
    prediction: Prediction
    thresholds: Thresholds | None
    model_hash: str
    instance_hash: str


def prepare(model: Model, instance: Instance) -> Query:
    check_instance(model, instance)
    table = build_literal_table(model)
    bi = booleanize(model, table, instance)
    pred = predict(model, instance)
    thresholds = None
    if model.kind == "rf":
        thresholds = compute_thresholds(len(model.trees), pred.label)
    return Query(model=model, instance=instance, table=table, bi=bi, prediction=pred,
                 thresholds=thresholds, model_hash=model_hash(model),
                 instance_hash=instance_hash(instance))


def describe_literal(query: Query, lit: int) -> str:
    """Human-readable condition with the polarity the instance gives it."""
    rendered = query.table.test_of(lit).render()
    if query.bi.truth_of(lit):
        return rendered
    return f"not ({rendered})"


def make_explanation(query: Query, kind: str, lits) -> Explanation:
    ordered = tuple(sorted(lits))
    return Explanation(kind=kind, literals=ordered,
                       tests=tuple(describe_literal(query, lit) for lit in ordered),
                       model_hash=query.model_hash, instance_hash=query.instance_hash)


def sort_explanations(explanations) -> list:
    return sorted(explanations, key=lambda e: (len(e.literals), e.literals))
