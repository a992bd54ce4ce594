"""Formally guaranteed explanations for decision trees, random forests and
boosted trees, with brute-force verification and ASP-text export."""

from .explain_bt import WeightSummary, bt_tree_specific_one, bt_weight_summary
from .explain_dt import dt_contrastive, dt_sufficient
from .explain_rf import (CounterfactualWitness, rf_contrastive,
                         rf_counterfactual_exists, rf_majority, rf_sufficient_one)
from .explanations import (ALL_KINDS, BT_TREE_SPECIFIC, DT_CONTRASTIVE, DT_SUFFICIENT,
                           ENUMERABLE_KINDS, KINDS_BY_MODEL, RF_CONTRASTIVE, RF_MAJORITY,
                           RF_SUFFICIENT, ContrastiveImpossible, ExplanationImpossible, Explanation, Query,
                           describe_literal, make_explanation, prepare)
from .literals import (BoolInstance, LiteralTable, Thresholds, booleanize,
                       build_literal_table, compute_thresholds)
from .models import (Instance, Model, ModelError, Prediction, dump_model,
                     instance_hash, load_model, make_instance, model_from_object,
                     model_hash, model_to_object, predict)
from .oracle import DEFAULT_BOUND, OracleBoundError, Verdict, oracle_check, oracle_enumerate
from .timeouts import Deadline, TimeoutExceeded
from .traversal import (FlipVote, ModeMap, WeightRange, class_set, forest_vote_under_flips,
                        free_literals, flipped_literals, reachable_leaves,
                        tree_class_under_flips, weight_range)

__version__ = "0.1.0"
