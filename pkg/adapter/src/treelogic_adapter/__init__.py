"""Converters from scikit-learn tree models to the treelogic model IR."""

from .convert import (AdapterError, convert, convert_boosted, convert_forest,
                      convert_model, convert_tree)
from .parity import parity_rate, random_probes
