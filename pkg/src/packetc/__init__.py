"""Bookkeeping for discrete-series and unipotent packets of p-adic
orthogonal groups: quadratic-form invariants, Jordan-block parameters,
component-group characters, Jacquet reduction, duality signs and global
admissibility."""

from .component_group import Character, ComponentGroup, GroupElement, component_group
from .local_forms import FormError, Place, QuadraticSpace, hilbert_symbol, witt_index
from .packets import PureInnerForm, enumerate_packet, pure_inner_form
from .parameters import CuspidalLabel, GroupKind, JordanBlock, Parameter, ParameterError, label, validate

__version__ = "0.1.0"

__all__ = [
    "Character",
    "ComponentGroup",
    "CuspidalLabel",
    "FormError",
    "GroupElement",
    "GroupKind",
    "JordanBlock",
    "Parameter",
    "ParameterError",
    "Place",
    "PureInnerForm",
    "QuadraticSpace",
    "component_group",
    "enumerate_packet",
    "hilbert_symbol",
    "label",
    "pure_inner_form",
    "validate",
    "witt_index",
]
