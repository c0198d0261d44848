"""Verification engine for unit groups of modular group algebras FG."""

from __future__ import annotations

__version__ = "0.1.0"

from .field import FieldSpec, make_field
from .groups import GroupTable, build_group
from .algebra import AlgebraElement, GroupAlgebra
from .radical import jacobson_radical, nilpotency_index
from .wedderburn import (
    Decomposition,
    SimpleComponent,
    central_decomposition,
    ferraz_decomposition,
    predicted_C3xD10,
)
from .units import UnitReport, brute_force_units, structure_report, unit_group_order
from .p5 import WitnessReport, verify_p5_structure

__all__ = [
    "AlgebraElement", "Decomposition", "FieldSpec", "GroupAlgebra", "GroupTable",
    "SimpleComponent", "UnitReport", "WitnessReport", "brute_force_units", "build_group",
    "central_decomposition", "ferraz_decomposition", "jacobson_radical", "make_field",
    "nilpotency_index", "predicted_C3xD10", "structure_report", "unit_group_order",
    "verify_p5_structure",
]
