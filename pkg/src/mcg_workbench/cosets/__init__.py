"""Todd-Coxeter coset enumeration and low-index subgroup search."""

from .lowindex import (
    LowIndexResult,
    SubgroupRecord,
    bench_fill_order,
    low_index,
    low_index_search,
)
from .table import (
    CosetTable,
    EnumConfig,
    EnumerationFailed,
    IncompleteTable,
    coset_enumerate,
    default_column_order,
    rep_from_table,
)

__all__ = [
    "CosetTable",
    "EnumConfig",
    "EnumerationFailed",
    "IncompleteTable",
    "LowIndexResult",
    "SubgroupRecord",
    "bench_fill_order",
    "coset_enumerate",
    "default_column_order",
    "low_index",
    "low_index_search",
    "rep_from_table",
]
