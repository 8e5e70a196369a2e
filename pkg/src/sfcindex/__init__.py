"""Distance reporting by sorting integer points along a space-filling curve."""

from .encoding import (
    Cell,
    CodeRange,
    Domain,
    cell_code_range,
    decode,
    encode,
    encode_many,
    hilbert_decode,
    hilbert_encode,
    morton_decode,
    morton_encode,
)
from .errors import (
    ConfigurationError,
    DomainViolationError,
    ParseError,
    UnsupportedDimensionError,
    UnsupportedFeatureError,
)
from .datagen import DatasetSpec, QuerySpec, gen_points, gen_queries, query_radius
from .dynamic_index import LogIndex
from .oracle import brute_force_query
from .static_index import QueryBox, StaticIndex, bounding_box, cells
from .workload_io import (
    RESULTS_HEADER,
    ResultRecord,
    read_points,
    read_queries,
    write_points,
    write_queries,
    write_results,
)

__all__ = [
    "Cell",
    "CodeRange",
    "ConfigurationError",
    "DatasetSpec",
    "Domain",
    "DomainViolationError",
    "LogIndex",
    "ParseError",
    "QueryBox",
    "QuerySpec",
    "RESULTS_HEADER",
    "ResultRecord",
    "StaticIndex",
    "UnsupportedDimensionError",
    "UnsupportedFeatureError",
    "bounding_box",
    "brute_force_query",
    "cell_code_range",
    "cells",
    "decode",
    "encode",
    "encode_many",
    "gen_points",
    "gen_queries",
    "hilbert_decode",
    "hilbert_encode",
    "morton_decode",
    "morton_encode",
    "query_radius",
    "read_points",
    "read_queries",
    "write_points",
    "write_queries",
    "write_results",
]
