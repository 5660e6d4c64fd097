"""Total chromatic numbers of the circulant graphs C_n(1, 3)."""

__version__ = "0.1.0"

from .colouring import (  # noqa: E402
    ConflictReport,
    TotalColouring,
    chord_colour_count,
    class_gap_multiset,
    colour_class_sizes,
    parity_condition,
    verify,
)
from .constructive import (  # noqa: E402
    TYPE_II_ORDERS,
    TypeII,
    colour_5p9q,
    colour_sporadic,
    construct,
    decompose_5p9q,
)
from .graph import (  # noqa: E402
    CirculantGraph,
    Element,
    Kind,
    build,
    independence_number,
    is_complete_bipartite_4_4,
)
