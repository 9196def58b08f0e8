"""Homological invariants of radical-square-zero Artin algebras, computed from
their valued quivers."""

from .dsl import ParseError, QuiverDocument, export_dot, parse, serialize
from .invariants import (
    DellCertificate,
    InvariantReport,
    SInvariant,
    big_findim_left,
    dell_algebra,
    dell_simple,
    dell_simple_support_oracle,
    embeds_in_radical,
    full_report,
    s_invariant,
    simple_dual_nonzero,
)
from .quiver import (
    Arrow,
    BoolPowerOrbit,
    ValuedQuiver,
    Valuation,
    VertexClass,
    bool_power_orbit,
    classify_vertex,
    down_length,
    down_set,
    opposite,
    validate,
)
from .syzygy import (
    INFINITY,
    Side,
    pdim_simple,
    syzygy_power,
    syzygy_power_oracle,
    syzygy_step,
)

__version__ = "0.1.0"
