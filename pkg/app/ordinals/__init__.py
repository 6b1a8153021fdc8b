# Ordinal arithmetic package
from app.ordinals.cnf import (
    OMEGA,
    ONE,
    ZERO,
    Kind,
    Ordinal,
    add,
    compare,
    finite_part,
    format_ordinal,
    fundamental_sequence,
    limit_part,
    mul_omega,
    omega_power,
    parse_ordinal,
    predecessor,
    successor_kind,
    sup,
)
