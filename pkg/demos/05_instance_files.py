# The MLAT text format: canonical serialization, parsing, and error reporting.

from latmod import (
    ParseError,
    ValidationError,
    gen_zn_ideal_lattice,
    parse_instance,
    serialize_instance,
)

text = serialize_instance(gen_zn_ideal_lattice(8))
print("canonical form of the ideal lattice of Z_8:\n")
print(text)

L, M = parse_instance(text)
print("round trip is the identity:", serialize_instance(L, M) == text)

hand_written = """\
mlat 1
lattice
elements 2
leq 0 1
mul 0 0 0
mul 0 1 0
mul 1 0 0
mul 1 1 1
label 0 zero
label 1 one
"""
L, _ = parse_instance(hand_written)
print(f"\nhand-written 2-chain parses: top={L.label(L.top)}, bottom={L.label(L.bottom)}")

broken = hand_written.replace("mul 1 1 1", "mul 1 1 9")
try:
    parse_instance(broken)
except ParseError as exc:
    print(f"dangling id is reported with its location: {exc}")

not_assoc = hand_written.replace("mul 1 1 1", "mul 1 1 0")
try:
    parse_instance(not_assoc)
except ValidationError as exc:
    print(f"axiom failures carry witnesses: {exc.violations[0].message}")
