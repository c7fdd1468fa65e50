"""Shared helpers for the test suite."""

from wittram.coeff import FieldKind, FieldSpec
from wittram.grammar import parse_laurent, parse_witt

F2 = FieldSpec(2, FieldKind.PRIME)
F2U = FieldSpec(2, FieldKind.RATIONAL)
F3 = FieldSpec(3, FieldKind.PRIME)
F3U = FieldSpec(3, FieldKind.RATIONAL)
F5 = FieldSpec(5, FieldKind.PRIME)

ALL_SPECS = (F2, F2U, F3, F3U)


def L(src, spec):
    return parse_laurent(src, spec)


def W(src, spec):
    return parse_witt(src, spec)
