"""Pydantic field type for exact ℚ(√5) values.

Wire form: ``{"a": [num, den], "b": [num, den]}`` meaning ``a + b·√5``.
Parsing accepts that form, an existing QuadraticNumber, or an int.
"""

from typing import Annotated, Any

from pydantic import PlainSerializer, PlainValidator, WithJsonSchema

from chainlab.services.exact_arith import QuadraticNumber


def _parse(value: Any) -> QuadraticNumber:
    if isinstance(value, dict):
        try:
            return QuadraticNumber.from_wire(value)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed exact value {value!r}: expected a/b pairs") from exc
    if isinstance(value, bool):
        raise ValueError("booleans are not exact values")
    try:
        return QuadraticNumber.coerce(value)
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


ExactScalar = Annotated[
    QuadraticNumber,
    PlainValidator(_parse),
    PlainSerializer(lambda x: x.to_wire(), return_type=dict),
    WithJsonSchema(
        {
            "type": "object",
            "properties": {
                "a": {"type": "array", "items": {"type": "integer"}},
                "b": {"type": "array", "items": {"type": "integer"}},
            },
        }
    ),
]
