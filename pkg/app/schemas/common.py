"""
Общие типы полей: рациональные числа и многочлены в отчётах сериализуются
строками "p/q" (знаменатель 1 опускается).
"""
from fractions import Fraction
from typing import Annotated, Any, List

from pydantic import PlainSerializer, PlainValidator, WithJsonSchema

from app.core.exactmath import Polynomial, format_rational, to_rational

RATIONAL_PATTERN = r"^-?\d+(/\d+)?$"


def _validate_rational(value: Any) -> Fraction:
	# float не допускается: вся арифметика точная
	if isinstance(value, float):
		raise ValueError(f"Floats are not accepted as rationals: {value!r}, pass \"p/q\" instead")
	return to_rational(value)


def _validate_polynomial(value: Any) -> Polynomial:
	if isinstance(value, Polynomial):
		return value
	if isinstance(value, (list, tuple)):
		return Polynomial(_validate_rational(c) for c in value)
	raise ValueError(f"Polynomial must be a list of \"p/q\" coefficients, got {value!r}")


def _serialize_polynomial(value: Polynomial) -> List[str]:
	return value.to_strings()


Rational = Annotated[
	Fraction,
	PlainValidator(_validate_rational),
	PlainSerializer(format_rational, return_type=str),
	WithJsonSchema({"type": "string", "pattern": RATIONAL_PATTERN}),
]

PolynomialField = Annotated[
	Polynomial,
	PlainValidator(_validate_polynomial),
	PlainSerializer(_serialize_polynomial, return_type=List[str]),
	WithJsonSchema({"type": "array", "items": {"type": "string", "pattern": RATIONAL_PATTERN}}),
]
