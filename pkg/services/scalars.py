"""Exact ground fields: the rationals and prime fields GF(p)."""

import re
from typing import Any, Union

from sympy import isprime
from sympy.polys.domains import QQ, FF
from sympy.polys.polyerrors import CoercionFailed

from utils.errors import InputError

Scalar = Any  # an element of ScalarField.domain

_INTEGER = re.compile(r"^[+-]?\d+$")
_FRACTION = re.compile(r"^([+-]?\d+)\s*/\s*([+-]?\d+)$")


class ScalarField:
    """A ground field K described by "rat" or "fp:P".

    Elements are sympy domain elements: QQ elements are kept in lowest terms with a
    positive denominator, GF(p) elements are residues in [0, p).
    """

    def __init__(self, descriptor: str = "rat"):
        descriptor = descriptor.strip().lower()
        if descriptor in ("rat", "qq", "q"):
            self.descriptor = "rat"
            self.characteristic = 0
            self.domain = QQ
        elif descriptor.startswith("fp:"):
            try:
                p = int(descriptor[3:])
            except ValueError:
                raise InputError(f"malformed field descriptor {descriptor!r}")
            if p < 2 or not isprime(p):
                raise InputError(f"field descriptor {descriptor!r}: {p} is not prime")
            self.descriptor = f"fp:{p}"
            self.characteristic = p
            self.domain = FF(p, symmetric=False)
        else:
            raise InputError(f"unknown field descriptor {descriptor!r} (use 'rat' or 'fp:P')")
        self.zero = self.domain.zero
        self.one = self.domain.one

    def __eq__(self, other):
        return isinstance(other, ScalarField) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(("ScalarField", self.descriptor))

    def __repr__(self):
        return f"ScalarField({self.descriptor!r})"

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic > 0

    def __call__(self, value: Union[int, Scalar]) -> Scalar:
        return self.convert(value)

    def convert(self, value) -> Scalar:
        try:
            return self.domain.convert(value)
        except CoercionFailed as e:
            raise InputError(f"cannot read {value!r} as an element of {self.descriptor}: {e}")

    def fraction(self, numerator: int, denominator: int) -> Scalar:
        if denominator == 0:
            raise InputError("zero denominator")
        den = self.convert(denominator)
        if not den:
            raise InputError(f"denominator {denominator} vanishes in {self.descriptor}")
        return self.convert(numerator) / den

    def parse(self, text: str) -> Scalar:
        """Read an integer, a fraction 'a/b' or (in GF(p)) a residue."""
        text = text.strip().replace("−", "-")
        if _INTEGER.match(text):
            return self.convert(int(text))
        match = _FRACTION.match(text)
        if match:
            return self.fraction(int(match.group(1)), int(match.group(2)))
        raise InputError(f"malformed scalar {text!r}")

    def format(self, value: Scalar) -> str:
        if self.is_prime_field:
            return str(int(value) % self.characteristic)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def is_negative(self, value: Scalar) -> bool:
        """Sign used by printers; prime fields have no sign."""
        return not self.is_prime_field and value < 0

    def random(self, rng, low: int = -3, high: int = 3) -> Scalar:
        """A random nonzero element, used by the property suites."""
        while True:
            value = self.convert(rng.randint(low, high))
            if value:
                return value
