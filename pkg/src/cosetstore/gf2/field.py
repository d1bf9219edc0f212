"""Arithmetic in GF(2^s) for 1 <= s <= 16.

One canonical primitive polynomial is built in per degree; it is
verified at construction by checking that x has multiplicative order
2^s - 1.
"""

from __future__ import annotations

# Primitive polynomial per degree, encoded with bit i = coefficient of x^i.
PRIMITIVE_POLY = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


class Gf2sField:
    """GF(2^s) with polynomial-basis elements packed into ints < 2^s."""

    def __init__(self, s: int, modulus: int | None = None):
        if not 1 <= s <= 16:
            raise ValueError("extension degree must be in 1..16")
        self.s = s
        self.modulus = PRIMITIVE_POLY[s] if modulus is None else modulus
        if self.modulus.bit_length() != s + 1:
            raise ValueError("modulus degree must equal s")
        if not self._generator_is_primitive():
            raise ValueError(f"modulus {self.modulus:#b} is not primitive")

    @property
    def order(self) -> int:
        return 1 << self.s

    @property
    def generator(self) -> int:
        """The element x (polynomial basis)."""
        return 2 % self.order if self.s > 1 else 1

    def _generator_is_primitive(self) -> bool:
        if self.s == 1:
            return True
        g = 2
        acc = g
        count = 1
        while acc != 1:
            acc = self.mul(acc, g)
            count += 1
            if count > self.order:
                return False  # not invertible: modulus reducible
        return count == self.order - 1

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if not (0 <= a < self.order and 0 <= b < self.order):
            raise ValueError("element out of range")
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.s:
                a ^= self.modulus
        return r

    def pow(self, a: int, e: int) -> int:
        r = 1
        base = a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        acc = a
        k = 1
        while acc != 1:
            acc = self.mul(acc, a)
            k += 1
        return k

    def powers_of_generator(self, count: int) -> list[int]:
        """[x^0, x^1, ..., x^{count-1}]."""
        out = [1]
        for _ in range(count - 1):
            out.append(self.mul(out[-1], self.generator))
        return out


def gf2s_mul(field: Gf2sField, a: int, b: int) -> int:
    """Product of two field elements (polynomial product mod modulus)."""
    return field.mul(a, b)
