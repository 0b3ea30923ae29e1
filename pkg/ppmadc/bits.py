# -*- coding: utf-8 -*-

from dataclasses import dataclass


@dataclass(frozen=True)
class BitString:
    """Fixed-width bit string; the first bit is the most significant."""
    value: int
    width: int

    def __post_init__(self):
        if self.width < 0 or not 0 <= self.value < (1 << self.width):
            raise ValueError(f"{self.value} does not fit in {self.width} bits")

    @classmethod
    def zeros(cls, width):
        return cls(0, width)

    @classmethod
    def concat(cls, parts):
        value, width = 0, 0
        for part in parts:
            value = (value << part.width) | part.value
            width += part.width
        return cls(value, width)

    def __xor__(self, other):
        if self.width != other.width:
            raise ValueError(
                f"cannot xor {self.width} bits with {other.width} bits")
        return BitString(self.value ^ other.value, self.width)

    def split(self, parts):
        if parts < 1 or self.width % parts:
            raise ValueError(f"{self.width} bits do not split into {parts}")
        size = self.width // parts
        mask = (1 << size) - 1
        return [BitString((self.value >> (size * (parts - 1 - index))) & mask,
                          size)
                for index in range(parts)]

    def fit(self, width):
        """Truncates to the low ``width`` bits or zero-pads up to them."""
        return BitString(self.value & ((1 << width) - 1), width)

    def hex(self):
        digits = max(1, (self.width + 3) // 4)
        return f"{self.value:0{digits}x}"
