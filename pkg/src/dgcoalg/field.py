"""Exact scalar fields: prime fields F_p and the rationals."""

from __future__ import annotations

from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """A prime field ``F_p`` (``p`` given) or the rationals (``p=None``).

    Elements are plain Python values in canonical form: ``int`` in
    ``range(p)`` for F_p, ``Fraction`` for Q.  Comparing canonical values
    compares field elements.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    # elements -----------------------------------------------------------
    def __call__(self, x) -> int | Fraction:
        """Canonical representative of ``x`` (int, Fraction or string)."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes in F{self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def add(self, a, b):
        if self.p is None:
            return a + b
        return (a + b) % self.p

    def sub(self, a, b):
        if self.p is None:
            return a - b
        return (a - b) % self.p

    def neg(self, a):
        if self.p is None:
            return -a
        return (-a) % self.p

    def mul(self, a, b):
        if self.p is None:
            return a * b
        return (a * b) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in field")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sign(self, e: int):
        """The image of ``(-1)**e``."""
        if e % 2 == 0:
            return self.one
        return self.neg(self.one)

    def elements(self):
        """All elements (finite fields only)."""
        if self.p is None:
            raise ValueError("Q is infinite")
        return range(self.p)

    def to_str(self, a) -> str:
        return str(a)

    # serialization --------------------------------------------------------
    def to_json(self):
        return "Q" if self.p is None else {"p": self.p}

    @classmethod
    def from_json(cls, spec) -> "Field":
        if spec == "Q" or spec == "q":
            return cls(None)
        if isinstance(spec, dict) and "p" in spec:
            return cls(int(spec["p"]))
        if isinstance(spec, int):
            return cls(spec)
        raise ValueError(f"invalid field spec {spec!r}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"Q"``, ``"F2"``, ``"2"`` ..."""
        t = text.strip()
        if t.upper() == "Q":
            return cls(None)
        if t.upper().startswith("F"):
            t = t[1:]
        return cls(int(t))


F2 = Field(2)
QQ = Field(None)
