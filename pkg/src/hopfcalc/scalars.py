"""Exact scalar fields: the rationals (backed by gmpy2.mpq) and prime fields GF(p)."""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq


class FieldError(ValueError):
    pass


class Field:
    """Base class. A field turns python numbers into its own scalars."""

    char = 0
    name = "?"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self(int(num)) / self(int(den))
        return self(int(text))

    def fmt(self, x) -> str:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Rationals(Field):
    char = 0
    name = "Q"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    def fmt(self, x) -> str:
        x = mpq(x)
        return f"{x.numerator}/{x.denominator}"

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Mod:
    """Residue class mod a prime. Supports mixing with python ints."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, (Fraction, type(mpq(0)))):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        return Mod(self._coerce(other), self.p) * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2 or not _is_prime(p):
            raise FieldError(f"p must be an odd prime, got {p}")
        self.p = p
        self.char = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, Mod):
            return x
        if isinstance(x, int):
            return Mod(x, self.p)
        x = Fraction(x)
        return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def fmt(self, x) -> str:
        return f"{self(x).v}/1"

    def to_json(self):
        return {"p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


def parse_field(spec) -> Field:
    """Accepts "Q", "p:7", {"p": 7} or a Field."""
    if isinstance(spec, Field):
        return spec
    if spec is None or spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"p"}:
        return PrimeField(int(spec["p"]))
    if isinstance(spec, str) and spec.startswith("p:"):
        try:
            p = int(spec[2:])
        except ValueError:
            raise FieldError(f"bad field {spec!r}") from None
        return PrimeField(p)
    raise FieldError(f"bad field {spec!r}")
