"""Effective coefficient rings: prime fields, the rationals and the integers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import isprime

from ..errors import InputError, UnsupportedRingError

FP, QQ, ZZ = "Fp", "QQ", "ZZ"


@dataclass(frozen=True)
class CoeffRing:
    """A coefficient ring ``C`` together with its declared Krull dimension."""

    kind: str
    modulus: int | None = None
    declared_dim: int = field(default=-1)

    def __post_init__(self):
        if self.kind not in (FP, QQ, ZZ):
            raise InputError(f"unknown coefficient ring kind {self.kind!r}")
        if self.kind == FP:
            if self.modulus is None or not isprime(self.modulus):
                raise InputError(f"F_p needs a prime modulus, got {self.modulus}")
        elif self.modulus is not None:
            raise InputError("modulus is only meaningful for F_p")
        dim = 1 if self.kind == ZZ else 0
        if self.declared_dim == -1:
            object.__setattr__(self, "declared_dim", dim)
        elif self.declared_dim != dim:
            raise InputError(f"declared_dim of {self.kind} must be {dim}")

    @classmethod
    def gf(cls, p: int) -> "CoeffRing":
        return cls(FP, p)

    @classmethod
    def rationals(cls) -> "CoeffRing":
        return cls(QQ)

    @classmethod
    def integers(cls) -> "CoeffRing":
        return cls(ZZ)

    @property
    def is_field(self) -> bool:
        return self.kind != ZZ

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == FP else 0

    def __str__(self):
        return f"F_{self.modulus}" if self.kind == FP else self.kind

    # element arithmetic -------------------------------------------------
    def coerce(self, c):
        if self.kind == FP:
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, self.modulus)) % self.modulus
            return int(c) % self.modulus
        if self.kind == QQ:
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise InputError(f"{c} is not an integer")
            return c.numerator
        return int(c)

    def is_unit(self, c) -> bool:
        if self.kind == ZZ:
            return c in (1, -1)
        return c != 0

    def inv(self, c):
        if not self.is_unit(c):
            raise ZeroDivisionError(f"{c} is not a unit of {self}")
        if self.kind == FP:
            return pow(c, -1, self.modulus)
        if self.kind == QQ:
            return 1 / c
        return c

    def div_exact(self, a, b):
        """Return ``a / b`` when ``b`` divides ``a`` in the ring, else ``None``."""
        if b == 0:
            return None
        if self.kind == ZZ:
            q, rem = divmod(a, b)
            return q if rem == 0 else None
        return self.coerce(a * self.inv(b))

    def format(self, c) -> str:
        return str(c)

    def parse(self, text: str):
        text = text.strip()
        if ":" in text:
            mod, res = text.split(":", 1)
            if self.kind != FP or int(mod) != self.modulus:
                raise InputError(f"residue literal {text!r} does not match {self}")
            return self.coerce(int(res))
        if "/" in text:
            return self.coerce(Fraction(text))
        return self.coerce(int(text))

    def to_json(self) -> dict:
        return {"kind": self.kind, "modulus": self.modulus, "D": self.declared_dim}

    @classmethod
    def from_json(cls, data: dict) -> "CoeffRing":
        try:
            return cls(data["kind"], data.get("modulus"), data.get("D", -1))
        except KeyError as exc:
            raise InputError(f"ring descriptor missing {exc}") from None

    def require_field(self, what: str):
        if not self.is_field:
            raise UnsupportedRingError(f"{what} needs a coefficient field, got {self}")
