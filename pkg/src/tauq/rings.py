"""Exact coefficient rings and Laurent polynomials.

Three coefficient domains are used throughout:

* ``Fraction`` (re-exported as ``Rational``) for numeric work;
* ``MomentPoly``, polynomials over the rationals in formal moment symbols
  c_i, d_i, e_i, for symbolic identity proofs;
* ``RingFraction``, quotients of MomentPoly with equality by
  cross-multiplication, for symbolic matrices whose entries are ratios.

``LaurentPoly`` and ``LaurentMatrix`` are generic over any of these:
coefficients only need +, *, unary -, ==, and truthiness (zero is falsy).
All values are immutable after construction; every operation is pure.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, strings like '3/4', and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


class MomentSymbol(NamedTuple):
    """A formal moment variable, e.g. c_3 or d_{-1}.

    Ordered lexicographically by (family, index).
    """

    family: str  # one of "c", "d", "e"
    index: int

    def __str__(self) -> str:
        return f"{self.family}_{self.index}"


_FAMILIES = ("c", "d", "e")


class MomentPoly:
    """Polynomial over Q in moment symbols.

    Terms map a monomial (sorted tuple of MomentSymbol, with repetition)
    to a nonzero Fraction coefficient. Equality is structural.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[MomentSymbol, ...], Fraction] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "MomentPoly":
        return cls()

    @classmethod
    def one(cls) -> "MomentPoly":
        return cls({(): Fraction(1)})

    @classmethod
    def const(cls, c) -> "MomentPoly":
        return cls({(): as_rational(c)})

    @classmethod
    def symbol(cls, family: str, index: int) -> "MomentPoly":
        if family not in _FAMILIES:
            raise ValueError(f"unknown moment family {family!r}")
        return cls({(MomentSymbol(family, index),): Fraction(1)})

    def _coerce(self, other) -> "MomentPoly | None":
        if isinstance(other, MomentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MomentPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MomentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MomentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple[MomentSymbol, ...], Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(sorted(ma + mb))
                prod = ca * cb
                out[m] = out.get(m, Fraction(0)) + prod
        return MomentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        acc = MomentPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, assign):
        """Substitute assign(symbol) for every symbol; plain Fraction result
        when the assignment is numeric. Substitution is a ring homomorphism.
        """
        total = None
        for mono, coef in self.terms.items():
            val = coef
            for s in mono:
                val = val * assign(s)
            total = val if total is None else total + val
        return Fraction(0) if total is None else total

    def symbols(self) -> set[MomentSymbol]:
        return {s for mono in self.terms for s in mono}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coef in sorted(self.terms.items()):
            factors = []
            run: list[str] = []
            for s in mono:
                name = str(s)
                if run and run[-1] == name:
                    run.append(name)
                else:
                    if run:
                        factors.append(_pow_str(run))
                    run = [name]
            if run:
                factors.append(_pow_str(run))
            body = "*".join(factors)
            parts.append(_signed_term(coef, body, first=not parts))
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MomentPoly({self})"


def _pow_str(run: list[str]) -> str:
    return run[0] if len(run) == 1 else f"{run[0]}^{len(run)}"


def _signed_term(coef, body: str, first: bool) -> str:
    """Render one term of a polynomial string, with leading sign handling."""
    neg = coef < 0 if isinstance(coef, (int, Fraction)) else False
    mag = -coef if neg else coef
    if body:
        coef_str = "" if mag == 1 else f"{mag} " if isinstance(mag, (int, Fraction)) else f"({mag}) "
        term = f"{coef_str}{body}" if coef_str else body
    else:
        term = str(mag)
    if first:
        return f"-{term}" if neg else term
    return f" - {term}" if neg else f" + {term}"


class RingFraction:
    """A quotient num/den of ring elements, without gcd reduction.

    Equality is by cross-multiplication, so two unreduced representations
    of the same quotient compare equal. Used for symbolic matrices whose
    entries are ratios of tau polynomials.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = MomentPoly.one() if isinstance(num, MomentPoly) else Fraction(1)
        if not den:
            raise ZeroDivisionError("zero denominator in RingFraction")
        self.num = num
        self.den = den

    @classmethod
    def _coerce(cls, other) -> "RingFraction | None":
        if isinstance(other, RingFraction):
            return other
        if isinstance(other, (int, Fraction, MomentPoly)):
            return cls(other if isinstance(other, MomentPoly) else MomentPoly.const(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RingFraction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero RingFraction")
        return RingFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __bool__(self):
        return bool(self.num)

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RingFraction({self.num!r}, {self.den!r})"


class LaurentPoly:
    """Finite Laurent polynomial in z over an exact coefficient ring.

    coeffs maps integer exponents to nonzero coefficients; the zero
    polynomial has an empty map. residue() is the coefficient at z^-1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def z_pow(cls, n: int, c=Fraction(1)) -> "LaurentPoly":
        return cls({n: c})

    def _coerce(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction, MomentPoly, RingFraction)):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out: dict = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = e1 + e2
                    prod = c1 * c2
                    s = out.get(e)
                    out[e] = prod if s is None else s + prod
            return LaurentPoly(out)
        if isinstance(other, (int, Fraction, MomentPoly, RingFraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly({e: v * c for e, v in self.coeffs.items()})

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by z^n."""
        return LaurentPoly({e + n: c for e, c in self.coeffs.items()})

    def residue(self):
        """Coefficient of z^-1 (0 when absent)."""
        return self.coeffs.get(-1, Fraction(0))

    @property
    def min_degree(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    @property
    def max_degree(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def coeff(self, e: int):
        return self.coeffs.get(e, Fraction(0))

    def map_coeffs(self, fn) -> "LaurentPoly":
        return LaurentPoly({e: fn(c) for e, c in self.coeffs.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.coeffs.keys() != other.coeffs.keys():
            return False
        return all(other.coeffs[e] == c for e, c in self.coeffs.items())

    def __hash__(self):
        return hash(frozenset(self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            body = "" if e == 0 else "z" if e == 1 else f"z^{e}"
            if isinstance(c, (int, Fraction)):
                parts.append(_signed_term(c, body, first=not parts))
            else:
                wrapped = f"({c})" + (f" {body}" if body else "")
                parts.append(wrapped if not parts else f" + {wrapped}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


class LaurentMatrix:
    """Square matrix of LaurentPoly entries (dimension 2 or 3 in practice)."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Iterable[LaurentPoly]]):
        rows = [list(r) for r in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.entries = rows

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int, one=Fraction(1)) -> "LaurentMatrix":
        return cls([[LaurentPoly.const(one) if i == j else LaurentPoly.zero()
                     for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal_z(cls, powers: Iterable[int], one=Fraction(1)) -> "LaurentMatrix":
        powers = list(powers)
        n = len(powers)
        return cls([[LaurentPoly.z_pow(powers[i], one) if i == j else LaurentPoly.zero()
                     for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        n = self.n
        return LaurentMatrix(
            [[_sum_polys(self.entries[i][t] * other.entries[t][j] for t in range(n))
              for j in range(n)] for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, LaurentMatrix):
            return self @ other
        return NotImplemented

    def scale(self, c) -> "LaurentMatrix":
        return LaurentMatrix([[e.scale(c) for e in row] for row in self.entries])

    def map_entries(self, fn) -> "LaurentMatrix":
        return LaurentMatrix([[fn(e) for e in row] for row in self.entries])

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.n == other.n and all(
            self.entries[i][j] == other.entries[i][j]
            for i in range(self.n) for j in range(self.n))

    def min_degree(self) -> int | None:
        """Smallest z-exponent over all entries; None for the zero matrix."""
        degs = [e.min_degree for row in self.entries for e in row if e]
        return min(degs) if degs else None

    def det(self) -> LaurentPoly:
        return _det_cofactor_generic([list(r) for r in self.entries],
                                     zero=LaurentPoly.zero())

    def __str__(self) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(str(e) for e in row) + "]" for row in self.entries) + "]"

    __repr__ = __str__


def _sum_polys(polys) -> LaurentPoly:
    acc = LaurentPoly.zero()
    for p in polys:
        acc = acc + p
    return acc


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def residue(p: LaurentPoly):
    return p.residue()


def matrix_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    return a @ b


def det_bareiss(rows: list[list[Fraction]]) -> Fraction:
    """Fraction-free (Bareiss) determinant for exact numeric entries.

    Row swaps flip the sign; a zero pivot column means a zero determinant.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [[as_rational(x) for x in row] for row in rows]
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_cofactor_generic(rows, zero):
    n = len(rows)
    if n == 0:
        raise ValueError("cofactor determinant needs explicit handling of 0x0")
    if n == 1:
        return rows[0][0]
    total = zero
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_cofactor_generic(minor, zero)
        total = total - term if j % 2 else total + term
    return total


def det_cofactor(rows):
    """Cofactor-expansion determinant over any commutative ring."""
    if not rows:
        return Fraction(1)
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("matrix must be square")
    first = rows[0][0]
    zero = MomentPoly.zero() if isinstance(first, MomentPoly) else \
        LaurentPoly.zero() if isinstance(first, LaurentPoly) else Fraction(0)
    return _det_cofactor_generic([list(r) for r in rows], zero)


def det(rows):
    """Exact determinant: Bareiss for numeric entries, cofactor otherwise."""
    if not rows:
        return Fraction(1)
    if all(isinstance(x, (int, Fraction)) for row in rows for x in row):
        return det_bareiss(rows)
    return det_cofactor(rows)
