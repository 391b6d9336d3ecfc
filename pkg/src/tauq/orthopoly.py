"""Moment bilinear forms and the polynomials the tau-functions generate.

The form <z^a, z^b> = m_{offset+a+b} turns a moment sequence into a
bilinear pairing on polynomials. Dividing the bordered Hankel determinant
by tau_k gives the monic degree-k polynomial orthogonal to all lower
powers; the two-family block version gives type-II multiple orthogonal
polynomials sharing orthogonality conditions between the c and d forms.

Norms and three-term recurrence coefficients are derived facts here, not
inputs: tests gate them against a brute-force Gram-Schmidt oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateTauError
from .factorization import bordered_tau_poly
from .moments import MomentSequence
from .report import VerificationReport
from .rings import LaurentPoly, det
from .tau_gl2 import tau_det
from .tau_gl3 import tau3_e0_det


@dataclass(frozen=True)
class HankelForm:
    """Bilinear symmetric pairing <z^a, z^b> = seq.get(offset + a + b)."""

    seq: MomentSequence
    offset: int = 0

    def moment(self, n: int):
        return self.seq.get(self.offset + n)


def _poly_coeffs(f) -> dict[int, Fraction]:
    """Coefficient map of a polynomial argument; rejects negative powers."""
    if isinstance(f, MonicPolynomial):
        return {e: c for e, c in enumerate(f.coeffs) if c}
    if isinstance(f, LaurentPoly):
        coeffs = f.coeffs
    elif isinstance(f, (int, Fraction)):
        coeffs = {0: Fraction(f)} if f else {}
    else:
        raise TypeError(f"not a polynomial: {f!r}")
    if coeffs and min(coeffs) < 0:
        raise ValueError("bilinear form arguments must have no negative powers")
    return coeffs


def form_eval(form: HankelForm, f, g):
    """<f, g> by coefficient extraction: sum f_a g_b m_{offset+a+b}."""
    fa, gb = _poly_coeffs(f), _poly_coeffs(g)
    total = Fraction(0)
    for a, ca in fa.items():
        for b, cb in gb.items():
            total += ca * cb * form.moment(a + b)
    return total


class MonicPolynomial:
    """Dense polynomial in z with exact coefficients and leading 1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        if not coeffs or coeffs[-1] != 1:
            raise ValueError("leading coefficient must be exactly 1")
        self.coeffs = coeffs

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "MonicPolynomial":
        deg = p.max_degree
        if deg is None or (p.min_degree is not None and p.min_degree < 0):
            raise ValueError("not a polynomial")
        return cls([p.coeff(e) for e in range(deg + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def as_laurent(self) -> LaurentPoly:
        return LaurentPoly({e: c for e, c in enumerate(self.coeffs)})

    def __call__(self, x):
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __eq__(self, other):
        if isinstance(other, MonicPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, LaurentPoly):
            return self.as_laurent() == other
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __str__(self) -> str:
        return str(self.as_laurent())

    def __repr__(self) -> str:
        return f"MonicPolynomial({self.coeffs!r})"


def monic_op(k: int, alpha: int, m: MomentSequence) -> MonicPolynomial:
    """Monic degree-k orthogonal polynomial: bordered determinant / tau_k.

    Exists iff tau_k != 0 (the moment functional is quasi-definite at k).
    """
    tau = tau_det(k, alpha, m)
    if not tau:
        raise DegenerateTauError("tau is zero; no monic orthogonal polynomial",
                                 k=k, alpha=alpha)
    poly = bordered_tau_poly(k, alpha, m).scale(Fraction(1) / tau)
    return MonicPolynomial.from_laurent(poly)


def gram_schmidt_monic(m: MomentSequence, alpha: int, K: int) -> list[MonicPolynomial]:
    """Brute-force monic orthogonalization of 1, z, ..., z^K under the
    Hankel form; the oracle monic_op is checked against."""
    form = HankelForm(m, alpha)
    basis: list[LaurentPoly] = []
    norms: list[Fraction] = []
    for k in range(K + 1):
        p = LaurentPoly.z_pow(k)
        for q, nq in zip(basis, norms):
            if not nq:
                raise DegenerateTauError("zero norm; orthogonalization stuck",
                                         k=len(norms) - 1, alpha=alpha)
            p = p - q.scale(form_eval(form, LaurentPoly.z_pow(k), q) / nq)
        basis.append(p)
        norms.append(form_eval(form, p, p))
    return [MonicPolynomial.from_laurent(p) for p in basis]


def verify_orthogonality(m: MomentSequence, alpha: int, K: int) -> VerificationReport:
    """<p_j, p_k> = 0 for j < k <= K, and <p_k, p_k> = tau_{k+1}/tau_k."""
    report = VerificationReport("orthogonality")
    form = HankelForm(m, alpha)
    polys = [monic_op(k, alpha, m) for k in range(K + 1)]
    for k in range(K + 1):
        for j in range(k):
            v = form_eval(form, polys[j], polys[k])
            report.add_check({"j": j, "k": k, "alpha": alpha,
                              "identity": "orthogonal"}, v == 0, v, 0)
        norm = form_eval(form, polys[k], polys[k])
        claim = tau_det(k + 1, alpha, m) / tau_det(k, alpha, m)
        report.add_check({"k": k, "alpha": alpha, "identity": "norm"},
                         norm == claim, norm, claim)
    return report


def recurrence_coeffs(m: MomentSequence, alpha: int, K: int) -> list[tuple]:
    """(a_k, b_k) with z p_k = p_{k+1} + a_k p_k + b_k p_{k-1}, k < K,
    from inner products; b_0 = 0 by convention. Reconstructing from these
    must reproduce monic_op exactly (tested, not assumed)."""
    form = HankelForm(m, alpha)
    polys = [monic_op(k, alpha, m) for k in range(K + 1)]
    norms = [form_eval(form, p, p) for p in polys]
    out = []
    for k in range(K):
        if not norms[k]:
            raise DegenerateTauError("zero norm; recurrence undefined",
                                     k=k, alpha=alpha)
        zp = polys[k].as_laurent().shift(1)
        a_k = form_eval(form, zp, polys[k]) / norms[k]
        if k == 0:
            b_k = Fraction(0)
        else:
            if not norms[k - 1]:
                raise DegenerateTauError("zero norm; recurrence undefined",
                                         k=k - 1, alpha=alpha)
            b_k = norms[k] / norms[k - 1]
        out.append((a_k, b_k))
    return out


def recurrence_reconstruct(coeffs: list[tuple]) -> list[MonicPolynomial]:
    """Rebuild p_0..p_K from three-term coefficients (the consistency
    check for recurrence_coeffs)."""
    polys = [LaurentPoly.const(Fraction(1))]
    prev = LaurentPoly.zero()
    for a_k, b_k in coeffs:
        cur = polys[-1]
        nxt = cur.shift(1) - cur.scale(a_k) - prev.scale(b_k)
        prev = cur
        polys.append(nxt)
    return [MonicPolynomial.from_laurent(p) for p in polys]


# -- type-II multiple orthogonality (two families, E = 0) -------------------

def mop_bordered_poly(k: int, l: int, alpha: int, beta: int,
                      C: MomentSequence, D: MomentSequence) -> LaurentPoly:
    """z^k Sc+ Sd+ tau_{k,l}: the (k+1) x (k+1) bordered block determinant
    (l d-columns, then k-l c-columns, last column 1, z, ..., z^k) with the
    E=0 sign, expanded along the last column."""
    if k < 0 or l < 0 or k < l:
        raise ValueError("need k >= l >= 0")
    sign = (-1) ** (l * (l + 1) // 2)
    coeffs = {}
    for r in range(k + 1):
        rows = [[D.get(alpha + i + j) if j < l
                 else C.get(alpha - beta + i + (j - l))
                 for j in range(k)]
                for i in range(k + 1) if i != r]
        val = det(rows) * ((-1) ** (r + k) * sign)
        if val:
            coeffs[r] = val
    return LaurentPoly(coeffs)


def mop_type2(k: int, l: int, alpha: int, beta: int,
              C: MomentSequence, D: MomentSequence) -> MonicPolynomial:
    """Monic type-II multiple orthogonal polynomial for the (C, D) pair."""
    tau = tau3_e0_det(k, l, alpha, beta, C, D)
    if not tau:
        raise DegenerateTauError("tau is zero; no monic polynomial",
                                 k=k, l=l, alpha=alpha, beta=beta)
    poly = mop_bordered_poly(k, l, alpha, beta, C, D).scale(Fraction(1) / tau)
    return MonicPolynomial.from_laurent(poly)


def verify_mop(k: int, l: int, alpha: int, beta: int,
               C: MomentSequence, D: MomentSequence) -> VerificationReport:
    """Shared orthogonality: <p, z^n>_C = 0 for n < k-l (offset alpha-beta)
    and <p, z^n>_D = 0 for n < l (offset alpha)."""
    report = VerificationReport("mop-orthogonality")
    p = mop_type2(k, l, alpha, beta, C, D)
    form_c = HankelForm(C, alpha - beta)
    form_d = HankelForm(D, alpha)
    for n in range(k - l):
        v = form_eval(form_c, p, LaurentPoly.z_pow(n))
        report.add_check({"k": k, "l": l, "alpha": alpha, "beta": beta,
                          "family": "c", "n": n}, v == 0, v, 0)
    for n in range(l):
        v = form_eval(form_d, p, LaurentPoly.z_pow(n))
        report.add_check({"k": k, "l": l, "alpha": alpha, "beta": beta,
                          "family": "d", "n": n}, v == 0, v, 0)
    return report
