"""
Finitely supported real sequences and their Laurent symbols.

A LaurentPoly stores the coefficients c_offset, ..., c_{offset+len-1} of
sum_alpha c_alpha z^alpha. The same type plays the role of a coefficient
sequence (masks, filters, Gramian vectors), so ``CoeffSeq`` is an alias.

Values are kept in canonical form: the first and last stored entries are
nonzero, and zero is the empty sequence at offset 0. Entries below
TRIM_RELATIVE times the largest magnitude are dropped from the ends only.

Usage:
    p = LaurentPoly(0, [0.5, 0.5])          # (1 + z) / 2
    q = mul(p, p)                           # (1 + 2z + z^2) / 4
    pe, po = even_odd_split(q)
"""
import numpy as np

TRIM_RELATIVE = 1e-14


def _canonical(offset, values):
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        return 0, np.zeros(0)
    scale = np.max(np.abs(values))
    if scale == 0:
        return 0, np.zeros(0)
    keep = np.flatnonzero(np.abs(values) >= TRIM_RELATIVE * scale)
    first, last = keep[0], keep[-1]
    return int(offset) + int(first), values[first:last + 1].copy()


class LaurentPoly:
    """Immutable Laurent polynomial with real coefficients."""

    __slots__ = ('_offset', '_values')

    def __init__(self, offset=0, values=()):
        offset, values = _canonical(offset, values)
        values.setflags(write=False)
        self._offset = offset
        self._values = values

    @classmethod
    def zero(cls):
        return cls(0, ())

    @classmethod
    def monomial(cls, exponent, coefficient=1.0):
        return cls(exponent, [coefficient])

    @property
    def offset(self):
        return self._offset

    @property
    def values(self):
        return self._values

    @property
    def is_zero(self):
        return self._values.size == 0

    @property
    def support(self):
        """Integer support [lo, hi], or None for the zero polynomial."""
        if self.is_zero:
            return None
        return self._offset, self._offset + self._values.size - 1

    @property
    def exponents(self):
        return self._offset + np.arange(self._values.size)

    def __len__(self):
        return self._values.size

    def __getitem__(self, exponent):
        k = exponent - self._offset
        if 0 <= k < self._values.size:
            return float(self._values[k])
        return 0.0

    def coefficients(self, lo, hi):
        """Dense coefficients over [lo, hi], zero outside the support."""
        out = np.zeros(hi - lo + 1)
        if self.is_zero:
            return out
        s_lo, s_hi = self.support
        a, b = max(lo, s_lo), min(hi, s_hi)
        if a <= b:
            out[a - lo:b - lo + 1] = self._values[a - s_lo:b - s_lo + 1]
        return out

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial(0, float(other))
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self._offset, other._offset)
        hi = max(self.support[1], other.support[1])
        return LaurentPoly(lo, self.coefficients(lo, hi) + other.coefficients(lo, hi))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self._offset, -self._values)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if self.is_zero or other.is_zero:
                return LaurentPoly.zero()
            return LaurentPoly(self._offset + other._offset, np.convolve(self._values, other._values))
        return LaurentPoly(self._offset, self._values * float(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return LaurentPoly(self._offset, self._values / float(scalar))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._offset == other._offset and np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash((self._offset, self._values.tobytes()))

    def __repr__(self):
        if self.is_zero:
            return 'LaurentPoly(0)'
        return f'LaurentPoly(offset={self._offset}, values={self._values.tolist()})'

    def shift(self, k):
        """Multiply by z**k."""
        return LaurentPoly(self._offset + k, self._values)

    def subst_neg(self):
        """z -> -z."""
        signs = np.where(self.exponents % 2 == 0, 1.0, -1.0)
        return LaurentPoly(self._offset, self._values * signs)

    def subst_recip(self):
        """z -> 1/z."""
        if self.is_zero:
            return self
        return LaurentPoly(-self.support[1], self._values[::-1])

    def upsample(self, factor):
        """z -> z**factor."""
        if self.is_zero or factor == 1:
            return self
        values = np.zeros((self._values.size - 1) * factor + 1)
        values[::factor] = self._values
        return LaurentPoly(self._offset * factor, values)

    def even_odd_split(self):
        """Return (p_e, p_o) with p(z) = p_e(z^2) + z p_o(z^2)."""
        exps = self.exponents
        even = exps % 2 == 0
        return (
            _from_consecutive(exps[even] // 2, self._values[even]),
            _from_consecutive((exps[~even] - 1) // 2, self._values[~even]),
        )

    def at(self, z):
        """Evaluate at a (complex) point z."""
        if self.is_zero:
            return 0.0
        return complex(np.sum(self._values * np.power(complex(z), self.exponents)))

    def evaluate(self, omega):
        """sum c_alpha exp(-i omega alpha); omega may be a scalar or an array."""
        omega_arr = np.asarray(omega, dtype=float)
        if self.is_zero:
            result = np.zeros(omega_arr.shape, dtype=complex)
        else:
            phases = np.exp(-1j * np.multiply.outer(omega_arr, self.exponents))
            result = phases @ self._values
        return complex(result) if np.ndim(omega) == 0 else result

    def total(self):
        """Sum of coefficients, i.e. the value at z = 1."""
        return float(np.sum(self._values))

    def max_abs(self):
        return float(np.max(np.abs(self._values))) if not self.is_zero else 0.0

    def is_symmetric(self, atol=0.0):
        """Central symmetry c_{lo+j} = c_{hi-j}."""
        return bool(np.allclose(self._values, self._values[::-1], rtol=0.0, atol=atol))

    def to_pairs(self):
        return [(int(k), float(v)) for k, v in zip(self.exponents, self._values)]


def _from_consecutive(exponents, values):
    if len(exponents) == 0:
        return LaurentPoly.zero()
    return LaurentPoly(int(exponents[0]), values)


CoeffSeq = LaurentPoly


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def subst_neg(p):
    return p.subst_neg()


def subst_recip(p):
    return p.subst_recip()


def even_odd_split(p):
    return p.even_odd_split()


def eval_unit_circle(p, omega):
    return p.evaluate(omega)


def max_coefficient_distance(p, q):
    """Largest coefficientwise difference between two sequences."""
    return (p - q).max_abs()
