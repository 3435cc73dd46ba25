"""Exact arithmetic in Z[q, q^-1] and in truncated series.

A LaurentSeries is a sparse exponent -> coefficient map plus an optional
truncation bound: ``truncation=None`` means an exact Laurent polynomial,
``truncation=D`` means all exponents > D have been discarded and the value
only claims correctness up to degree D.  Mixing two truncated values takes
the smaller bound, so precision loss is always explicit.
"""

from fractions import Fraction


class LaurentSeries:
    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs=None, truncation=None):
        self.truncation = truncation
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                if c and (truncation is None or e <= truncation):
                    self.coeffs[e] = c

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(truncation=None):
        return LaurentSeries({}, truncation)

    @staticmethod
    def one(truncation=None):
        return LaurentSeries({0: 1}, truncation)

    @staticmethod
    def monomial(exp, coeff=1, truncation=None):
        return LaurentSeries({exp: coeff}, truncation)

    @staticmethod
    def geometric(step, cutoff):
        """1/(1 - q^step) as a series truncated at cutoff (step > 0)."""
        if step <= 0:
            raise ValueError("geometric series needs a positive step")
        return LaurentSeries({e: 1 for e in range(0, cutoff + 1, step)}, cutoff)

    # -- ring structure --------------------------------------------------

    @staticmethod
    def _join(a, b):
        ta, tb = a.truncation, b.truncation
        if ta is None:
            return tb
        if tb is None:
            return ta
        return min(ta, tb)

    def __add__(self, other):
        other = self._coerce(other)
        t = self._join(self, other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentSeries(out, t)

    def __neg__(self):
        return LaurentSeries({e: -c for e, c in self.coeffs.items()}, self.truncation)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        t = self._join(self, other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if t is not None and e > t:
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentSeries(out, t)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        out = LaurentSeries.one(self.truncation)
        for _ in range(n):
            out = out * self
        return out

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentSeries):
            return x
        return LaurentSeries({0: x})

    def __eq__(self, other):
        other = self._coerce(other)
        t = self._join(self, other)
        if t is None:
            return self.coeffs == other.coeffs
        return ({e: c for e, c in self.coeffs.items() if e <= t}
                == {e: c for e, c in other.coeffs.items() if e <= t})

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    # -- structure maps ---------------------------------------------------

    def bar(self):
        """q -> q^-1; only defined on exact Laurent polynomials."""
        if self.truncation is not None:
            raise ValueError("bar involution undefined on truncated series")
        return LaurentSeries({-e: c for e, c in self.coeffs.items()})

    def truncate(self, cutoff):
        if self.truncation is not None and self.truncation <= cutoff:
            return self
        return LaurentSeries({e: c for e, c in self.coeffs.items() if e <= cutoff},
                             cutoff)

    def evaluate(self, q):
        """Value at a numeric q (Fraction-exact for rationals)."""
        total = Fraction(0)
        qf = Fraction(q)
        for e, c in self.coeffs.items():
            total += c * qf ** e
        return total if total.denominator != 1 else int(total)

    def exact_div(self, other):
        """Exact quotient by a Laurent polynomial; raises if not divisible."""
        other = self._coerce(other)
        if self.truncation is not None or other.truncation is not None:
            raise ValueError("exact division needs untruncated operands")
        if not other:
            raise ZeroDivisionError
        num = dict(self.coeffs)
        lead = max(other.coeffs)
        out = {}
        while num:
            e = max(num)
            qe = e - lead
            qc, rem = divmod(num[e], other.coeffs[lead])
            if rem:
                raise ValueError("not divisible")
            out[qe] = qc
            for e2, c2 in other.coeffs.items():
                ne = qe + e2
                nc = num.get(ne, 0) - qc * c2
                if nc:
                    num[ne] = nc
                else:
                    num.pop(ne, None)
        return LaurentSeries(out)

    # -- inspection --------------------------------------------------------

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def max_degree(self):
        return max(self.coeffs) if self.coeffs else None

    def coeff(self, e):
        return self.coeffs.get(e, 0)

    def is_bar_invariant(self):
        return all(self.coeffs.get(-e, 0) == c for e, c in self.coeffs.items())

    def to_json(self):
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    def __repr__(self):
        if not self.coeffs:
            s = "0"
        else:
            parts = []
            for e in sorted(self.coeffs):
                c = self.coeffs[e]
                if e == 0:
                    parts.append(f"{c}")
                elif e == 1:
                    parts.append(f"{c}*q")
                else:
                    parts.append(f"{c}*q^{e}")
            s = " + ".join(parts)
        if self.truncation is not None:
            s += f" (mod q^{self.truncation + 1})"
        return s


def sqrt_polynomial(series):
    """Exact square root of a perfect-square Laurent polynomial.

    Raises ValueError when the input is not a perfect square over Z.
    """
    if series.truncation is not None:
        raise ValueError("square root needs an untruncated polynomial")
    if not series:
        return LaurentSeries.zero()
    lo, hi = series.min_degree(), series.max_degree()
    if (hi - lo) % 2 or lo % 2:
        raise ValueError("degree structure is not that of a square")
    import math
    c0 = series.coeff(lo)
    r0 = math.isqrt(c0) if c0 > 0 else -1
    if r0 * r0 != c0:
        raise ValueError("leading coefficient is not a square")
    half = (hi - lo) // 2
    root = {0: r0}
    for k in range(1, half + 1):
        acc = sum(root.get(i, 0) * root.get(k - i, 0) for i in range(1, k))
        num = series.coeff(lo + k) - acc
        if num % (2 * r0):
            raise ValueError("not a perfect square")
        root[k] = num // (2 * r0)
    m0 = lo // 2
    out = LaurentSeries({m0 + k: c for k, c in root.items() if c})
    if out * out != series:
        raise ValueError("not a perfect square")
    return out


def q_beta_exponent(norm):
    """q_beta = q^{(beta.beta)/2}; returns the integer exponent."""
    if norm % 2:
        raise ValueError("beta.beta must be even")
    return norm // 2


def quantum_integer(n, norm=2):
    """[n]_beta = (q_b^n - q_b^-n)/(q_b - q_b^-1) for beta.beta = norm."""
    if n < 0:
        raise ValueError("quantum integer needs n >= 0")
    step = q_beta_exponent(norm)
    return LaurentSeries({(n - 1 - 2 * k) * step: 1 for k in range(n)})


def quantum_factorial(n, norm=2):
    out = LaurentSeries.one()
    for k in range(2, n + 1):
        out = out * quantum_integer(k, norm)
    return out


def word_factorial(letters, datum):
    """[i]! over the maximal constant runs of the word."""
    out = LaurentSeries.one()
    k = 0
    while k < len(letters):
        j = k
        while j < len(letters) and letters[j] == letters[k]:
            j += 1
        out = out * quantum_factorial(j - k, datum.norm(letters[k]))
        k = j
    return out


def l_pi(pi, cutoff):
    """The layer scalar: prod_r prod_{s=1..p_r} 1/(1 - q_{beta_r}^{2s}).

    `pi` is any object with a `parts` attribute listing (root, multiplicity)
    pairs, the root carrying its norm beta.beta via `.norm`.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    out = LaurentSeries.one(cutoff)
    for root, p in pi.parts:
        step = 2 * q_beta_exponent(root.norm)
        for s in range(1, p + 1):
            out = out * LaurentSeries.geometric(step * s, cutoff)
    return out
