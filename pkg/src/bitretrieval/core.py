"""Sequence algebra, problem instances and exact verification.

The objects here are deliberately small: +-1 sequences, their periodic
autocorrelations, the +-2 noise patterns, and the three instance kinds
(exact, noisy, fixed-precision).  All verification is done in integer
arithmetic so that a reported solution is never a floating-point artifact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np


def reflect(values: np.ndarray) -> np.ndarray:
    """Index reflection x_k -> x_{-k mod n}."""
    return np.concatenate((values[:1], values[:0:-1]))


class InvalidInstanceError(ValueError):
    """Raised when sequence or instance data violates a structural invariant."""


class Kind(str, enum.Enum):
    EXACT = "exact"
    NOISY = "noisy"
    FIXED_PRECISION = "fixed_precision"


def _as_int_array(values, name):
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise InvalidInstanceError(f"{name} must be one-dimensional")
    if not np.issubdtype(arr.dtype, np.integer):
        rounded = np.rint(arr)
        if not np.array_equal(rounded, arr):
            raise InvalidInstanceError(f"{name} must contain integers")
        arr = rounded
    arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SignSequence:
    """Length-n sequence with entries in {-1, +1}."""

    values: np.ndarray

    def __post_init__(self):
        arr = _as_int_array(self.values, "sign sequence")
        if arr.size < 2:
            raise InvalidInstanceError("need n >= 2")
        if not np.all(np.abs(arr) == 1):
            raise InvalidInstanceError("entries must be -1 or +1")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.values.size

    def __eq__(self, other):
        return isinstance(other, SignSequence) and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    def to_bits(self) -> "BitSequence":
        return BitSequence((1 - self.values) // 2)


@dataclass(frozen=True, eq=False)
class BitSequence:
    """Length-n sequence with entries in {0, 1}; b_k = (1 - s_k)/2."""

    values: np.ndarray

    def __post_init__(self):
        arr = _as_int_array(self.values, "bit sequence")
        if arr.size < 1:
            raise InvalidInstanceError("need n >= 1")
        if not np.all((arr == 0) | (arr == 1)):
            raise InvalidInstanceError("entries must be 0 or 1")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __eq__(self, other):
        return isinstance(other, BitSequence) and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    def to_signs(self) -> SignSequence:
        return SignSequence(1 - 2 * self.values)


@dataclass(frozen=True, eq=False)
class Autocorrelation:
    """Length-n integer sequence a_0..a_{n-1}.

    Construction performs structural checks only; ``check_realizable`` tests
    the full set of invariants that a true autocorrelation of a +-1 sequence
    must satisfy.  The split matters: deliberately insoluble target data
    (used by several experiments) is structurally valid but not realizable.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = _as_int_array(self.values, "autocorrelation")
        if arr.size < 2:
            raise InvalidInstanceError("need n >= 2")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __eq__(self, other):
        return isinstance(other, Autocorrelation) and np.array_equal(self.values, other.values)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.values, reflect(self.values)))

    def check_realizable(self):
        """Raise unless a_0 = n, a_k = a_{n-k}, a_k == n (mod 4), sum a perfect square."""
        a, n = self.values, self.n
        if a[0] != n:
            raise InvalidInstanceError(f"a_0 = {a[0]} != n = {n}")
        if not self.is_symmetric():
            raise InvalidInstanceError("autocorrelation must satisfy a_k = a_{n-k}")
        if np.any((a - n) % 4 != 0):
            raise InvalidInstanceError("all a_k must be congruent to n mod 4")
        total = int(a.sum())
        if total < 0 or sq_isqrt(total) is None:
            raise InvalidInstanceError(f"sum of a_k is {total}, not a perfect square")


def sq_isqrt(total: int) -> Optional[int]:
    """Integer square root if total is a perfect square, else None."""
    if total < 0:
        return None
    r = math.isqrt(int(total))
    return r if r * r == total else None


@dataclass(frozen=True, eq=False)
class NoisePattern:
    """Symmetric pattern with e_0 = 0 and e_k = e_{n-k} = +-2."""

    values: np.ndarray

    def __post_init__(self):
        arr = _as_int_array(self.values, "noise pattern")
        n = arr.size
        if n < 2:
            raise InvalidInstanceError("need n >= 2")
        if arr[0] != 0:
            raise InvalidInstanceError("e_0 must be 0")
        if not np.all(np.abs(arr[1:]) == 2):
            raise InvalidInstanceError("e_k must be +-2 for k != 0")
        if not np.array_equal(arr[1:], arr[1:][::-1]):
            raise InvalidInstanceError("noise must satisfy e_k = e_{n-k}")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __eq__(self, other):
        return isinstance(other, NoisePattern) and np.array_equal(self.values, other.values)


@dataclass(frozen=True)
class Instance:
    """A bit retrieval problem: exact, noisy, or fixed-precision.

    data holds the integer (noisy) autocorrelation for the first two kinds,
    or the squared-magnitude array (length n//2 + 1, values hat n_q / sqrt(n))
    for the fixed-precision kind, in which case eta > 0 is required.
    """

    kind: Kind
    n: int
    data: Union[Autocorrelation, np.ndarray]
    eta: Optional[float] = None
    planted: Optional[SignSequence] = None
    meta: dict = field(default_factory=dict)

    @staticmethod
    def exact(a: Autocorrelation, planted=None, meta=None, validate=True) -> "Instance":
        if validate:
            a.check_realizable()
        return Instance(Kind.EXACT, a.n, a, None, planted, meta or {})

    @staticmethod
    def noisy(data: Autocorrelation, planted=None, meta=None, validate=True) -> "Instance":
        if validate:
            v, n = data.values, data.n
            if v[0] != n:
                raise InvalidInstanceError("noisy data must have n_0 = n")
            if not data.is_symmetric():
                raise InvalidInstanceError("noisy data must satisfy n_k = n_{n-k}")
            if np.any((v[1:] - n - 2) % 4 != 0):
                raise InvalidInstanceError("noisy data must satisfy n_k == n +- 2 (mod 4)")
        return Instance(Kind.NOISY, data.n, data, None, planted, meta or {})

    @staticmethod
    def fixed_precision(n, sq_magnitudes, eta, planted=None, meta=None) -> "Instance":
        if eta is None or eta <= 0:
            raise InvalidInstanceError("fixed-precision instances need eta > 0")
        mags = np.asarray(sq_magnitudes, dtype=np.float64)
        if mags.size != n // 2 + 1:
            raise InvalidInstanceError("need n//2 + 1 squared magnitudes")
        if np.any(mags < -eta):
            raise InvalidInstanceError("squared magnitudes must be >= -eta")
        mags = mags.copy()
        mags.setflags(write=False)
        return Instance(Kind.FIXED_PRECISION, int(n), mags, float(eta), planted, meta or {})


def autocorrelate(s: SignSequence) -> Autocorrelation:
    """Periodic autocorrelation a_k = sum_l s_l s_{l-k} (indices mod n), exact."""
    v = s.values
    n = v.size
    lin = np.correlate(v, v, mode="full")[n - 1 :]  # lag 0..n-1
    a = lin.copy()
    a[1:] += lin[1:][::-1]
    return Autocorrelation(a)


def bit_autocorrelate(b: BitSequence) -> np.ndarray:
    """Periodic autocorrelation of a 0/1 sequence; a'_0 = number of ones."""
    v = b.values
    n = v.size
    lin = np.correlate(v, v, mode="full")[n - 1 :]
    a = lin.copy()
    a[1:] += lin[1:][::-1]
    return a


def apply_noise(a: Autocorrelation, e: NoisePattern) -> Instance:
    """Noisy instance with data a + e."""
    if a.n != e.n:
        raise InvalidInstanceError(f"length mismatch: {a.n} vs {e.n}")
    return Instance.noisy(Autocorrelation(a.values + e.values))


def _spectrum_sq_magnitudes(values: np.ndarray) -> np.ndarray:
    """|s_hat_q|^2 for q = 0..n//2 of a real sequence (unitary normalization)."""
    f = np.fft.rfft(values.astype(np.float64))
    return (f.real**2 + f.imag**2) / values.size


def verify(candidate: SignSequence, instance: Instance) -> bool:
    """Exact solution test for any instance kind.

    Exact and noisy kinds use integer arithmetic throughout; the noisy test
    is existence of a valid quantized pattern, i.e. |n_k - a'_k| = 2 for all
    k != 0.  The fixed-precision test applies the eta band to the squared
    Fourier magnitudes.
    """
    if candidate.n != instance.n:
        raise InvalidInstanceError(f"length mismatch: {candidate.n} vs {instance.n}")
    if instance.kind == Kind.FIXED_PRECISION:
        mags = _spectrum_sq_magnitudes(candidate.values)
        return bool(np.all(np.abs(mags - instance.data) < instance.eta))
    a = autocorrelate(candidate).values
    target = instance.data.values
    if instance.kind == Kind.EXACT:
        return bool(np.array_equal(a, target))
    diff = target - a
    return diff[0] == 0 and bool(np.all(np.abs(diff[1:]) == 2))


def flip_compatible(s: SignSequence, e: NoisePattern, j: int) -> bool:
    """Is the single-flip modification of s still compatible with a(s) + e?"""
    if not 0 <= j < s.n:
        raise IndexError(f"flip index {j} out of range for n = {s.n}")
    if s.n != e.n:
        raise InvalidInstanceError("length mismatch")
    instance = apply_noise(autocorrelate(s), e)
    flipped = s.values.copy()
    flipped[j] = -flipped[j]
    return verify(SignSequence(flipped), instance)


def orbit(s: SignSequence):
    """All <= 4n images of s under cyclic shift, index reflection and negation."""
    v = s.values
    out = []
    for base in (v, v[::-1][np.r_[-1, 0 : v.size - 1]]):  # s_k and s_{-k}
        for r in range(v.size):
            shifted = np.roll(base, r)
            out.append(shifted)
            out.append(-shifted)
    return out

def canonical_orbit_rep(s: SignSequence) -> SignSequence:
    """Lexicographically smallest orbit member, with -1 ordered before +1.

    O(n^2); fine at experiment scale.  Use same_orbit for large n.
    """
    images = orbit(s)
    best = min(tuple(im.tolist()) for im in images)
    return SignSequence(np.array(best, dtype=np.int64))


def same_orbit(s1: SignSequence, s2: SignSequence) -> bool:
    """Orbit-equivalence test via circular cross-correlation (O(n log n))."""
    if s1.n != s2.n:
        return False
    n = s1.n
    f1 = np.fft.rfft(s1.values.astype(np.float64))
    for base in (s2.values, s2.values[::-1][np.r_[-1, 0 : n - 1]]):
        f2 = np.fft.rfft(base.astype(np.float64))
        # correlation c_r = sum_k s1_k base_{k-r}; a shift match gives c_r = +-n
        c = np.fft.irfft(f1 * np.conj(f2), n)
        if np.any(np.abs(np.abs(c) - n) < 0.5):
            return True
    return False
