"""E-polynomials of projective spaces, Grassmannians and skew-form rank
strata, together with the stringy E-functions, discrepancies and local
stringy weights of the loci of bounded-rank skew forms on an odd-dimensional
space.

Conventions: everything is a function of the single variable q, strata of
skew forms are keyed by rank 2i, and the ambient dimension n is odd unless a
function says otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qcore import (
    ONE, ZERO, QPoly, QRational, NotDivisible, NotPolynomial,
    gauss_binomial, geometric_series, monomial, poly_exact_div,
)


class RangeError(ValueError):
    """A parameter fell outside the domain of the requested quantity."""


def _require(condition: bool, message: str):
    if not condition:
        raise RangeError(message)


@dataclass(frozen=True)
class PfaffianParams:
    """Dimension n of the underlying space (odd, >= 5) and the half-rank
    bound k of the locus of skew forms of rank <= 2k."""

    n: int
    k: int

    def __post_init__(self):
        _require(self.n >= 5 and self.n % 2 == 1,
                 f"n must be odd and >= 5, got {self.n}")
        _require(1 <= self.k <= (self.n - 1) // 2,
                 f"k must satisfy 1 <= k <= (n-1)/2, got k={self.k}, n={self.n}")

    @property
    def half_dim(self) -> int:
        return (self.n - 1) // 2


@dataclass(frozen=True)
class StratumContribution:
    """One summand of the stratified stringy E-function: the E-polynomial of
    a rank stratum times its local stringy weight."""

    rank_half: int
    stratum_E: QPoly
    weight: QRational
    product: QRational


def projective_E(k: int) -> QPoly:
    """E-polynomial of projective k-space: (q^(k+1) - 1)/(q - 1)."""
    _require(k >= 0, f"projective space needs k >= 0, got {k}")
    return geometric_series(k + 1)


def grassmannian_E(k: int, n: int) -> QPoly:
    """E-polynomial of the Grassmannian of k-planes in n-space."""
    _require(0 <= k <= n, f"need 0 <= k <= n, got k={k}, n={n}")
    return gauss_binomial(n, k, 1)


_NONDEG_CACHE: dict[int, QPoly] = {}


def nondeg_skew_E(i: int) -> QPoly:
    """E-polynomial of the nondegenerate skew forms on a 2i-dimensional
    space, up to scaling.

    Defined by the triangular system expressing the full space of nonzero
    skew forms on C^(2r) as the union of its rank strata; values are
    memoized (the cache is idempotent and safe for concurrent use).
    """
    _require(i >= 1, f"need i >= 1, got {i}")
    cached = _NONDEG_CACHE.get(i)
    if cached is not None:
        return cached
    for r in range(1, i + 1):
        if r in _NONDEG_CACHE:
            continue
        total = geometric_series(r * (2 * r - 1))
        for s in range(1, r):
            total = total - _NONDEG_CACHE[s] * grassmannian_E(2 * s, 2 * r)
        _NONDEG_CACHE[r] = total
    return _NONDEG_CACHE[i]


def rank_stratum_E(i: int, n: int) -> QPoly:
    """E-polynomial of the locus of skew forms of rank exactly 2i on
    n-space, up to scaling: a fibration over the Grassmannian of kernels."""
    _require(i >= 1 and 2 * i <= n, f"need 1 <= 2i <= n, got i={i}, n={n}")
    return nondeg_skew_E(i) * grassmannian_E(n - 2 * i, n)


def discrepancy(j: int, params: PfaffianParams) -> int:
    """Discrepancy of the divisor indexed by j in the blowup resolution of
    the rank <= 2k locus; defined for (n+3-2k)/2 <= j <= (n-1)/2."""
    n, k = params.n, params.k
    lo, hi = (n + 3 - 2 * k) // 2, (n - 1) // 2
    _require(lo <= j <= hi,
             f"divisor index {j} outside [{lo}, {hi}] for (n, k)=({n}, {k})")
    return (2 * j + 2 * k - n - 1) * (2 * j - 1) // 2 - 1


def _rank_locus_weight(p: int, k: int, n: int) -> QPoly:
    # prod_{j=k+1-p}^{(n-1)/2-p} (q^2j - 1)/(q^(2j-2k+2p) - 1); p = 0 gives
    # the weight-normalized product appearing in the closed stringy formula.
    if k + 1 - p <= 0 <= (n - 1) // 2 - p:
        return ZERO  # the numerator contains the factor q^0 - 1
    num = ONE
    den = ONE
    for j in range(k + 1 - p, (n - 1) // 2 - p + 1):
        num = num * (monomial(2 * j) - 1)
        den = den * (monomial(2 * j - 2 * k + 2 * p) - 1)
    try:
        return poly_exact_div(num, den)
    except NotDivisible as exc:
        raise NotPolynomial(num, den, f"local weight (p={p}, k={k}, n={n})") from exc


def local_contribution(p: int, k: int, n: int) -> QPoly:
    """Local stringy weight of a point on the rank-2p stratum inside the
    rank <= 2k locus on odd n-space."""
    _require(n >= 5 and n % 2 == 1, f"n must be odd and >= 5, got {n}")
    _require(1 <= p <= k <= (n - 1) // 2,
             f"need 1 <= p <= k <= (n-1)/2, got p={p}, k={k}, n={n}")
    return _rank_locus_weight(p, k, n)


def pf_stringy_closed(params: PfaffianParams) -> QPoly:
    """Stringy E-function of the rank <= 2k locus, closed product form:
    (q^(nk) - 1)/(q - 1) times a Gaussian-binomial-in-q^2 style product."""
    n, k = params.n, params.k
    return geometric_series(n * k) * _rank_locus_weight(0, k, n)


def pf_stringy_strata(params: PfaffianParams) -> tuple[StratumContribution, ...]:
    """The stratum-by-stratum summands whose total is the stringy E-function."""
    n, k = params.n, params.k
    out = []
    for i in range(1, k + 1):
        stratum = rank_stratum_E(i, n)
        weight = local_contribution(i, k, n)
        out.append(StratumContribution(
            rank_half=i,
            stratum_E=stratum,
            weight=QRational(weight),
            product=QRational(stratum * weight),
        ))
    return tuple(out)


def pf_stringy_recursive(params: PfaffianParams) -> QPoly:
    """Stringy E-function assembled stratum by stratum; must agree with the
    closed form (that agreement is the inductive content of the formula)."""
    total = ZERO
    for contribution in pf_stringy_strata(params):
        total = total + contribution.stratum_E * contribution.weight.as_poly()
    return total


def pf_stringy_rodland(r: int) -> QPoly:
    """Stringy E-function of the degenerate-form hypersurface slice in the
    classical corank >= 3 case, n = 2r + 1:
    ((q^2r - 1)(q^(2r^2-r-1) - 1)) / ((q^2 - 1)(q - 1))."""
    _require(r >= 2, f"need r >= 2, got {r}")
    num = (monomial(2 * r) - 1) * (monomial(2 * r * r - r - 1) - 1)
    den = (monomial(2) - 1) * (monomial(1) - 1)
    try:
        return poly_exact_div(num, den)
    except NotDivisible as exc:
        raise NotPolynomial(num, den, f"closed stringy form (r={r})") from exc


def stringy_degree(n: int, k: int) -> int:
    """Degree of the stringy E-function of the rank <= 2k locus."""
    return 2 * n * k - 2 * k * k - k - 1


def euler_characteristic(params: PfaffianParams) -> int:
    """Value of the stringy E-function at q = 1, as the exact limit
    n*k * prod_{j=k+1}^{(n-1)/2} j/(j-k)."""
    n, k = params.n, params.k
    value = Fraction(n * k)
    for j in range(k + 1, (n - 1) // 2 + 1):
        value *= Fraction(j, j - k)
    assert value.denominator == 1
    return value.numerator
