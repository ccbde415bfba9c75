"""Exact degree-diameter bound calculators.

All values are Python integers.  The one irrational constant, the even-k
``c = 2*cbrt(g) + 6``, is kept symbolic and only rounded up when a bound is
produced, so the results stay valid strict upper bounds.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import isqrt

BUILTIN_P = {0: 4, 1: 6, 2: 7}


def iroot_floor(x: int, k: int) -> int:
    """Largest integer y with y**k <= x (x >= 0), by binary search."""
    if x < 0:
        raise ValueError("iroot_floor needs x >= 0")
    lo, hi = 0, 1
    while hi ** k <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** k <= x:
            lo = mid
        else:
            hi = mid
    return lo


def iroot_ceil(x: int, k: int) -> int:
    y = iroot_floor(x, k)
    return y if y ** k == x else y + 1


def moore(delta: int, l: int) -> int:
    """1 + delta + delta(delta-1) + ... + delta(delta-1)^(l-1)."""
    if delta < 3 or l < 0:
        raise ValueError(f"moore needs delta >= 3 and l >= 0, got ({delta}, {l})")
    return 1 + delta * sum((delta - 1) ** i for i in range(l))


@dataclass(frozen=True)
class CubeRootConstant:
    """The exact real number ``offset + coeff * cbrt(radicand)``."""

    offset: int
    coeff: int = 0
    radicand: int = 0

    def exact(self) -> int | None:
        root = iroot_floor(self.radicand, 3)
        if root ** 3 == self.radicand:
            return self.offset + self.coeff * root
        return None

    def ceil_times(self, K: int) -> int:
        """ceil(K * self) for an integer K >= 0."""
        return K * self.offset + iroot_ceil(self.coeff ** 3 * K ** 3 * self.radicand, 3)

    def __float__(self) -> float:
        return self.offset + self.coeff * self.radicand ** (1 / 3)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.exact() == other
        if isinstance(other, CubeRootConstant):
            return (self.offset, self.coeff, self.radicand) == (other.offset, other.coeff, other.radicand)
        return NotImplemented

    def __hash__(self):
        return hash((self.offset, self.coeff, self.radicand))

    def __str__(self):
        ex = self.exact()
        if ex is not None:
            return str(ex)
        return f"{self.coeff}*cbrt({self.radicand})+{self.offset}"


def _ceil_cbrt_sq_plus_sqrt(g: int) -> int:
    """ceil(g^(2/3) + g^(1/2)) exactly.

    N >= cbrt(g^2) + sqrt(g)  iff  (N - sqrt g)^3 >= g^2  iff
    A >= B*sqrt(g) with A = N^3 + 3Ng - g^2 and B = 3N^2 + g.
    """
    N = iroot_floor(g * g, 3) + isqrt(g)
    while True:
        A = N ** 3 + 3 * N * g - g * g
        B = 3 * N * N + g
        if A >= 0 and A * A >= B * B * g:
            return N
        N += 1


def params_ell_c(g: int, k_parity: str) -> tuple[int, CubeRootConstant]:
    if g < 0:
        raise ValueError("g must be non-negative")
    if k_parity == "even":
        return _ceil_cbrt_sq_plus_sqrt(g) + 6, CubeRootConstant(6, 2, g)
    if k_parity == "odd":
        ell = iroot_ceil(42 * g, 2) + 33
        return ell, CubeRootConstant(2 * ell + 2 * g - 1)
    raise ValueError(f"k_parity must be 'even' or 'odd', got {k_parity!r}")


def parity(k: int) -> str:
    return "even" if k % 2 == 0 else "odd"


def thm_main_upper(g: int, delta: int, k: int) -> int:
    """Integer U with |V(G)| < U for every graph of Euler genus <= g,
    maximum degree ``delta`` and diameter ``k``."""
    if delta < 3 or k < 2 or g < 0:
        raise ValueError(f"need g >= 0, delta >= 3, k >= 2; got ({g}, {delta}, {k})")
    ell, c = params_ell_c(g, parity(k))
    h = k // 2
    M = moore(delta, h - 1)
    lead = c.ceil_times((2 * ell + 1) * (delta - 1) ** h)
    return lead + (2 * ell + 1) * (2 * k + 1) * (g + ell) * M + ell * (3 + 2 * g) * k + ell


def min_p(g: int) -> int:
    """Smallest p with p >= sqrt(6g + 9)."""
    return iroot_ceil(6 * g + 9, 2)


def eq2_lower(g: int, delta: int, k: int, p: int) -> int:
    """Order guaranteed by K_p with a depth-(k-1)/2 tree hung at each vertex."""
    if k < 3 or k % 2 == 0:
        raise ValueError(f"k must be odd and >= 3, got {k}")
    if not 3 <= p <= delta:
        raise ValueError(f"need 3 <= p <= delta, got p={p}, delta={delta}")
    if p < min_p(g):
        raise ValueError(f"K_{p} is too small to claim Euler genus {g}; need p >= {min_p(g)}")
    return p * (delta - p + 1) * (delta - 1) ** ((k - 3) // 2)


@dataclass(frozen=True)
class BoundReport:
    g: int
    delta: int
    k: int
    moore_k: int
    ell: int
    c: str
    c_float: float
    thm_main_upper: int
    asymptotic_shape: str
    asymptotic_precondition: str
    preconditions_possibly_unmet: bool
    p: int | None = None
    eq2_lower: int | None = None
    construction_order: int | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def bounds_report(g: int, delta: int, k: int) -> BoundReport:
    from .constructions import construction_order

    ell, c = params_ell_c(g, parity(k))
    if k % 2 == 0:
        shape = "c*(g+1)*(delta-1)^floor(k/2)"
        pre = "delta >= c*(g^(2/3)+1)*k"
        unmet = delta < k
    else:
        shape = "c*(g^(3/2)+1)*(delta-1)^floor(k/2)"
        pre = "delta >= 2k+1"
        unmet = delta < 2 * k + 1
    extra = {}
    if k % 2 == 1:
        p = BUILTIN_P.get(g, min_p(g))
        extra["p"] = p
        if 3 <= p <= delta:
            extra["eq2_lower"] = eq2_lower(g, delta, k, p)
            if g in BUILTIN_P:
                extra["construction_order"] = construction_order(p, delta, k)
    return BoundReport(
        g=g, delta=delta, k=k,
        moore_k=moore(delta, k),
        ell=ell, c=str(c), c_float=float(c),
        thm_main_upper=thm_main_upper(g, delta, k),
        asymptotic_shape=shape,
        asymptotic_precondition=pre,
        preconditions_possibly_unmet=unmet,
        **extra,
    )
