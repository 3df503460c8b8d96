"""Parameter-space landscapes and squeezing optimization.

Grids over (|alpha|, phi) are evaluated through the same closed forms as the
single-point path, vectorized with numpy.  Heralds that are analytically
forbidden at a grid point (zero norm) get probability 0 and a NaN sentinel in
variance grids; every consumer here treats NaN as "no state".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _nm_minimize

from .errors import AxisNotSymmetric, QuantityMismatch
from .interferometer import derived_coeffs
from .moments import NORM_FLOOR, squeeze_db
from .states import PATTERNS, normalization, pattern_for_label, row_coefficients

QUANTITIES = ("probability", "var_x", "var_p")

ALPHA_BOX = (0.0, 10.0)          # optimization constraint box
PHI_BOX = (0.0, 2.0 * math.pi)


@dataclass(frozen=True)
class ScanGrid:
    """Sampled landscape of one quantity over (|alpha|, phi)."""
    alpha_axis: np.ndarray
    phi_axis: np.ndarray
    values: np.ndarray          # shape (len(alpha_axis), len(phi_axis))
    quantity: str

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise QuantityMismatch(f"unknown quantity {self.quantity!r}")
        if np.any(np.diff(self.alpha_axis) <= 0) or np.any(np.diff(self.phi_axis) <= 0):
            raise ValueError("axes must be strictly increasing")
        if self.values.shape != (len(self.alpha_axis), len(self.phi_axis)):
            raise ValueError("values shape does not match axes")


@dataclass(frozen=True)
class OptResult:
    """Located variance minimum inside the constraint box."""
    alpha_opt: float
    phi_opt: float
    var_min: float
    squeeze_db: float
    probability_at_opt: float
    evaluations: int


def _family_index(family) -> int:
    if isinstance(family, str):
        return PATTERNS[pattern_for_label(family)]
    index = int(family)
    if index not in range(1, 17):
        raise ValueError(f"family index {index} outside 1..16")
    return index


def _binom(n: int, k: int) -> float:
    return float(math.comb(n, k))


def _antinormal(hr: int, k: int, l: int, hl: int, b_pow, bc_pow):
    """<beta| a^hr a^dagger^k a^l a^dagger^hl |beta> from power tables.

    ``b_pow[q]`` and ``bc_pow[p]`` hold beta**q and conj(beta)**p on the grid.
    """
    total = 0.0
    for i in range(min(hr, k) + 1):
        ci = math.factorial(i) * _binom(hr, i) * _binom(k, i)
        for j in range(min(l, hl) + 1):
            cj = ci * math.factorial(j) * _binom(l, j) * _binom(hl, j)
            for r in range(min(hr - i, hl - j) + 1):
                cr = cj * math.factorial(r) * _binom(hr - i, r) * _binom(hl - j, r)
                p = (k - i) + (hl - j - r)
                q = (hr - i - r) + (l - j)
                total = total + cr * bc_pow[p] * b_pow[q]
    return total


def _mirrored_axis(lo: float, hi: float, n: int) -> np.ndarray:
    """linspace(lo, hi, n) with the mirror pairing about the midpoint exact."""
    ax = np.linspace(lo, hi, n)
    total = lo + hi
    for i in range(n // 2):
        ax[n - 1 - i] = total - ax[i]
    return ax


def _phase_factors(phi_axis: np.ndarray, mirror: bool) -> np.ndarray:
    """e^{-i phi} along the axis.

    For a full-circle axis the upper half is assigned the exact conjugates of
    the lower half, so conjugation symmetry (and with it the phi -> 2 pi - phi
    symmetry of every derived grid) holds bit-exactly rather than to rounding.
    """
    phi = np.asarray(phi_axis, dtype=float)
    n = len(phi)
    two_pi = 2.0 * math.pi
    full_circle = (n >= 2 and abs(phi[0] + phi[-1] - two_pi) < 1e-9
                   and np.max(np.abs(phi + phi[::-1] - two_pi)) < 1e-9)
    if not (mirror and full_circle):
        return np.exp(-1j * phi)
    e = np.empty(n, dtype=complex)
    half = (n + 1) // 2
    e[:half] = np.exp(-1j * phi[:half])
    for i in range(n // 2):
        e[n - 1 - i] = e[i].conjugate()
    return e


def _fields(index: int, alpha_axis: np.ndarray, phi_axis: np.ndarray,
            phase: np.ndarray | None = None):
    """Probability, var_x, var_p arrays of shape (len(alpha), len(phi))."""
    alpha = np.asarray(alpha_axis, dtype=float).reshape(-1, 1)
    phi = np.asarray(phi_axis, dtype=float).reshape(1, -1)
    shape = (alpha.shape[0], phi.shape[1])

    e = (np.exp(-1j * phi) if phase is None
         else np.asarray(phase, dtype=complex).reshape(1, -1))
    diag = (e + 2.0) / 3.0
    off = (e - 1.0) / 3.0
    U = np.empty((3, 3) + e.shape, dtype=complex)
    for i in range(3):
        for j in range(3):
            U[i, j] = diag if i == j else off
    D = derived_coeffs(U)

    cs = row_coefficients(index, U, D, alpha.astype(complex))
    seed = diag * alpha
    norm = normalization(*cs, seed) + np.zeros(shape)
    prob = norm * np.exp((np.abs(diag) ** 2 - 1.0) * alpha ** 2)
    forbidden = norm < NORM_FLOOR

    prob = np.broadcast_to(prob, shape).copy()
    deg = max((d for d, c in enumerate(cs) if np.any(c != 0)), default=0)
    if deg == 0:
        # purely coherent row: both quadrature variances are exactly vacuum
        var_x = np.full(shape, 0.5)
        var_p = np.full(shape, 0.5)
        var_x[forbidden] = np.nan
        var_p[forbidden] = np.nan
        return prob, var_x, var_p

    # cumulative products keep the power tables conjugation-exact
    b_pow = [np.ones(shape, dtype=complex)]
    for _ in range(deg + 2):
        b_pow.append(b_pow[-1] * seed)
    bc_pow = [np.conjugate(p) for p in b_pow]

    def weighted(k: int, l: int):
        total = np.zeros(shape, dtype=complex)
        for hl, c_l in enumerate(cs):
            if not np.any(c_l != 0):
                continue
            for hr, c_r in enumerate(cs):
                if not np.any(c_r != 0):
                    continue
                total = total + (c_l * np.conjugate(c_r)
                                 * _antinormal(hr, k, l, hl, b_pow, bc_pow))
        return total

    with np.errstate(invalid="ignore", divide="ignore"):
        safe_norm = np.where(forbidden, 1.0, norm)
        first = weighted(0, 1) / safe_norm
        n_bar = np.real(weighted(1, 1)) / safe_norm
        a_sq = weighted(0, 2) / safe_norm
        var_x = 0.5 + n_bar + np.real(a_sq) - 2.0 * np.real(first) ** 2
        var_p = 0.5 + n_bar - np.real(a_sq) - 2.0 * np.imag(first) ** 2

    var_x = np.broadcast_to(var_x, shape).copy()
    var_p = np.broadcast_to(var_p, shape).copy()
    var_x[forbidden] = np.nan
    var_p[forbidden] = np.nan
    return prob, var_x, var_p


def evaluate_point(family, alpha_mag: float, phi: float):
    """(probability, var_x, var_p) at a single parameter point."""
    index = _family_index(family)
    prob, var_x, var_p = _fields(index, np.array([alpha_mag]), np.array([phi]))
    return float(prob[0, 0]), float(var_x[0, 0]), float(var_p[0, 0])


def scan(family, quantity: str, alpha_range=ALPHA_BOX, phi_range=PHI_BOX,
         resolution: int | tuple[int, int] = 200) -> ScanGrid:
    """Dense landscape of one quantity for one family."""
    if quantity not in QUANTITIES:
        raise QuantityMismatch(f"unknown quantity {quantity!r}")
    index = _family_index(family)
    if isinstance(resolution, int):
        res_a = res_p = resolution
    else:
        res_a, res_p = resolution
    if res_a < 2 or res_p < 2:
        raise ValueError("resolution must be at least 2 per axis")
    alpha_axis = np.linspace(alpha_range[0], alpha_range[1], res_a)
    phi_axis = _mirrored_axis(phi_range[0], phi_range[1], res_p)
    phase = _phase_factors(phi_axis, mirror=True)
    prob, var_x, var_p = _fields(index, alpha_axis, phi_axis, phase)
    values = {"probability": prob, "var_x": var_x, "var_p": var_p}[quantity]
    return ScanGrid(alpha_axis, phi_axis, values, quantity)


def feasibility_mask(grid: ScanGrid) -> np.ndarray:
    """True where the x-quadrature variance is strictly below vacuum (0.5)."""
    if grid.quantity != "var_x":
        raise QuantityMismatch(f"need a var_x grid, got {grid.quantity!r}")
    with np.errstate(invalid="ignore"):
        return grid.values < 0.5


def minimize_variance(family, coarse_resolution: int = 400,
                      max_refine_evals: int = 5000) -> OptResult:
    """Minimum x-quadrature variance over the constraint box.

    Two stages: a coarse grid scan (ties broken toward smaller |alpha|, then
    smaller phi), then a bounded Nelder-Mead refinement started at the best
    coarse cell.  Both stages are deterministic.
    """
    index = _family_index(family)
    if index <= 4:
        # coherent family: variance is 0.5 identically
        prob, _, _ = _fields(index, np.array([0.0]), np.array([0.0]))
        return OptResult(0.0, 0.0, 0.5, 0.0, float(prob[0, 0]), 0)

    alpha_axis = np.linspace(*ALPHA_BOX, coarse_resolution)
    phi_axis = np.linspace(*PHI_BOX, coarse_resolution)
    _, var_x, _ = _fields(index, alpha_axis, phi_axis)
    filled = np.where(np.isnan(var_x), np.inf, var_x)
    flat_best = int(np.argmin(filled))          # row-major: alpha ties first
    ia, ip = np.unravel_index(flat_best, filled.shape)
    x0 = np.array([alpha_axis[ia], phi_axis[ip]])

    def objective(x):
        _, vx, _ = _fields(index, np.array([x[0]]), np.array([x[1]]))
        v = vx[0, 0]
        return 1e300 if np.isnan(v) else float(v)

    result = _nm_minimize(
        objective, x0, method="Nelder-Mead",
        bounds=[ALPHA_BOX, PHI_BOX],
        options={"xatol": 1e-10, "fatol": 1e-10, "maxfev": max_refine_evals},
    )
    best = min(float(result.fun), float(filled[ia, ip]))
    a_opt, p_opt = (float(result.x[0]), float(result.x[1])) \
        if float(result.fun) <= float(filled[ia, ip]) else (float(x0[0]), float(x0[1]))
    prob, _, _ = _fields(index, np.array([a_opt]), np.array([p_opt]))
    return OptResult(
        alpha_opt=a_opt,
        phi_opt=p_opt,
        var_min=best,
        squeeze_db=squeeze_db(best),
        probability_at_opt=float(prob[0, 0]),
        evaluations=coarse_resolution * coarse_resolution + int(result.nfev),
    )


def symmetry_report(grid: ScanGrid, axis_tol: float = 1e-9) -> float:
    """Largest |value(phi) - value(2 pi - phi)| over the grid.

    Requires the phi axis to span [0, 2 pi] and mirror onto itself about pi.
    NaN sentinels must mirror onto NaN sentinels; a one-sided NaN counts as
    infinite asymmetry.
    """
    phi = grid.phi_axis
    two_pi = 2.0 * math.pi
    if abs(phi[0]) > axis_tol or abs(phi[-1] - two_pi) > axis_tol:
        raise AxisNotSymmetric("phi axis must span [0, 2 pi]")
    if np.max(np.abs(phi + phi[::-1] - two_pi)) > axis_tol:
        raise AxisNotSymmetric("phi axis points must mirror about pi")
    v = grid.values
    w = v[:, ::-1]
    nan_v = np.isnan(v)
    nan_w = np.isnan(w)
    if np.any(nan_v != nan_w):
        return float("inf")
    diff = np.abs(v - w)
    diff[nan_v] = 0.0
    return float(np.max(diff)) if diff.size else 0.0
