"""Local stability of the model.

The vector field is affine in the state, so the Jacobian is a constant
matrix. Eigenvalues are obtained in closed form from the characteristic
cubic; entries that decouple from the rest of the matrix are peeled off
first so that (block-)triangular Jacobians, which every strike scenario
produces, get their diagonal entries back exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParameters, State, check_parameters, rhs

DEFAULT_TOL = 1e-9


class Verdict(str, enum.Enum):
    ASYMPTOTICALLY_STABLE = "AsymptoticallyStable"
    MARGINAL = "Marginal"
    UNSTABLE = "Unstable"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CharacteristicPolynomial:
    """Monic cubic ``x**3 + c2*x**2 + c1*x + c0``."""

    c2: float
    c1: float
    c0: float

    def __call__(self, x):
        return ((x + self.c2) * x + self.c1) * x + self.c0

    def derivative(self, x):
        return (3 * x + 2 * self.c2) * x + self.c1

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c2, self.c1, self.c0)


@dataclass(frozen=True)
class StabilityReport:
    jacobian: np.ndarray
    poly: CharacteristicPolynomial
    eigenvalues: tuple[complex, complex, complex]
    verdict: Verdict
    routh_hurwitz_stable: bool


def jacobian(params: ModelParameters) -> np.ndarray:
    """Analytic Jacobian: outflow rates on the diagonal, inbound movement
    rates (positive) off it. Rows and columns are ordered f, s, p."""
    p = check_parameters(params)
    return np.array(
        [
            [-(p.d + p.alpha_fs + p.alpha_fp + p.lambda_f), p.alpha_sf, p.alpha_pf],
            [p.alpha_fs, -(p.d + p.alpha_sf + p.alpha_sp + p.lambda_s), p.alpha_ps],
            [p.alpha_fp, p.alpha_sp, -(p.d + p.alpha_pf + p.alpha_ps + p.lambda_p)],
        ],
        dtype=float,
    )


def jacobian_fd(params: ModelParameters, state=State(0.0, 0.0, 0.0), h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of :func:`~strikemodel.model.rhs`."""
    if not h > 0:
        raise ValueError("h must be > 0")
    check_parameters(params)
    x0 = np.asarray(state, dtype=float)
    J = np.empty((3, 3))
    for j in range(3):
        up, down = x0.copy(), x0.copy()
        up[j] += h
        down[j] -= h
        # divide by the step actually represented, not 2h
        J[:, j] = (np.array(rhs(params, up)) - np.array(rhs(params, down))) / (up[j] - down[j])
    return J


def characteristic_coefficients(j) -> CharacteristicPolynomial:
    """Coefficients of ``det(x I - J)`` from trace, principal minors and
    determinant."""
    a = np.asarray(j, dtype=float)
    trace = a[0, 0] + a[1, 1] + a[2, 2]
    minors = (
        (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
        + (a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0])
        + (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
    )
    det = (
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )
    return CharacteristicPolynomial(c2=float(-trace), c1=float(minors), c0=float(-det))


def _sort_key(z: complex):
    return (z.real, z.imag)


def _polish(poly: CharacteristicPolynomial, z: complex, steps: int = 2) -> complex:
    # Newton refinement, kept only while the residual shrinks.
    best, best_res = z, abs(poly(z))
    for _ in range(steps):
        dp = poly.derivative(best)
        if dp == 0 or best_res == 0:
            break
        cand = best - poly(best) / dp
        res = abs(poly(cand))
        if not res < best_res:
            break
        best, best_res = cand, res
    return best


def solve_cubic(c2: float, c1: float, c0: float) -> tuple[complex, complex, complex]:
    """Roots of ``x**3 + c2 x**2 + c1 x + c0``, sorted by (real, imag).

    Uses the depressed cubic ``t**3 + p t + q`` with ``x = t - c2/3``: the
    trigonometric form when there are three distinct real roots, Cardano's
    formula otherwise.
    """
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3

    if p == 0.0 and q == 0.0:
        ts = [0.0, 0.0, 0.0]
    elif disc < 0.0:
        # p < 0 here
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = max(-1.0, min(1.0, 3.0 * q / (2.0 * p) * math.sqrt(-3.0 / p)))
        theta = math.acos(arg) / 3.0
        ts = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
    else:
        sq = math.sqrt(disc)
        u = float(np.cbrt(-q / 2.0 + sq))
        v = float(np.cbrt(-q / 2.0 - sq))
        re = -(u + v) / 2.0
        im = math.sqrt(3.0) / 2.0 * (u - v)
        ts = [u + v, complex(re, im), complex(re, -im)]

    poly = CharacteristicPolynomial(c2, c1, c0)
    if isinstance(ts[1], complex):
        real = complex(_polish(poly, complex(ts[0] - shift)).real, 0.0)
        upper = _polish(poly, ts[1] - shift)
        roots = [real, upper, upper.conjugate()]
    else:
        roots = [complex(_polish(poly, complex(t - shift)).real, 0.0) for t in ts]
    return tuple(sorted(roots, key=_sort_key))


def _eig2(a: np.ndarray) -> list[complex]:
    (w, x), (y, z) = a
    if x == 0.0 or y == 0.0:
        return [complex(w), complex(z)]
    half_tr = (w + z) / 2.0
    disc = ((w - z) / 2.0) ** 2 + x * y
    det = w * z - x * y
    if disc >= 0.0:
        r1 = half_tr + math.copysign(math.sqrt(disc), half_tr)
        r2 = det / r1 if r1 != 0.0 else half_tr - math.copysign(math.sqrt(disc), half_tr)
        return [complex(r1), complex(r2)]
    im = math.sqrt(-disc)
    return [complex(half_tr, im), complex(half_tr, -im)]


def _isolated_index(a: np.ndarray) -> int | None:
    n = a.shape[0]
    for i in range(n):
        off = [k for k in range(n) if k != i]
        if all(a[i, k] == 0.0 for k in off) or all(a[k, i] == 0.0 for k in off):
            return i
    return None


def _eig(a: np.ndarray) -> list[complex]:
    n = a.shape[0]
    if n == 1:
        return [complex(a[0, 0])]
    i = _isolated_index(a)
    if i is not None:
        keep = [k for k in range(n) if k != i]
        return [complex(a[i, i])] + _eig(a[np.ix_(keep, keep)])
    if n == 2:
        return _eig2(a)
    return list(solve_cubic(*characteristic_coefficients(a).as_tuple()))


def eigenvalues_3x3(j) -> tuple[complex, complex, complex]:
    """Eigenvalues of a 3x3 matrix, sorted by ascending real then imaginary
    part.

    A row or column whose off-diagonal entries are all zero contributes its
    diagonal entry directly and the rest is handled as a smaller problem;
    a fully coupled matrix goes through :func:`solve_cubic`.
    """
    a = np.asarray(j, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    return tuple(sorted(_eig(a), key=_sort_key))


def classify(eigenvalues, tol: float = DEFAULT_TOL) -> Verdict:
    if tol < 0:
        raise ValueError("tol must be >= 0")
    top = max(complex(z).real for z in eigenvalues)
    if top < -tol:
        return Verdict.ASYMPTOTICALLY_STABLE
    if top > tol:
        return Verdict.UNSTABLE
    return Verdict.MARGINAL


def routh_hurwitz(poly: CharacteristicPolynomial) -> bool:
    """All roots of the monic cubic lie in the open left half-plane iff
    ``c2 > 0``, ``c0 > 0`` and ``c2 c1 > c0``."""
    return poly.c2 > 0 and poly.c0 > 0 and poly.c2 * poly.c1 > poly.c0


def analyze_stability(params: ModelParameters, tol: float = DEFAULT_TOL) -> StabilityReport:
    J = jacobian(params)
    poly = characteristic_coefficients(J)
    eig = eigenvalues_3x3(J)
    return StabilityReport(
        jacobian=J,
        poly=poly,
        eigenvalues=eig,
        verdict=classify(eig, tol),
        routh_hurwitz_stable=routh_hurwitz(poly),
    )
