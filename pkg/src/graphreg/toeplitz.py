"""Unbounded Toeplitz operators with rational symbol p/q.

For coprime polynomials p, q with q zero-free in the open unit disc,
|p|² + |q|² is strictly positive on the circle and factors as |r|² with
r zero-free in the closed disc (spectral factorization via the root
pairing λ ↔ 1/λ̄ of the associated Laurent polynomial).  With f = q/r
and g = p/r the transform elements of T_{p/q} are Toeplitz products

    a = T_f T_f̄,   a_* = 1 - T_g T_ḡ,   b = T_g T_f̄,

all inside the Toeplitz algebra, so the operator is always *associated*.
It is *affiliated* precisely when q has no zero on the circle; a zero
λ there is witnessed by the character T_φ + K ↦ φ(λ), which kills
|f(λ)|² and with it the density of a·T.

Truncations only converge strongly, so matrix identities are always
measured on the central block with a decay-in-N requirement.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .config import DEFAULT, Config
from .errors import CircleRoot, InnerRoot, NotCoprime


def _trim(coeffs) -> np.ndarray:
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    nz = np.nonzero(np.abs(c) > 0)[0]
    return c[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)


def _sylvester_resultant(p: np.ndarray, q: np.ndarray) -> complex:
    n, m = len(p) - 1, len(q) - 1
    if n == 0 or m == 0:
        return 1.0 + 0j  # a nonzero constant is coprime to everything
    s = np.zeros((n + m, n + m), dtype=complex)
    for i in range(m):
        s[i, i : i + n + 1] = p[::-1]
    for i in range(n):
        s[m + i, i : i + m + 1] = q[::-1]
    return complex(np.linalg.det(s))


def check_coprime(p, q, cfg: Config = DEFAULT):
    p, q = _trim(p), _trim(q)
    if np.all(p == 0) or np.all(q == 0):
        other = q if np.all(p == 0) else p
        if len(other) > 1:
            raise NotCoprime("zero polynomial shares every factor")
        return
    pn = p / np.abs(p).max()
    qn = q / np.abs(q).max()
    if abs(_sylvester_resultant(pn, qn)) <= cfg.coprime_tol:
        raise NotCoprime("resultant vanishes; polynomials share a root")


def circle_samples(coeffs, m: int) -> np.ndarray:
    z = np.exp(2j * np.pi * np.arange(m) / m)
    return npoly.polyval(z, _trim(coeffs))


def fejer_riesz(p, q, cfg: Config = DEFAULT) -> np.ndarray:
    """Spectral factor r with |p|²+|q|² = |r|² on the circle.

    r has degree max(deg p, deg q), no zeros in the closed unit disc, and
    the phase is fixed so that q(0)/r(0) > 0.  Roots of the Laurent
    polynomial within ``root_circle_tol`` of the circle abort the
    factorization: under coprimality they can only arise from
    ill-conditioning.
    """
    p, q = _trim(p), _trim(q)
    check_coprime(p, q, cfg)
    d = max(len(p), len(q)) - 1
    if d > cfg.max_poly_degree:
        raise ValueError(f"degree {d} exceeds the cap {cfg.max_poly_degree}")
    m = cfg.circle_samples
    lvals = np.abs(circle_samples(p, m)) ** 2 + np.abs(circle_samples(q, m)) ** 2
    if lvals.min() <= 1e-10:
        raise NotCoprime("|p|^2+|q|^2 reaches zero on the circle")
    if d == 0:
        gamma = np.sqrt(lvals.mean())
        ph = q[0] / abs(q[0])
        return np.array([gamma * ph])
    # Laurent coefficients c_k of p p~ + q q~,  k = -d..d
    c = np.zeros(2 * d + 1, dtype=complex)
    for coeffs in (p, q):
        a = coeffs
        for k in range(-d, d + 1):
            acc = 0.0 + 0j
            for j in range(len(a)):
                if 0 <= j - k < len(a):
                    acc += a[j] * np.conj(a[j - k])
            c[k + d] += acc
    roots = np.roots(c[::-1])  # roots of z^d * L(z)
    if np.any(np.abs(np.abs(roots) - 1.0) < cfg.root_circle_tol):
        raise CircleRoot("Laurent factor has a root too close to the circle")
    outer = roots[np.abs(roots) > 1.0]
    if len(outer) != d:
        raise CircleRoot(f"expected {d} roots outside the circle, got {len(outer)}")
    r = np.array([1.0 + 0j])
    for lam in sorted(outer, key=lambda z: (z.real, z.imag)):
        r = npoly.polymul(r, np.array([1.0, -1.0 / lam]))
    rvals = np.abs(circle_samples(r, m)) ** 2
    gamma = np.sqrt(np.mean(lvals / rvals))
    qq0 = npoly.polyval(0.0, q)
    phase = qq0 / abs(qq0)  # q(0) != 0 since q has no root in the open disc
    return r * gamma * phase


@dataclass
class TrigData:
    """Validated factorization data for T_{p/q} at truncation size N."""

    p: np.ndarray
    q: np.ndarray
    r: np.ndarray
    n: int
    factor_residual: float
    unit_residual: float
    r_root_min_modulus: float
    f0: complex

    @property
    def ok(self) -> bool:
        return (self.factor_residual < 1e-8 and self.unit_residual < 1e-8
                and self.r_root_min_modulus > 1 + 1e-9
                and abs(self.f0.imag) < 1e-10 and self.f0.real > 0)


def trig_data(p, q, n: int = 64, cfg: Config = DEFAULT) -> TrigData:
    p, q = _trim(p), _trim(q)
    for root in np.roots(q[::-1]) if len(q) > 1 else []:
        if abs(root) < 1 - 1e-9:
            raise InnerRoot(f"q has root {root} inside the unit disc")
    r = fejer_riesz(p, q, cfg)
    m = cfg.circle_samples
    pv, qv, rv = (circle_samples(c, m) for c in (p, q, r))
    factor_residual = float(np.max(np.abs(np.abs(pv) ** 2 + np.abs(qv) ** 2
                                          - np.abs(rv) ** 2)))
    fv, gv = qv / rv, pv / rv
    unit_residual = float(np.max(np.abs(np.abs(fv) ** 2 + np.abs(gv) ** 2 - 1)))
    rroots = np.roots(r[::-1]) if len(r) > 1 else np.array([np.inf])
    f0 = complex(npoly.polyval(0.0, q) / npoly.polyval(0.0, r))
    return TrigData(p, q, r, n, factor_residual, unit_residual,
                    float(np.min(np.abs(rroots))), f0)


# -- truncations ----------------------------------------------------------------


def toeplitz_truncation(symbol_values: np.ndarray, n: int) -> np.ndarray:
    """N x N Toeplitz matrix T[j,k] = φ̂(j-k) from circle samples of φ."""
    if n < 2:
        raise ValueError("truncation size must be at least 2")
    m = len(symbol_values)
    if m < 8 * n:
        raise ValueError("need at least 8N circle samples")
    coeffs = np.fft.fft(symbol_values) / m
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % m
    return coeffs[idx]


def toeplitz_operator(coeffs, n: int, conjugate=False, samples: int | None = None
                      ) -> np.ndarray:
    m = samples or 8 * n
    vals = circle_samples(coeffs, m)
    return toeplitz_truncation(np.conj(vals) if conjugate else vals, n)


@dataclass
class ToeplitzTriple:
    a: np.ndarray
    a_star: np.ndarray
    b: np.ndarray
    n: int

    def interior_residuals(self) -> dict:
        """AB-axiom residuals restricted to the central N/2 block."""
        n = self.n
        i0, i1 = n // 4, n // 4 + n // 2
        sl = (slice(i0, i1), slice(i0, i1))
        a, s, b = self.a, self.a_star, self.b
        return {
            "bstar_b": float(np.linalg.norm(
                (b.conj().T @ b - (a - a @ a))[sl], 2)),
            "b_bstar": float(np.linalg.norm(
                (b @ b.conj().T - (s - s @ s))[sl], 2)),
            "intertwine": float(np.linalg.norm(
                (a @ b.conj().T - b.conj().T @ s)[sl], 2)),
        }


def toeplitz_aab(p, q, n: int, cfg: Config = DEFAULT) -> ToeplitzTriple:
    """Truncated transform triple of T_{p/q}:
    A = T_f T_f̄, A_* = 1 - T_g T_ḡ, B = T_g T_f̄ with f = q/r, g = p/r."""
    data = trig_data(p, q, n, cfg)
    m = 8 * n
    rv = circle_samples(data.r, m)
    fv = circle_samples(data.q, m) / rv
    gv = circle_samples(data.p, m) / rv
    tf = toeplitz_truncation(fv, n)
    tfb = toeplitz_truncation(np.conj(fv), n)
    tg = toeplitz_truncation(gv, n)
    tgb = toeplitz_truncation(np.conj(gv), n)
    return ToeplitzTriple(tf @ tfb, np.eye(n) - tg @ tgb, tg @ tfb, n)


# -- association vs affiliation ---------------------------------------------------


class Verdict(enum.Enum):
    AFFILIATED = "Affiliated"
    ASSOCIATED_ONLY = "AssociatedOnly"


@dataclass
class AffiliationReport:
    verdict: Verdict
    circle_roots: list
    witnesses: list          # |f(λ)|² per circle root of q
    data: TrigData
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "circle_roots": [[z.real, z.imag] for z in self.circle_roots],
            "witnesses": self.witnesses,
            "factor_residual": self.data.factor_residual,
            "unit_residual": self.data.unit_residual,
            "notes": self.notes,
        }


def affiliation_verdict(p, q, cfg: Config = DEFAULT) -> AffiliationReport:
    """Associated always; affiliated iff q has no zero on the circle.

    Roots of q inside the open disc violate the construction and raise;
    roots within ``root_circle_tol`` of the circle count as circle zeros
    and produce the character witness |f(λ)|² ≈ 0.
    """
    p, q = _trim(p), _trim(q)
    data = trig_data(p, q, cfg=cfg)
    qroots = np.roots(q[::-1]) if len(q) > 1 else np.array([])
    circle = [complex(z) for z in qroots
              if abs(abs(z) - 1.0) <= cfg.root_circle_tol]
    witnesses = []
    for lam in circle:
        fval = npoly.polyval(lam / abs(lam), data.q) / npoly.polyval(
            lam / abs(lam), data.r)
        witnesses.append(float(abs(fval) ** 2))
    if circle:
        return AffiliationReport(
            Verdict.ASSOCIATED_ONLY, circle, witnesses, data,
            ["character at each circle root kills a·T density"])
    return AffiliationReport(
        Verdict.AFFILIATED, [], [], data,
        ["q has no circle zero, so p/q is continuous on the circle"])
