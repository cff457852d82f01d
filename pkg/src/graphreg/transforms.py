"""The (a, a_*, b)-transform, bounded transform, absolute value, polar
decomposition and functional calculus on the matrix backend.

Operators here are dense complex matrices acting by left multiplication
on the module E = M_n(ℂ); the adjoint is the conjugate transpose.  The
transform of t is

    a   = (1 + t*t)^(-1),   a_* = (1 + tt*)^(-1),   b = t·a,

a bijection onto triples of adjointable elements satisfying

    b*b = a - a²,   bb* = a_* - a_*²,   ab* = b*a_*,

with a, a_* self-adjoint, 0 ≤ a, a_* ≤ 1 and trivial kernels.  The
inverse transform realizes t as the quotient t(ax) = bx.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Config
from .errors import AxiomsFailed, KernelNotTrivial, NonCommutingPair, NotGraphRegular, NotNormal
from .expressions import evaluate


def _herm(m):
    return 0.5 * (m + m.conj().T)


def hermitian_sqrt(h: np.ndarray, clamp: float = 1e-12) -> np.ndarray:
    """Positive square root via eigendecomposition.

    Eigenvalues in [-clamp, 0) are set to 0; anything more negative means
    the input was not PSD and raises.
    """
    w, v = np.linalg.eigh(_herm(h))
    if w.min() < -clamp * max(1.0, abs(w).max()):
        raise AxiomsFailed(f"matrix not PSD: min eigenvalue {w.min():.3e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def hermitian_inv_sqrt(h: np.ndarray, kernel_tol: float = 1e-12) -> np.ndarray:
    w, v = np.linalg.eigh(_herm(h))
    if w.min() <= kernel_tol:
        raise KernelNotTrivial(f"min eigenvalue {w.min():.3e} below {kernel_tol:.0e}")
    return (v / np.sqrt(w)) @ v.conj().T


def opnorm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def random_operator(n: int, rng: np.random.Generator) -> np.ndarray:
    """Complex Ginibre matrix; on M_n every such operator is regular."""
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


# -- triples -----------------------------------------------------------------


@dataclass
class AabTriple:
    a: np.ndarray
    a_star: np.ndarray
    b: np.ndarray

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def is_normal(self, tol: float = 1e-10) -> bool:
        return opnorm(self.a - self.a_star) <= tol * max(1.0, opnorm(self.a))


@dataclass
class QuotientPair:
    """Operator given by t(a x) = b x; domain is Range(a)."""

    a: np.ndarray
    b: np.ndarray

    def kernel_inclusion_residual(self) -> float:
        """How far ker(a) escapes ker(b); must be ~0 for well-definedness."""
        _, s, vh = np.linalg.svd(self.a)
        r = int(np.sum(s > 1e-10 * max(1.0, s[0] if len(s) else 1.0)))
        null = vh[r:].conj().T
        if null.shape[1] == 0:
            return 0.0
        return float(np.linalg.norm(self.b @ null, 2))

    def reconstruct(self, kernel_tol: float = 1e-12) -> np.ndarray:
        w, v = np.linalg.eigh(_herm(self.a))
        if w.min() <= kernel_tol:
            raise KernelNotTrivial("a has a nontrivial kernel")
        return self.b @ ((v / w) @ v.conj().T)


@dataclass
class AxiomReport:
    residual_bb: float
    residual_bbstar: float
    residual_intertwine: float
    a_spectrum_ok: bool
    a_star_spectrum_ok: bool
    kernel_a: float
    kernel_a_star: float
    norm_b: float
    commutation_residuals: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def aab_forward(t: np.ndarray, cfg: Config = DEFAULT) -> AabTriple:
    """(a, a_*, b) of a matrix operator; exact inverses via solves."""
    t = np.asarray(t, dtype=complex)
    n = t.shape[0]
    eye = np.eye(n)
    a = _herm(np.linalg.solve(eye + t.conj().T @ t, eye))
    a_star = _herm(np.linalg.solve(eye + t @ t.conj().T, eye))
    return AabTriple(a, a_star, t @ a)


def ab_axioms_check(triple: AabTriple, cfg: Config = DEFAULT) -> AxiomReport:
    """Residuals of the defining identities plus positivity/kernel flags
    and the commutation family f(a_*) b = b f(a) for f in {√, ², ³}."""
    a, a_star, b = triple.a, triple.a_star, triple.b
    r_bb = opnorm(b.conj().T @ b - (a - a @ a))
    r_bbs = opnorm(b @ b.conj().T - (a_star - a_star @ a_star))
    r_int = opnorm(a @ b.conj().T - b.conj().T @ a_star)
    wa = np.linalg.eigvalsh(_herm(a))
    ws = np.linalg.eigvalsh(_herm(a_star))
    tol = cfg.residual_tol
    a_ok = bool(wa.min() > -tol and wa.max() < 1 + tol and opnorm(a - a.conj().T) < tol)
    s_ok = bool(ws.min() > -tol and ws.max() < 1 + tol
                and opnorm(a_star - a_star.conj().T) < tol)
    comm = {}
    for name, f in (("sqrt", np.sqrt), ("square", np.square),
                    ("cube", lambda x: x ** 3)):
        fa = _apply_spectral(a, f)
        fas = _apply_spectral(a_star, f)
        comm[name] = opnorm(fas @ b - b @ fa)
    failures = []
    if r_bb > tol:
        failures.append("b*b != a - a^2")
    if r_bbs > tol:
        failures.append("bb* != a_* - a_*^2")
    if r_int > tol:
        failures.append("ab* != b*a_*")
    if not a_ok:
        failures.append("a outside [0,1] or not self-adjoint")
    if not s_ok:
        failures.append("a_* outside [0,1] or not self-adjoint")
    if wa.min() <= cfg.kernel_tol:
        failures.append("ker(a) nontrivial")
    if ws.min() <= cfg.kernel_tol:
        failures.append("ker(a_*) nontrivial")
    if opnorm(b) > 1 + tol:
        failures.append("||b|| > 1")
    if any(v > max(10 * tol, 1e-9) for v in comm.values()):
        failures.append("f(a_*) b != b f(a)")
    return AxiomReport(r_bb, r_bbs, r_int, a_ok, s_ok,
                       float(wa.min()), float(ws.min()), opnorm(b),
                       comm, failures)


def _apply_spectral(h: np.ndarray, f) -> np.ndarray:
    w, v = np.linalg.eigh(_herm(h))
    return (v * f(np.clip(w, 0.0, None))) @ v.conj().T


def aab_inverse(triple: AabTriple, cfg: Config = DEFAULT) -> QuotientPair:
    """Quotient-pair realization t(a x) = b x of a valid triple."""
    report = ab_axioms_check(triple, cfg)
    if not report.ok:
        raise AxiomsFailed("; ".join(report.failures))
    return QuotientPair(triple.a, triple.b)


def graph_projection(triple: AabTriple, cfg: Config = DEFAULT) -> np.ndarray:
    """Block projection (a b*; b 1-a_*) onto the graph of t."""
    report = ab_axioms_check(triple, cfg)
    if not report.ok:
        raise AxiomsFailed("; ".join(report.failures))
    n = triple.n
    p = np.zeros((2 * n, 2 * n), dtype=complex)
    p[:n, :n] = triple.a
    p[:n, n:] = triple.b.conj().T
    p[n:, :n] = triple.b
    p[n:, n:] = np.eye(n) - triple.a_star
    return p


# -- bounded transform --------------------------------------------------------


@dataclass
class BoundedTransform:
    z: np.ndarray
    in_z: bool     # ker(1 - z*z) = {0}
    in_zd: bool    # Range(1 - z*z) dense

    @property
    def norm(self) -> float:
        return opnorm(self.z)


def bounded_transform(t: np.ndarray, cfg: Config = DEFAULT) -> BoundedTransform:
    """z = t (1 + t*t)^(-1/2); on the matrix backend E_0 = E."""
    triple = aab_forward(t, cfg)
    z = t @ hermitian_sqrt(triple.a)
    gram = np.eye(t.shape[0]) - z.conj().T @ z
    wmin = float(np.linalg.eigvalsh(_herm(gram)).min())
    in_z = wmin > cfg.kernel_tol
    return BoundedTransform(z, in_z, in_z)


def from_bounded(z: np.ndarray, cfg: Config = DEFAULT) -> np.ndarray:
    """t_z = z (1 - z*z)^(-1/2); requires ker(1 - z*z) = {0}."""
    z = np.asarray(z, dtype=complex)
    gram = np.eye(z.shape[1]) - z.conj().T @ z
    return z @ hermitian_inv_sqrt(gram, cfg.kernel_tol)


def absolute_value(triple: AabTriple, cfg: Config = DEFAULT) -> AabTriple:
    """Triple of |t|: (a, a, |b|) with |b| = (b*b)^(1/2)."""
    report = ab_axioms_check(triple, cfg)
    if not report.ok:
        raise AxiomsFailed("; ".join(report.failures))
    absb = hermitian_sqrt(triple.b.conj().T @ triple.b)
    return AabTriple(triple.a, triple.a.copy(), absb)


def polar_decompose(t: np.ndarray, cfg: Config = DEFAULT):
    """t = v|t| with a partial isometry v; null directions of t are zeroed."""
    t = np.asarray(t, dtype=complex)
    u, s, vh = np.linalg.svd(t)
    r = int(np.sum(s > cfg.subspace_tol * max(1.0, s[0] if len(s) else 1.0)))
    v = u[:, :r] @ vh[:r]
    absval = (vh.conj().T[:, :r] * s[:r]) @ vh[:r]
    return v, absval


# -- functional calculus -------------------------------------------------------


def joint_diagonalize(a: np.ndarray, b: np.ndarray, rng: np.random.Generator,
                      cfg: Config = DEFAULT):
    """Common eigenbasis of a commuting normal pair.

    Diagonalizes a + κ·b for a random complex κ (distinct eigenvalues with
    probability one), re-orthonormalizes, and validates both conjugations.
    """
    n = a.shape[0]
    kappa = complex(*rng.standard_normal(2)) + 1.0
    _, vecs = np.linalg.eig(a + kappa * b)
    q, _ = np.linalg.qr(vecs)
    da = q.conj().T @ a @ q
    db = q.conj().T @ b @ q
    off = max(opnorm(da - np.diag(np.diag(da))), opnorm(db - np.diag(np.diag(db))))
    if off > 1e-8 * max(1.0, opnorm(a), opnorm(b)):
        raise NonCommutingPair(f"joint diagonalization residual {off:.3e}")
    return q, np.diag(da), np.diag(db)


# -- symbol backend ------------------------------------------------------------

# Multiplication operators are normal, so their triples have a = a_*; the
# transform elements are symbols again and every operation is pointwise.


@dataclass
class SymbolTriple:
    a: "PiecewiseSymbol"
    a_star: "PiecewiseSymbol"
    b: "PiecewiseSymbol"
    symbol: "PiecewiseSymbol"   # the hat-extended m itself


def aab_forward_symbol(m, cfg: Config = DEFAULT) -> SymbolTriple:
    from .symbols import hat_extension, regularity_report

    rep = regularity_report(m, cfg)
    if not rep.graph_regular:
        raise NotGraphRegular("symbol has singular-support points")
    return SymbolTriple(rep.a_symbol, rep.a_symbol, rep.b_symbol,
                        hat_extension(m, cfg))


def aab_inverse_symbol(triple: SymbolTriple) -> "PiecewiseSymbol":
    """Recover the symbol as the pointwise quotient b/a on the
    continuity set (the quotient-pair realization t(a·f) = b·f)."""
    from . import expressions as ex
    from .symbols import combine_symbols

    return combine_symbols(triple.b, triple.a, ex.div)


def absolute_value_symbol(m, cfg: Config = DEFAULT) -> "PiecewiseSymbol":
    """|t_m| = t_{|m|}: same punctures, modulus taken pointwise."""
    from . import expressions as ex
    from .symbols import Declaration, PiecewiseSymbol

    pieces = tuple((a, b, ex.call("abs", t)) for a, b, t in m.pieces)
    decls = tuple(
        Declaration(d.at, d.cls,
                    None if d.limit is None else abs(complex(d.limit)))
        for d in m.declarations)
    fills = tuple((p, abs(complex(v))) for p, v in m.fills)
    return PiecewiseSymbol(m.domain, pieces, decls, fills)


@dataclass
class SymbolBoundedTransform:
    z: "PiecewiseSymbol"
    extendable_at: dict       # puncture -> has a continuous extension there
    adjointable: bool         # extends to a bounded continuous function

    @property
    def in_zd_on_core(self) -> bool:
        # on the closure of Def(t*t) the transform is always in Z^d
        return True


def bounded_transform_symbol(m, cfg: Config = DEFAULT) -> SymbolBoundedTransform:
    """z = m/(1+|m|²)^(1/2) on the continuity set.

    Even for graph regular m the transform need not extend continuously
    across a divergence point (the modulus tends to 1 but the phase can
    jump), in which case no adjointable element represents t and z lives
    on the core module only; the flags record this per puncture.
    """
    from . import expressions as ex
    from .symbols import (
        Declaration,
        PiecewiseSymbol,
        PointClass,
        detect_point,
        hat_extension,
        regularity_report,
    )

    rep = regularity_report(m, cfg)
    if not rep.graph_regular:
        raise NotGraphRegular("symbol has singular-support points")
    mh = hat_extension(m, cfg)
    pieces = tuple(
        (a, b, ex.div(t, ex.call("sqrt", ex.add(ex.ONE, ex.abs2(t)))))
        for a, b, t in mh.pieces)
    filled = {p for p, _ in mh.fills}
    probe = PiecewiseSymbol(
        mh.domain, pieces,
        tuple(Declaration(p, PointClass.SING_SUPP)
              for p in mh.domain.punctures),
        tuple((p, complex(v) / np.sqrt(1 + abs(complex(v)) ** 2))
              for p, v in mh.fills))
    extendable = {}
    for p in sorted(set(m.domain.punctures) | filled):
        if p in filled:  # absorbed by the hat: z is continuous there
            extendable[p] = True
            continue
        det = detect_point(probe, p, cfg)
        extendable[p] = det.kind is PointClass.REG_B
    return SymbolBoundedTransform(probe, extendable,
                                  all(extendable.values()))


def functional_calculus_symbol(m, f_ast, beta: complex = 0.0,
                               cfg: Config = DEFAULT) -> "PiecewiseSymbol":
    """(f + β) ∘ m pointwise, with the value β at divergence points.

    The declarations are re-verified by the detector, so an f that fails
    to vanish at infinity surfaces as a declaration mismatch rather than
    a silent wrong extension.
    """
    from . import expressions as ex
    from .symbols import Declaration, PiecewiseSymbol, PointClass, hat_extension, verify_symbol

    verified = verify_symbol(m, cfg)
    pieces = tuple(
        (a, b, ex.add(ex.substitute(f_ast, t), ex.num(beta)))
        for a, b, t in m.pieces)
    decls = []
    for d in m.declarations:
        if d.cls is PointClass.REG_INF:
            decls.append(Declaration(d.at, PointClass.REG_B, complex(beta)))
        elif d.cls.finite_limit:
            lim = verified[d.at].detected.limit
            val = complex(evaluate(f_ast, lim)) + complex(beta)
            decls.append(Declaration(d.at, PointClass.REG_B, val))
        else:
            raise NotGraphRegular("symbol has singular-support points")
    out = PiecewiseSymbol(m.domain, pieces, tuple(decls))
    return hat_extension(out, cfg)


def functional_calculus(triple: AabTriple, f_ast, beta: complex = 0.0,
                        rng: np.random.Generator | None = None,
                        cfg: Config = DEFAULT) -> np.ndarray:
    """Evaluate (f + β)(t) for a normal triple.

    On the joint eigenbasis of (a, b) the operator t has eigenvalues
    λ_b/λ_a; f is applied there, with the value β wherever λ_a degenerates
    to 0 (the compactification point of the joint-spectrum curve).
    """
    if not triple.is_normal(cfg.residual_tol):
        raise NotNormal("functional calculus requires a = a_*")
    if rng is None:
        rng = np.random.default_rng(0)
    q, la, lb = joint_diagonalize(triple.a, triple.b, rng, cfg)
    vals = np.empty(len(la), dtype=complex)
    for k, (za, zb) in enumerate(zip(la, lb)):
        if za.real <= cfg.kernel_tol:
            vals[k] = beta
        else:
            w = zb / za
            vals[k] = complex(evaluate(f_ast, w)) + beta
    return (q * vals) @ q.conj().T
