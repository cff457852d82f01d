"""Piecewise symbols on a 1-D locally compact domain and their
singularity classification.

A symbol m is given by closed-form expressions on open subintervals plus
a declaration for every puncture (and optionally for the point at
infinity): bounded continuous extension with a stated limit, divergence
of |m| to infinity, or a genuine singular-support point (bounded
oscillation / no extension on the Riemann sphere).  Declarations are
*verified*, never trusted: a geometric two-sided sampling detector
confirms or rejects each one.

The classification drives the operator verdicts: with finitely many
punctures the continuity set is automatically dense, so the
multiplication operator is essentially defined and orthogonally closed;
it is graph regular exactly when no singular-support point remains, and
regular (densely defined) when additionally no divergence point
remains.  In the graph-regular case the transform symbols

    a = 1/(1+|m|²),   b = m/(1+|m|²)

extend continuously by 0 across divergence points and are attached to
the report.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import expressions as ex
from .config import DEFAULT, Config
from .errors import (
    DeclarationMismatch,
    InconclusiveClassification,
    UnverifiedDeclaration,
)

INF = math.inf  # the point at infinity (one point, both ends of the real line)


class PointClass(enum.Enum):
    REG_B = "reg_b"          # finite continuous extension at the point
    REG_INF = "reg_inf"      # |m| diverges; extension on the Riemann sphere
    SING_SUPP = "sing_supp"  # neither: bounded oscillation or a jump
    REMOVABLE = "removable"  # finite extension, spurious puncture

    @property
    def finite_limit(self) -> bool:
        return self in (PointClass.REG_B, PointClass.REMOVABLE)


@dataclass(frozen=True)
class Declaration:
    at: float                 # puncture position or INF
    cls: PointClass
    limit: complex | None = None


@dataclass(frozen=True)
class DomainSpec:
    """Base interval, punctures and whether infinity is a boundary."""

    base: str                 # "interval" | "halfline" | "realline"
    lo: float = -INF
    hi: float = INF
    punctures: tuple = ()
    includes_infinity: bool = False

    def __post_init__(self):
        if self.base == "interval":
            if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
                raise ValueError("interval needs finite lo < hi")
        elif self.base == "halfline":
            if not math.isfinite(self.lo):
                raise ValueError("halfline needs a finite left endpoint")
            object.__setattr__(self, "hi", INF)
        elif self.base == "realline":
            object.__setattr__(self, "lo", -INF)
            object.__setattr__(self, "hi", INF)
        else:
            raise ValueError(f"unknown base {self.base!r}")
        ps = tuple(sorted(float(p) for p in self.punctures))
        if len(set(ps)) != len(ps):
            raise ValueError("punctures must be distinct")
        for p in ps:
            if not math.isfinite(p):
                raise ValueError("punctures must be finite; declare at infinity instead")
            if not (self.lo <= p <= self.hi):
                raise ValueError(f"puncture {p} outside the closed base")
        object.__setattr__(self, "punctures", ps)
        if self.base != "interval":
            object.__setattr__(self, "includes_infinity", True)

    @property
    def compact(self) -> bool:
        return self.base == "interval"


def interval(lo, hi, punctures=()) -> DomainSpec:
    return DomainSpec("interval", lo, hi, tuple(punctures))


def half_line(lo, punctures=()) -> DomainSpec:
    return DomainSpec("halfline", lo, INF, tuple(punctures))


def real_line(punctures=()) -> DomainSpec:
    return DomainSpec("realline", punctures=tuple(punctures))


@dataclass(frozen=True)
class PiecewiseSymbol:
    domain: DomainSpec
    pieces: tuple            # ((lo, hi, ast), ...) on open intervals
    declarations: tuple = ()
    fills: tuple = ()        # ((point, value), ...) exact values at points

    def __post_init__(self):
        pieces = tuple(sorted(((float(a), float(b), t) for a, b, t in self.pieces)))
        object.__setattr__(self, "pieces", pieces)
        if not pieces:
            raise ValueError("symbol needs at least one piece")
        # pieces must tile the base, breaking only at punctures or fills
        breaks = set(self.domain.punctures) | {p for p, _ in self.fills}
        lo, hi = self.domain.lo, self.domain.hi
        if not math.isinf(lo) and abs(pieces[0][0] - lo) > 1e-12:
            raise ValueError("pieces do not reach the left endpoint")
        for (a1, b1, _), (a2, b2, _) in zip(pieces, pieces[1:]):
            if b1 > a2 + 1e-12:
                raise ValueError("pieces overlap")
            if abs(b1 - a2) > 1e-12:
                raise ValueError(f"gap between pieces at ({b1}, {a2})")
            if not any(abs(b1 - p) <= 1e-12 for p in breaks):
                raise ValueError(f"piece break at {b1} is not a declared puncture")
        if not math.isinf(hi) and abs(pieces[-1][1] - hi) > 1e-12:
            raise ValueError("pieces do not reach the right endpoint")
        decl_at = [d.at for d in self.declarations]
        if len(set(decl_at)) != len(decl_at):
            raise ValueError("duplicate declarations")
        for p in self.domain.punctures:
            if p not in decl_at:
                raise ValueError(f"puncture {p} lacks a declaration")

    # -- lookup ---------------------------------------------------------

    def declaration(self, p) -> Declaration | None:
        for d in self.declarations:
            if d.at == p:
                return d
        return None

    def fill_value(self, p):
        for q, v in self.fills:
            if q == p:
                return v
        return None

    def piece_at(self, x: float):
        for a, b, t in self.pieces:
            if a < x < b:
                return t
        return None

    # -- evaluation -------------------------------------------------------

    def __call__(self, x):
        """Evaluate at scalar or array points; fills override, points off
        every open piece give nan."""
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.full(xs.shape, np.nan + 0j, dtype=complex)
        for a, b, t in self.pieces:
            mask = (xs > a) & (xs < b)
            if mask.any():
                out[mask] = ex.evaluate(t, xs[mask])
        for p, v in self.fills:
            out[xs == p] = v
        return out if np.ndim(x) else out[0]


# -- detector ----------------------------------------------------------------


@dataclass
class Detection:
    kind: PointClass | None   # REG_B (finite), REG_INF, SING_SUPP, or None
    limit: complex | None
    sides: int
    note: str = ""


def _side_sequences(symbol: PiecewiseSymbol, p: float, cfg: Config):
    """Geometric sample sequences approaching p (or infinity) along each
    available side, innermost sample last."""
    seqs = []
    if p is INF or (isinstance(p, float) and math.isinf(p)):
        if symbol.domain.hi == INF:
            x0 = max(cfg.inf_start, abs(symbol.domain.lo) * 2 if math.isfinite(symbol.domain.lo) else 1.0,
                     *(2 * abs(q) for q in symbol.domain.punctures), 1.0)
            n = min(cfg.approach_steps, int(math.log2(cfg.inf_reach / x0)) + 1)
            seqs.append(x0 * 2.0 ** np.arange(n))
        if symbol.domain.lo == -INF:
            x0 = max(cfg.inf_start, *(2 * abs(q) for q in symbol.domain.punctures), 1.0)
            n = min(cfg.approach_steps, int(math.log2(cfg.inf_reach / x0)) + 1)
            seqs.append(-x0 * 2.0 ** np.arange(n))
        return seqs
    for a, b, _ in symbol.pieces:
        if abs(b - p) <= 1e-12:  # approach from the left
            d0 = min(cfg.approach_start, (b - a) / 4)
            seqs.append(p - d0 * 0.5 ** np.arange(cfg.approach_steps))
        if abs(a - p) <= 1e-12:  # approach from the right
            d0 = min(cfg.approach_start, (b - a) / 4)
            seqs.append(p + d0 * 0.5 ** np.arange(cfg.approach_steps))
    return seqs


def detect_point(symbol: PiecewiseSymbol, p, cfg: Config = DEFAULT) -> Detection:
    """Classify the behaviour of the symbol at a puncture or at infinity.

    Pattern order matters: convergence to a finite limit is tested first
    (oscillation statistics are meaningless around a vanishing mean),
    then monotone divergence of |m|, then bounded oscillation/jumps.
    """
    seqs = _side_sequences(symbol, p, cfg)
    if not seqs:
        raise InconclusiveClassification(f"no side reaches {p}")
    vals = [np.asarray(symbol(s)) for s in seqs]
    if any(np.isnan(v).any() for v in vals):
        raise InconclusiveClassification(f"evaluation failed approaching {p}")
    k = cfg.tail_samples
    tails = [v[-k:] for v in vals]
    union = np.concatenate(tails)

    # finite limit on every side, all sides agreeing
    cauchy = all(np.abs(np.diff(t)).max() < cfg.limit_tol for t in tails)
    if cauchy:
        limits = [t[-3:].mean() for t in tails]
        if all(abs(l - limits[0]) < 10 * cfg.limit_tol for l in limits):
            return Detection(PointClass.REG_B, complex(limits[0]), len(seqs))

    # divergence of the modulus
    mags = [np.abs(t) for t in tails]
    if all(m[-1] > cfg.blowup for m in mags) and all(
        np.all(np.diff(m) >= -1e-6 * np.abs(m[:-1])) for m in mags
    ):
        return Detection(PointClass.REG_INF, None, len(seqs))

    # bounded, but oscillating or with disagreeing side limits
    bounded = all(np.abs(v).max() < cfg.blowup for v in vals)
    if bounded:
        mean_sq = float(np.mean(np.abs(union) ** 2))
        var = float(np.mean(np.abs(union - union.mean()) ** 2))
        if var > cfg.osc_rel_var * max(mean_sq, 1e-300):
            return Detection(PointClass.SING_SUPP, None, len(seqs),
                             note=f"oscillation variance {var:.3e}")
        if cauchy:
            return Detection(PointClass.SING_SUPP, None, len(seqs),
                             note="side limits disagree")
    return Detection(None, None, len(seqs), note="no pattern fired")


@dataclass
class VerifiedClass:
    declared: Declaration
    detected: Detection


def classify_point(symbol: PiecewiseSymbol, p, cfg: Config = DEFAULT) -> VerifiedClass:
    """Verify the declaration at p against the detector; raise on mismatch."""
    decl = symbol.declaration(p)
    if decl is None:
        raise UnverifiedDeclaration(f"no declaration at {p}")
    det = detect_point(symbol, p, cfg)
    if det.kind is None:
        raise InconclusiveClassification(
            f"no detector pattern fired at {p} ({det.note})")
    want_finite = decl.cls.finite_limit
    if want_finite != (det.kind is PointClass.REG_B) or (
        not want_finite and det.kind is not decl.cls
    ):
        raise DeclarationMismatch(
            f"declared {decl.cls.value} at {p}, detected {det.kind.value}")
    if want_finite and decl.limit is not None:
        if abs(det.limit - decl.limit) > 10 * cfg.limit_tol:
            raise DeclarationMismatch(
                f"declared limit {decl.limit} at {p}, detected {det.limit}")
    return VerifiedClass(decl, det)


def verify_symbol(symbol: PiecewiseSymbol, cfg: Config = DEFAULT) -> dict:
    """classify_point at every declared point; {point: VerifiedClass}."""
    return {d.at: classify_point(symbol, d.at, cfg) for d in symbol.declarations}


# -- equivalence-class plumbing ----------------------------------------------


def hat_extension(symbol: PiecewiseSymbol, cfg: Config = DEFAULT) -> PiecewiseSymbol:
    """Absorb finite-limit punctures as exact values; idempotent.

    Divergence and singular-support punctures stay; the result has no
    reg_b points left, which is the canonical representative of the
    symbol's equivalence class.
    """
    verified = verify_symbol(symbol, cfg)
    keep, fills = [], dict(symbol.fills)
    new_punct = []
    for d in symbol.declarations:
        v = verified[d.at]
        if d.cls.finite_limit and math.isfinite(d.at):
            fills[d.at] = v.detected.limit if d.limit is None else d.limit
        else:
            keep.append(d)
            if math.isfinite(d.at):
                new_punct.append(d.at)
    dom = replace(symbol.domain, punctures=tuple(new_punct))
    return PiecewiseSymbol(dom, symbol.pieces, tuple(keep),
                           tuple(sorted(fills.items())))


def _bad_points(symbol: PiecewiseSymbol) -> list:
    """Finite punctures that survive the hat (reg_inf / sing_supp)."""
    return [d.at for d in symbol.declarations
            if not d.cls.finite_limit and math.isfinite(d.at)]


def symbol_equivalent(m1: PiecewiseSymbol, m2: PiecewiseSymbol,
                      cfg: Config = DEFAULT) -> bool:
    """Same operator test: equal puncture structure after the hat
    extension and equal values on a shared sample grid of the common
    continuity set.  Values at surviving punctures are irrelevant."""
    if m1.domain.base != m2.domain.base or (m1.domain.lo, m1.domain.hi) != (
        m2.domain.lo, m2.domain.hi
    ):
        return False
    h1, h2 = hat_extension(m1, cfg), hat_extension(m2, cfg)
    p1, p2 = h1.domain.punctures, h2.domain.punctures
    if len(p1) != len(p2) or any(abs(a - b) > 1e-9 for a, b in zip(p1, p2)):
        return False
    c1 = [d.cls for d in sorted(h1.declarations, key=lambda d: d.at)
          if math.isfinite(d.at)]
    c2 = [d.cls for d in sorted(h2.declarations, key=lambda d: d.at)
          if math.isfinite(d.at)]
    if c1 != c2:
        return False
    grid = sample_grid(h1, cfg)
    grid = grid[[h2.piece_at(x) is not None or h2.fill_value(x) is not None
                 for x in grid]]
    v1, v2 = h1(grid), h2(grid)
    good = ~(np.isnan(v1) | np.isnan(v2))
    return bool(np.all(np.abs(v1[good] - v2[good]) <= cfg.value_agreement_tol
                       * np.maximum(1.0, np.abs(v1[good]))))


# -- sampling ----------------------------------------------------------------


def sample_grid(symbol: PiecewiseSymbol, cfg: Config = DEFAULT,
                bulk: int | None = None) -> np.ndarray:
    """Sample points inside the pieces: Chebyshev-style bulk plus dyadic
    refinement towards every piece endpoint (punctures accumulate)."""
    bulk = bulk or cfg.grid_points
    pts = []
    finite_lo = symbol.domain.lo if math.isfinite(symbol.domain.lo) else None
    for a, b, _ in symbol.pieces:
        aa = a if math.isfinite(a) else min(-cfg.vanish_window, b - 1)
        bb = b if math.isfinite(b) else max(cfg.vanish_window, a + 1)
        n = max(16, bulk // max(1, len(symbol.pieces)))
        theta = (np.arange(n) + 0.5) * np.pi / n
        pts.append(0.5 * (aa + bb) + 0.5 * (bb - aa) * np.cos(theta))
        width = bb - aa
        dy = width / 4 * 0.5 ** np.arange(cfg.dyadic_depth)
        if math.isfinite(a):
            pts.append(a + dy)
        if math.isfinite(b):
            pts.append(b - dy)
    out = np.unique(np.concatenate(pts))
    keep = [symbol.piece_at(x) is not None for x in out]
    return out[keep]


# -- symbol arithmetic ---------------------------------------------------------


def _merge_pieces(m1: PiecewiseSymbol, m2: PiecewiseSymbol, op):
    cuts = sorted({a for a, _, _ in m1.pieces} | {b for _, b, _ in m1.pieces}
                  | {a for a, _, _ in m2.pieces} | {b for _, b, _ in m2.pieces})
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        if math.isfinite(a) and math.isfinite(b):
            mid = 0.5 * (a + b)
        elif math.isfinite(a):
            mid = a + 1.0
        elif math.isfinite(b):
            mid = b - 1.0
        else:
            mid = 0.0
        t1, t2 = m1.piece_at(mid), m2.piece_at(mid)
        if t1 is not None and t2 is not None:
            pieces.append((a, b, op(t1, t2)))
    return tuple(pieces)


def combine_symbols(m1: PiecewiseSymbol, m2: PiecewiseSymbol, op
                    ) -> PiecewiseSymbol:
    """Pointwise combination on the common piece structure; punctures are
    the union (filled points included), all marked for re-detection
    (class declarations are not propagated; derived symbols get
    classified fresh)."""
    pts = (set(m1.domain.punctures) | set(m2.domain.punctures)
           | {p for p, _ in m1.fills} | {p for p, _ in m2.fills})
    dom = replace(m1.domain, punctures=tuple(sorted(pts)))
    decls = tuple(Declaration(p, PointClass.SING_SUPP) for p in dom.punctures)
    return PiecewiseSymbol(dom, _merge_pieces(m1, m2, op), decls)


def multiply_symbols(m1: PiecewiseSymbol, m2: PiecewiseSymbol) -> PiecewiseSymbol:
    return combine_symbols(m1, m2, ex.mul)


def add_symbols(m1: PiecewiseSymbol, m2: PiecewiseSymbol) -> PiecewiseSymbol:
    return combine_symbols(m1, m2, ex.add)


def conjugate_symbol(m: PiecewiseSymbol) -> PiecewiseSymbol:
    pieces = tuple((a, b, ex.conj(t)) for a, b, t in m.pieces)
    decls = tuple(
        Declaration(d.at, d.cls,
                    None if d.limit is None else complex(d.limit).conjugate())
        for d in m.declarations)
    fills = tuple((p, complex(v).conjugate()) for p, v in m.fills)
    return PiecewiseSymbol(m.domain, pieces, decls, fills)


# -- regularity report ----------------------------------------------------------


@dataclass
class RegularityReport:
    symbol: PiecewiseSymbol
    point_classes: dict
    reg_dense: bool
    essentially_defined: bool
    orthogonally_closed: bool
    graph_regular: bool
    regular: bool
    a_symbol: PiecewiseSymbol | None = None
    b_symbol: PiecewiseSymbol | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "point_classes": {
                ("inf" if math.isinf(p) else p): vc.declared.cls.value
                for p, vc in self.point_classes.items()
            },
            "reg_dense": self.reg_dense,
            "essentially_defined": self.essentially_defined,
            "orthogonally_closed": self.orthogonally_closed,
            "graph_regular": self.graph_regular,
            "regular": self.regular,
            "notes": list(self.notes),
        }


def _transform_symbol(m: PiecewiseSymbol, verified: dict, which: str) -> PiecewiseSymbol:
    """a = 1/(1+|m|²) or b = m/(1+|m|²), extended across punctures."""
    pieces = []
    for a, b, t in m.pieces:
        den_t = ex.add(ex.ONE, ex.abs2(t))
        top = ex.ONE if which == "a" else t
        pieces.append((a, b, ex.div(top, den_t)))
    decls = []
    for d in m.declarations:
        v = verified[d.at]
        if d.cls is PointClass.REG_INF:
            decls.append(Declaration(d.at, PointClass.REG_B, 0.0))
        elif d.cls.finite_limit:
            lim = v.detected.limit
            val = 1 / (1 + abs(lim) ** 2) if which == "a" else lim / (1 + abs(lim) ** 2)
            decls.append(Declaration(d.at, PointClass.REG_B, val))
        else:  # pragma: no cover - guarded by graph_regular
            raise UnverifiedDeclaration("transform undefined across sing_supp")
    out = PiecewiseSymbol(m.domain, tuple(pieces), tuple(decls))
    return hat_extension(out)


def regularity_report(m: PiecewiseSymbol, cfg: Config = DEFAULT) -> RegularityReport:
    """Full verdict chain for the multiplication operator of m."""
    verified = verify_symbol(m, cfg)
    finite_classes = {p: vc for p, vc in verified.items() if math.isfinite(p)}
    has_sing = any(vc.declared.cls is PointClass.SING_SUPP
                   for vc in finite_classes.values())
    has_inf = any(vc.declared.cls is PointClass.REG_INF
                  for vc in finite_classes.values())
    notes = ["continuity set is dense: finitely many punctures on a 1-D base"]
    graph_regular = not has_sing
    regular = graph_regular and not has_inf
    if has_inf and graph_regular:
        notes.append("a-symbol vanishes at a divergence point, so the domain "
                     "is essential but not dense: graph regular only")
    report = RegularityReport(
        symbol=m,
        point_classes=verified,
        reg_dense=True,
        essentially_defined=True,
        orthogonally_closed=True,
        graph_regular=graph_regular,
        regular=regular,
        notes=notes,
    )
    if graph_regular:
        report.a_symbol = _transform_symbol(m, verified, "a")
        report.b_symbol = _transform_symbol(m, verified, "b")
    return report


# -- membership questions ---------------------------------------------------------


def _vanishes_at_infinity(sym: PiecewiseSymbol, cfg: Config) -> bool:
    if sym.domain.compact:
        return True
    ok = True
    for seq in _side_sequences(sym, INF, cfg):
        tail = seq[np.abs(seq) >= cfg.vanish_window]
        if tail.size == 0:
            tail = seq[-3:]
        ok = ok and bool(np.all(np.abs(sym(tail)) <= cfg.vanish_tol))
    return ok


def _finite_limit_at(sym: PiecewiseSymbol, p, cfg: Config) -> complex | None:
    """Continuous value of sym at p: a fill, an interior evaluation, or a
    detected finite limit; None when no finite extension exists."""
    val = sym.fill_value(p)
    if val is not None:
        return complex(val)
    t = sym.piece_at(p)
    if t is not None:
        return complex(ex.evaluate(t, p))
    det = detect_point(sym, p, cfg)
    return det.limit if det.kind is PointClass.REG_B else None


def domain_membership(m: PiecewiseSymbol, f: PiecewiseSymbol,
                      cfg: Config = DEFAULT) -> bool:
    """Is f in the domain of the multiplication operator of m?

    Requires f continuous after the hat (a genuine module element);
    membership needs f to vanish at every surviving puncture of m, the
    product m·f to extend continuously across each of them, and (on a
    non-compact base) the product to vanish at infinity.
    """
    fh = hat_extension(f, cfg)
    if _bad_points(fh):
        raise ValueError("f must be a continuous symbol (no surviving punctures)")
    if not _vanishes_at_infinity(fh, cfg):
        raise ValueError("f must vanish at infinity to lie in C0")
    mh = hat_extension(m, cfg)
    prod = multiply_symbols(mh, fh)
    for p in _bad_points(mh):
        fval = _finite_limit_at(fh, p, cfg)
        if fval is None or abs(fval) > cfg.zero_tol:
            return False
        if _finite_limit_at(prod, p, cfg) is None:
            return False
    if not _vanishes_at_infinity(prod, cfg):
        return False
    return True


def range_membership_one_plus_tt(m: PiecewiseSymbol, g: PiecewiseSymbol,
                                 cfg: Config = DEFAULT) -> bool:
    """g lies in Range(1 + t*t) iff it vanishes at every singular-support
    point of m."""
    verified = verify_symbol(m, cfg)
    for p, vc in verified.items():
        if vc.declared.cls is PointClass.SING_SUPP and math.isfinite(p):
            val = _finite_limit_at(g, p, cfg)
            if val is None or abs(val) > cfg.zero_tol:
                return False
    return True


# -- serialization ------------------------------------------------------------------


def symbol_to_dict(sym: PiecewiseSymbol) -> dict:
    dom = {
        "base": sym.domain.base,
        "lo": None if math.isinf(sym.domain.lo) else sym.domain.lo,
        "hi": None if math.isinf(sym.domain.hi) else sym.domain.hi,
        "punctures": list(sym.domain.punctures),
        "infinity": sym.domain.includes_infinity,
    }
    pieces = [
        {"lo": None if math.isinf(a) else a,
         "hi": None if math.isinf(b) else b,
         "expr": ex.to_string(t)}
        for a, b, t in sym.pieces
    ]
    decls = []
    for d in sym.declarations:
        entry = {"at": "inf" if math.isinf(d.at) else d.at, "class": d.cls.value}
        if d.limit is not None:
            entry["limit"] = [complex(d.limit).real, complex(d.limit).imag]
        decls.append(entry)
    return {"domain": dom, "pieces": pieces, "declarations": decls}


def symbol_from_dict(data: dict) -> PiecewiseSymbol:
    dom = data["domain"]
    base = dom["base"]
    lo = -INF if dom.get("lo") is None else float(dom["lo"])
    hi = INF if dom.get("hi") is None else float(dom["hi"])
    spec = DomainSpec(base, lo, hi, tuple(dom.get("punctures", ())))
    pieces = tuple(
        (-INF if p.get("lo") is None else float(p["lo"]),
         INF if p.get("hi") is None else float(p["hi"]),
         ex.parse_expression(p["expr"]))
        for p in data["pieces"]
    )
    decls = []
    for d in data.get("declarations", ()):
        at = INF if d["at"] == "inf" else float(d["at"])
        lim = d.get("limit")
        decls.append(Declaration(at, PointClass(d["class"]),
                                 None if lim is None else complex(lim[0], lim[1])))
    return PiecewiseSymbol(spec, pieces, tuple(decls))


def load_symbol(path: str) -> PiecewiseSymbol:
    with open(path, "r", encoding="utf-8") as fh:
        return symbol_from_dict(json.load(fh))
