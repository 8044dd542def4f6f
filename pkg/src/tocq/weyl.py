"""From local invariants to the class label and the minimum gate time.

Pipeline: invariants -> cubic coefficients -> roots ``sin^2 a_k`` ->
``alpha``/``beta`` angles -> class decision from G3/G4 -> ``t*``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bell import InvariantSet, eigenphase_alphas, invariants
from .errors import (AmbiguousClass, ComplexRoots, InvalidInvariants,
                     NumericalInconsistency, RootsOutOfRange)
from .gates import Gate, SystemConfig

CLAMP_WINDOW = 1e-4  # same cube-root conditioning at the edges of [0, 1]
DISC_WINDOW = 1e-12
# a pair inside a tight root cluster is only known to ~sqrt(error of the isolated root)
IMAG_TOL = 1e-3
DEFAULT_EPS = 1e-8
# |cos a_k| below this puts alpha1 on pi/2 for all practical purposes
WALL_TOL = 1e-12
# roots of a cubic with a cluster of width d move by ~noise/d^2, so this is loose
ROOT_CROSSCHECK_TOL = 1e-3

FAMILY_I_II = "I/II"
FAMILY_III_IV = "III/IV"
TIME_DEGENERATE = "time-degenerate-pair"


@dataclass(frozen=True)
class CubicCoefficients:
    p: float
    q: float
    r: float


def cubic_coeffs(inv: InvariantSet) -> CubicCoefficients:
    a, b, c = inv.a, inv.b, inv.c
    mod = math.hypot(a, b)
    return CubicCoefficients(p=-(1 + (1 - c) / 2), q=mod + (1 - c) / 2,
                             r=-0.5 * (mod - a))


def solve_cubic(co: CubicCoefficients) -> tuple[float, float, float]:
    """Real roots of ``x^3 + p x^2 + q x + r``, clamped into [0, 1], descending.

    The isolated root comes from the trigonometric form (or, when the
    discriminant sits just below zero within ``DISC_WINDOW``, from the
    single-real-root Cardano formula); the remaining pair is recovered by
    deflation, dropping imaginary parts up to ``IMAG_TOL``.

    Raises:
        ComplexRoots: genuinely complex roots.
        RootsOutOfRange: a root lies outside ``[-1e-7, 1 + 1e-7]``.
    """
    p, q, r = co.p, co.q, co.r
    shift = -p / 3
    P = q - p * p / 3
    Qd = 2 * p ** 3 / 27 - p * q / 3 + r
    disc = -(4 * P ** 3 + 27 * Qd ** 2)

    if abs(P) <= DISC_WINDOW and abs(Qd) <= DISC_WINDOW:
        xs = [shift, shift, shift]
    else:
        if disc >= 0:
            amp = 2 * math.sqrt(-P / 3)
            arg = 3 * Qd / (P * amp)
            theta = math.acos(min(1.0, max(-1.0, arg)))
            ts = [amp * math.cos((theta - 2 * math.pi * k) / 3) for k in range(3)]
            t_iso = max(ts, key=abs)
        elif disc >= -DISC_WINDOW:
            half = math.sqrt(-disc / 108)
            t_iso = float(np.cbrt(-Qd / 2 + half) + np.cbrt(-Qd / 2 - half))
        else:
            raise ComplexRoots(f"cubic discriminant {disc:.3e} < 0: invariants are not "
                               "those of an SU(4) gate")
        # the root of largest |t| is the well-conditioned one; deflate by Vieta
        x1 = t_iso + shift
        for _ in range(3):
            # acos loses digits next to a near-double root; Newton restores them
            f = ((x1 + p) * x1 + q) * x1 + r
            df = (3 * x1 + 2 * p) * x1 + q
            if df == 0 or f == 0:
                break
            x1 -= f / df
        total = -p - x1
        prod = -r / x1 if abs(x1) >= 0.5 else q - x1 * total
        qdisc = total * total - 4 * prod
        if qdisc < 0:
            imag = math.sqrt(-qdisc) / 2
            if imag > IMAG_TOL:
                raise ComplexRoots(f"cubic has complex roots (imaginary part {imag:.3e})")
            xs = [x1, total / 2, total / 2]
        else:
            x2 = (total + math.copysign(math.sqrt(qdisc), total)) / 2
            x3 = prod / x2 if x2 != 0 else 0.0
            xs = [x1, x2, x3]

    roots = []
    for x in xs:
        if x < -CLAMP_WINDOW or x > 1 + CLAMP_WINDOW:
            raise RootsOutOfRange(f"root {x:.12g} outside [0, 1]")
        roots.append(min(1.0, max(0.0, x)))
    roots.sort(reverse=True)
    return tuple(roots)


@dataclass(frozen=True)
class AlphaBeta:
    alpha: tuple[float, float, float]
    beta: tuple[float, float, float, float]

    @classmethod
    def from_alphas(cls, alphas) -> "AlphaBeta":
        a1, a2, a3 = sorted((min(math.pi / 2, max(0.0, float(x))) for x in alphas),
                            reverse=True)
        beta = ((a1 - a2 + a3) / 2, (a1 + a2 - a3) / 2,
                -(a1 + a2 + a3) / 2, (-a1 + a2 + a3) / 2)
        return cls(alpha=(a1, a2, a3), beta=beta)

    @property
    def cos_product(self) -> float:
        return math.prod(math.cos(b) for b in self.beta)

    @property
    def sin_product(self) -> float:
        return math.prod(math.sin(b) for b in self.beta)

    @property
    def sin2_sum(self) -> float:
        """``(1/2) sum sin(2 beta_k)``."""
        return 0.5 * sum(math.sin(2 * b) for b in self.beta)

    @property
    def sum_family_i_ii(self) -> float:
        return -2 * self.beta[2]

    @property
    def sum_family_iii_iv(self) -> float:
        return math.pi + 2 * self.beta[3]


def alpha_beta(roots) -> AlphaBeta:
    """``alpha_k = arcsin(sqrt(c_k))`` and the derived beta angles."""
    return AlphaBeta.from_alphas(math.asin(math.sqrt(min(1.0, max(0.0, c)))) for c in roots)


@dataclass(frozen=True)
class ClassificationResult:
    label: str
    family: str
    alphabeta: AlphaBeta
    t_star_in_units_of_inverse_J: float
    t_star_seconds: float | None = None
    invariants: InvariantSet | None = None
    roots: tuple[float, float, float] | None = None
    g3_distances: tuple[float, float] = field(default=(math.nan, math.nan))

    @property
    def t_star(self) -> float:
        return self.t_star_in_units_of_inverse_J

    @property
    def coordinate_sum(self) -> float:
        """Minimal ``sum |a_k|`` (equals ``pi J t*``)."""
        return math.pi * self.t_star_in_units_of_inverse_J

    def in_family(self, family: str) -> bool:
        return self.family == family or self.family == TIME_DEGENERATE


def _member_label(inv: InvariantSet, s: float, family: str, eps: float, report: str) -> str:
    lo, hi = ("I", "II") if family == FAMILY_I_II else ("III", "IV")
    plus, minus = abs(inv.g4 - s) <= eps, abs(inv.g4 + s) <= eps
    if plus and minus:
        return f"{lo}/{hi}-degenerate"
    if plus:
        return lo
    if minus:
        return hi
    raise InvalidInvariants(f"G4 = {inv.g4:.12g} matches neither +/-{s:.12g}; {report}")


def classify(inv: InvariantSet, ab: AlphaBeta, cfg: SystemConfig | None = None,
             eps: float = DEFAULT_EPS, roots=None,
             family_hint: str | None = None) -> ClassificationResult:
    """Decide the class from G3 (family) and G4 (member) and compute ``t*``.

    Args:
        family_hint: family to use when G3 matches both candidates within
            ``eps`` but their times differ. Without it that case raises
            ``AmbiguousClass``; with ``TIME_DEGENERATE`` the smaller time is
            reported.
    """
    pc, ps, s = ab.cos_product, ab.sin_product, ab.sin2_sum
    dc, ds = abs(inv.g3 - pc), abs(inv.g3 - ps)
    t12, t34 = ab.sum_family_i_ii, ab.sum_family_iii_iv
    report = f"|G3 - prod cos| = {dc:.3e}, |G3 - prod sin| = {ds:.3e}"

    if dc <= eps and ds <= eps:
        if abs(t12 - t34) <= eps or family_hint == TIME_DEGENERATE:
            family = label = TIME_DEGENERATE
            total = min(t12, t34)
        elif family_hint in (FAMILY_I_II, FAMILY_III_IV):
            family = family_hint
            label = _member_label(inv, s, family, eps, report)
            total = t12 if family == FAMILY_I_II else t34
        else:
            raise AmbiguousClass(f"G3 matches both families but their times differ; {report}")
    elif dc <= eps or ds <= eps:
        family = FAMILY_I_II if dc <= eps else FAMILY_III_IV
        total = t12 if dc <= eps else t34
        label = _member_label(inv, s, family, eps, report)
    else:
        raise InvalidInvariants(f"G3 matches no class; {report}")

    units = total / math.pi
    return ClassificationResult(
        label=label, family=family, alphabeta=ab, t_star_in_units_of_inverse_J=units,
        t_star_seconds=None if cfg is None else units / cfg.J, invariants=inv,
        roots=None if roots is None else tuple(roots), g3_distances=(dc, ds))


def family_from_coordinates(a) -> str:
    """Family of ``canonical(a)`` read off the signs of ``cos a_k``.

    ``prod cos a_k`` keeps its sign under every local-equivalence move, is
    ``>= 0`` on the ``[alpha1, alpha2, alpha3]`` form and ``<= 0`` on the
    ``[pi - alpha1, alpha2, alpha3]`` form. Signs of the single factors stay
    reliable long after ``G3`` stops separating the families.
    """
    cos = [math.cos(x) for x in a]
    if min(abs(c) for c in cos) <= WALL_TOL:
        return TIME_DEGENERATE
    return FAMILY_I_II if math.prod(cos) > 0 else FAMILY_III_IV


def min_time(u: Gate, cfg: SystemConfig | None = None,
             eps: float = DEFAULT_EPS) -> ClassificationResult:
    """Classify ``u`` and return its minimum implementation time.

    The cubic roots fix the alpha angles; their values are then taken from
    the eigenphases of ``m(U)`` (same quantity, full precision) after a
    cross-check against the cubic. When ``G3`` cannot separate the two
    families the Cartan coordinates of ``u`` decide.
    """
    inv = invariants(u)
    roots = solve_cubic(cubic_coeffs(inv))
    precise = eigenphase_alphas(u)
    gap = max(abs(c - math.sin(a) ** 2) for c, a in zip(roots, precise))
    if gap > ROOT_CROSSCHECK_TOL:
        raise NumericalInconsistency(
            f"cubic roots {roots} disagree with eigenphase values by {gap:.3e}")
    ab = AlphaBeta.from_alphas(precise)
    try:
        return classify(inv, ab, cfg, eps, roots=roots)
    except AmbiguousClass:
        # all alphas near pi/2 make prod cos alpha (the G3 gap) vanish cubically;
        # the Cartan coordinates still tell the families apart
        from .kak import decompose
        hint = family_from_coordinates(decompose(u).a)
        return classify(inv, ab, cfg, eps, roots=roots, family_hint=hint)
