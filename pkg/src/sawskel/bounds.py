"""Closed-form and semi-numeric bounds on connective constants."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import NoSolutionError, NotPlainError, SpecError
from .groups.core import DEFAULT_BALL_CAP, Group, Word
from .shift.entropy import Bound, EntropyReport, plain_sft_entropy, rauzy_upper_bound
from .walks.counts import count_bridges, count_saps, count_saws
from .walks.periodic import count_periodic

BISECT_TOL = 1e-12


def _largest_feasible(f: Callable[[float], float], ok: Callable[[float], bool], lo: float, hi: float) -> Optional[float]:
    """Largest x in [lo, hi] with ``ok(x)``, where ``ok`` is a sublevel set of convex ``f``.

    ``f`` (floating point) only steers the search for a feasible point; every
    accept/reject decision goes through ``ok``, which callers evaluate exactly.
    """
    if ok(hi):
        return hi
    # golden-section search for the minimiser of f
    a, b = lo, hi
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    feasible = None
    while b - a > BISECT_TOL:
        if ok(c):
            feasible = c
            break
        if ok(d):
            feasible = d
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    if feasible is None:
        mid = (a + b) / 2
        if not ok(mid):
            return None
        feasible = mid
    left, right = feasible, hi
    while right - left > BISECT_TOL:
        mid = (left + right) / 2
        if ok(mid):
            left = mid
        else:
            right = mid
    return left


# -- Rosenfeld ------------------------------------------------------------------

TAIL_MODELS = ("none", "zero", "geometric")


@dataclass(frozen=True)
class RosenfeldInstance:
    """Polygon counts ``rho[n]`` (index = length) for an alphabet of ``degree`` letters.

    ``tail``: ``none`` (truncate; uncertified), ``zero`` (no polygons beyond
    the cutoff) or ``geometric`` (``rho_n <= C lam^n`` beyond the cutoff).
    """

    degree: int
    rho: Tuple[int, ...]
    tail: str = "none"
    tail_c: float = 0.0
    tail_lambda: float = 0.0

    def __post_init__(self):
        if self.tail not in TAIL_MODELS:
            raise SpecError(f"tail model must be one of {TAIL_MODELS}")
        if any(r < 0 for r in self.rho):
            raise SpecError("polygon counts must be nonnegative")
        if self.tail == "geometric" and (self.tail_lambda < 0 or self.tail_c < 0):
            raise SpecError("geometric tail needs C >= 0 and lambda >= 0")
        if self.degree < 2:
            raise SpecError("need at least two generators")

    @property
    def cutoff(self) -> int:
        return len(self.rho) - 1

    def constraint(self, beta):
        """``beta + sum_n rho_n beta^(1-n)`` plus the modelled tail.

        Works on floats and on ``Fraction`` (exact) arguments alike.
        """
        total = beta
        for n, r in enumerate(self.rho):
            if r:
                total += r * beta ** (1 - n)
        if self.tail == "geometric" and self.tail_c:
            lam = Fraction(self.tail_lambda) if isinstance(beta, Fraction) else self.tail_lambda
            c = Fraction(self.tail_c) if isinstance(beta, Fraction) else self.tail_c
            if beta <= lam:
                return math.inf
            q = lam / beta
            total += c * beta * q ** (self.cutoff + 1) / (1 - q)
        return total


@dataclass(frozen=True)
class RosenfeldResult:
    beta: float
    certified: bool
    tail: str


def rosenfeld_bound(inst: RosenfeldInstance) -> RosenfeldResult:
    """Largest ``beta > 1`` with ``beta + sum rho_n beta^(1-n) <= |S| - 1``."""
    cap = inst.degree - 1
    lo = 1 + 1e-9
    beta = _largest_feasible(inst.constraint, lambda b: inst.constraint(Fraction(b)) <= cap, lo, float(cap))
    if beta is None or beta <= 1:
        raise NoSolutionError("no beta > 1 satisfies the polygon inequality")
    if inst.tail == "geometric" and beta <= inst.tail_lambda:
        raise NoSolutionError("geometric tail diverges at the candidate beta")
    return RosenfeldResult(beta, inst.tail in ("zero", "geometric"), inst.tail)


# -- free Burnside groups ----------------------------------------------------------

@dataclass(frozen=True)
class BurnsideResult:
    """``beta_star`` is None when no ``beta > 1`` satisfies the inequality."""

    m: int
    n: int
    beta_star: Optional[float]
    gamma_closed: float
    gamma_lhs: float
    gamma_satisfies: bool
    gamma_below_beta_star: bool
    guaranteed: bool

    def as_dict(self) -> Dict[str, object]:
        return dict(self.__dict__)


def burnside_lhs(beta: float, n: int) -> float:
    """``beta / (beta^(n-1) - 1) + beta`` in floating point, for steering only."""
    e = (n - 1) * math.log(beta)
    if e > 700:
        return beta
    return beta / math.expm1(e) + beta


def burnside_holds(beta, n: int, cap: int) -> bool:
    """Exact rational check of ``beta / (beta^(n-1) - 1) + beta <= cap``."""
    b = Fraction(beta)
    if b <= 1:
        return False
    return b / (b ** (n - 1) - 1) + b <= cap


def burnside_bound(m: int, n: int) -> BurnsideResult:
    if not (isinstance(m, int) and isinstance(n, int)) or m < 2 or n < 2:
        raise SpecError("Burnside parameters need integers m > 1, n > 1")
    cap = 2 * m - 1
    beta = _largest_feasible(lambda b: burnside_lhs(b, n), lambda b: burnside_holds(b, n, cap), 1 + 1e-9, float(cap))
    gamma = (n - 1) / n * cap
    holds = burnside_holds(gamma, n, cap)
    return BurnsideResult(
        m, n, beta, gamma, burnside_lhs(gamma, n), holds, beta is not None and gamma <= beta, n > 3
    )


# -- semigroup bound ---------------------------------------------------------------

@dataclass(frozen=True)
class SemigroupResult:
    value: Optional[float]
    verified_to: int
    witness: Optional[Word]

    @property
    def valid(self) -> bool:
        return self.witness is None


def semigroup_bound(group: Group, subset: Sequence, length: int) -> SemigroupResult:
    """``log |T|`` if no nonempty product over ``T`` of length ``<= length`` is trivial.

    The products are explored as level sets of distinct elements, so one
    word per element is kept as a potential witness.
    """
    t = sorted({group.alphabet.resolve(s) if isinstance(s, str) else int(s) for s in subset})
    if not t:
        raise SpecError("subset T must be nonempty")
    if length < 1:
        raise SpecError("length must be >= 1")
    be = group.backend
    ident = be.identity()
    level: Dict[object, Word] = {ident: ()}
    for _ in range(length):
        nxt: Dict[object, Word] = {}
        for g, w in level.items():
            for s in t:
                h = be.mul(g, group.images[s])
                if h == ident:
                    return SemigroupResult(None, length, w + (s,))
                nxt.setdefault(h, w + (s,))
        level = nxt
    return SemigroupResult(math.log(len(t)), length, None)


# -- growth --------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthSeries:
    cumulative: Tuple[int, ...]
    strict: Tuple[int, ...]
    estimate: float
    supermultiplicative: bool

    @property
    def certified(self) -> bool:
        return self.supermultiplicative


def growth_series(group: Group, n_max: int, cap: int = DEFAULT_BALL_CAP) -> GrowthSeries:
    """Exact growth ``gamma(n)``, ``sigma(n)`` and the estimate ``log sigma(n)^(1/n)``."""
    if n_max < 1:
        raise SpecError("n_max must be >= 1")
    ball = group.ball(n_max, cap)
    sigma = tuple(ball.shells)
    gamma = tuple(ball.growth)
    est = math.log(sigma[n_max]) / n_max if sigma[n_max] > 0 else float("-inf")
    superm = all(
        sigma[a] * sigma[b] <= sigma[a + b] for a in range(1, n_max) for b in range(1, n_max - a + 1)
    )
    return GrowthSeries(gamma, sigma, est, superm)


# -- entropy sandwich ------------------------------------------------------------

def _is_plain(group: Group) -> bool:
    from .shift.entropy import _factor_generators

    try:
        _factor_generators(group)
    except NotPlainError:
        return False
    return True


def entropy_sandwich(
    group: Group,
    n_max: int,
    height=None,
    rauzy_orders: Optional[Sequence[int]] = None,
    semigroup: Optional[Tuple[Sequence, int]] = None,
    periodic_n: Optional[int] = None,
    workers: int = 1,
    cap: int = DEFAULT_BALL_CAP,
    rauzy_state_cap: int = 200_000,
) -> EntropyReport:
    """Collect lower and upper bounds on ``log mu`` and their bracket.

    Certified lower bounds: half the log of ``|S| - 1``, bridge roots, and for
    plain groups Rosenfeld with zero tail and the exact SFT entropy.  Certified
    upper bounds: ``log(|S| - 1)``, the minimum of ``c_n^(1/n)``, Rauzy bounds.
    Growth, periodic-point and semigroup values are reported as estimates.
    """
    report = EntropyReport()
    k = group.degree
    if k >= 2:
        report.add(Bound("sqrt-degree", "lower", 0.5 * math.log(k - 1), 0.5 * math.log(k - 1), True, {"degree": k}))
        report.add(Bound("degree", "upper", math.log(k - 1), math.log(k - 1), True, {"degree": k}))

    saws = count_saws(group, n_max, workers=workers, cap=cap)
    roots = [(n, math.log(c) / n) for n, c in enumerate(saws.counts) if n >= 1 and c > 0]
    if roots:
        n_best, v = min(roots, key=lambda x: (x[1], x[0]))
        report.add(Bound("fekete-saw", "upper", v, v, True, {"n": n_best, "count": saws.counts[n_best]}))

    if height is not None:
        bridges = count_bridges(group, n_max, height, workers=workers, cap=cap)
        broots = [(n, math.log(c) / n) for n, c in enumerate(bridges.counts) if n >= 1 and c > 0]
        if broots:
            n_best, v = max(broots, key=lambda x: (x[1], -x[0]))
            report.add(Bound("bridge", "lower", v, v, True, {"n": n_best, "count": bridges.counts[n_best], "height": bridges.params["height"]}))

    if rauzy_orders is None:
        rauzy_orders = [n for n in (1, 2, 4, 6, 8) if n < n_max and 0 < saws.counts[n + 1] <= rauzy_state_cap]
    best = None
    for order in rauzy_orders:
        b = rauzy_upper_bound(group, order, cap=cap)
        if best is None or b.value_hi < best.value_hi:
            best = b
    if best is not None:
        best.kind = "rauzy"
        report.add(best)

    if _is_plain(group):
        plain = plain_sft_entropy(group)
        report.add(plain.bound)
        longest = max(len(w) for w in plain.forbidden)
        rho = count_saps(group, max(longest, 3), workers=workers, cap=cap)
        beta = rosenfeld_bound(RosenfeldInstance(k, tuple(rho.counts), "zero")).beta
        report.add(Bound("rosenfeld", "lower", math.log(beta), math.log(beta), True, {"cutoff": rho.n_max, "tail": "zero"}))

    growth = growth_series(group, min(n_max, 12), cap)
    report.add(Bound("growth", "lower" if growth.certified else "estimate", growth.estimate, growth.estimate,
                     growth.certified, {"n": min(n_max, 12)}))

    if periodic_n:
        per = count_periodic(group, periodic_n)
        proots = [(n, math.log(c) / n) for n, c in enumerate(per.counts) if n >= 1 and c > 0 and per.certified[n]]
        if proots:
            n_best, v = max(proots, key=lambda x: x[1])
            report.add(Bound("periodic", "estimate", v, v, False, {"n": n_best, "count": per.counts[n_best]}))

    if semigroup is not None:
        subset, length = semigroup
        sg = semigroup_bound(group, subset, length)
        if sg.valid:
            report.add(Bound("semigroup", "estimate", sg.value, sg.value, False, {"subset": list(subset), "verified_to": length}))
    return report
