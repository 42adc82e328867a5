"""Bi-infinite periodic self-avoiding walks and extendability."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..errors import NotABridgeError, ResourceCapError, SpecError, TorsionError
from ..groups.core import DEFAULT_BALL_CAP, Group, Word
from .counts import WalkCounts, as_height, is_bridge_heights, iter_saw_words

CERTIFIED_YES = "certified-yes"
CERTIFIED_NO = "certified-no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class PeriodicCertificate:
    """Verdict on whether ``word`` repeated forever labels a self-avoiding walk.

    ``collision_set_size`` is ``|D|`` with ``D = {p_j p_i^-1}`` over the
    prefix vertices; ``bound`` is the number of powers checked by brute force
    (0 when the exact solver decided everything).
    """

    word: Word
    status: str
    collision_set_size: int
    bound: int
    method: str

    @property
    def certified(self) -> bool:
        return self.status != UNKNOWN

    def __bool__(self) -> bool:
        return self.status == CERTIFIED_YES


def is_periodic_word(group: Group, word, mode: str = "exact", bound: Optional[int] = None) -> PeriodicCertificate:
    """Decide whether ``w^inf`` labels a bi-infinite self-avoiding walk.

    With ``g = w`` and prefix vertices ``p_0..p_{L-1}``, the walk visits
    ``g^m p_i``; it is self-avoiding iff the ``p_i`` are distinct and no
    ``g^m`` with ``m >= 1`` lies in ``D``.  ``mode="exact"`` solves the power
    equations exactly where the backend can; anything left undecided falls
    back to checking ``m <= bound`` (default ``4 |w| |D|``), which can only
    prove a collision.
    """
    w = group.word(word)
    if not w:
        raise SpecError("periodicity needs a nonempty word")
    if mode not in ("exact", "bounded"):
        raise SpecError(f"unknown periodicity mode {mode!r}")
    be = group.backend
    reps = group.prefix_reps(w)
    prefix = reps[:-1]
    g = reps[-1]
    if len(set(prefix)) != len(prefix):
        return PeriodicCertificate(w, CERTIFIED_NO, 0, 0, "prefix")
    inverses = [be.inv(p) for p in prefix]
    dset = sorted({be.mul(pj, pi_inv) for pj in prefix for pi_inv in inverses}, key=repr)
    if bound is None:
        bound = 4 * len(w) * len(dset)

    if mode == "exact":
        verdicts = be.power_hits(g, dset)
        if any(v is True for v in verdicts):
            return PeriodicCertificate(w, CERTIFIED_NO, len(dset), 0, "exact")
        pending = [d for d, v in zip(dset, verdicts) if v is None]
        if not pending:
            return PeriodicCertificate(w, CERTIFIED_YES, len(dset), 0, "exact")
    else:
        pending = dset

    targets = set(pending)
    p = be.identity()
    for _ in range(bound):
        p = be.mul(p, g)
        if p in targets:
            return PeriodicCertificate(w, CERTIFIED_NO, len(dset), bound, "bounded")
    return PeriodicCertificate(w, UNKNOWN, len(dset), bound, "bounded")


def is_primitive(word: Sequence[int]) -> bool:
    """True iff ``word`` is not a proper power ``u^j`` with ``j >= 2``."""
    w = tuple(word)
    return bool(w) and _least_period(w) == len(w)


def _least_period(w: Word) -> int:
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[p:] + w[:p] == w:
            return p
    return n


def count_periodic(group: Group, n_max: int, mode: str = "exact", primitive: bool = True,
                   cap: int = DEFAULT_BALL_CAP) -> WalkCounts:
    """``e_n``: words of length ``n`` whose infinite repetition is self-avoiding.

    By default only primitive words count, so each periodic point is
    counted at its least period; ``primitive=False`` counts every word of
    length ``n``.  An entry is flagged uncertified when some candidate
    stayed undecided.
    """
    if n_max < 1:
        raise SpecError("n_max must be >= 1")
    ball = group.ball(n_max, cap)
    counts, certified = [0], [True]
    for n in range(1, n_max + 1):
        total, ok = 0, True
        for w in iter_saw_words(ball.neighbors, n):
            if primitive and _least_period(w) != n:
                continue
            cert = is_periodic_word(group, w, mode)
            total += cert.status == CERTIFIED_YES
            ok &= cert.certified
        counts.append(total)
        certified.append(ok)
    return WalkCounts("periodic", counts, certified, group.fingerprint,
                      {"n_max": n_max, "mode": mode, "primitive": primitive})


def _extensions(nbr, start: int, k: int, blocked: set) -> List[Tuple[int, ...]]:
    """Vertex paths of ``k`` further steps from ``start`` avoiding ``blocked``."""
    out = []
    path = [start]

    def rec():
        if len(path) == k + 1:
            out.append(tuple(path[1:]))
            return
        for w in nbr[path[-1]]:
            w = int(w)
            if w < 0 or w in blocked or w in path:
                continue
            path.append(w)
            rec()
            path.pop()

    rec()
    return out


def k_extendable(group: Group, word, k: int, cap: int = DEFAULT_BALL_CAP) -> bool:
    """True iff some ``u w v`` with ``|u| = |v| = k`` labels a self-avoiding walk.

    This is a necessary condition for ``w`` to occur in a bi-infinite
    self-avoiding walk, not a sufficient one.
    """
    w = group.word(word)
    if k < 0:
        raise SpecError("k must be >= 0")
    ball = group.ball(len(w) + k, cap)
    nbr = ball.neighbors
    verts = [0]
    for s in w:
        verts.append(int(nbr[verts[-1], s]))
    if len(set(verts)) != len(verts):
        raise SpecError("word does not label a self-avoiding walk")
    if k == 0:
        return True
    body = set(verts)
    # extending the front of the walk uses the neighbours of p_0, which are the
    # same vertex set as for the end since S is symmetric
    tails = _extensions(nbr, verts[-1], k, body)
    if not tails:
        return False
    heads = _extensions(nbr, verts[0], k, body)
    if not heads:
        return False
    for tail in tails:
        blocked = body | set(tail)
        if _extensions_exist(nbr, verts[0], k, blocked):
            return True
    return False


def _extensions_exist(nbr, start: int, k: int, blocked: set) -> bool:
    path = [start]

    def rec() -> bool:
        if len(path) == k + 1:
            return True
        for w in nbr[path[-1]]:
            w = int(w)
            if w < 0 or w in blocked or w in path:
                continue
            path.append(w)
            if rec():
                return True
            path.pop()
        return False

    return rec()


def iterate_bridge(group: Group, word, height) -> PeriodicCertificate:
    """Certify that a bridge, repeated forever, is a bi-infinite self-avoiding walk."""
    w = group.word(word)
    height = as_height(group, height)
    height.validate(len(w) + 1)
    if not is_bridge_heights(height.word_heights(w)) or not group.is_saw(w):
        raise NotABridgeError(f"{group.alphabet.format(w)!r} is not a bridge")
    return is_periodic_word(group, w, "exact")


def find_periodic_from_torsion_free(group: Group, g_word, k_max: int, cap: int = DEFAULT_BALL_CAP) -> Tuple[Word, int, PeriodicCertificate]:
    """Geodesic word for the power ``g^k`` of least norm, ``1 <= k <= k_max``.

    Returns ``(w, k, certificate)``.  Norms come from one breadth-first ball;
    if it cannot reach ``k_max |g|`` within ``cap`` a smaller radius is used,
    which is still exact as long as the minimal norm falls inside it.
    """
    gw = group.word(g_word)
    if k_max < 1:
        raise SpecError("k_max must be >= 1")
    be = group.backend
    g = group.evaluate_rep(gw)
    powers = []
    p = be.identity()
    for k in range(1, k_max + 1):
        p = be.mul(p, g)
        if p == be.identity():
            raise TorsionError(f"{group.alphabet.format(gw)!r} has order {k}")
        powers.append(p)
    radius = max(1, k_max * len(gw))
    while True:
        try:
            ball = group.ball(radius, cap)
            break
        except ResourceCapError:
            if radius <= 1:
                raise
            radius //= 2
    norms = [ball.norm_of(x) for x in powers]
    known = [(n, k) for k, n in enumerate(norms, start=1) if n is not None]
    if not known:
        raise ResourceCapError(f"no power of the element has norm <= {radius}")
    best_norm, best_k = min(known)
    w = ball.geodesic_word(powers[best_k - 1])
    return w, best_k, is_periodic_word(group, w, "exact")
