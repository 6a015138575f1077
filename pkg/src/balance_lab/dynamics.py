"""Gossip-style appraisal dynamics and their absorbing states.

Two stochastic processes over appraisal matrices are implemented.  The SIH
dynamics pick one ordered pair with at least one nonzero direction and
rewrite a single entry through one of three mechanisms: symmetry (copy the
reverse appraisal), influence (adopt a common neighbor's appraisal of the
target), or homophily (agree when appraisals of a common neighbor agree).
The SIOH dynamics add a +-1 opinion per node and interleave opinion gossip
and person-opinion homophily with embedded SIH updates.

Absorbing states coincide with triad-wise balance (SIH) and with
sign-symmetric matrices whose links equal the opinion products (SIOH); the
run loops use those structural tests, while the definition-literal
equilibrium checks that simulate every possible update are kept as slower
oracles.  Deterministic constructive sequences reach absorption from any
start by symmetrizing the zero pattern and then flipping one negative entry
at a time, driving a count-of-negatives potential strictly down.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .graphs import AppraisalMatrix
from .rng import stream

SYMMETRY = "symmetry"
INFLUENCE = "influence"
HOMOPHILY = "homophily"
OPINION_GOSSIP = "opinion-gossip"
PERSON_OPINION_HOMOPHILY = "person-opinion-homophily"

DEFAULT_MAX_STEPS = 10**6

_PROB_TOL = 1e-12


@dataclass(frozen=True)
class SihParams:
    """Mechanism weights for SIH updates; all positive, summing to one."""

    p1: float = 1 / 3
    p2: float = 1 / 3
    p3: float = 1 / 3

    def __post_init__(self):
        for name in ("p1", "p2", "p3"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if abs(self.p1 + self.p2 + self.p3 - 1.0) > _PROB_TOL:
            raise ValueError("p1 + p2 + p3 must equal 1")


@dataclass(frozen=True)
class SiohParams:
    """Weights for opinion gossip, person-opinion homophily, embedded SIH."""

    q1: float = 1 / 3
    q2: float = 1 / 3
    q3: float = 1 / 3
    sih: SihParams = field(default_factory=SihParams)

    def __post_init__(self):
        for name in ("q1", "q2", "q3"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if abs(self.q1 + self.q2 + self.q3 - 1.0) > _PROB_TOL:
            raise ValueError("q1 + q2 + q3 must equal 1")


@dataclass(frozen=True)
class SiohState:
    """Appraisal matrix paired with a +-1 opinion per node."""

    x: AppraisalMatrix
    y: tuple[int, ...]

    def __post_init__(self):
        y = tuple(int(v) for v in self.y)
        object.__setattr__(self, "y", y)
        if len(y) != self.x.n:
            raise ValueError("opinion vector length must match node count")
        if any(v not in (-1, 1) for v in y):
            raise ValueError("opinions must be -1 or +1")

    def opinion(self, i: int) -> int:
        return self.y[self.x.index_of(i)]


@dataclass(frozen=True)
class UpdateEvent:
    """One applied update: the pair, the mechanism, and the value change.

    ``k`` is the common neighbor and is present exactly for influence and
    homophily.  Opinion gossip changes ``y_i``; every other mechanism
    changes ``X_ij``.
    """

    step: int
    i: int
    j: int
    mechanism: str
    k: Optional[int]
    old: int
    new: int

    def __post_init__(self):
        needs_k = self.mechanism in (INFLUENCE, HOMOPHILY)
        if needs_k != (self.k is not None):
            raise ValueError(
                f"mechanism {self.mechanism!r} "
                + ("requires" if needs_k else "must not carry")
                + " a common neighbor"
            )

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "i": self.i,
            "j": self.j,
            "mechanism": self.mechanism,
            "k": self.k,
            "old": self.old,
            "new": self.new,
        }


@dataclass(frozen=True)
class AbsorptionRecord:
    """Outcome of one trajectory: absorption flag, step count, final state."""

    absorbed: bool
    steps: int
    final_x: AppraisalMatrix
    final_y: Optional[tuple[int, ...]] = None
    events: Optional[tuple[UpdateEvent, ...]] = None


# ---------------------------------------------------------------------------
# Internal helpers on mutable row lists (positional indices).
# ---------------------------------------------------------------------------


def _row_lists(x: AppraisalMatrix) -> list[list[int]]:
    return [list(r) for r in x.rows]


def _freeze(rows: list[list[int]], labels: tuple[int, ...]) -> AppraisalMatrix:
    return AppraisalMatrix(tuple(tuple(r) for r in rows), labels)


def _candidates(rows: list[list[int]], n: int) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j and (rows[i][j] or rows[j][i])
    ]


def _balanced(rows: list[list[int]], n: int) -> bool:
    # Triad-wise balance: the matrix is symmetric and every triangle of
    # pair signs has positive product.
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            if ri[j] != rows[j][i]:
                return False
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            sij = ri[j]
            if not sij:
                continue
            rj = rows[j]
            for k in range(j + 1, n):
                if ri[k] and rj[k] and sij * ri[k] * rj[k] < 0:
                    return False
    return True


def _aligned(rows: list[list[int]], y: list[int], n: int) -> bool:
    # SIOH absorbing test: symmetric matrix with X_ij = y_i * y_j on links.
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            v = ri[j]
            if v != rows[j][i]:
                return False
            if v and v != y[i] * y[j]:
                return False
    return True


def _common_neighbors(rows: list[list[int]], n: int, i: int, j: int) -> list[int]:
    ri, rj = rows[i], rows[j]
    return [k for k in range(n) if k != i and k != j and ri[k] and rj[k]]


class _BalanceLedger:
    """Incremental violation counts for the run loops.

    ``bad_pairs`` counts unordered pairs with unequal entries; ``bad_tris``
    counts triples whose three upper-triangle entries are nonzero with a
    negative product.  Once the matrix is symmetric the upper entries are
    the pair signs, so both counters at zero is exactly triad-wise balance.
    Rewriting one entry touches one pair and, when it is an upper entry,
    n - 2 triples, so maintenance is O(n) per update instead of a full
    O(n^3) rescan.
    """

    __slots__ = ("rows", "n", "bad_pairs", "bad_tris")

    def __init__(self, rows: list[list[int]], n: int):
        self.rows = rows
        self.n = n
        self.bad_pairs = 0
        self.bad_tris = 0
        for a in range(n):
            ra = rows[a]
            for b in range(a + 1, n):
                if ra[b] != rows[b][a]:
                    self.bad_pairs += 1
                vab = ra[b]
                if vab:
                    for c in range(b + 1, n):
                        if ra[c] and rows[b][c] and vab * ra[c] * rows[b][c] < 0:
                            self.bad_tris += 1

    def balanced(self) -> bool:
        return self.bad_pairs == 0 and self.bad_tris == 0

    def _tri_count_through(self, a: int, b: int) -> int:
        # Triples whose upper entries include rows[a][b], for a < b.
        rows = self.rows
        ra = rows[a]
        vab = ra[b]
        if not vab:
            return 0
        count = 0
        for k in range(a):
            rk = rows[k]
            if rk[a] and rk[b] and rk[a] * rk[b] * vab < 0:
                count += 1
        for k in range(a + 1, b):
            if ra[k] and rows[k][b] and ra[k] * rows[k][b] * vab < 0:
                count += 1
        for k in range(b + 1, self.n):
            if ra[k] and rows[b][k] and ra[k] * rows[b][k] * vab < 0:
                count += 1
        return count

    def write(self, i: int, j: int, new: int) -> None:
        rows = self.rows
        a, b = (i, j) if i < j else (j, i)
        if rows[a][b] != rows[b][a]:
            self.bad_pairs -= 1
        if i < j:
            self.bad_tris -= self._tri_count_through(a, b)
        rows[i][j] = new
        if rows[a][b] != rows[b][a]:
            self.bad_pairs += 1
        if i < j:
            self.bad_tris += self._tri_count_through(a, b)


def _sih_draw(
    rows: list[list[int]],
    n: int,
    cands: list[tuple[int, int]],
    params: SihParams,
    rng: random.Random,
) -> tuple[int, int, str, Optional[int], int]:
    """Pick pair, mechanism, optional neighbor; return the value to write.

    Draw order is fixed for reproducibility: pair index, then mechanism,
    then (for influence/homophily only) the neighbor index.
    """
    i, j = cands[rng.randrange(len(cands))]
    ks = _common_neighbors(rows, n, i, j)
    if not ks:
        return i, j, SYMMETRY, None, rows[j][i]
    r = rng.random()
    if r < params.p1:
        return i, j, SYMMETRY, None, rows[j][i]
    if r < params.p1 + params.p2:
        k = ks[rng.randrange(len(ks))]
        return i, j, INFLUENCE, k, rows[i][k] * rows[k][j]
    k = ks[rng.randrange(len(ks))]
    return i, j, HOMOPHILY, k, rows[i][k] * rows[j][k]


def _require_legal_sih(rows, n, i, j, mechanism, k, new) -> None:
    # Re-validate a constructed update against the step preconditions.
    if not (rows[i][j] or rows[j][i]):
        raise RuntimeError("illegal update: pair carries no link")
    if mechanism == SYMMETRY:
        expected = rows[j][i]
    elif mechanism in (INFLUENCE, HOMOPHILY):
        if k is None or k in (i, j) or not (rows[i][k] and rows[j][k]):
            raise RuntimeError("illegal update: invalid common neighbor")
        expected = rows[i][k] * (rows[k][j] if mechanism == INFLUENCE else rows[j][k])
    else:
        raise RuntimeError(f"illegal update: unknown mechanism {mechanism!r}")
    if new != expected:
        raise RuntimeError("illegal update: value does not match mechanism")


# ---------------------------------------------------------------------------
# SIH dynamics.
# ---------------------------------------------------------------------------


def sih_candidate_pairs(x: AppraisalMatrix) -> list[tuple[int, int]]:
    """Ordered pairs (i, j), i != j, with X_ij or X_ji nonzero."""
    labels = x.labels
    return [(labels[i], labels[j]) for i, j in _candidates(x.rows, x.n)]


def sih_step(
    x: AppraisalMatrix, params: SihParams, rng: random.Random, step: int = 0
) -> tuple[AppraisalMatrix, UpdateEvent]:
    """One SIH update; raises when the network has no link to act on."""
    rows = _row_lists(x)
    n = x.n
    cands = _candidates(rows, n)
    if not cands:
        raise ValueError("no candidate pair: the appraisal network has no links")
    i, j, mech, k, new = _sih_draw(rows, n, cands, params, rng)
    old = rows[i][j]
    rows[i][j] = new
    labels = x.labels
    event = UpdateEvent(
        step, labels[i], labels[j], mech, None if k is None else labels[k], old, new
    )
    return _freeze(rows, labels), event


def is_sih_equilibrium(x: AppraisalMatrix) -> bool:
    """No possible SIH update changes the matrix.

    Literal check: every candidate pair is simulated against the symmetry
    outcome and, for every common neighbor, the influence and homophily
    outcomes.  Coincides with triad-wise balance.
    """
    rows = x.rows
    n = x.n
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            if i == j or not (ri[j] or rows[j][i]):
                continue
            v = ri[j]
            if rows[j][i] != v:
                return False
            rj = rows[j]
            for k in range(n):
                if k != i and k != j and ri[k] and rj[k]:
                    if ri[k] * rows[k][j] != v or ri[k] * rj[k] != v:
                        return False
    return True


def run_sih(
    x0: AppraisalMatrix,
    params: SihParams,
    seed: int,
    max_steps: int = DEFAULT_MAX_STEPS,
    log: bool = False,
) -> AbsorptionRecord:
    """Run SIH updates until triad-wise balance or ``max_steps``.

    Deterministic given (x0, params, seed).  Absorption is detected with
    the O(n^3) structural balance test after every state change; hitting
    ``max_steps`` without absorbing is reported, not raised.
    """
    if max_steps <= 0:
        raise ValueError("max_steps must be positive")
    rng = stream(seed)
    rows = _row_lists(x0)
    n = x0.n
    labels = x0.labels
    events: Optional[list[UpdateEvent]] = [] if log else None
    ledger = _BalanceLedger(rows, n)
    if ledger.balanced():
        return AbsorptionRecord(True, 0, x0, None, () if log else None)
    cands = _candidates(rows, n)
    absorbed = False
    t = 0
    while t < max_steps:
        i, j, mech, k, new = _sih_draw(rows, n, cands, params, rng)
        old = rows[i][j]
        if events is not None:
            events.append(
                UpdateEvent(
                    t,
                    labels[i],
                    labels[j],
                    mech,
                    None if k is None else labels[k],
                    old,
                    new,
                )
            )
        t += 1
        if new != old:
            ledger.write(i, j, new)
            if (old == 0) != (new == 0):
                cands = _candidates(rows, n)
            if ledger.balanced():
                absorbed = True
                break
    if absorbed and not _balanced(rows, n):
        raise RuntimeError("internal error: ledger disagrees with balance scan")
    return AbsorptionRecord(
        absorbed,
        t,
        _freeze(rows, labels),
        None,
        tuple(events) if events is not None else None,
    )


def constructive_sih_sequence(x0: AppraisalMatrix) -> AbsorptionRecord:
    """Deterministic legal-update sequence reaching triad-wise balance.

    Phase 1 copies the nonzero side of every half-directed pair (symmetry),
    making the matrix bilateral.  Phase 2 repeatedly flips one negative
    entry to +1: either the minus side of a (-1, +1) pair via symmetry, or
    one direction of a negative symmetric pair sitting in an unbalanced
    triangle via homophily through a common neighbor whose pair signs
    agree.  Each phase-2 flip lowers the negative-entry count by exactly
    one, so the sequence terminates in fewer than n(n-1) phase-2 steps.
    """
    rows = _row_lists(x0)
    n = x0.n
    labels = x0.labels
    events: list[UpdateEvent] = []
    t = 0

    def apply(i: int, j: int, mech: str, k: Optional[int], new: int) -> None:
        nonlocal t
        _require_legal_sih(rows, n, i, j, mech, k, new)
        events.append(
            UpdateEvent(
                t, labels[i], labels[j], mech, None if k is None else labels[k],
                rows[i][j], new,
            )
        )
        rows[i][j] = new
        t += 1

    # Phase 1: fixes never create new half pairs, so one sweep suffices.
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] == 0 and rows[j][i] != 0:
                apply(i, j, SYMMETRY, None, rows[j][i])

    # Phase 2.
    while True:
        pick = next(
            (
                (i, j)
                for i in range(n)
                for j in range(n)
                if i != j and rows[i][j] == -1 and rows[j][i] == 1
            ),
            None,
        )
        if pick is not None:
            apply(pick[0], pick[1], SYMMETRY, None, 1)
            continue
        # Matrix is sign-symmetric here; look for a fixable negative pair.
        found = None
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] == -1 and rows[j][i] == -1:
                    for k in range(n):
                        if k != i and k != j and rows[i][k] * rows[j][k] == 1:
                            found = (i, j, k)
                            break
                if found:
                    break
            if found:
                break
        if found is None:
            break
        i, j, k = found
        apply(i, j, HOMOPHILY, k, rows[i][k] * rows[j][k])

    if not _balanced(rows, n):
        raise RuntimeError("internal error: constructive sequence ended unbalanced")
    return AbsorptionRecord(True, t, _freeze(rows, labels), None, tuple(events))


# ---------------------------------------------------------------------------
# SIOH dynamics.
# ---------------------------------------------------------------------------


def _sioh_draw(
    rows: list[list[int]],
    y: list[int],
    n: int,
    cands: list[tuple[int, int]],
    params: SiohParams,
    rng: random.Random,
) -> tuple[int, int, str, Optional[int], int, int]:
    """Returns (i, j, mechanism, k, old, new); gossip targets y_i."""
    i, j = cands[rng.randrange(len(cands))]
    v = rows[i][j]
    if v == 0:
        # The candidate condition guarantees the reverse link is nonzero.
        return i, j, SYMMETRY, None, 0, rows[j][i]
    r = rng.random()
    if r < params.q1:
        return i, j, OPINION_GOSSIP, None, y[i], v * y[j]
    if r < params.q1 + params.q2:
        return i, j, PERSON_OPINION_HOMOPHILY, None, v, y[i] * y[j]
    ks = _common_neighbors(rows, n, i, j)
    sih = params.sih
    if not ks:
        return i, j, SYMMETRY, None, v, rows[j][i]
    r2 = rng.random()
    if r2 < sih.p1:
        return i, j, SYMMETRY, None, v, rows[j][i]
    if r2 < sih.p1 + sih.p2:
        k = ks[rng.randrange(len(ks))]
        return i, j, INFLUENCE, k, v, rows[i][k] * rows[k][j]
    k = ks[rng.randrange(len(ks))]
    return i, j, HOMOPHILY, k, v, rows[i][k] * rows[j][k]


class _AlignmentLedger:
    """Incremental counts for the SIOH absorbing test.

    ``bad_pairs`` as in the balance ledger; ``bad_links`` counts upper
    entries that are nonzero and differ from the opinion product of their
    endpoints.  Both at zero is exactly the absorbing alignment.
    """

    __slots__ = ("rows", "y", "n", "bad_pairs", "bad_links")

    def __init__(self, rows: list[list[int]], y: list[int], n: int):
        self.rows = rows
        self.y = y
        self.n = n
        self.bad_pairs = 0
        self.bad_links = 0
        for a in range(n):
            ra = rows[a]
            for b in range(a + 1, n):
                if ra[b] != rows[b][a]:
                    self.bad_pairs += 1
                if ra[b] and ra[b] != y[a] * y[b]:
                    self.bad_links += 1

    def aligned(self) -> bool:
        return self.bad_pairs == 0 and self.bad_links == 0

    def _link_bad(self, a: int, b: int) -> int:
        v = self.rows[a][b]
        return 1 if v and v != self.y[a] * self.y[b] else 0

    def write_x(self, i: int, j: int, new: int) -> None:
        rows = self.rows
        a, b = (i, j) if i < j else (j, i)
        if rows[a][b] != rows[b][a]:
            self.bad_pairs -= 1
        if i < j:
            self.bad_links -= self._link_bad(a, b)
        rows[i][j] = new
        if rows[a][b] != rows[b][a]:
            self.bad_pairs += 1
        if i < j:
            self.bad_links += self._link_bad(a, b)

    def write_y(self, i: int, new: int) -> None:
        for a in range(self.n):
            if a != i:
                self.bad_links -= self._link_bad(min(a, i), max(a, i))
        self.y[i] = new
        for a in range(self.n):
            if a != i:
                self.bad_links += self._link_bad(min(a, i), max(a, i))


def _require_legal_sioh(rows, y, n, i, j, mechanism, k, new) -> None:
    if not (rows[i][j] or rows[j][i]):
        raise RuntimeError("illegal update: pair carries no link")
    if mechanism == OPINION_GOSSIP:
        if rows[i][j] == 0 or new != rows[i][j] * y[j]:
            raise RuntimeError("illegal opinion-gossip update")
    elif mechanism == PERSON_OPINION_HOMOPHILY:
        if rows[i][j] == 0 or new != y[i] * y[j]:
            raise RuntimeError("illegal person-opinion homophily update")
    else:
        # Outer symmetry when X_ij = 0, or any embedded SIH mechanism.
        _require_legal_sih(rows, n, i, j, mechanism, k, new)


def sioh_step(
    state: SiohState, params: SiohParams, rng: random.Random, step: int = 0
) -> tuple[SiohState, UpdateEvent]:
    """One SIOH update; raises when the network has no link to act on."""
    rows = _row_lists(state.x)
    y = list(state.y)
    n = state.x.n
    cands = _candidates(rows, n)
    if not cands:
        raise ValueError("no candidate pair: the appraisal network has no links")
    i, j, mech, k, old, new = _sioh_draw(rows, y, n, cands, params, rng)
    if mech == OPINION_GOSSIP:
        y[i] = new
    else:
        rows[i][j] = new
    labels = state.x.labels
    event = UpdateEvent(
        step, labels[i], labels[j], mech, None if k is None else labels[k], old, new
    )
    return SiohState(_freeze(rows, labels), tuple(y)), event


def is_sioh_equilibrium(state: SiohState) -> bool:
    """No possible SIOH update changes the pair (X, y).

    Literal check over every candidate pair: the forced symmetry on zero
    entries, the gossip and person-opinion outcomes, and all embedded SIH
    outcomes.  Coincides with sign-symmetric X whose links satisfy
    X_ij = y_i * y_j.
    """
    rows = state.x.rows
    y = state.y
    n = state.x.n
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            if i == j or not (ri[j] or rows[j][i]):
                continue
            v = ri[j]
            if v == 0:
                return False
            if v * y[j] != y[i]:
                return False
            if y[i] * y[j] != v:
                return False
            if rows[j][i] != v:
                return False
            rj = rows[j]
            for k in range(n):
                if k != i and k != j and ri[k] and rj[k]:
                    if ri[k] * rows[k][j] != v or ri[k] * rj[k] != v:
                        return False
    return True


def run_sioh(
    state0: SiohState,
    params: SiohParams,
    seed: int,
    max_steps: int = DEFAULT_MAX_STEPS,
    log: bool = False,
) -> AbsorptionRecord:
    """Run SIOH updates until the absorbing alignment or ``max_steps``."""
    if max_steps <= 0:
        raise ValueError("max_steps must be positive")
    rng = stream(seed)
    rows = _row_lists(state0.x)
    y = list(state0.y)
    n = state0.x.n
    labels = state0.x.labels
    events: Optional[list[UpdateEvent]] = [] if log else None
    ledger = _AlignmentLedger(rows, y, n)
    if ledger.aligned():
        return AbsorptionRecord(True, 0, state0.x, state0.y, () if log else None)
    cands = _candidates(rows, n)
    absorbed = False
    t = 0
    while t < max_steps:
        i, j, mech, k, old, new = _sioh_draw(rows, y, n, cands, params, rng)
        if events is not None:
            events.append(
                UpdateEvent(
                    t,
                    labels[i],
                    labels[j],
                    mech,
                    None if k is None else labels[k],
                    old,
                    new,
                )
            )
        t += 1
        if new != old:
            if mech == OPINION_GOSSIP:
                ledger.write_y(i, new)
            else:
                ledger.write_x(i, j, new)
                if (old == 0) != (new == 0):
                    cands = _candidates(rows, n)
            if ledger.aligned():
                absorbed = True
                break
    if absorbed and not _aligned(rows, y, n):
        raise RuntimeError("internal error: ledger disagrees with alignment scan")
    return AbsorptionRecord(
        absorbed,
        t,
        _freeze(rows, labels),
        tuple(y),
        tuple(events) if events is not None else None,
    )


def constructive_sioh_sequence(state0: SiohState) -> AbsorptionRecord:
    """Deterministic legal-update sequence reaching an SIOH equilibrium.

    After symmetrizing the zero pattern, repeatedly fix, in order: a
    (-1, +1) pair by symmetry; a negative link between agreeing opinions by
    person-opinion homophily; a positive link from a -1 opinion toward a +1
    opinion by opinion gossip.  Each fix lowers the combined count of
    negative entries and negative opinions by exactly one.
    """
    rows = _row_lists(state0.x)
    y = list(state0.y)
    n = state0.x.n
    labels = state0.x.labels
    events: list[UpdateEvent] = []
    t = 0

    def apply(i, j, mech, k, new):
        nonlocal t
        _require_legal_sioh(rows, y, n, i, j, mech, k, new)
        old = y[i] if mech == OPINION_GOSSIP else rows[i][j]
        events.append(
            UpdateEvent(
                t, labels[i], labels[j], mech, None if k is None else labels[k],
                old, new,
            )
        )
        if mech == OPINION_GOSSIP:
            y[i] = new
        else:
            rows[i][j] = new
        t += 1

    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] == 0 and rows[j][i] != 0:
                apply(i, j, SYMMETRY, None, rows[j][i])

    while True:
        step_done = False
        for i in range(n):
            for j in range(n):
                if i != j and rows[i][j] == -1 and rows[j][i] == 1:
                    apply(i, j, SYMMETRY, None, 1)
                    step_done = True
                    break
            if step_done:
                break
        if step_done:
            continue
        for i in range(n):
            for j in range(n):
                if i != j and rows[i][j] == -1 and y[i] * y[j] == 1:
                    apply(i, j, PERSON_OPINION_HOMOPHILY, None, 1)
                    step_done = True
                    break
            if step_done:
                break
        if step_done:
            continue
        for i in range(n):
            for j in range(n):
                if i != j and rows[i][j] == 1 and y[i] == -1 and y[j] == 1:
                    apply(i, j, OPINION_GOSSIP, None, 1)
                    step_done = True
                    break
            if step_done:
                break
        if not step_done:
            break

    if not _aligned(rows, y, n):
        raise RuntimeError("internal error: constructive sequence ended unaligned")
    return AbsorptionRecord(True, t, _freeze(rows, labels), tuple(y), tuple(events))


# ---------------------------------------------------------------------------
# Convergence potentials.
# ---------------------------------------------------------------------------


def potential_h(x: AppraisalMatrix) -> int:
    """Count of negative appraisal entries."""
    return x.negative_count()


def potential_h_xy(state: SiohState) -> int:
    """Negative entries plus negative opinions."""
    return state.x.negative_count() + sum(1 for v in state.y if v < 0)
