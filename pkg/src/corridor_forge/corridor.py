"""The randomized corridor-mapping process.

Maps the infinite straight corridor into the complete d-complex on [n]
one vertex at a time, choosing uniformly among the vertices that close
no already-closed (d-1)-face and were not among the previous 2d images.
Every step closes exactly d new (d-1)-faces, so the image's dual graph
is an induced path in the Johnson graph J(n, d+1).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations

from .closure import face_key, scan_available
from .complexes import Face, SimplicialComplex
from .dual import build_dual, is_induced_path
from .errors import InvalidParams, OutOfRegime, VerificationError
from .trajectory import (
    TrackedComplex,
    TrajectoryTracker,
    band_halfwidth,
    face_boundary,
    predicted_y,
    tracked_complex,
    z_statistic,
)

# Tracking draws from a salted RNG stream so the mapped vertex sequence
# for a given seed is identical with and without trajectory recording.
TRACKER_SEED_SALT = 0x7A11_0C0D


def corridor_p(n: int, d: int, i: int) -> float:
    """Surviving-face density 1 - d*d!*t at scaled time t = i / n^d."""
    return 1.0 - d * math.factorial(d) * i / n**d


def predicted_Y(n: int, d: int, i: int, size_a: int) -> float:
    """Linial-Meshulam heuristic n * p^|A| for the tracked vertex count."""
    return predicted_y(n, corridor_p(n, d, i), size_a)


def error_function(d: int, p: float) -> float:
    """e(t) = exp{(10d+11) p^{-d^2}}; grows fast enough to keep the
    centered statistics one-sided. Returns inf on overflow."""
    if p <= 0:
        raise OutOfRegime(f"p={p} <= 0")
    exponent = (10 * d + 11) * p ** (-d * d)
    try:
        return math.exp(exponent)
    except OverflowError:
        return math.inf


def error_band(n: int, d: int, t: float) -> float:
    """Concentration interval half-width n^{3/4} e(t) / 2.

    Vacuously larger than n at desk scale; reported for completeness.
    """
    p = 1.0 - d * math.factorial(d) * t
    return band_halfwidth(n, error_function(d, p))


def i_end(n: int, d: int, eps: float) -> int | None:
    """Step count (1/(d*d!) - (log n)^{-eps}) n^d from the headline bound.

    Returns None (asymptotic-only) when the formula is nonpositive at
    this n; requires 0 < eps < 1/d^2 strictly.
    """
    if not 0 < eps < 1.0 / (d * d):
        raise InvalidParams(f"need 0 < eps < 1/d^2, got {eps}")
    value = (1.0 / (d * math.factorial(d)) - math.log(n) ** (-eps)) * n**d
    if value <= 0:
        return None
    return math.floor(value)


def volume_bound_steps(n: int, d: int) -> float:
    """Exact upper bound (C(n,d) - (d+1)) / d on the number of steps."""
    return (math.comb(n, d) - (d + 1)) / d


@dataclass
class ProcessConfig:
    n: int
    d: int
    seed: int
    record_every: int = 0  # 0 disables trajectory recording
    track_random: int = 10
    track_link: bool = True
    track: tuple[tuple[str, tuple[Face, ...]], ...] = ()
    allow_small_n: bool = False

    def validate(self):
        if self.d < 2:
            raise InvalidParams("process requires d >= 2")
        floor = self.d + 2 if self.allow_small_n else 4 * self.d + 2
        if self.n < floor:
            raise InvalidParams(f"need n >= {floor}, got n={self.n}")


@dataclass
class ProcessState:
    config: ProcessConfig
    phi: list[int]
    closed_keys: set[int]
    step: int
    rng: random.Random
    tracker: TrajectoryTracker | None = None
    first_low_step: int | None = None


@dataclass
class TrajectoryEntry:
    size: int
    y: int
    w: tuple[int, ...]
    pred: float | None
    band: float | None
    z: tuple[float, ...] | None


@dataclass
class TrajectoryRecord:
    step: int
    t: float
    p: float
    terminal_y: int
    entries: dict[str, TrajectoryEntry]


@dataclass
class RunReport:
    config: ProcessConfig
    steps: int
    first_low_step: int | None
    termination: str
    image: SimplicialComplex
    records: list[TrajectoryRecord]
    first_band_exit: int | None

    @property
    def path_length(self) -> int:
        return self.steps


def _family_bounds(d: int) -> tuple[int, int]:
    # v_A <= 2d, |A| <= d^2
    return 2 * d, d * d


def default_tracked_family(config: ProcessConfig) -> list[TrackedComplex]:
    """Boundaries of track_random uniformly random (d-1)-faces plus, when
    track_link is set, one corridor-link-shaped complex with v_A = 2d and
    |A| = d^2. Sampled from a salted stream so the run itself is
    unchanged by tracking."""
    n, d = config.n, config.d
    max_v, max_size = _family_bounds(d)
    rng = random.Random(config.seed ^ TRACKER_SEED_SALT)
    tracked = []
    for name, faces in config.track:
        tracked.append(tracked_complex(name, faces, d, max_v, max_size))
    for idx in range(config.track_random):
        face = sorted(rng.sample(range(1, n + 1), d))
        tracked.append(
            tracked_complex(
                f"rand{idx}", face_boundary(face), d, max_v, max_size
            )
        )
    if config.track_link:
        w = rng.sample(range(1, n + 1), 2 * d)
        faces = set()
        for a in range(0, d + 1):  # the d+1 windows of SC_{d-1}(2d)
            window = w[a : a + d]
            faces.update(
                tuple(sorted(sub)) for sub in combinations(window, d - 1)
            )
        tracked.append(
            tracked_complex("link", sorted(faces), d, max_v, max_size)
        )
    return tracked


def init(config: ProcessConfig) -> ProcessState:
    """Choose the starting d-face uniformly and close its d+1 faces."""
    config.validate()
    n, d = config.n, config.d
    rng = random.Random(config.seed)
    start = rng.sample(range(1, n + 1), d + 1)
    base = n + 1
    closed_faces = [tuple(sorted(c)) for c in combinations(start, d)]
    state = ProcessState(
        config=config,
        phi=list(start),
        closed_keys={face_key(f, base) for f in closed_faces},
        step=0,
        rng=rng,
    )
    if config.record_every > 0:
        period = 3 * d + 1
        state.tracker = TrajectoryTracker(
            n=n, period=period, tracked=default_tracked_family(config)
        )
        for f in closed_faces:
            state.tracker.note_closure(f, 0)
    return state


def _scan(state: ProcessState) -> tuple[int, list[int]]:
    """One pass over [n]: returns (|X_k|, choice list).

    X_k is the set of vertices outside the terminal face that close no
    already-closed face; the choice list further excludes the images of
    the previous 2d corridor vertices.
    """
    cfg = state.config
    n, d = cfg.n, cfg.d
    terminal = tuple(sorted(state.phi[-d:]))
    taus = list(combinations(terminal, d - 1))
    return scan_available(
        n=n,
        base=n + 1,
        closed=state.closed_keys,
        window=set(terminal),
        taus=taus,
        recent=set(state.phi[-2 * d :]),
    )


def candidates(state: ProcessState) -> list[int]:
    """Vertices eligible for the next step, in increasing order."""
    return _scan(state)[1]


def step(state: ProcessState) -> bool:
    """Advance one step. Returns False when the candidate set is empty."""
    cfg = state.config
    d = cfg.d
    xk, choice = _scan(state)
    if state.first_low_step is None and xk <= 2 * d:
        state.first_low_step = state.step
    if not choice:
        return False
    v = choice[state.rng.randrange(len(choice))]
    terminal = tuple(sorted(state.phi[-d:]))
    base = cfg.n + 1
    round_no = state.step + 1
    for tau in combinations(terminal, d - 1):
        face = tuple(sorted(tau + (v,)))
        key = face_key(face, base)
        assert key not in state.closed_keys
        state.closed_keys.add(key)
        if state.tracker is not None:
            state.tracker.note_closure(face, round_no)
    state.phi.append(v)
    state.step += 1
    return True


def _record(state: ProcessState, terminal_y: int) -> TrajectoryRecord:
    cfg = state.config
    n, d = cfg.n, cfg.d
    i = state.step
    t = i / n**d
    p = corridor_p(n, d, i)
    period = 3 * d + 1
    try:
        e_val = error_function(d, p)
        band = band_halfwidth(n, e_val)
    except OutOfRegime:
        e_val = band = None
    entries: dict[str, TrajectoryEntry] = {}
    tracker = state.tracker
    tracker.snapshot(i)
    for tc in tracker.tracked:
        w = tuple(tracker.w[tc.name])
        y = tracker.y_value(tc.name)
        pred = n * p**tc.size if p >= 0 else None
        z = None
        if band is not None:
            z = tuple(
                z_statistic(wj, n, p, tc.size, e_val, period) for wj in w
            )
        entries[tc.name] = TrajectoryEntry(
            size=tc.size, y=y, w=w, pred=pred, band=band, z=z
        )
    return TrajectoryRecord(step=i, t=t, p=p, terminal_y=terminal_y, entries=entries)


def run(config: ProcessConfig) -> RunReport:
    """Run to exhaustion, assemble the image complex, verify invariants."""
    state = init(config)
    records: list[TrajectoryRecord] = []
    stride = config.record_every
    if stride > 0:
        xk0, _ = _scan(state)
        records.append(_record(state, xk0))
    while True:
        if not step(state):
            break
        if stride > 0 and state.step % stride == 0:
            xk, _ = _scan(state)
            records.append(_record(state, xk))
    d = config.d
    facets = [
        tuple(sorted(state.phi[j : j + d + 1]))
        for j in range(len(state.phi) - d)
    ]
    image = SimplicialComplex(n=config.n, facets=frozenset(facets))
    report = RunReport(
        config=config,
        steps=state.step,
        first_low_step=state.first_low_step,
        termination="exhausted",
        image=image,
        records=records,
        first_band_exit=first_band_exit(records, config.n),
    )
    verify_run(report, state)
    return report


def z_value(
    tracker: TrajectoryTracker, name: str, j: int, ell: int, n: int, d: int
) -> float:
    """Centered statistic W_{A,j} at step (3d+1) ell + j minus trajectory
    and half-band. Requires that step to have been snapshot; raises
    NotRecorded otherwise."""
    period = 3 * d + 1
    step = period * ell + j
    w = tracker.w_at(name, step)
    p = corridor_p(n, d, step)
    size = next(tc.size for tc in tracker.tracked if tc.name == name)
    return z_statistic(w[j], n, p, size, error_function(d, p), period)


def first_band_exit(records: list[TrajectoryRecord], n: int) -> int | None:
    """First recorded step where some W_{A,j} leaves its interval I_A(t).

    Usually None at desk scale: the rigorous band exceeds n there.
    """
    for rec in records:
        for entry in rec.entries.values():
            if entry.band is None:
                continue
            period = len(entry.w)
            center = n * (1.0 - rec.p**entry.size)
            lo = (center - entry.band) / period
            hi = (center + entry.band) / period
            if any(not lo <= wj <= hi for wj in entry.w):
                return rec.step
    return None


def verify_run(report: RunReport, state: ProcessState):
    """Recheck the structural invariants of a completed run."""
    cfg = report.config
    d = cfg.d
    if len(state.closed_keys) != d + 1 + d * report.steps:
        raise VerificationError("closed-face count off: a face repeated")
    if len(report.image.facets) != report.steps + 1:
        raise VerificationError("image facet count != steps + 1")
    dual = build_dual(report.image, d)
    if not is_induced_path(dual):
        raise VerificationError("image dual graph is not an induced path")
    if report.steps > volume_bound_steps(cfg.n, d):
        raise VerificationError("volume bound violated")
    if state.tracker is not None:
        for tc in state.tracker.tracked:
            if not state.tracker.identity_holds(tc):
                raise VerificationError(f"Y/W identity broken for {tc.name}")
