"""Desk-scale checks of the structural claims, one function per criterion.

Each ``criterion_*`` returns a :class:`CheckResult`; :func:`run_suite` runs
them in order.  The ``smoke`` suite shrinks every population so it finishes
in a few seconds; ``paper`` runs them at full size.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import homology
from .bier import bier_sphere, render_triple
from .bottleneck import (
    blocker,
    bottleneck_via_morse,
    dichotomy_violations,
    maxmin_bruteforce,
    minmax_bruteforce,
    random_clutter,
    random_injective_weights,
)
from .chessboard import (
    GridSpec,
    MultiplicityProfile,
    multiple_chessboard,
    row_counts,
    standard_chessboard,
    star_condition,
    transpose_complex,
    transpose_grid,
)
from .complex_core import (
    SimplicialComplex,
    alexander_dual,
    complexes_on,
    deleted_join_jwise,
    euler_characteristic,
    f_vector,
    full_simplex,
    is_isomorphic,
    link,
    point,
    random_complex,
)
from .homology import betti, homological_connectivity, sphere_check
from .morse import (
    bier_dmf,
    critical_cells,
    is_acyclic,
    morse_inequality_holds,
    multiple_chessboard_dmf,
    validate,
)


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None = None

    @property
    def within_time(self) -> bool:
        return self.limit is None or self.seconds < self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_time

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lim = f" (limit {self.limit:g}s)" if self.limit is not None else ""
        return f"{status} criterion {self.number}: {self.title} [{self.seconds:.2f}s{lim}] {self.detail}"


@dataclass
class Hygiene:
    """Morse-inequality bookkeeping shared across criteria."""

    morse_checks: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, label: str, dvf, betti_numbers) -> None:
        self.morse_checks += 1
        if not morse_inequality_holds(dvf, betti_numbers):
            self.failures.append(label)


@dataclass
class SuiteConfig:
    seed: int = 0
    random_bier: int = 200          # random K per ground size 5 and 6
    bottleneck_instances: int = 500
    dichotomy_max: int = 10
    grid_cells: int = 12            # mn bound for the multiple chessboard population
    cap_max: int = 3
    iso_max: int = 4
    commute_max: int = 6
    extra_unclipped: int = 2000     # sampled instances with caps above line length
    hygiene: Hygiene = field(default_factory=Hygiene)
    boundary_checks_at_start: int = field(default_factory=lambda: homology.STATS.boundary_checks)

    @classmethod
    def smoke(cls, seed: int = 0) -> SuiteConfig:
        return cls(seed=seed, random_bier=10, bottleneck_instances=50, dichotomy_max=8,
                   grid_cells=6, iso_max=3, commute_max=4, extra_unclipped=50)


def _timed(number: int, title: str, limit: float | None, body: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    passed, detail = body()
    return CheckResult(number, title, passed, detail, time.perf_counter() - t0, limit)


# -- 1 ------------------------------------------------------------------------

def criterion_1(cfg: SuiteConfig) -> CheckResult:
    def body():
        D = standard_chessboard(GridSpec(4, 3))
        hexagon = standard_chessboard(GridSpec(3, 2))
        two_points = SimplicialComplex(2, frozenset({0, 1, 2}))
        h = betti(D, "Z")
        fails = []
        if f_vector(D) != (12, 36, 24):
            fails.append(f"f={f_vector(D)}")
        if euler_characteristic(D) != 0:
            fails.append("chi != 0")
        if h.betti != (1, 2, 1) or h.torsion:
            fails.append(f"betti={h.betti} torsion={h.torsion}")
        for v in D.faces_of_dim(0):
            if is_isomorphic(link(D, v), hexagon) is None:
                fails.append(f"link of {D.render(v)}")
        for e in D.faces_of_dim(1):
            if is_isomorphic(link(D, e), two_points) is None:
                fails.append(f"link of {D.render(e)}")
        detail = "f=(12,36,24) chi=0 b=(1,2,1) links ok" if not fails else "; ".join(fails[:5])
        return not fails, detail
    return _timed(1, "chessboard complex on the 4x3 board is a torus", 1.0, body)


# -- 2, 3 -----------------------------------------------------------------------

def bier_population(cfg: SuiteConfig) -> list[SimplicialComplex]:
    rng = random.Random(cfg.seed)
    out = []
    for m in (3, 4):
        out.extend(K for K in complexes_on(m) if len(K.faces) < 1 << m)
    for m in (5, 6):
        seen = set()
        while len(seen) < cfg.random_bier:
            K = random_complex(m, rng)
            if K.faces not in seen:
                seen.add(K.faces)
                out.append(K)
    return out


def criterion_2(cfg: SuiteConfig, population: list[SimplicialComplex]) -> CheckResult:
    def body():
        bad = [K for K in population if not sphere_check(bier_sphere(K), K.ground_size - 2)]
        if bad:
            return False, f"{len(bad)} non-spheres, first facets {bad[0].facets()}"
        return True, f"{len(population)} complexes, all Bier(K) have the homology of S^(m-2)"
    return _timed(2, "Bier(K) is a homology (m-2)-sphere", 120.0, body)


def check_bier_dmf(K: SimplicialComplex, hygiene: Hygiene | None = None) -> list[str]:
    """Problems with the two-step Bier matching on one K (empty list = fine).

    Needs m >= 3 so that the two critical cells have different dimensions.
    """
    m = K.ground_size
    Kd = alexander_dual(K)
    dvf = bier_dmf(K, allow_trivial_dual=True)
    problems = list(validate(dvf))
    ac = is_acyclic(dvf)
    if not ac:
        problems.append(f"closed path {ac.closed_path}")
    crit = critical_cells(dvf)
    dims = sorted(c.bit_count() - 1 for c in crit)
    if dims != [0, m - 2]:
        problems.append(f"critical dims {dims}")
    else:
        base, top = crit
        full = (1 << m) - 1
        a1, a2 = top & full, top >> m
        b = full & ~(a1 | a2)
        ok = (b.bit_count() == 1 and a1 in K.faces and a2 in Kd.faces
              and (not a1 or a1 < b) and (not a2 or (a2 & -a2) > b))
        if not ok:
            problems.append("top critical cell violates A1 < i < A2")
        if base not in (1 << m, 1 << (m - 1)):
            problems.append(f"unexpected critical vertex {render_triple(m, base)}")
    if hygiene is not None:
        hygiene.record(f"bier {K.facets()}", dvf, betti(dvf.complex, "Q").betti)
    return problems


def criterion_3(cfg: SuiteConfig, population: list[SimplicialComplex]) -> CheckResult:
    def body():
        bad = []
        for K in population:
            p = check_bier_dmf(K, cfg.hygiene)
            if p:
                bad.append((K, p))
        if bad:
            return False, f"{len(bad)} failures, first {bad[0][0].facets()}: {bad[0][1][:3]}"
        return True, f"{len(population)} complexes: valid, acyclic, critical dims {{0, m-2}}"
    return _timed(3, "two-step Bier matching is a perfect discrete Morse function", None, body)


# -- 4 ------------------------------------------------------------------------

def criterion_4(cfg: SuiteConfig) -> CheckResult:
    def body():
        rng = random.Random(cfg.seed + 4)
        fails = []
        partitions_checked = 0
        for t in range(cfg.bottleneck_instances):
            n = rng.randint(4, 9)
            R = random_clutter(n, rng)
            f = random_injective_weights(n, rng)
            S = blocker(R)
            a = minmax_bruteforce(R, f).value
            b = maxmin_bruteforce(S, f).value
            mo = bottleneck_via_morse(R, f).value
            if not a == b == mo:
                fails.append(f"instance {t}: a={a} b={b} morse={mo}")
            if dichotomy_violations(R, S):
                fails.append(f"instance {t}: dichotomy")
            partitions_checked += 1 << n
        for n in range(1, cfg.dichotomy_max + 1):
            for _ in range(20):
                R = random_clutter(n, rng)
                if dichotomy_violations(R, blocker(R)):
                    fails.append(f"dichotomy on |E|={n}")
                partitions_checked += 1 << n
        if fails:
            return False, "; ".join(fails[:3])
        return True, (f"{cfg.bottleneck_instances} instances a=b=morse; "
                      f"{partitions_checked} partitions satisfy the dichotomy")
    return _timed(4, "bottleneck minmax = maxmin = Morse critical value", None, body)


# -- 5, 6 -----------------------------------------------------------------------

def cap_population(cfg: SuiteConfig):
    """(m, n, k, l) with mn <= grid_cells and caps <= min(cap_max, line length)."""
    for m in range(1, cfg.grid_cells + 1):
        for n in range(1, cfg.grid_cells // m + 1):
            kmax = min(cfg.cap_max, m)
            lmax = min(cfg.cap_max, n)
            for k in itertools.product(range(kmax + 1), repeat=n):
                for l in itertools.product(range(lmax + 1), repeat=m):
                    yield m, n, k, l


class _BettiMemo:
    """Homology keyed by row/column cap multisets (clipped to line length);
    permuting rows or columns is a relabeling, so this key is an isomorphism
    invariant of the multiple chessboard complex."""

    def __init__(self) -> None:
        self.table: dict = {}

    def get(self, g: GridSpec, mp: MultiplicityProfile, K: SimplicialComplex):
        key = (g.m, g.n, tuple(sorted(min(x, g.m) for x in mp.row_caps)),
               tuple(sorted(min(x, g.n) for x in mp.col_caps)))
        if key not in self.table:
            conn = homological_connectivity(K)
            self.table[key] = (betti(K, "Q").betti, conn)
        return self.table[key]


def check_multichess(g: GridSpec, mp: MultiplicityProfile, memo: _BettiMemo,
                     hygiene: Hygiene | None, K: SimplicialComplex | None = None) -> list[str]:
    """Problems with the row-scan matching on one instance satisfying (*)."""
    if K is None:
        K = multiple_chessboard(g, mp)
    dvf, traces = multiple_chessboard_dmf(g, mp, K)
    problems = list(validate(dvf))
    ac = is_acyclic(dvf)
    if not ac:
        problems.append(f"closed path {ac.closed_path}")
    crit = critical_cells(dvf)
    base = [c for c in crit if traces[c].outcome == "base"]
    if len(base) > 1:
        problems.append(f"{len(base)} base vertices")
    for c in crit:
        if traces[c].outcome == "base":
            continue
        if any(rc < kc for rc, kc in zip(row_counts(c, g), mp.row_caps)):
            problems.append(f"critical {K.render(c)} has a free row")
            break
    bet, conn = memo.get(g, mp, K)
    if conn < sum(mp.row_caps) - 2:
        problems.append(f"connectivity {conn} < {sum(mp.row_caps) - 2}")
    if hygiene is not None:
        hygiene.record(f"multichess {g} {mp}", dvf, bet)
    return problems


def criterion_5(cfg: SuiteConfig, memo: _BettiMemo | None = None) -> CheckResult:
    memo = memo or _BettiMemo()

    def body():
        count = 0
        fails = []
        for m, n, k, l in cap_population(cfg):
            g = GridSpec(m, n)
            mp = MultiplicityProfile(k, l)
            cond = star_condition(mp, g)
            if not cond.holds:
                continue
            count += 1
            p = check_multichess(g, mp, memo, cfg.hygiene)
            if p:
                fails.append(f"{m}x{n} k={k} l={l}: {p[0]}")
        # caps above the line length change (*) but not the complex
        rng = random.Random(cfg.seed + 5)
        extra = 0
        while extra < cfg.extra_unclipped:
            m = rng.randint(1, 6)
            n = rng.randint(1, cfg.grid_cells // m)
            k = tuple(rng.randint(0, cfg.cap_max) for _ in range(n))
            l = tuple(rng.randint(0, cfg.cap_max) for _ in range(m))
            g, mp = GridSpec(m, n), MultiplicityProfile(k, l)
            if not star_condition(mp, g).holds:
                continue
            extra += 1
            p = check_multichess(g, mp, memo, cfg.hygiene)
            if p:
                fails.append(f"{m}x{n} k={k} l={l}: {p[0]}")
        if fails:
            return False, f"{len(fails)} failures; first: {fails[0]}"
        return True, (f"{count} instances (+{extra} with caps above line length): valid, "
                      f"acyclic, rows full, connectivity >= sum(k)-2")
    return _timed(5, "row-scan matching and connectivity of multiple chessboards", 300.0, body)


def criterion_6(cfg: SuiteConfig, memo: _BettiMemo | None = None) -> CheckResult:
    memo = memo or _BettiMemo()

    def body():
        count = 0
        fails = []
        for m, n, k, l in cap_population(cfg):
            if not sum(k) >= sum(l) + m - 1:
                continue
            count += 1
            g, mp = GridSpec(m, n), MultiplicityProfile(k, l)
            K = multiple_chessboard(g, mp)
            gt, mpt = transpose_grid(g, mp)
            Kt = multiple_chessboard(gt, mpt)
            if transpose_complex(Kt, gt) != K:
                fails.append(f"{m}x{n} k={k} l={l}: transpose mismatch")
                continue
            dvf, traces = multiple_chessboard_dmf(gt, mpt, Kt)
            problems = list(validate(dvf))
            if not is_acyclic(dvf):
                problems.append("cyclic")
            for c in critical_cells(dvf):
                if traces[c].outcome != "base":
                    # rows of the transpose are columns of the original
                    if any(x < y for x, y in zip(row_counts(c, gt), l)):
                        problems.append("critical cell with a free column")
                        break
            bet, conn = memo.get(g, mp, K)
            cfg.hygiene.record(f"transposed {g} {mp}", dvf, bet)
            if conn < sum(l) - 2:
                problems.append(f"connectivity {conn} < {sum(l) - 2}")
            if problems:
                fails.append(f"{m}x{n} k={k} l={l}: {problems[0]}")
        if fails:
            return False, f"{len(fails)} failures; first: {fails[0]}"
        return True, f"{count} instances satisfy the mirrored bound sum(l)-2"
    return _timed(6, "transposed family (columns full, connectivity sum(l)-2)", None, body)


# -- 7 ------------------------------------------------------------------------

def pt_deleted_join(m: int, j: int) -> SimplicialComplex:
    """[pt]^{*m}_{Δ(j)}: subsets of [m] of size < j, as a deleted join."""
    return deleted_join_jwise([point()] * m, j)


def criterion_7(cfg: SuiteConfig) -> CheckResult:
    def body():
        fails = []
        checks = 0
        for m in range(1, cfg.iso_max + 1):
            for n in range(1, cfg.iso_max + 1):
                checks += 1
                if is_isomorphic(standard_chessboard(GridSpec(m, n)),
                                 standard_chessboard(GridSpec(n, m))) is None:
                    fails.append(f"D_{m},{n} vs D_{n},{m}")
        edge = full_simplex(2)
        for K, kname in ((point(), "pt"), (edge, "edge")):
            for n in range(1, cfg.commute_max + 1):
                for m in range(1, cfg.commute_max // n + 1):
                    for j in range(2, n + 2):
                        for k in range(2, m + 2):
                            lhs = deleted_join_jwise([deleted_join_jwise([K] * n, j)] * m, k)
                            rhs = deleted_join_jwise([deleted_join_jwise([K] * m, k)] * n, j)
                            checks += 1
                            if is_isomorphic(lhs, rhs) is None:
                                fails.append(f"commutation {kname} n={n} m={m} j={j} k={k}")
        for m, r, q, j in ((3, 2, 2, 2), (3, 3, 1, 2), (4, 2, 1, 3)):
            lhs = multiple_chessboard(GridSpec(m, r), MultiplicityProfile((q,) * r, (j - 1,) * m))
            rhs = deleted_join_jwise([pt_deleted_join(m, q + 1)] * r, j)
            checks += 1
            if is_isomorphic(lhs, rhs) is None:
                fails.append(f"identification (m,r,q,j)=({m},{r},{q},{j})")
        if fails:
            return False, "; ".join(fails[:3])
        return True, f"{checks} isomorphisms found and re-verified"
    return _timed(7, "structural isomorphisms", None, body)


# -- 8 ------------------------------------------------------------------------

def criterion_8(cfg: SuiteConfig) -> CheckResult:
    def body():
        h = cfg.hygiene
        checks = homology.STATS.boundary_checks - cfg.boundary_checks_at_start
        if h.failures:
            return False, f"Morse inequality fails for {h.failures[0]}"
        if checks == 0 or h.morse_checks == 0:
            return False, "nothing was checked"
        return True, (f"dd=0 on {checks} boundary compositions; Morse inequality on "
                      f"{h.morse_checks} (complex, matching) pairs")
    return _timed(8, "oracle hygiene", None, body)


SUITES = ("paper", "smoke")


def run_suite(name: str = "paper", seed: int = 0, progress: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = SuiteConfig(seed=seed) if name == "paper" else SuiteConfig.smoke(seed)
    memo = _BettiMemo()
    population = bier_population(cfg)
    steps = [
        lambda: criterion_1(cfg),
        lambda: criterion_2(cfg, population),
        lambda: criterion_3(cfg, population),
        lambda: criterion_4(cfg),
        lambda: criterion_5(cfg, memo),
        lambda: criterion_6(cfg, memo),
        lambda: criterion_7(cfg),
        lambda: criterion_8(cfg),
    ]
    results = []
    for step in steps:
        r = step()
        results.append(r)
        if progress is not None:
            progress(r)
    return results
