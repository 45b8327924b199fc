"""Tracking zeros across polynomial degrees and estimating d2(B).

Two jobs live here.  First, bookkeeping: solve several c_m for their
zeros, match zero sets between consecutive degrees by proximity, count
how many digits each matched pair shares, and report how many zeros
have stabilized.  Second, the connection-coefficient limit: the scaled
coefficient sequence

    a_k = [k! / ((delta-1) delta ... (delta+k-2))] * c_k(B)

converges to d2(B), the weight of the singular local solution at z = 1
inside the holomorphic solution at z = 0.  Zeros of d2 are where the
stabilized polynomial zeros accumulate, so the search for them is the
numerical heart of the package.

The raw tail a_K approaches d2 only at O(1/K); a_k admits an asymptotic
expansion in 1/k (at s = 0 it is d2*(1 + (gamma(delta-1)-B)/k + ...)),
so the reported estimate is a Neville extrapolation of trailing a_k
against 1/k, which buys many orders of magnitude at the same K.  The
raw tail and the plain |a_K - a_{K-1}| indicator stay available.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import mpmath as mp

from .families import FamilyKind, InvalidSpecError, RecurrenceSpec, recurrence_coeffs
from .perturbation import perturbative_seeds, zero_estimate
from .recurrence import build_family, eval_sequence
from .rootfind import NonConvergenceError, ZeroSet, find_all_roots
from .scalars import to_mpc, working_precision


# -- solving one degree with labelled zeros -----------------------------------

def solve_zeros(spec: RecurrenceSpec, m: int, precision_bits: int = 256,
                tol=None, seed_policy: str = "auto", order: int = 2,
                max_iter: int = 2000) -> ZeroSet:
    """Zeros of c_m(B), labelled by grid index where estimates exist.

    seed_policy: 'estimates' starts the solver at the perturbative
    zero estimates, 'circles' at Newton-polygon circles, 'auto' picks
    estimates whenever they are defined and |s| <= 2 (they degrade as
    |s| grows).
    """
    if m < 1:
        raise InvalidSpecError("need m >= 1 for a nontrivial polynomial")
    if seed_policy not in ("auto", "estimates", "circles"):
        raise InvalidSpecError(f"unknown seed policy {seed_policy!r}")
    fam = build_family(spec, m)
    estimates = None
    use_est = seed_policy == "estimates"
    if seed_policy == "auto" and not spec.is_d_degenerate:
        with working_precision(precision_bits):
            use_est = abs(to_mpc(spec.s)) <= 2
    if use_est:
        raw = perturbative_seeds(spec, m - 1, order)
        with working_precision(precision_bits):
            estimates = [to_mpc(e) for e in raw]
    zs = find_all_roots(fam[m], seeds=estimates,
                        precision_bits=precision_bits, tol=tol,
                        max_iter=max_iter)
    if estimates is not None:
        zs = zs.with_labels(_labels_by_proximity(zs.zeros, estimates))
    return zs


def _labels_by_proximity(zeros, estimates) -> list:
    """Scan zeros in display order; each takes its nearest unused
    estimate's index.  Deterministic, injective."""
    free = list(range(len(estimates)))
    labels = []
    for z in zeros:
        best, best_d = None, None
        for k in free:
            d = abs(z - estimates[k])
            if best_d is None or d < best_d:
                best, best_d = k, d
        labels.append(best)
        if best is not None:
            free.remove(best)
    return labels


# -- matching zero sets --------------------------------------------------------

@dataclass(frozen=True)
class MatchResult:
    """Injective pairing between two zero sets.

    pairs: (index_a, index_b, distance), sorted by index_a.
    new_in_b: indices of b-zeros with no partner (b is the larger set).
    """

    pairs: tuple
    new_in_b: tuple


def min_grid_gap(spec: RecurrenceSpec, m: int, precision_bits: int = 256):
    """min_k |D_{k+1} - D_k| over the first m grid points."""
    with working_precision(precision_bits):
        gaps = [
            abs(to_mpc(recurrence_coeffs(spec, k + 1)[0])
                - to_mpc(recurrence_coeffs(spec, k)[0]))
            for k in range(max(m, 1))
        ]
    return min(gaps)


def match_zeros(za, zb, threshold=None) -> MatchResult:
    """Greedy minimal-distance matching of za against zb.

    If every za zero also appears in zb the pairing is the identity on
    values.  When a threshold is given and some greedy-matched distance
    exceeds it, the matching is redone as an optimal assignment
    (Hungarian) to recover from greedy mistakes in crowded regions.
    """
    a = list(za.zeros) if isinstance(za, ZeroSet) else [to_mpc(z) for z in za]
    b = list(zb.zeros) if isinstance(zb, ZeroSet) else [to_mpc(z) for z in zb]
    if len(a) > len(b):
        raise InvalidSpecError("match_zeros expects len(a) <= len(b)")
    cand = sorted(
        ((abs(a[i] - b[j]), i, j) for i in range(len(a))
         for j in range(len(b))),
        key=lambda t: (t[0], t[1], t[2]),
    )
    used_a, used_b, pairs = set(), set(), []
    for d, i, j in cand:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        pairs.append((i, j, d))
        if len(used_a) == len(a):
            break
    if threshold is not None and any(d > threshold for _, _, d in pairs):
        pairs = _optimal_pairs(a, b)
    pairs.sort(key=lambda t: t[0])
    matched_b = {j for _, j, _ in pairs}
    new_b = tuple(j for j in range(len(b)) if j not in matched_b)
    return MatchResult(pairs=tuple(pairs), new_in_b=new_b)


def _optimal_pairs(a, b) -> list:
    from scipy.optimize import linear_sum_assignment

    cost = [[float(abs(x - y)) for y in b] for x in a]
    rows, cols = linear_sum_assignment(cost)
    return [(int(i), int(j), abs(a[i] - b[j])) for i, j in zip(rows, cols)]


def stabilized_digits(za, zb, cap: int = 60) -> int:
    """Shared significant digits: the largest d with
    |za-zb| < 0.5 * 10^-d * max(|za|, |zb|)."""
    za, zb = to_mpc(za), to_mpc(zb)
    scale = max(abs(za), abs(zb))
    if scale == 0:
        return cap
    diff = abs(za - zb)
    if diff == 0:
        return cap
    rel = diff / scale
    d = int(mp.floor(-mp.log10(2 * rel)))
    return max(min(d, cap), 0)


# -- convergence report --------------------------------------------------------

@dataclass
class ZeroTrack:
    """One zero followed through increasing polynomial degree."""

    label_k: int | None
    entries: dict                 # m -> zero value
    stabilized: dict = field(default_factory=dict)   # (m1, m2) -> digits

    def value_at(self, m: int):
        return self.entries.get(m)


@dataclass
class ConvergenceReport:
    spec: RecurrenceSpec
    m_list: tuple
    digits: int
    tracks: list
    zero_sets: dict
    precision_bits: int

    def n_stable(self, digits: int | None = None) -> int:
        """Tracks whose values at the last two degrees agree to at
        least `digits` significant digits."""
        digits = self.digits if digits is None else digits
        m1, m2 = self.m_list[-2], self.m_list[-1]
        return sum(
            1 for t in self.tracks
            if t.stabilized.get((m1, m2), -1) >= digits
        )

    def stable_tracks(self, digits: int | None = None) -> list:
        digits = self.digits if digits is None else digits
        m1, m2 = self.m_list[-2], self.m_list[-1]
        return [t for t in self.tracks
                if t.stabilized.get((m1, m2), -1) >= digits]

    def to_json(self) -> dict:
        def cpx(z):
            return [mp.nstr(mp.mpc(z).real, 17), mp.nstr(mp.mpc(z).imag, 17)]

        return {
            "schema": "heunzeros-report/1",
            "spec": self.spec.to_json(),
            "m_list": list(self.m_list),
            "digits": self.digits,
            "precision_bits": self.precision_bits,
            "n_stable": self.n_stable(),
            "tracks": [
                {
                    "label_k": t.label_k,
                    "entries": {str(m): cpx(z) for m, z in t.entries.items()},
                    "stabilized": {
                        f"{m1},{m2}": d
                        for (m1, m2), d in t.stabilized.items()
                    },
                }
                for t in self.tracks
            ],
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    def to_table(self, k_max: int | None = None, digits: int = 10) -> str:
        """Text table: k, the three approximation orders, and the
        tracked zero at each degree in m_list."""
        from .scalars import format_scalar

        top = self.m_list[-1]
        if k_max is None:
            k_max = min(5, top - 2)
        header = ["k", "0th", "1st", "2nd"] + [
            f"zero of c_{m}" for m in self.m_list
        ]
        rows = [header]
        for k in range(k_max + 1):
            row = [str(k)]
            for order in (0, 1, 2):
                try:
                    est = zero_estimate(self.spec, k, top - 1, order)
                    with working_precision(self.precision_bits):
                        row.append(format_scalar(to_mpc(est), digits))
                except Exception:
                    row.append("-")
            track = next((t for t in self.tracks if t.label_k == k), None)
            for m in self.m_list:
                z = track.value_at(m) if track else None
                row.append(format_scalar(z, digits) if z is not None else "-")
            rows.append(row)
        widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
        lines = [
            "  ".join(cell.rjust(w) for cell, w in zip(r, widths))
            for r in rows
        ]
        return "\n".join(lines)


def convergence_report(spec: RecurrenceSpec, s=None, m_list=(30, 40),
                       digits: int = 10, precision_bits: int = 256,
                       seed_policy: str = "auto") -> ConvergenceReport:
    """Solve each degree in m_list, chain-match the zero sets, and
    count stabilized digits along every track."""
    if s is not None:
        spec = spec.with_s(s)
    m_list = tuple(sorted(set(int(m) for m in m_list)))
    if len(m_list) < 2:
        raise InvalidSpecError("m_list needs at least two degrees")
    zero_sets = {
        m: solve_zeros(spec, m, precision_bits=precision_bits,
                       seed_policy=seed_policy)
        for m in m_list
    }
    threshold = min_grid_gap(spec, m_list[0], precision_bits) / 2

    m0 = m_list[0]
    zs0 = zero_sets[m0]
    tracks = []
    index_of_track = {}   # (m, zero_index) -> track
    for i, z in enumerate(zs0.zeros):
        t = ZeroTrack(label_k=zs0.labels[i], entries={m0: z})
        tracks.append(t)
        index_of_track[(m0, i)] = t

    for ma, mb in zip(m_list, m_list[1:]):
        za, zb = zero_sets[ma], zero_sets[mb]
        res = match_zeros(za, zb, threshold=threshold)
        for ia, ib, _ in res.pairs:
            t = index_of_track.get((ma, ia))
            if t is None:
                continue
            zb_val = zb.zeros[ib]
            t.entries[mb] = zb_val
            t.stabilized[(ma, mb)] = stabilized_digits(
                za.zeros[ia], zb_val
            )
            index_of_track[(mb, ib)] = t
        for ib in res.new_in_b:
            t = ZeroTrack(label_k=zb.labels[ib],
                          entries={mb: zb.zeros[ib]})
            tracks.append(t)
            index_of_track[(mb, ib)] = t

    tracks.sort(key=lambda t: (t.label_k is None,
                               t.label_k if t.label_k is not None else 0))
    return ConvergenceReport(spec=spec, m_list=m_list, digits=digits,
                             tracks=tracks, zero_sets=zero_sets,
                             precision_bits=precision_bits)


# -- the d2 limit --------------------------------------------------------------

@dataclass(frozen=True)
class D2Estimate:
    """Estimate of the connection coefficient d2(B) from the scaled
    coefficient tail a_k = c_k(B) k!/(delta-1)_k."""

    B: object
    K: int
    sequence: tuple
    estimate: object           # Neville-extrapolated limit
    tail: object               # raw a_K
    error_indicator: object    # |a_K - a_{K-1}|


def _check_d2_spec(spec: RecurrenceSpec):
    for name in ("gamma", "delta"):
        v = to_mpc(getattr(spec, name))
        if v.imag == 0 and v.real == mp.floor(v.real):
            raise InvalidSpecError(
                f"d2 limit needs non-integer gamma and delta; {name} = {v}"
            )


def d2_sequence(spec: RecurrenceSpec, B, K: int = 500,
                precision_bits: int = 256) -> D2Estimate:
    """a_1..a_K with a_k = c_k(B) k!/(delta-1)_k, and the extrapolated
    limit.  Heun members only converge for |s| < 1; outside that disk a
    warning is emitted and the numbers are returned as-is."""
    _check_d2_spec(spec)
    if K < 2:
        raise InvalidSpecError("K >= 2 required")
    with working_precision(precision_bits):
        if spec.kind == FamilyKind.HEUN and abs(to_mpc(spec.s)) >= 1:
            warnings.warn(
                "the d2 limit for the full family is only proven for "
                "|s| < 1; the scaled sequence may diverge",
                RuntimeWarning,
                stacklevel=2,
            )
        cs = eval_sequence(spec, to_mpc(B), K)
        delta = to_mpc(spec.delta)
        seq = []
        factor = mp.mpc(1)
        for k in range(1, K + 1):
            factor = factor * k / (delta + (k - 2))
            seq.append(factor * cs[k])
        estimate = _extrapolate_tail(seq)
        indicator = abs(seq[-1] - seq[-2])
    return D2Estimate(B=B, K=K, sequence=tuple(seq), estimate=estimate,
                      tail=seq[-1], error_indicator=indicator)


def _extrapolate_tail(seq, nodes: int = 8):
    """Neville extrapolation of a_k against h = 1/k to h = 0."""
    K = len(seq)
    if K < 5 * nodes:
        return seq[-1]
    step = max(1, K // 16)
    ks = [K - i * step for i in range(nodes)]
    xs = [mp.mpf(1) / k for k in ks]
    t = [seq[k - 1] for k in ks]
    n = len(t)
    for j in range(1, n):
        for i in range(n - j):
            t[i] = (xs[i + j] * t[i] - xs[i] * t[i + 1]) / (xs[i + j] - xs[i])
    return t[0]


def d2_closed_form_s0(spec: RecurrenceSpec, B, precision_bits: int = 256):
    """d2 at s = 0 via the classical two-point connection formula:
    Gamma(gamma) Gamma(delta-1) / (Gamma(l1) Gamma(l2)) with l1, l2 the
    roots of l^2 - (gamma+delta-1) l + B = 0."""
    _check_d2_spec(spec)
    with working_precision(precision_bits):
        g, d, b = to_mpc(spec.gamma), to_mpc(spec.delta), to_mpc(B)
        tr = g + d - 1
        disc = mp.sqrt(tr * tr - 4 * b)
        l1, l2 = (tr + disc) / 2, (tr - disc) / 2
        return mp.gamma(g) * mp.gamma(d - 1) * mp.rgamma(l1) * mp.rgamma(l2)


@dataclass(frozen=True)
class D2ZeroResult:
    B: object
    d2: object
    iterations: int
    K_used: int
    error_indicator: object


def d2_zero_search(spec: RecurrenceSpec, B0, tol=1e-10, K: int = 400,
                   K_max: int = 12800, precision_bits: int = 256,
                   max_iter: int = 40) -> D2ZeroResult:
    """Secant iteration on B -> d2(B) from the scaled-tail estimate.

    K doubles whenever the plain tail indicator is not at least an
    order of magnitude below max(|estimate|, tol), so accuracy
    escalates exactly where the zero is being pinned down.
    """
    with working_precision(precision_bits):
        tol = mp.mpf(tol)
        K_cur = K

        def f(b):
            nonlocal K_cur
            while True:
                est = d2_sequence(spec, b, K_cur, precision_bits)
                good = est.error_indicator < max(abs(est.estimate), tol) / 10
                if good or K_cur >= K_max:
                    return est
                K_cur = min(2 * K_cur, K_max)

        b_prev = to_mpc(B0)
        f_prev = f(b_prev)
        step0 = mp.mpf("1e-3") * (1 + abs(b_prev))
        b_cur = b_prev + step0
        f_cur = f(b_cur)
        for it in range(1, max_iter + 1):
            den = f_cur.estimate - f_prev.estimate
            if den == 0:
                raise NonConvergenceError("flat d2 sequence in secant step")
            b_next = b_cur - f_cur.estimate * (b_cur - b_prev) / den
            b_prev, f_prev = b_cur, f_cur
            b_cur = b_next
            f_cur = f(b_cur)
            if abs(b_cur - b_prev) < tol * (1 + abs(b_cur)):
                return D2ZeroResult(B=b_cur, d2=f_cur.estimate,
                                    iterations=it, K_used=K_cur,
                                    error_indicator=f_cur.error_indicator)
    raise NonConvergenceError(
        f"d2-zero secant did not settle in {max_iter} iterations from "
        f"B0 = {mp.nstr(to_mpc(B0), 8)}"
    )
