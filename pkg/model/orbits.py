# model/orbits.py
"""Generic coadjoint orbits of B: cross-section, polarization and coordinates.

f(κ) = ε + diag(κ_1, ..., κ_{n-R}, ..., κ_1) + Σ_{r≤R} e_{n-r+1,r} meets each
generic orbit once. The polarization is h = a⋄ ⊕ s ⊕ v⁺ and its annihilator
inside b₋ is h^⊥ = span{e_rr - e_{n-r+1,n-r+1}} ⊕ span{e_ab : a > b, a+b > n+1}.
"""
from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from algebra.errors import AlgebraError, DimensionMismatchError, SingularMatrixError
from algebra.matrix import RatMatrix, commutator, in_span, inverse, nullspace, pair, rank, solve, span_equal
from algebra.rational import as_rational, format_rational, parse_rational
from lie.decomposition import build_decomposition, principal_nilpotent, upper
from model.chops import HessenbergPoint, casimir_vector, random_generic_point
from model.poisson import lower_part
from model.sampling import random_kappa, trial_rng

logger = logging.getLogger(__name__)


def orbit_dim(n: int) -> int:
    """Number of κ parameters, n - R."""
    return n - n // 2


# ---------------- cross-section ----------------
@dataclass(frozen=True)
class CrossSectionPoint:
    n: int
    kappa: Tuple[Fraction, ...]
    f: RatMatrix

    def to_json(self) -> dict:
        return {"n": self.n, "kappa": [format_rational(k) for k in self.kappa], "f": self.f.to_json()}


def build_cross_section(kappa: Sequence, n: int) -> CrossSectionPoint:
    """f(κ) for matrix size n; κ must have n - R entries."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    kappa = tuple(as_rational(k) for k in kappa)
    if len(kappa) != orbit_dim(n):
        raise DimensionMismatchError(f"κ has {len(kappa)} entries, expected {orbit_dim(n)} for n={n}")
    R = n // 2
    values = {(i, i): kappa[min(i, n + 1 - i) - 1] for i in range(1, n + 1)}
    values.update({(n - r + 1, r): 1 for r in range(1, R + 1)})
    f = principal_nilpotent(n) + RatMatrix.from_positions(n, values)
    return CrossSectionPoint(n, kappa, f)


# ---------------- polarization ----------------
@dataclass(frozen=True)
class PolarizationData:
    n: int
    a_diamond: Tuple[RatMatrix, ...]
    s: Tuple[RatMatrix, ...]
    v_plus: Tuple[RatMatrix, ...]
    h_perp: Tuple[RatMatrix, ...]
    f: Optional[CrossSectionPoint] = None

    @property
    def h(self) -> Tuple[RatMatrix, ...]:
        return self.a_diamond + self.s + self.v_plus

    @property
    def dim_h(self) -> int:
        return len(self.h)

    def to_json(self) -> dict:
        out = {"n": self.n, "dim_h": self.dim_h, "dim_h_perp": len(self.h_perp),
               "h": [m.to_json() for m in self.h], "h_perp": [m.to_json() for m in self.h_perp]}
        if self.f is not None:
            out["f"] = self.f.to_json()
        return out


def h_perp_positions(n: int) -> List[Tuple[int, int]]:
    return [(a, b) for a in range(1, n + 1) for b in range(1, a) if a + b > n + 1]


def build_polarization(n: int, kappa: Optional[Sequence] = None) -> PolarizationData:
    dec = build_decomposition(n)
    diag_pairs = [RatMatrix.from_positions(n, {(r, r): 1, (n - r + 1, n - r + 1): -1})
                  for r in range(1, dec.R + 1)]
    return PolarizationData(
        n=n,
        a_diamond=tuple(dec.a_diamond_basis()),
        s=tuple(RatMatrix.unit(n, i, j) for i, j in dec.s),
        v_plus=tuple(RatMatrix.unit(n, i, j) for i, j in dec.v_plus),
        h_perp=tuple(diag_pairs) + tuple(RatMatrix.unit(n, a, b) for a, b in h_perp_positions(n)),
        f=build_cross_section(kappa, n) if kappa is not None else None,
    )


def _vecs(ms: Sequence[RatMatrix]) -> List[Tuple[Fraction, ...]]:
    return [m.vec() for m in ms]


def coadjoint_tangent(xi: RatMatrix, f: RatMatrix) -> RatMatrix:
    """π_{b₋}([ξ, f - ε]): the b-action on f, linearized."""
    return lower_part(commutator(xi, f - principal_nilpotent(f.rows)))


def isotropy_check(point: CrossSectionPoint) -> Dict[str, Any]:
    """Kernel of ξ ↦ π_{b₋}([ξ, f - ε]) on b equals a⋄."""
    n, f = point.n, point.f
    basis_pos = list(upper(n))
    images = [coadjoint_tangent(RatMatrix.unit(n, i, j), f) for i, j in basis_pos]
    # columns of the linear map in the elementary basis of b
    A = RatMatrix.from_rows([[img.vec()[k] for img in images] for k in range(n * n)])
    kernel = nullspace(A)
    kernel_mats = [RatMatrix.from_positions(n, {pos: v for pos, v in zip(basis_pos, vec)}) for vec in kernel]
    a_diamond = build_decomposition(n).a_diamond_basis()
    forward = all(coadjoint_tangent(a, f).is_zero() for a in a_diamond)
    equal = span_equal(_vecs(kernel_mats), _vecs(a_diamond)) if kernel_mats else not a_diamond
    failures = []
    if not forward:
        failures.append("a_diamond does not annihilate f")
    if not equal:
        failures.append("isotropy kernel differs from a_diamond")
    return {"n": n, "kappa": [format_rational(k) for k in point.kappa],
            "kernel_dim": len(kernel), "expected_dim": orbit_dim(n),
            "forward_inclusion": forward, "span_equal": equal, "failures": failures}


def pukanszky_check(n: int, kappa: Sequence) -> Dict[str, Any]:
    """Conditions (1)-(4) of a Pukanszky polarization at f(κ), checked exactly."""
    point = build_cross_section(kappa, n)
    pol = build_polarization(n)
    f, h = point.f, pol.h
    h_vecs = _vecs(h)
    R = n // 2

    stable = all(in_span(commutator(a, x).vec(), h_vecs) for a in pol.a_diamond for x in h)
    isotropic = all(pair(f, commutator(x, y)) == 0 for x, y in itertools.combinations(h, 2))
    dim_ok = rank(h_vecs) == len(h) and 2 * len(h) == n * (n + 1) // 2 + (n - R)
    tangent = [coadjoint_tangent(x, f) for x in h]
    nonzero = [t.vec() for t in tangent if not t.is_zero()]
    fills = span_equal(nonzero, _vecs(pol.h_perp)) if nonzero else not pol.h_perp

    v_plus = _vecs(pol.v_plus)
    hh_in_v_plus = all(in_span(commutator(x, y).vec(), v_plus) if v_plus else commutator(x, y).is_zero()
                       for x, y in itertools.combinations(h, 2))
    orthogonal = all(pair(x, w) == 0 for x in h for w in pol.h_perp)

    conditions = [
        {"condition": 1, "name": "isotropy-stable", "status": "pass" if stable else "fail"},
        {"condition": 2, "name": "isotropic", "status": "pass" if isotropic else "fail"},
        {"condition": 3, "name": "dimension", "status": "pass" if dim_ok else "fail"},
        {"condition": 4, "name": "pukanszky", "status": "pass" if fills else "fail"},
    ]
    failures = [c["name"] for c in conditions if c["status"] != "pass"]
    if not hh_in_v_plus:
        failures.append("[h,h] not in v+")
    if not orthogonal:
        failures.append("h and h_perp not orthogonal")
    return {"n": n, "kappa": [format_rational(k) for k in point.kappa], "dim_h": len(h),
            "conditions": conditions, "hh_in_v_plus": hh_in_v_plus, "orthogonal": orthogonal,
            "failures": failures}


def pukanszky_suite(n: int, trials: int, seed: int) -> Dict[str, Any]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    runs = []
    for trial in range(trials):
        kappa = random_kappa(trial_rng(seed, trial), orbit_dim(n))
        report = pukanszky_check(n, kappa)
        iso = isotropy_check(build_cross_section(kappa, n))
        runs.append({"trial": trial, **report, "isotropy": iso,
                     "failures": report["failures"] + iso["failures"]})
    failures = [{"trial": r["trial"], "failed": r["failures"]} for r in runs if r["failures"]]
    logger.info("pukanszky n=%d: %d trials, %d failing", n, trials, len(failures))
    return {"suite": "pukanszky", "n": n, "trials": trials, "seed": seed,
            "conditions": runs[0]["conditions"] if runs else [],
            "checks": trials * 6, "failures": failures, "runs": runs}


# ---------------- κ from Casimirs ----------------
def kappa_from_casimirs(X) -> Tuple[Fraction, ...]:
    """κ with Tr f(κ) = Tr X and I(1,r)(f(κ)) = I(1,r)(X) for r = 1..⌊(n-1)/2⌋."""
    M = X.X if isinstance(X, HessenbergPoint) else X
    n = M.rows
    target = casimir_vector(M)
    k = orbit_dim(n)

    def image(kappa):
        return casimir_vector(build_cross_section(kappa, n).f)

    # κ ↦ casimir_vector(f(κ)) is affine; read it off at 0 and the unit vectors
    c0 = image([0] * k)
    cols = [[a - b for a, b in zip(image([int(i == j) for i in range(k)]), c0)] for j in range(k)]
    A = RatMatrix.from_rows([[cols[j][row] for j in range(k)] for row in range(len(c0))])
    kappa = solve(A, [t - c for t, c in zip(target, c0)])
    if image(kappa) != target:
        raise AlgebraError("recovered κ does not reproduce the Casimir values")
    return kappa


def kappa_round_trip_check(n: int, trials: int, seed: int) -> Dict[str, Any]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    failures = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        X = random_generic_point(rng, n)
        kappa = kappa_from_casimirs(X)
        if casimir_vector(build_cross_section(kappa, n).f) != casimir_vector(X):
            failures.append({"trial": trial, "check": "casimirs"})
        base = random_kappa(rng, orbit_dim(n))
        if tuple(kappa_from_casimirs(build_cross_section(base, n).f)) != tuple(base):
            failures.append({"trial": trial, "check": "fixed-point"})
    return {"suite": "kappa", "n": n, "trials": trials, "seed": seed, "checks": 2 * trials,
            "failures": failures}


# ---------------- coordinate chart ----------------
@dataclass(frozen=True)
class ChartPoint:
    n: int
    a: Tuple[Any, ...]
    q: Dict[str, Any] = field(default_factory=dict)
    p: Dict[str, Any] = field(default_factory=dict)

    def slots(self) -> Dict[str, Any]:
        out = {f"a{i + 1}": v for i, v in enumerate(self.a)}
        out.update(self.q)
        out.update(self.p)
        return out


def slot_kind(n: int, i: int, j: int) -> str:
    """Chart role of a strictly-lower position: 'p', 'anti' or 'q'."""
    s = i + j
    return "p" if s < n + 1 else "anti" if s == n + 1 else "q"


def chart_slot_names(n: int) -> Dict[str, List[str]]:
    R = n // 2
    names = {"a": [f"a{i}" for i in range(1, orbit_dim(n) + 1)],
             "q": [f"q0_{i}" for i in range(1, R + 1)], "p": []}
    for i in range(1, n + 1):
        for j in range(1, i):
            kind = slot_kind(n, i, j)
            names["q" if kind == "q" else "p"].append(f"{'q' if kind == 'q' else 'p'}_{i}_{j}")
    return names


def chart_pack(c: ChartPoint) -> HessenbergPoint:
    n, R = c.n, c.n // 2
    if len(c.a) != orbit_dim(n):
        raise ValueError(f"chart needs {orbit_dim(n)} a-slots, got {len(c.a)}")
    names = chart_slot_names(n)
    missing = [s for s in names["q"] if s not in c.q] + [s for s in names["p"] if s not in c.p]
    if missing:
        raise ValueError(f"incomplete slot data: missing {missing}")
    a = [as_rational(x) for x in c.a]
    values = {}
    for i in range(1, R + 1):
        q0 = as_rational(c.q[f"q0_{i}"])
        values[(i, i)] = a[i - 1] + q0
        values[(n + 1 - i, n + 1 - i)] = a[i - 1] - q0
    if n % 2:
        values[(R + 1, R + 1)] = a[R]
    for i in range(1, n + 1):
        for j in range(1, i):
            key = f"q_{i}_{j}" if slot_kind(n, i, j) == "q" else f"p_{i}_{j}"
            values[(i, j)] = as_rational((c.q if key[0] == "q" else c.p)[key])
    return HessenbergPoint(principal_nilpotent(n) + RatMatrix.from_positions(n, values))


def chart_unpack(X, kappa: Optional[Sequence] = None) -> ChartPoint:
    """Chart slots of X; with κ given, X must lie on the orbit through f(κ)."""
    M = X.X if isinstance(X, HessenbergPoint) else X
    n, R = M.rows, M.rows // 2
    if kappa is not None:
        kappa = tuple(as_rational(k) for k in kappa)
        if len(kappa) != orbit_dim(n):
            raise DimensionMismatchError(f"κ has {len(kappa)} entries, expected {orbit_dim(n)} for n={n}")
        if casimir_vector(M) != casimir_vector(build_cross_section(kappa, n).f):
            raise ValueError("point is not on the orbit of f(κ)")
    a, q, p = [], {}, {}
    for i in range(1, R + 1):
        top, bottom = M.at(i, i), M.at(n + 1 - i, n + 1 - i)
        a.append((top + bottom) / 2)
        q[f"q0_{i}"] = (top - bottom) / 2
    if n % 2:
        a.append(M.at(R + 1, R + 1))
    for i in range(1, n + 1):
        for j in range(1, i):
            if slot_kind(n, i, j) == "q":
                q[f"q_{i}_{j}"] = M.at(i, j)
            else:
                p[f"p_{i}_{j}"] = M.at(i, j)
    return ChartPoint(n, tuple(a), q, p)


def chart_base_point(kappa: Sequence, n: int) -> ChartPoint:
    """Chart coordinates of f(κ): q = 0, anti-diagonal p = 1, other p = 0, a = κ."""
    names = chart_slot_names(n)
    p = {s: Fraction(1 if slot_kind(n, *map(int, s.split("_")[1:])) == "anti" else 0) for s in names["p"]}
    return ChartPoint(n, tuple(as_rational(k) for k in kappa), {s: Fraction(0) for s in names["q"]}, p)


def chart_to_json(c: ChartPoint) -> Dict[str, Any]:
    return {"n": c.n, **{k: format_rational(v) for k, v in c.slots().items()}}


def chart_from_json(data: Dict[str, Any]) -> ChartPoint:
    n = int(data["n"])
    names = chart_slot_names(n)
    try:
        a = tuple(parse_rational(str(data[s])) for s in names["a"])
        q = {s: parse_rational(str(data[s])) for s in names["q"]}
        p = {s: parse_rational(str(data[s])) for s in names["p"]}
    except KeyError as e:
        raise ValueError(f"incomplete slot data: missing {e.args[0]}") from e
    return ChartPoint(n, a, q, p)


# ---------------- moment-map fibers ----------------
def _check_borel(b: RatMatrix):
    n = b.rows
    if not b.is_square:
        raise DimensionMismatchError("group element must be square")
    for i in range(1, n + 1):
        for j in range(1, i):
            if b.at(i, j) != 0:
                raise ValueError("group element must be upper triangular")
    diag = [b.at(i, i) for i in range(1, n + 1)]
    if any(d == 0 for d in diag):
        raise SingularMatrixError("group element is singular")
    if any(d < 0 for d in diag):
        raise ValueError("group element must have a positive diagonal")


def fiber_membership(b: RatMatrix, ell, point: CrossSectionPoint) -> bool:
    """π_{b₋}(b⁻¹(ℓ - ε)b) + ε ∈ f + h^⊥."""
    _check_borel(b)
    L = ell.X if isinstance(ell, HessenbergPoint) else ell
    n = point.n
    eps = principal_nilpotent(n)
    moved = lower_part(inverse(b) @ (L - eps) @ b) + eps
    return in_span((moved - point.f).vec(), _vecs(build_polarization(n).h_perp))


def orbit_point(b: RatMatrix, point: CrossSectionPoint, w: Optional[RatMatrix] = None) -> HessenbergPoint:
    """ε + π_{b₋}(b (f - ε + w) b⁻¹): a point whose fiber test with b succeeds for w ∈ h^⊥."""
    _check_borel(b)
    n = point.n
    eps = principal_nilpotent(n)
    w = RatMatrix.zeros(n) if w is None else w
    return HessenbergPoint(eps + lower_part(b @ (point.f - eps + w) @ inverse(b)))
