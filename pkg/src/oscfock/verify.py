"""
Numerical verification suite: every closed-form claim checked against an
independent computation.

``run_checks("fast")`` caps cutoffs at 60 and squeeze moduli at 0.5 (the
density-shape checks keep their fixed parameters); ``"full"`` runs
the stated sizes.
"""

import time
from dataclasses import dataclass

import numpy as np

from .density import count_local_maxima, density_grid, origin_ratio
from .fock import ModePair, SqueezeSpec, basis_size_2d, inner_product, overlap_modulus
from .observables import (
    dispersion_1d_analytic,
    dispersion_2d_analytic,
    schmidt_analysis,
    uncertainty_products,
    variance_numeric,
)
from .operators import apply_generalized, bogoliubov_check, build_matrix, commutator
from .states import (
    SU2CoherentSpec,
    eigen_residual,
    squeezed_1d,
    squeezed_1d_oracle,
    squeezed_2d,
    squeezed_2d_oracle,
    squeezed_vacuum_exponential,
    su2_coherent,
    su2_overlap,
)

# reference mode pairs: alpha = (sqrt3/2) e^{i pi/2} or sqrt3/2, beta = 1/2
MODES_PHASED = ModePair(np.sqrt(3) / 2 * np.exp(1j * np.pi / 2), 0.5)
MODES_REAL = ModePair(np.sqrt(3) / 2, 0.5)
REFERENCE_MODES = (MODES_PHASED, MODES_REAL)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str
    seconds: float
    limit: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.number:2d} {self.name}: {self.detail} "
            f"({self.seconds:.2f}s, limit {self.limit:g}s)"
        )


@dataclass(frozen=True)
class Tier:
    name: str
    cutoff_cap: int
    squeeze_cap: float

    def cutoff(self, c):
        return min(c, self.cutoff_cap)

    def squeezes(self, values):
        return [v for v in values if v <= self.squeeze_cap]


TIERS = {
    "fast": Tier("fast", 60, 0.5),
    "full": Tier("full", 10**9, np.inf),
}


def random_mode_pairs(count, seed=20240611):
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        pairs.append(ModePair.rescaled(*v)[0])
    return pairs


def check_commutator(tier):
    cutoff = tier.cutoff(60)
    k = basis_size_2d(cutoff - 1)
    worst = 0.0
    for modes in REFERENCE_MODES:
        lo = build_matrix("A-", cutoff, modes, sparse=True)
        up = build_matrix("A+", cutoff, modes, sparse=True)
        c = commutator(lo, up).dense()[:k, :k]
        worst = max(worst, float(np.max(np.abs(c - np.eye(k)))))
    return worst, 1e-12, f"max |[A-,A+] - I| on nu <= {cutoff - 1} at cutoff {cutoff}"


def check_ladder_recursion(tier):
    worst = 0.0
    cutoff = 31
    for modes in REFERENCE_MODES + tuple(random_mode_pairs(2)):
        for nu in range(31):
            up, _ = apply_generalized("+", modes, su2_coherent(SU2CoherentSpec(nu, modes), cutoff))
            want = np.sqrt(nu + 1) * su2_coherent(SU2CoherentSpec(nu + 1, modes), cutoff).coeffs
            worst = max(worst, float(np.max(np.abs(up.coeffs - want))))
    return worst, 1e-12, "max |A+|nu> - sqrt(nu+1)|nu+1>| for nu <= 30"


def check_orthogonality(tier):
    pairs = random_mode_pairs(10, seed=7)
    worst = 0.0
    cutoff = 20
    for bra_modes, ket_modes in zip(pairs[:5], pairs[5:]):
        bras = [su2_coherent(SU2CoherentSpec(m, bra_modes), cutoff) for m in range(21)]
        kets = [su2_coherent(SU2CoherentSpec(n, ket_modes), cutoff) for n in range(21)]
        for mu in range(21):
            for nu in range(21):
                got = inner_product(bras[mu], kets[nu])
                want = su2_overlap(mu, bra_modes, nu, ket_modes)
                worst = max(worst, abs(got - want))
    return worst, 1e-12, "max |<mu|nu> - closed form| over mu,nu <= 20, 5 mode pairs"


def check_su2_variances(tier):
    worst = 0.0
    for modes in REFERENCE_MODES:
        a2, b2 = abs(modes.alpha) ** 2, abs(modes.beta) ** 2
        for nu in (0, 1, 5, 40):
            s = su2_coherent(SU2CoherentSpec(nu, modes), nu)
            rep = uncertainty_products(s)
            for got, want in (
                (rep.varX, 0.5 + a2 * nu),
                (rep.varPx, 0.5 + a2 * nu),
                (rep.varY, 0.5 + b2 * nu),
                (rep.varPy, 0.5 + b2 * nu),
            ):
                worst = max(worst, abs(got - want))
    s = su2_coherent(SU2CoherentSpec(40, MODES_PHASED), 40)
    worst = max(worst, abs(variance_numeric(s, "X") - 30.5))
    return worst, 1e-10, "max |var - (1/2 + |alpha|^2 nu)|, nu in {0,1,5,40}; nu=40 vs 30.5"


def check_dispersion_1d(tier):
    cutoff = tier.cutoff(200)
    worst = 0.0
    worst_prod = 0.0
    for r in tier.squeezes([0.2, 0.5, 1.0]):
        for th in (0.0, np.pi / 2, np.pi):
            spec = SqueezeSpec(1.0, r, th)
            s = squeezed_1d(spec, cutoff)
            vx, vp = variance_numeric(s, "X"), variance_numeric(s, "P")
            ax, ap = dispersion_1d_analytic(spec)
            worst = max(worst, abs(vx - ax), abs(vp - ap))
            if th == 0.0:
                worst_prod = max(worst_prod, abs(vx * vp - 0.25))
    passed_prod = worst_prod <= 1e-8
    detail = f"max |var - analytic| at cutoff {cutoff}; |varX varP - 1/4| = {worst_prod:.2e} (tol 1e-8)"
    return worst if passed_prod else np.inf, 1e-6, detail


def check_dual_construction(tier):
    cutoff = tier.cutoff(120)
    worst = 0.0
    for modes in REFERENCE_MODES:
        for r in tier.squeezes([0.1, 0.3, 0.5]):
            for th in (0.0, np.pi / 2):
                spec = SqueezeSpec(0.0, r, th)
                a = squeezed_2d(spec, modes, cutoff)
                b = squeezed_vacuum_exponential(spec, modes, cutoff)
                worst = max(worst, 1.0 - overlap_modulus(a, b))
    return worst, 1e-8, f"max 1 - |<expansion|disentangled exponential>| at cutoff {cutoff}"


def check_operator_oracle(tier):
    cutoff = tier.cutoff(120)
    spec = SqueezeSpec(1.0, 0.5, 0.0)
    worst = 1.0 - overlap_modulus(squeezed_1d(spec, cutoff), squeezed_1d_oracle(spec, cutoff))
    for modes in REFERENCE_MODES:
        a = squeezed_2d(spec, modes, cutoff)
        b = squeezed_2d_oracle(spec, modes, cutoff)
        worst = max(worst, 1.0 - overlap_modulus(a, b))
    return worst, 1e-8, f"max 1 - |<closed form|D S|0>>| (1D and 2D) at cutoff {cutoff}"


def check_dispersion_2d(tier):
    cutoff = tier.cutoff(120)
    worst = 0.0
    for modes in REFERENCE_MODES:
        for r in tier.squeezes([0.25, 0.5, 1.0]):
            for th in (0.0, np.pi / 2):
                spec = SqueezeSpec(0.0, r, th)
                num = uncertainty_products(squeezed_vacuum_exponential(spec, modes, cutoff))
                ana = dispersion_2d_analytic(spec, modes)
                for q in ("varX", "varPx", "varY", "varPy"):
                    worst = max(worst, abs(getattr(num, q) - getattr(ana, q)))
        for r in tier.squeezes([0.25, 0.5]):
            base = uncertainty_products(squeezed_2d(SqueezeSpec(0.0, r, 0.0), modes, cutoff))
            for psi in (1.0, 1.0 + 1.0j):
                disp = uncertainty_products(squeezed_2d(SqueezeSpec(psi, r, 0.0), modes, cutoff))
                for q in ("varX", "varPx", "varY", "varPy"):
                    worst = max(worst, abs(getattr(disp, q) - getattr(base, q)))
    return worst, 1e-6, f"max |numeric - analytic| and displacement shift at cutoff {cutoff}"


def check_bogoliubov(tier):
    cutoff = tier.cutoff(60)
    worst = 0.0
    for modes in REFERENCE_MODES:
        rep = bogoliubov_check(modes, SqueezeSpec(0.0, 0.2, 0.0), cutoff)
        worst = max(worst, rep.residual, rep.residual_adjoint)
    return worst, 1e-6, f"max |S^dag a_x S - closed form| on nu <= {cutoff // 2}, R=0.2"


def check_non_factorization(tier):
    cutoff = tier.cutoff(120)
    spec = SqueezeSpec(0.0, 0.5, 0.0)
    coupled = schmidt_analysis(squeezed_vacuum_exponential(spec, MODES_REAL, cutoff))
    single = schmidt_analysis(squeezed_vacuum_exponential(spec, ModePair(1.0, 0.0), cutoff))
    ok = coupled.rank >= 2 and coupled.entropy > 0.01 and single.rank == 1
    detail = (
        f"coupled rank {coupled.rank}, entropy {coupled.entropy:.6f} (> 0.01); "
        f"alpha=1 rank {single.rank}"
    )
    return (0.0 if ok else 1.0), 0.0, detail


def check_two_lobes(tier):
    counts = {}
    for r, modes in ((0.1, MODES_PHASED), (10.0, MODES_REAL)):
        s = squeezed_2d(SqueezeSpec(1.0, r, 0.0), modes, 19, terms=20)
        counts[r] = count_local_maxima(density_grid(s, nx=241, ny=241), floor=0.1)
    ok = counts[0.1] == 1 and counts[10.0] == 2
    detail = f"maxima at R=0.1: {counts[0.1]} (want 1), at R=10: {counts[10.0]} (want 2)"
    return (0.0 if ok else 1.0), 0.0, detail


def check_su2_ring(tier):
    s = su2_coherent(SU2CoherentSpec(40, MODES_PHASED), 40)
    grid = density_grid(s, (-12, 12), (-12, 12), 241, 241)
    ratio = origin_ratio(s, grid)
    return ratio, 0.05, "density at origin / global max, nu=40, alpha = i sqrt3/2, beta = 1/2"


def check_eigen_residuals(tier):
    cutoff = tier.cutoff(200)
    worst_1d = 0.0
    for r in tier.squeezes([0.2, 0.5, 1.0]):
        for th in (0.0, np.pi / 2):
            spec = SqueezeSpec(1.0, r, th)
            s = squeezed_1d(spec, cutoff)
            worst_1d = max(worst_1d, eigen_residual(s, spec.canonical_z, spec.canonical_gamma))
    worst_2d = 0.0
    spec = SqueezeSpec(1.0, 0.5, 0.0)
    for modes in REFERENCE_MODES:
        s = squeezed_2d(spec, modes, tier.cutoff(120))
        worst_2d = max(
            worst_2d, eigen_residual(s, spec.canonical_z, spec.canonical_gamma, modes)
        )
    ok_2d = worst_2d <= 1e-6
    detail = f"1D residual (tol 1e-8); 2D analog residual {worst_2d:.2e} (tol 1e-6)"
    return worst_1d if ok_2d else np.inf, 1e-8, detail


CHECKS = [
    (1, "commutator closure", check_commutator, 5),
    (2, "SU(2) ladder recursion", check_ladder_recursion, 1),
    (3, "SU(2) orthogonality", check_orthogonality, 5),
    (4, "SU(2) variances", check_su2_variances, 10),
    (5, "1D dispersions", check_dispersion_1d, 30),
    (6, "dual construction", check_dual_construction, 120),
    (7, "operator oracle", check_operator_oracle, 120),
    (8, "2D dispersions", check_dispersion_2d, 60),
    (9, "Bogoliubov residual", check_bogoliubov, 60),
    (10, "non-factorization", check_non_factorization, 10),
    (11, "two-lobe density maxima", check_two_lobes, 60),
    (12, "SU(2) ring density", check_su2_ring, 30),
    (13, "eigenvalue residuals", check_eigen_residuals, 30),
]


def run_check(number, tier="full"):
    tier = TIERS[tier] if isinstance(tier, str) else tier
    num, name, fn, limit = next(c for c in CHECKS if c[0] == number)
    t0 = time.perf_counter()
    try:
        value, tol, detail = fn(tier)
        err = None
    except Exception as exc:  # a crashing check is a failed check
        value, tol, detail, err = np.inf, 0.0, f"raised {type(exc).__name__}: {exc}", exc
    seconds = time.perf_counter() - t0
    passed = err is None and value <= tol and seconds < limit
    if err is None:
        detail = f"{detail} = {value:.3e} (tol {tol:g})"
    return CheckResult(num, name, bool(passed), float(value), tol, detail, seconds, limit)


def run_checks(tier="full", numbers=None, report=None):
    results = []
    for num, *_ in CHECKS:
        if numbers is not None and num not in numbers:
            continue
        res = run_check(num, tier)
        if report is not None:
            report(res.line())
        results.append(res)
    return results
