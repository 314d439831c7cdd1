"""Mechanical verification of the calculus on enumerated and sampled instances.

Each check runs a batch of randomly sampled (or exhaustively enumerated)
instances against one algebraic statement and returns a
:class:`CheckReport`.  Checks are deterministic given (frame size, sample
count, seed), and a failing report always carries a JSON witness with the
concrete instance that violated the statement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import lattice
from .belief import MassFunction, bel_from_mass, pl_from_mass, q_from_mass, vacuous
from .dynamics import (
    combine_conjunctive,
    combine_disjunctive,
    condition,
    enlarge,
    retract,
)
from .errors import FrameTooLargeError, InputError
from .lattice import CAP_MATRIX, Frame, default_frame, subsets_of
from .specialization import (
    SpecializationMatrix,
    apply,
    apply_generalization,
    commute_check,
    conditioning_matrix,
    dempsterian_matrix,
    disjunctive_matrix,
    incidence_inverse,
    incidence_matrix,
    is_dempsterian,
)

TOL = 1e-9
TOL_EXACT = 1e-12
TOL_RETRACT = 1e-8


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one check at one frame size."""

    check: str
    n: int
    instances: int
    violations: int
    worst_deviation: float
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"{self.check:<32} n={self.n} instances={self.instances:>5} "
            f"violations={self.violations:>3} worst={self.worst_deviation:.3e} [{status}]"
        )


def _round12(x: float) -> float:
    return float(f"{float(x):.12g}")


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        return _round12(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    return obj


def _witness(check: str, n: int, **data) -> str:
    payload = {"check": check, "n": n}
    payload.update({k: _jsonable(v) for k, v in data.items()})
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# instance samplers

def random_mass(frame: Frame, rng: np.random.Generator) -> MassFunction:
    """Random bba: uniform entries with a random subset zeroed, normalized.

    Zeroing a varying fraction of entries produces sparse and dense focal
    structures alike.
    """
    u = rng.random(frame.size)
    keep = rng.random(frame.size) >= rng.random()
    if not keep.any():
        keep[rng.integers(frame.size)] = True
    u *= keep
    total = u.sum()
    if total <= 0.0:
        u[rng.integers(frame.size)] = 1.0
        total = 1.0
    return MassFunction(frame, u / total)


def _random_row(support: list[int], size: int, rng: np.random.Generator) -> np.ndarray:
    """Random distribution over the given support (normalized uniforms)."""
    while True:
        w = rng.random(len(support))
        total = w.sum()
        if total > 0.0:
            break
    row = np.zeros(size)
    row[support] = w / total
    return row


def random_specialization(frame: Frame, rng: np.random.Generator) -> SpecializationMatrix:
    """Random valid specialization: each row a distribution over the row's subsets."""
    s = np.zeros((frame.size, frame.size))
    for a in range(frame.size):
        s[a] = _random_row(list(subsets_of(a)), frame.size, rng)
    return SpecializationMatrix(frame, s)


def sigma_star_specialization(
    frame: Frame, condition_set: int, rng: np.random.Generator
) -> SpecializationMatrix:
    """Random specialization that forces plausibility zero outside ``condition_set``.

    Row ``A`` is supported on subsets of ``A & condition_set``, the support
    condition characterizing the matrices whose output always gives the
    complement of the conditioning set zero plausibility.
    """
    s = np.zeros((frame.size, frame.size))
    for a in range(frame.size):
        s[a] = _random_row(list(subsets_of(a & condition_set)), frame.size, rng)
    return SpecializationMatrix(frame, s)


def _pl_of_row(row: np.ndarray, full: int) -> np.ndarray:
    comp = np.arange(row.size) ^ full
    pl = row.sum() - lattice.zeta_subsets(row)[comp]
    pl[0] = 0.0
    return pl


def dominated_specialization(
    frame: Frame, anchor: MassFunction, rng: np.random.Generator
) -> SpecializationMatrix:
    """Random specialization each of whose rows is at least as committed as ``anchor``.

    Row domination (row plausibility below the anchor's everywhere) is the
    checkable characterization of the matrices whose application always
    yields a state at least as committed as the anchor.  Rows are rejection
    sampled; when no random row qualifies, a candidate is shrunk toward the
    point mass on the empty set until it does.
    """
    pl0 = pl_from_mass(anchor).values
    s = np.zeros((frame.size, frame.size))
    for a in range(frame.size):
        support = list(subsets_of(a))
        row = None
        for _ in range(40):
            cand = _random_row(support, frame.size, rng)
            if (_pl_of_row(cand, frame.full) <= pl0 + TOL_EXACT).all():
                row = cand
                break
        if row is None:
            cand = _random_row(support, frame.size, rng)
            pl_row = _pl_of_row(cand, frame.full)
            positive = pl_row > 0.0
            alpha = min(1.0, float((pl0[positive] / pl_row[positive]).min())) if positive.any() else 1.0
            row = alpha * cand
            row[0] += 1.0 - alpha
        s[a] = row
    return SpecializationMatrix(frame, s)


# ---------------------------------------------------------------------------
# checks

def check_conditioning_least_committed(frame: Frame, samples: int = 500, seed=0) -> CheckReport:
    """Conditioning is the least committed update killing the complement's plausibility.

    For sampled matrices with the zero-plausibility support property and
    random masses, the conditioned state must dominate: its plausibility is
    pointwise largest, and the alternative's complement plausibility is zero.
    """
    name = "conditioning-least-committed"
    rng = np.random.default_rng(seed)
    worst = 0.0
    violations = 0
    witness = None
    for _ in range(samples):
        c = int(rng.integers(frame.size))
        s = sigma_star_specialization(frame, c, rng)
        m = random_mass(frame, rng)
        pl_alt = pl_from_mass(apply(m, s)).values
        pl_cond = pl_from_mass(condition(m, c)).values
        dev = max(float(pl_alt[frame.full ^ c]), float((pl_alt - pl_cond).max()))
        worst = max(worst, dev)
        if dev > TOL:
            violations += 1
            if witness is None:
                witness = _witness(name, frame.n, m=m.values, C=c, S=s.values, deviation=dev)
    return CheckReport(name, frame.n, samples, violations, worst, witness)


def check_conditioning_idempotent(frame: Frame, samples: int | None = None, seed=0) -> CheckReport:
    """All conditioning matrices are idempotent, and products compose by intersection.

    Exhaustive over every conditioning set (and every pair); the matrices
    are 0/1 so both identities must hold exactly.
    """
    name = "conditioning-idempotent"
    worst = 0.0
    violations = 0
    witness = None
    matrices = [conditioning_matrix(frame, c) for c in range(frame.size)]
    instances = 0
    for c, s in enumerate(matrices):
        instances += 1
        dev = float(np.abs(s.values @ s.values - s.values).max())
        worst = max(worst, dev)
        if dev > 0.0:
            violations += 1
            witness = witness or _witness(name, frame.n, C=c, deviation=dev)
    for c1, s1 in enumerate(matrices):
        for c2, s2 in enumerate(matrices):
            instances += 1
            dev = float(np.abs(s1.values @ s2.values - matrices[c1 & c2].values).max())
            worst = max(worst, dev)
            if dev > 0.0:
                violations += 1
                witness = witness or _witness(name, frame.n, C1=c1, C2=c2, deviation=dev)
    return CheckReport(name, frame.n, instances, violations, worst, witness)


def check_commuting_implies_dempsterian(frame: Frame, samples: int = 100, seed=0) -> CheckReport:
    """Commuting with every conditioning matrix characterizes the Dempsterian family.

    Forward direction: sampled Dempsterian matrices commute with all
    conditioning matrices.  Contrapositive (frames of 2 or 3 elements):
    for sampled valid non-Dempsterian matrices, some conditioning matrix
    must witness non-commutation.
    """
    name = "commuting-implies-dempsterian"
    rng = np.random.default_rng(seed)
    conditioners = [conditioning_matrix(frame, c) for c in range(frame.size)]
    worst = 0.0
    violations = 0
    witness = None
    instances = 0
    for _ in range(samples):
        instances += 1
        s = dempsterian_matrix(random_mass(frame, rng))
        dev = max(commute_check(s, sc)[1] for sc in conditioners)
        worst = max(worst, dev)
        if dev > TOL:
            violations += 1
            witness = witness or _witness(name, frame.n, S=s.values, deviation=dev)
    if 2 <= frame.n <= 3:
        for _ in range(samples):
            instances += 1
            s = random_specialization(frame, rng)
            tries = 0
            while is_dempsterian(s) and tries < 100:
                s = random_specialization(frame, rng)
                tries += 1
            best = max(commute_check(s, sc)[1] for sc in conditioners)
            if best <= TOL:
                violations += 1
                witness = witness or _witness(
                    name, frame.n, S=s.values, best_witness_deviation=best
                )
    return CheckReport(name, frame.n, instances, violations, worst, witness)


def check_dempsterian_commutation(frame: Frame, samples: int = 200, seed=0) -> CheckReport:
    """Dempsterian matrices commute, and their product is the combination's matrix."""
    name = "dempsterian-commutation"
    rng = np.random.default_rng(seed)
    worst = 0.0
    violations = 0
    witness = None
    for _ in range(samples):
        m1 = random_mass(frame, rng)
        m2 = random_mass(frame, rng)
        s1 = dempsterian_matrix(m1)
        s2 = dempsterian_matrix(m2)
        s12 = dempsterian_matrix(combine_conjunctive(m1, m2))
        product = s1.values @ s2.values
        dev = max(
            float(np.abs(product - s2.values @ s1.values).max()),
            float(np.abs(product - s12.values).max()),
        )
        worst = max(worst, dev)
        if dev > TOL:
            violations += 1
            witness = witness or _witness(name, frame.n, m1=m1.values, m2=m2.values, deviation=dev)
    return CheckReport(name, frame.n, samples, violations, worst, witness)


def check_combination_least_committed(frame: Frame, samples: int = 300, seed=0) -> CheckReport:
    """The Dempsterian matrix is the least committed row-dominated update.

    For sampled anchors m0, matrices S whose rows are dominated by m0, and
    random m: applying m0's own matrix equals conjunctive combination, and
    its plausibility dominates every alternative ``m . S`` pointwise.
    """
    name = "combination-least-committed"
    rng = np.random.default_rng(seed)
    worst = 0.0
    violations = 0
    witness = None
    for _ in range(samples):
        m0 = random_mass(frame, rng)
        s = dominated_specialization(frame, m0, rng)
        m = random_mass(frame, rng)
        best = apply(m, dempsterian_matrix(m0))
        eq_dev = float(np.abs(best.values - combine_conjunctive(m, m0).values).max())
        dom_dev = float((pl_from_mass(apply(m, s)).values - pl_from_mass(best).values).max())
        worst = max(worst, eq_dev, dom_dev)
        if eq_dev > TOL_EXACT or dom_dev > TOL:
            violations += 1
            witness = witness or _witness(
                name, frame.n, m0=m0.values, m=m.values, S=s.values,
                equality_deviation=eq_dev, domination_deviation=dom_dev,
            )
    return CheckReport(name, frame.n, samples, violations, worst, witness)


def check_eigen_structure(frame: Frame, samples: int = 200, seed=0, inject_fault: bool = False) -> CheckReport:
    """Dempsterian matrices diagonalize over the subset-incidence basis.

    The diagonal (and eigenvalue) vector is the commonality function of the
    generating mass, and the rows of the inverse incidence matrix are left
    eigenvectors.  ``inject_fault`` perturbs one entry of the first sampled
    matrix; it exists so the fault path of the reporting machinery can be
    exercised end to end.
    """
    name = "eigenstructure"
    rng = np.random.default_rng(seed)
    t = incidence_matrix(frame)
    t_inv = incidence_inverse(frame)
    worst = 0.0
    violations = 0
    witness = None
    for k in range(samples):
        m = random_mass(frame, rng)
        values = dempsterian_matrix(m).values
        if inject_fault and k == 0:
            values = values.copy()
            values[-1, 0] += 1e-3
        q = q_from_mass(m).values
        diag_dev = float(np.abs(np.diag(values) - q).max())
        recon_dev = float(np.abs(values - (t * q[None, :]) @ t_inv).max())
        row_dev = float(np.abs(t_inv @ values - q[:, None] * t_inv).max())
        worst = max(worst, diag_dev, recon_dev, row_dev)
        if diag_dev > TOL_EXACT or recon_dev > TOL or row_dev > TOL:
            violations += 1
            witness = witness or _witness(
                name, frame.n, m=m.values,
                diagonal_deviation=diag_dev, reconstruction_deviation=recon_dev,
                eigenrow_deviation=row_dev,
            )
    return CheckReport(name, frame.n, samples, violations, worst, witness)


def _naive_conjunctive(m0: np.ndarray, m1: np.ndarray) -> np.ndarray:
    out = np.zeros_like(m0)
    for x in range(m0.size):
        for y in range(m1.size):
            out[x & y] += m0[x] * m1[y]
    return out


def _naive_disjunctive(m0: np.ndarray, m1: np.ndarray) -> np.ndarray:
    out = np.zeros_like(m0)
    for x in range(m0.size):
        for y in range(m1.size):
            out[x | y] += m0[x] * m1[y]
    return out


def check_dynamics_invariants(frame: Frame, samples: int = 300, seed=0) -> CheckReport:
    """Cross-route agreement of the dynamics rules on random instances.

    Covers: conditioning by transfer / matrix / closed belief form, zero
    plausibility outside the conditioning set, conjunctive combination
    against the quadratic double sum plus commutativity, associativity and
    vacuous neutrality, conditioning composition, expansion order
    independence, retraction round trips, the disjunctive rule against its
    double sum and implicability product, and enlargement indiscernibility.
    """
    name = "dynamics-invariants"
    rng = np.random.default_rng(seed)
    vac = vacuous(frame)
    worst = 0.0
    violations = 0
    witness = None
    for _ in range(samples):
        m0 = random_mass(frame, rng)
        m1 = random_mass(frame, rng)
        m2 = random_mass(frame, rng)
        c = int(rng.integers(frame.size))
        c2 = int(rng.integers(frame.size))
        devs: dict[str, float] = {}

        # conditioning: transfer vs matrix vs closed belief form, and pl outside C
        cond = condition(m0, c)
        devs["cond-matrix"] = float(
            np.abs(cond.values - apply(m0, conditioning_matrix(frame, c)).values).max()
        )
        bel0 = bel_from_mass(m0).values
        comp = frame.full ^ c
        closed = bel0[np.arange(frame.size) | comp] - bel0[comp]
        devs["cond-bel-form"] = float(np.abs(bel_from_mass(cond).values - closed).max())
        devs["cond-pl-outside"] = float(pl_from_mass(cond).values[comp]) if comp else 0.0

        # conjunctive rule: fast path vs double sum, q-product, algebra
        m01 = combine_conjunctive(m0, m1)
        devs["conj-double-sum"] = float(
            np.abs(m01.values - _naive_conjunctive(m0.values, m1.values)).max()
        )
        devs["conj-q-product"] = float(
            np.abs(q_from_mass(m01).values - q_from_mass(m0).values * q_from_mass(m1).values).max()
        )
        devs["conj-commutative"] = float(
            np.abs(m01.values - combine_conjunctive(m1, m0).values).max()
        )
        devs["conj-associative"] = float(
            np.abs(
                combine_conjunctive(m01, m2).values
                - combine_conjunctive(m0, combine_conjunctive(m1, m2)).values
            ).max()
        )
        devs["conj-vacuous-neutral"] = float(
            np.abs(combine_conjunctive(m0, vac).values - m0.values).max()
        )

        # conditioning composes by intersection; expansions commute
        devs["cond-compose"] = float(
            np.abs(condition(cond, c2).values - condition(m0, c & c2).values).max()
        )
        s_m1 = dempsterian_matrix(m1)
        s_c = conditioning_matrix(frame, c)
        devs["expansion-order"] = float(
            np.abs(apply(apply(m0, s_m1), s_c).values - apply(apply(m0, s_c), s_m1).values).max()
        )

        # retraction round trip (evidence kept invertible by vacuous mixing)
        safe = MassFunction(frame, 0.9 * m1.values + 0.1 * vac.values)
        devs["retract-round-trip"] = float(
            np.abs(retract(combine_conjunctive(m0, safe), safe).values - m0.values).max()
        )

        # disjunctive rule: fast path vs double sum, b-product, matrix path
        m_or = combine_disjunctive(m0, m1)
        devs["disj-double-sum"] = float(
            np.abs(m_or.values - _naive_disjunctive(m0.values, m1.values)).max()
        )
        devs["disj-b-product"] = float(
            np.abs(
                lattice.zeta_subsets(m_or.values)
                - lattice.zeta_subsets(m0.values) * lattice.zeta_subsets(m1.values)
            ).max()
        )
        devs["disj-matrix"] = float(
            np.abs(apply_generalization(m0, disjunctive_matrix(m1)).values - m_or.values).max()
        )

        # enlargement: conditioning is invariant under choices inside the set
        a = int(rng.integers(frame.size))
        x = int(rng.integers(frame.size)) & (frame.full ^ a)
        y = int(rng.integers(frame.size)) & a
        enlarged = enlarge(m0, a)
        devs["enlarge-invariance"] = float(
            np.abs(
                condition(enlarged, x | y).values
                - enlarge(condition(enlarged, x), y).values
            ).max()
        )

        tolerances = {k: TOL_RETRACT if k == "retract-round-trip" else TOL for k in devs}
        worst = max(worst, max(devs.values()))
        failed = [k for k, v in devs.items() if v > tolerances[k]]
        if failed:
            violations += 1
            witness = witness or _witness(
                name, frame.n, m0=m0.values, m1=m1.values, m2=m2.values,
                C=c, C2=c2, A=a, X=x, Y=y,
                failed={k: devs[k] for k in failed},
            )
    return CheckReport(name, frame.n, samples, violations, worst, witness)


# ---------------------------------------------------------------------------
# suite

_CHECKS = {
    "conditioning-least-committed": (check_conditioning_least_committed, 4, 500),
    "conditioning-idempotent": (check_conditioning_idempotent, 4, 0),
    "commuting-implies-dempsterian": (check_commuting_implies_dempsterian, 4, 100),
    "dempsterian-commutation": (check_dempsterian_commutation, 5, 200),
    "combination-least-committed": (check_combination_least_committed, 4, 300),
    "eigenstructure": (check_eigen_structure, 5, 200),
    "dynamics-invariants": (check_dynamics_invariants, 6, 300),
}

CHECK_NAMES = tuple(_CHECKS)


def run_all(
    sizes=(1, 2, 3, 4),
    samples: int | None = None,
    seed: int = 0,
    checks=None,
    inject_fault: bool = False,
) -> list[CheckReport]:
    """Run the selected checks at every frame size; deterministic per seed.

    Checks are skipped at sizes above their cap (exhaustive enumeration and
    witness searches do not scale past desk-size frames).
    """
    selected = list(CHECK_NAMES) if checks is None else list(checks)
    for name in selected:
        if name not in _CHECKS:
            raise InputError(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}")
    sizes = list(sizes)
    for n in sizes:
        if not 1 <= n <= CAP_MATRIX:
            raise FrameTooLargeError(f"check sizes must lie in [1, {CAP_MATRIX}], got {n}")
    reports = []
    for n in sizes:
        frame = default_frame(n)
        for index, name in enumerate(CHECK_NAMES):
            if name not in selected:
                continue
            fn, max_n, default_samples = _CHECKS[name]
            if n > max_n:
                continue
            child_seed = int(np.random.SeedSequence((seed, index, n)).generate_state(1)[0])
            kwargs = {"samples": samples if samples is not None else default_samples}
            if name == "conditioning-idempotent":
                kwargs = {}
            if name == "eigenstructure" and inject_fault:
                kwargs["inject_fault"] = True
            reports.append(fn(frame, seed=child_seed, **kwargs))
    return reports


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


def format_reports(reports) -> str:
    lines = []
    for r in reports:
        lines.append(r.to_line())
        if r.witness is not None:
            lines.append(f"    witness: {r.witness}")
    failed = sum(1 for r in reports if not r.passed)
    lines.append(f"summary: {len(reports)} checks, {len(reports) - failed} passed, {failed} failed")
    return "\n".join(lines)
