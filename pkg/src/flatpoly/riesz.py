"""Plans for generalized Riesz products over Singer polynomials.

A plan is a list of stages (prime p_j, Singer set S_j, scale N_j); stage
j contributes the factor |P_j(z^{N_j})|^2 whose frequency support is
F_j = N_j * S_j.  Scales grow fast enough that (a) each scale exceeds
the previous stage's top frequency (the growth rule) and (b) the
difference blocks F_j - F_j admit unique sum representations
(1-dissociation), which is what makes the partial products honest
probability densities with exactly computable sparse coefficients.

The default "margin" rule sets N_{j+1} = 2^j (p_j^m + 1) h_j, where
h_j = max(S_j) N_j + h_{j-1} is the running height shared with the
rank-one construction; it forces the quasi-invariance series
sum ((p_j+1) N_j / N_{j+1})^2 under the geometric bound sum 4^{-j}.
"margin:<c>" uses the constant multiplier c >= 2 instead (still
1-dissociated, but with no closed-form tail bound for the series).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetError
from .poly import correlations
from .singer import SingerSet, construct_singer

__all__ = [
    "PlanStage",
    "RieszPlan",
    "DissociationCertificate",
    "SparseCoefficients",
    "ErgodicityReport",
    "QuasiInvarianceReport",
    "make_plan",
    "check_dissociated",
    "partial_coeffs",
    "ergodicity_sum",
    "quasi_invariance_sum",
    "plan_to_json",
    "plan_from_json",
]

DISSOCIATION_BUDGET = 10**6
COEFF_BUDGET = 10**6


@dataclass(frozen=True)
class PlanStage:
    prime: int
    m: int
    singer: SingerSet
    scale: int
    height: int  # h_j = max(S_j) * N_j + h_{j-1}

    @property
    def frequencies(self):
        return tuple(self.scale * s for s in self.singer.residues)


@dataclass(frozen=True)
class RieszPlan:
    stages: tuple
    rule: str
    m: int = 1

    base_height = 1

    @property
    def primes(self):
        return tuple(st.prime for st in self.stages)

    @property
    def scales(self):
        return tuple(st.scale for st in self.stages)

    @property
    def heights(self):
        return tuple(st.height for st in self.stages)


def _rule_multiplier(rule, j, stage_size):
    """Scale multiplier m_j for stage j (1-based); N_{j+1} = m_j * h_j."""
    if rule == "margin":
        return 2**j * stage_size
    if rule.startswith("margin:"):
        c = int(rule.split(":", 1)[1])
        if c < 2:
            raise ValueError(f"margin multiplier must be >= 2, got {c}")
        return c
    raise ValueError(f"unknown scale rule {rule!r}")


def make_plan(primes, rule="margin", m=1, scales=None):
    """Build a plan over the given primes under a scale rule.

    Explicit `scales` override the rule (recorded as rule "explicit")
    and are validated against the growth requirement
    N_j >= N_{j-1} * max(S_{j-1}).
    """
    primes = tuple(int(p) for p in primes)
    if not primes:
        raise ValueError("need at least one prime")
    sets = [construct_singer(p, m) for p in primes]
    if scales is not None:
        scales = tuple(int(N) for N in scales)
        if len(scales) != len(primes):
            raise ValueError("need one scale per prime")
        if scales[0] < 1:
            raise ValueError("the first scale must be at least 1")
        rule = "explicit"
        for j in range(1, len(scales)):
            floor = scales[j - 1] * sets[j - 1].residues[-1]
            if scales[j] < floor:
                raise ValueError(
                    f"scale N_{j + 1} = {scales[j]} violates the growth rule: "
                    f"need at least N_{j} * max(S_{j}) = {floor}"
                )
        stage_scales = scales
    else:
        if rule == "explicit":
            raise ValueError("rule 'explicit' requires scales")
        stage_scales = []
        h = 1
        for j, sset in enumerate(sets, start=1):
            N = 1 if j == 1 else _rule_multiplier(rule, j - 1, sets[j - 2].size) * h
            stage_scales.append(N)
            h = sset.residues[-1] * N + h
        stage_scales = tuple(stage_scales)

    stages = []
    h = 1
    for sset, N in zip(sets, stage_scales):
        h = sset.residues[-1] * N + h
        stages.append(PlanStage(prime=sset.p, m=m, singer=sset, scale=N, height=h))
    return RieszPlan(stages=tuple(stages), rule=rule, m=m)


# ---------------------------------------------------------------------------
# Dissociation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DissociationCertificate:
    stages_checked: int
    mode: str  # "sums" | "differences"
    valid: bool
    collision: tuple | None  # (tuple_a, tuple_b, common_sum)


def check_dissociated(plan, stages=None, mode="differences"):
    """Exhaustively certify unique sum representations across stages.

    mode "sums": all sums with one frequency per stage are distinct
    (enough for the partial products to have unit mass).  mode
    "differences": every integer has at most one representation with one
    difference-block element per stage, the stronger property the
    quasi-invariance criteria rest on.
    """
    k = len(plan.stages) if stages is None else stages
    if not 1 <= k <= len(plan.stages):
        raise ValueError(f"stages must lie in [1, {len(plan.stages)}]")
    if mode == "sums":
        blocks = [st.frequencies for st in plan.stages[:k]]
    elif mode == "differences":
        blocks = [
            sorted({a - b for a in st.frequencies for b in st.frequencies})
            for st in plan.stages[:k]
        ]
    else:
        raise ValueError(f"mode must be 'sums' or 'differences', got {mode!r}")
    total = 1
    for b in blocks:
        total *= len(b)
    if total > DISSOCIATION_BUDGET:
        raise BudgetError(f"{total} tuples exceed the brute-force budget {DISSOCIATION_BUDGET}")
    seen = {}
    for combo in itertools.product(*blocks):
        value = sum(combo)
        if value in seen and seen[value] != combo:
            return DissociationCertificate(
                stages_checked=k, mode=mode, valid=False,
                collision=(seen[value], combo, value),
            )
        seen[value] = combo
    return DissociationCertificate(stages_checked=k, mode=mode, valid=True, collision=None)


# ---------------------------------------------------------------------------
# Exact partial-product coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SparseCoefficients:
    """Exact Fourier coefficients of a partial product, frequency -> Fraction."""

    stages: int
    coefficients: dict

    @property
    def zero_coefficient(self):
        return self.coefficients.get(0, Fraction(0))

    @property
    def dissociation_consistent(self):
        """Unit zero-coefficient; fails exactly when stage sums collide."""
        return self.zero_coefficient == 1

    @property
    def total_mass(self):
        return sum(self.coefficients.values(), Fraction(0))


def partial_coeffs(plan, k, budget=COEFF_BUDGET):
    """Sparse convolution of the stage coefficient maps, exact rationals.

    Stage j contributes frequency N_j*l with weight c_l/|S_j| over the
    aperiodic correlations c_l of S_j.  For a dissociated plan the
    coefficient at 0 is exactly 1; a larger value is the diagnostic that
    representations collided (reported via dissociation_consistent, not
    an error).
    """
    if not 1 <= k <= len(plan.stages):
        raise ValueError(f"k must lie in [1, {len(plan.stages)}]")
    acc = {0: Fraction(1)}
    for st in plan.stages[:k]:
        table = correlations(st.singer)
        stage_map = {}
        for l in range(-(table.q - 1), table.q):
            c = table.c(l)
            if c:
                stage_map[st.scale * l] = Fraction(c, table.size)
        new = {}
        for f1, v1 in acc.items():
            for f2, v2 in stage_map.items():
                f = f1 + f2
                new[f] = new.get(f, Fraction(0)) + v1 * v2
        if len(new) > budget:
            raise BudgetError(f"{len(new)} frequencies exceed the budget {budget}")
        acc = new
    return SparseCoefficients(stages=k, coefficients=acc)


# ---------------------------------------------------------------------------
# Ergodicity and quasi-invariance diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ErgodicityReport:
    """Partial sums of sum_j ((p_j^m + 1) N_j / N_{j+1})^2, exact.

    terms_top_frequency is the companion series with max(S_j) in place
    of p_j^m + 1 (the form the scale growth rule is stated with); both
    converge under the default margin rule.
    """

    terms: tuple
    partial_sums: tuple
    converged_below: Fraction | None
    criterion_met: bool
    terms_top_frequency: tuple


def ergodicity_sum(plan):
    if len(plan.stages) < 2:
        raise ValueError("need at least two stages")
    terms, terms_top = [], []
    for j in range(len(plan.stages) - 1):
        st, nxt = plan.stages[j], plan.stages[j + 1]
        terms.append(Fraction(st.singer.size * st.scale, nxt.scale) ** 2)
        terms_top.append(Fraction(st.singer.residues[-1] * st.scale, nxt.scale) ** 2)
    sums, acc = [], Fraction(0)
    for t in terms:
        acc += t
        sums.append(acc)
    default_rule = plan.rule == "margin"
    return ErgodicityReport(
        terms=tuple(terms),
        partial_sums=tuple(sums),
        converged_below=Fraction(1, 3) if default_rule else None,
        criterion_met=default_rule,
        terms_top_frequency=tuple(terms_top),
    )


@dataclass(frozen=True)
class QuasiInvarianceReport:
    """Partial sums of sum_j (p_j^m + 1)^2 ||N_j x||^2 at one rotation x.

    suggests_membership is diagnostic only: it records that the computed
    partial sums stabilized, not that the full series converges.
    """

    x: Fraction
    terms: tuple
    partial_sums: tuple
    suggests_membership: bool


def quasi_invariance_sum(plan, x):
    x = Fraction(x)
    terms = []
    for st in plan.stages:
        t = (st.scale * x) % 1
        dist = min(t, 1 - t)
        terms.append(Fraction(st.singer.size) ** 2 * dist * dist)
    sums, acc = [], Fraction(0)
    for t in terms:
        acc += t
        sums.append(acc)
    half = len(terms) // 2
    tail_growth = sums[-1] - sums[half - 1] if half >= 1 else sums[-1]
    return QuasiInvarianceReport(
        x=x,
        terms=tuple(terms),
        partial_sums=tuple(sums),
        suggests_membership=tail_growth < Fraction(1, 10**9),
    )


# ---------------------------------------------------------------------------
# Plan files
# ---------------------------------------------------------------------------

def plan_to_json(plan):
    """Canonical JSON for a plan; round-trips bit-exactly."""
    payload = {
        "primes": list(plan.primes),
        "m": plan.m,
        "rule": plan.rule,
        "scales": list(plan.scales),
        "seeds": None,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def plan_from_json(text):
    payload = json.loads(text)
    rule = payload["rule"]
    if rule == "explicit":
        plan = make_plan(payload["primes"], m=payload["m"], scales=payload["scales"])
    else:
        plan = make_plan(payload["primes"], rule=rule, m=payload["m"])
        if list(plan.scales) != list(payload["scales"]):
            raise ValueError("stored scales disagree with the stored rule")
    return plan
