"""Preperfection A^(p^inf/R) over the Frobenius image chain, and related tests.

Evidence comes in three grades that reports keep apart:

* ``stabilized``: B_n = B_{n+1} was shown, so the chain is constant from n on
  and B_n is the intersection of all B_k.
* ``bounds_meet``: a certified lower bound equals a certified upper bound.
  The upper bound R comes from a positive grading (see :func:`grading_weights`).
* ``bounds``: only a lower bound (R plus certified coherent elements) and the
  last chain level as an upper bound, with falsified probes.
"""

import itertools
from dataclasses import dataclass, field

from .corering import Polynomial
from .fpalg import AlgebraMorphism, AlgebraPresentation, frobenius_twist, morphism_kernel, relative_frobenius
from .groebner import BudgetExceeded, Ideal
from .subalg import INDETERMINATE, NO, YES, FrobeniusChain, SubalgebraHandle, subalgebra_equal

STABILIZED, NOT_STABILIZED, BUDGET_EXCEEDED = "stabilized", "not_stabilized", "budget_exceeded"
UNRAMIFIED, RAMIFIED, UNKNOWN = "unramified", "ramified", "unknown"


# coherent elements


@dataclass(frozen=True)
class CoherentCertificate:
    """r * a with r in R and r * (a^p - a) = 0, so r*a = r*a^(p^n) lies in every B_n."""

    algebra: AlgebraPresentation
    a: Polynomial
    r: Polynomial
    name: str = None

    @classmethod
    def make(cls, A, a, r, name=None):
        return cls(A, A.reduce(a), A.reduce(r), name)

    @property
    def target(self):
        return self.algebra.reduce(self.r * self.a)

    def to_dict(self):
        return {"a": str(self.a), "r": str(self.r), "target": str(self.target), "name": self.name}


def verify_coherent_certificate(cert):
    A = cert.algebra
    base = set(A.base_vars)
    if any(v not in base for v in cert.r.variables()):
        return False
    return A.is_zero_element(cert.r * (cert.a ** A.p - cert.a))


def certificate_witness(chain, cert, n):
    """Tag polynomial in P_n for r*a, using r*a = r*a^(p^n)."""
    Pn = chain.level(n)
    return cert.r.embed(Pn.ring) * chain.frobenius_witness(cert.a, n)


# grading certificate for the upper bound


def grading_weights(A, max_weight=4):
    """Integer weights making every relation of A and R homogeneous.

    Generators of A get weights >= 1, base variables >= 0. Returns a dict or
    None. With such a grading every element of B_n of degree < p^n lies in R,
    and B_n is a graded subalgebra, so the intersection of all B_n is R.
    """
    gens = A.generators
    names = A.ring.names
    rels = list(A.ideal.generators)
    diffs = []
    for f in rels:
        monos = sorted(f.terms)
        for m in monos[1:]:
            d = tuple(a - b for a, b in zip(m, monos[0]))
            if any(d):
                diffs.append(d)
    ng = len(gens)
    ranges = [range(1, max_weight + 1)] * ng + [range(0, max_weight + 1)] * (len(names) - ng)
    for w in sorted(itertools.product(*ranges), key=lambda w: (sum(w), w)):
        if all(sum(a * b for a, b in zip(d, w)) == 0 for d in diffs):
            return dict(zip(names, w))
    return None


# the driver


@dataclass
class PreperfectionReport:
    algebra: AlgebraPresentation
    status: str
    at: int = None  # stabilization level, or last level built
    chain: list = field(default_factory=list)
    injectivity: list = field(default_factory=list)  # per level: True / False / None
    certified: list = field(default_factory=list)  # (CoherentCertificate, levels checked)
    rejected: list = field(default_factory=list)
    falsified: list = field(default_factory=list)  # (element, first failing level)
    persistent: list = field(default_factory=list)  # probes still members at the last level
    candidate: AlgebraPresentation = None
    candidate_inclusion: object = None
    grade: str = "bounds"
    lower: AlgebraPresentation = None
    upper: dict = None
    notes: list = field(default_factory=list)

    @property
    def exact(self):
        return self.grade in ("stabilized", "bounds_meet")

    def to_dict(self):
        out = {
            "status": self.status,
            "at": self.at,
            "grade": self.grade,
            "chain": [P.to_dict() for P in self.chain],
            "injectivity": [
                {"level": i + 1, "kernel_zero": v} for i, v in enumerate(self.injectivity)
            ],
            "certified": [dict(c.to_dict(), levels=lv) for c, lv in self.certified],
            "rejected": [c.to_dict() for c in self.rejected],
            "falsified": [{"element": str(g), "level": lv} for g, lv in self.falsified],
            "persistent": [str(g) for g in self.persistent],
            "candidate": self.candidate.to_dict() if self.candidate is not None else None,
            "lower": self.lower.to_dict() if self.lower is not None else None,
            "upper": self.upper,
        }
        if self.candidate_inclusion is not None:
            out["candidate_images"] = {
                g: str(self.candidate_inclusion.images[g])
                for g in self.candidate_inclusion.source.generators
            }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def frobenius_injective(A, n):
    """Is Frob: A^(p^n/R) -> A^(p^(n-1)/R) injective? None on budget exhaustion."""
    src = A if n == 1 else frobenius_twist(A, n - 1)
    try:
        return morphism_kernel(relative_frobenius(src, 1)).is_zero()
    except BudgetExceeded:
        return None


def _lower_bound(A, certs):
    """R-subalgebra generated by the certified targets, with its inclusion into A."""
    targets = [c.target for c in certs]
    names = [c.name for c in certs]
    if any(targets):
        H = SubalgebraHandle(A, targets, tags=names, tag_prefix="c")
        P, inc = H.presentation()
        P.name = "lower"
        return P, inc
    P = A.base_algebra()
    return P, _base_inclusion(P, A)


def _base_inclusion(P, A):
    return AlgebraMorphism(P, A, {}, name="R->A")


def preperfect(A, max_steps=4, probes=(), certificates=(), check_injectivity=True):
    """Build B_1, B_2, ... and collect evidence for A^(p^inf/R).

    ``probes`` are elements tested for membership in every level (the
    generators of A are always probed). ``certificates`` are (a, r) pairs
    or (a, r, name) triples for coherent elements.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    chain = FrobeniusChain(A)
    rep = PreperfectionReport(A, NOT_STABILIZED, at=max_steps)
    built = 0
    for n in range(1, max_steps + 1):
        try:
            rep.chain.append(chain.level(n))
        except BudgetExceeded as exc:
            rep.status = BUDGET_EXCEEDED
            rep.notes.append(f"level {n}: {exc}")
            break
        built = n
        rep.injectivity.append(frobenius_injective(A, n) if check_injectivity else None)
        if n >= 2:
            s = chain.stable_at(n - 1)
            if s:
                rep.status, rep.at = STABILIZED, n - 1
                break
    if rep.status == BUDGET_EXCEEDED:
        rep.at = built
    last = built

    if rep.status == STABILIZED:
        rep.candidate = chain.presentation(rep.at)
        rep.candidate_inclusion = chain.inclusion(rep.at)
        rep.grade = "stabilized"
        if rep.at == 1 and chain.stable_at(0):
            rep.notes.append("B_1 = A")
        if not all(v is True for v in rep.injectivity):
            rep.notes.append("Frobenius injectivity not verified at every level: "
                             "candidate is the image-chain intersection")

    seen = set()
    probe_list = []
    for g in [A.gen(x) for x in A.generators] + [A.element(g) for g in probes]:
        g = A.reduce(g)
        if g not in seen:
            seen.add(g)
            probe_list.append(g)
    if last:
        for g in probe_list:
            m = chain.member(g, last)
            if m.status == NO:
                rep.falsified.append((g, m.level))
            elif m.status == YES:
                rep.persistent.append(g)

    certs = []
    for item in certificates:
        c = item if isinstance(item, CoherentCertificate) else CoherentCertificate.make(A, *item)
        if not verify_coherent_certificate(c):
            rep.rejected.append(c)
            continue
        levels = []
        for n in range(1, last + 1):
            if not chain.check_witness(certificate_witness(chain, c, n), c.target, n):
                raise AssertionError(f"certificate witness failed at level {n}")
            if chain.member(c.target, n).status == YES:
                levels.append(n)
        rep.certified.append((c, levels))
        certs.append(c)

    rep.lower, lower_inc = _lower_bound(A, certs)
    w = grading_weights(A)
    if w is not None and not any(c.target for c in certs):
        rep.upper = {"kind": "graded", "weights": w, "algebra": A.base_algebra().to_dict()}
    elif last:
        rep.upper = {"kind": "chain_level", "level": last}

    if rep.status != STABILIZED:
        rep.candidate, rep.candidate_inclusion = rep.lower, lower_inc
        if rep.upper and rep.upper["kind"] == "graded":
            rep.grade = "bounds_meet"
    return rep


def bounds_equal_base(rep):
    """Do the report's lower and upper bounds both equal R?"""
    return (
        rep.upper is not None
        and rep.upper["kind"] == "graded"
        and rep.lower is not None
        and not rep.lower.generators
    )


# unramified / etale


def jacobian(B):
    return [[f.diff(x) for x in B.generators] for f in B.relations]


def _det(M, zero):
    n = len(M)
    if n == 0:
        return zero + 1
    total = zero
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        t = zero + (-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            t = t * M[i][j]
            if not t:
                break
        total = total + t
    return total


@dataclass(frozen=True)
class UnramifiedResult:
    status: str
    etale_shape: bool = False  # square presentation with unit Jacobian determinant
    reason: str = ""

    def to_dict(self):
        return {"status": self.status, "etale_shape": self.etale_shape, "reason": self.reason}


def unramified_check(B):
    """Omega_{B/R} = 0 iff the n x n minors of the Jacobian generate the unit ideal of B."""
    n = len(B.generators)
    J = jacobian(B)
    zero = B.ring.zero()
    try:
        minors = [_det([J[i] for i in rows], zero) for rows in itertools.combinations(range(len(J)), n)]
        unit = (B.ideal + Ideal(B.ring, minors)).is_unit()
    except BudgetExceeded as exc:
        return UnramifiedResult(UNKNOWN, reason=str(exc))
    if unit:
        # over a field every algebra is flat, so unramified already means etale
        if len(J) == n:
            return UnramifiedResult(UNRAMIFIED, True, "square presentation, unit Jacobian determinant")
        if B.base is None:
            return UnramifiedResult(UNRAMIFIED, True, "unramified over a field")
        return UnramifiedResult(UNRAMIFIED, False, "unit minors ideal")
    return UnramifiedResult(RAMIFIED, False, "Jacobian minors and relations do not generate (1)")


# relative perfectness


@dataclass(frozen=True)
class Verdict:
    status: str  # yes / no / unknown
    reason: str = ""
    witness: str = None

    def to_dict(self):
        return {"status": self.status, "reason": self.reason, "witness": self.witness}


def is_relatively_perfect(A):
    """Frob_{A/R} is an isomorphism: kernel (0) and every generator in B_1."""
    try:
        K = morphism_kernel(relative_frobenius(A, 1))
    except BudgetExceeded as exc:
        return Verdict("unknown", f"kernel: {exc}")
    if not K.is_zero():
        return Verdict("no", "relative Frobenius has a nonzero kernel", str(K.generators[0]))
    H = SubalgebraHandle(A, [A.gen(x).frobenius_power(1) for x in A.generators])
    unknown = None
    for x in A.generators:
        m = H.member(A.gen(x))
        if m.status == NO:
            return Verdict("no", f"{x} is not in B_1", x)
        if m.status == INDETERMINATE:
            unknown = m.reason
    if unknown:
        return Verdict("unknown", unknown)
    return Verdict("yes", "kernel (0) and B_1 = A")


# Theorem C cross-check


def _handle_from(inclusion):
    A = inclusion.target
    return SubalgebraHandle(A, [inclusion.images[g] for g in inclusion.source.generators])


def theorem_c_crosscheck(A, pi0, preperf, preperf_provenance=None):
    """Compare the pi_0 ring and the preperfection candidate inside A.

    ``pi0`` and ``preperf`` are (presentation, inclusion into A) pairs. The
    arrows checked: the pi_0 ring is etale (so it lands in A^et), and its image
    equals the candidate's image (O(pi_0) -> A^(p^inf/R) is an isomorphism).
    """
    P, p_inc = pi0
    C, c_inc = preperf
    eq = subalgebra_equal(_handle_from(p_inc), _handle_from(c_inc))
    u_pi0 = unramified_check(P)
    u_cand = unramified_check(C)
    arrow2 = {True: "isomorphism", False: "not_isomorphism", None: "indeterminate"}[eq]
    if u_pi0.status == UNRAMIFIED and u_pi0.etale_shape:
        arrow1 = "etale_certified"
    else:
        arrow1 = {UNRAMIFIED: "unramified_only", RAMIFIED: "ramified", UNKNOWN: "indeterminate"}[u_pi0.status]
    if eq and arrow1 == "etale_certified":
        overall = "isomorphisms"
    elif eq and u_cand.status == RAMIFIED:
        overall = "not_perfect"
    elif eq is None or UNKNOWN in (u_pi0.status, u_cand.status):
        overall = "indeterminate"
    else:
        overall = "mismatch"
    out = {
        "overall": overall,
        "etale_to_pi0": arrow1,
        "pi0_to_preperfection": arrow2,
        "pi0_unramified": u_pi0.to_dict(),
        "candidate_unramified": u_cand.to_dict(),
    }
    if overall == "not_perfect":
        out["flag"] = "candidate is not etale over R: the preperfection is not perfect"
    if preperf_provenance:
        out["provenance"] = preperf_provenance
    return out
