"""
License:
--------
Copyright 2026 The uawork Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.


File description:
-----------------
Representation of a subalgebra B of A as a retract of a finite subdirect power of A.

Given a congruence theta with B^theta = A and A supernilpotent of class cls with respect to theta, the subpower mu of
A^(2^k), k = cls + 1, generated by the standard generators whose last entry lies in B is the graph of a function from
its projection D onto the earlier coordinates to B. D is subdirect, the function is a homomorphism onto B and the
diagonal embedding of B into D is a right inverse. build_retract runs this construction and records every check in
a RetractCertificate; check_certificate re-verifies a certificate from scratch.

"""

import enum
import json
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from .closure import generate, induced_algebra, project
from .commutator import Answer, CollisionIndex, is_supernilpotent, standard_generator_specs
from .errors import NotASubuniverseError, PreconditionError
from .lattice import Partition, Subset, is_subdirect, is_subuniverse, require_congruence, saturation
from .settings import default_config

__all__ = [
    "GammaSpec",
    "build_gamma",
    "ClaimCheck",
    "ClaimReport",
    "verify_gamma_claims",
    "Verdict",
    "RetractCertificate",
    "build_retract",
    "theorem_main",
    "check_certificate",
]

logger = logging.getLogger(__name__)


def _as_subset(A, B):
    return B if isinstance(B, Subset) else Subset(A.size, B)


def _check_inputs(A, B, theta):
    require_congruence(A, theta)
    if not is_subuniverse(A, B):
        raise NotASubuniverseError("{} is not a subuniverse of {}".format(B, A.name))


# ------------------------- Gamma -------------------------
@dataclass(frozen=True)
class GammaSpec:
    """
    Standard generators of M(theta, ..., theta) whose last entry lies in B.
    """
    cls: int
    generators: tuple

    @property
    def dimension(self):
        return self.cls + 1

    def expansions(self):
        return [g.expand() for g in self.generators]

    def __len__(self):
        return len(self.generators)


def build_gamma(A, B, theta, cls):
    """
    :param FiniteAlgebra A: algebra.
    :param B: subuniverse, as a Subset or an iterable of elements.
    :param Partition theta: congruence of A.
    :param int cls: supernilpotence class; the cube has cls + 1 directions.
    :rtype: GammaSpec
    """
    B = _as_subset(A, B)
    _check_inputs(A, B, theta)
    if cls < 1:
        raise PreconditionError("class must be >= 1, got {}".format(cls))
    generators = tuple(g for g in standard_generator_specs([theta] * (cls + 1)) if g.last in B)
    return GammaSpec(cls, generators)


@dataclass(frozen=True)
class ClaimCheck:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self):
        line = "{}: {}".format(self.name, "PASS" if self.passed else "FAIL")
        return line + (" ({})".format(self.detail) if self.detail else "")


@dataclass(frozen=True)
class ClaimReport:
    checks: tuple

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def to_text(self):
        return "\n".join(str(check) for check in self.checks) + "\n"


def verify_gamma_claims(A, B, theta, gamma):
    """
    Checks the three properties of Gamma used by the construction: last entries lie in B, every element of B is a
    last entry, and every element of A appears at every earlier coordinate. The third holds because each earlier
    address has some bit j = 0, and on that hyperface the direction-j generator (a, b) with b in B related to a shows
    a; it is reported as passing only when B^theta = A.

    :rtype: ClaimReport
    """
    B = _as_subset(A, B)
    k = gamma.dimension
    width = 1 << k
    rows = np.array(gamma.expansions(), dtype=np.int64).reshape(-1, width)
    lasts = set(rows[:, -1].tolist())

    outside = sorted(lasts - set(B))
    first = ClaimCheck("last-entries-in-B", not outside, "outside B: {}".format(outside) if outside else "")
    missing = sorted(set(B) - lasts)
    second = ClaimCheck("every-b-is-a-last-entry", not missing, "missing: {}".format(missing) if missing else "")

    saturated = saturation(A, B, theta)
    uncovered = None
    for sigma in range(width - 1):
        present = set(rows[:, sigma].tolist())
        absent = [a for a in range(A.size) if a not in present]
        if absent:
            uncovered = (absent[0], sigma)
            break
    if len(saturated) != A.size:
        a = next(x for x in range(A.size) if x not in saturated)
        third = ClaimCheck("earlier-coordinates-cover-A", False,
                           "saturation {} != A; no class of {} meets B".format(saturated, a))
    elif uncovered is not None:
        third = ClaimCheck("earlier-coordinates-cover-A", False,
                           "element {} missing at coordinate {}".format(*uncovered))
    else:
        third = ClaimCheck("earlier-coordinates-cover-A", True)
    return ClaimReport((first, second, third))


# ------------------------- Certificate -------------------------
class Verdict(enum.Enum):
    """
    Outcome of a retract construction.
    """
    VALID = "VALID"
    INVALID = "INVALID"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class RetractCertificate:
    """
    Record of one retract construction. mu and D are kept for re-verification and left out of the serialized forms,
    which carry their sizes.
    """
    verdict: Verdict
    algebra: object
    B: Subset
    theta: Partition
    cls: int
    gamma_size: int = 0
    mu: object = None
    functional: bool = False
    functional_witness: object = None
    image_of_last: Subset = None
    D: object = None
    subdirect: bool = False
    retraction_verified: bool = False
    budget_state: str = ""
    claims: ClaimReport = None
    supernilpotence: tuple = field(default_factory=tuple)

    @property
    def dimension(self):
        return self.cls + 1

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "algebra": self.algebra.name,
            "subalgebra": list(self.B.elements),
            "theta": str(self.theta),
            "cls": self.cls,
            "cube_dimension": self.dimension,
            "sizes": {
                "gamma": self.gamma_size,
                "mu": len(self.mu) if self.mu is not None else None,
                "D": len(self.D) if self.D is not None else None,
            },
            "checks": {
                "functional": self.functional,
                "image_of_last": list(self.image_of_last.elements) if self.image_of_last is not None else None,
                "subdirect": self.subdirect,
                "retraction": self.retraction_verified,
                "claims": {check.name: check.passed for check in self.claims.checks} if self.claims else {},
            },
            "witness": self.functional_witness.to_dict() if self.functional_witness is not None else None,
            "budget": self.budget_state,
            "supernilpotence": [result.to_dict() for result in self.supernilpotence],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self):
        def flag(value):
            return "true" if value else "false"

        lines = [
            "verdict: {}".format(self.verdict.value),
            "algebra: {}".format(self.algebra.name),
            "subalgebra: {}".format(self.B),
            "theta: {}".format(self.theta),
            "cls: {}".format(self.cls),
            "gamma-size: {}".format(self.gamma_size),
        ]
        if self.mu is not None:
            lines.append("mu-size: {}".format(len(self.mu)))
        lines.append("functional: {}".format(flag(self.functional)))
        if self.functional_witness is not None:
            lines.append("witness: {}".format(self.functional_witness))
        if self.image_of_last is not None:
            lines.append("image-of-last: {}".format(self.image_of_last))
        if self.D is not None:
            lines.append("D-size: {}".format(len(self.D)))
        lines.append("subdirect: {}".format(flag(self.subdirect)))
        lines.append("retraction: {}".format(flag(self.retraction_verified)))
        lines.append("budget: {}".format(self.budget_state or "-"))
        if self.claims is not None:
            lines.extend(str(check) for check in self.claims.checks)
        for result in self.supernilpotence:
            lines.append("supernilpotent(cls={}): {}".format(result.cls, result.answer.value))
        return "\n".join(lines) + "\n"


def build_retract(A, B, theta, cls, budget=None):
    """
    Runs the construction for a subuniverse B, a congruence theta with B^theta = A and a class cls.

    mu is generated from Gamma with an insertion observer that stops at the first pair of members sharing their
    earlier coordinates but not their last one; such a pair makes the certificate INVALID. A closure cut short by
    the budget makes it UNDECIDED.

    :param FiniteAlgebra A: algebra.
    :param B: subuniverse, as a Subset or an iterable of elements.
    :param Partition theta: congruence of A.
    :param int cls: supernilpotence class.
    :param Budget budget: closure limits, the configured default if None.
    :rtype: RetractCertificate
    :raises PreconditionError: if B^theta != A.
    """
    B = _as_subset(A, B)
    _check_inputs(A, B, theta)
    if len(saturation(A, B, theta)) != A.size:
        raise PreconditionError("saturation of {} by {} is not the whole of {}".format(B, theta, A.name))
    gamma = build_gamma(A, B, theta, cls)
    claims = verify_gamma_claims(A, B, theta, gamma)
    width = 1 << gamma.dimension

    index = CollisionIndex(stop_at_first=True, max_witnesses=1, size=A.size)
    mu = generate(A, width, gamma.expansions(), budget=budget, observer=index)
    certificate = RetractCertificate(Verdict.UNDECIDED, A, B, theta, cls, gamma_size=len(gamma), mu=mu,
                                     budget_state=mu.termination.value, claims=claims)
    if index.witnesses:
        certificate = replace(certificate, verdict=Verdict.INVALID, functional_witness=index.witnesses[0])
        logger.info("retract of %s onto %s at class %d: INVALID, mu is not functional", A.name, B, cls)
        return certificate
    if not mu.closed:
        logger.info("retract of %s onto %s at class %d: UNDECIDED (%s)", A.name, B, cls, mu.termination.value)
        return certificate

    rows = mu.rows()
    image = Subset(A.size, np.unique(rows[:, -1]).tolist())
    D = project(mu, range(width - 1))
    subdirect = is_subdirect(A, D)
    retraction = all(D.contains((b,) * (width - 1)) and mu.contains((b,) * width) for b in B)
    valid = image == B and subdirect and retraction and claims.passed
    certificate = replace(certificate, verdict=Verdict.VALID if valid else Verdict.INVALID, functional=True,
                          image_of_last=image, D=D, subdirect=subdirect, retraction_verified=retraction)
    logger.info("retract of %s onto %s at class %d: %s (|mu|=%d, |D|=%d)", A.name, B, cls,
                certificate.verdict.value, len(mu), len(D))
    return certificate


def theorem_main(A, B, max_cls=None, budget=None):
    """
    Takes theta = 1, finds the least class cls <= max_cls at which A is supernilpotent, and runs build_retract there.
    Without such a class the certificate is UNDECIDED and carries the supernilpotence evidence.

    :param FiniteAlgebra A: algebra.
    :param B: subuniverse, as a Subset or an iterable of elements.
    :param int max_cls: largest class tried, retract.max_cls from the configuration if None.
    :param Budget budget: closure limits, the configured default if None.
    :rtype: RetractCertificate
    """
    if max_cls is None:
        max_cls = int(default_config().get("retract", "max_cls"))
    B = _as_subset(A, B)
    one = Partition.one(A.size)
    _check_inputs(A, B, one)
    if len(B) == 0:
        raise PreconditionError("the empty subuniverse is not a retract")
    evidence = []
    for cls in range(1, max_cls + 1):
        result = is_supernilpotent(A, one, cls, budget)
        evidence.append(result)
        if result.answer is Answer.YES:
            certificate = build_retract(A, B, one, cls, budget)
            return replace(certificate, supernilpotence=tuple(evidence))
    logger.info("%s is not shown supernilpotent up to class %d", A.name, max_cls)
    return RetractCertificate(Verdict.UNDECIDED, A, B, one, max_cls, supernilpotence=tuple(evidence))


# ------------------------- Re-verification -------------------------
def check_certificate(certificate, homomorphism_check_limit=None):
    """
    Re-checks a VALID certificate without trusting its flags: mu is functional by an exhaustive scan, its last
    entries are exactly B, D is the subdirect projection of mu, mu maps the constant tuples of D back to their value,
    and the map D -> B read off mu is a homomorphism (skipped when |D|^arity exceeds the limit).

    :param RetractCertificate certificate: certificate to check.
    :param int homomorphism_check_limit: largest |D|^arity checked, from the configuration if None.
    :return: descriptions of the failed checks, empty when the certificate holds.
    :rtype: list[str]
    """
    if certificate.verdict is not Verdict.VALID:
        return ["verdict is {}".format(certificate.verdict.value)]
    if homomorphism_check_limit is None:
        homomorphism_check_limit = int(default_config().get("retract", "homomorphism_check_limit"))
    A, B, mu, D = certificate.algebra, certificate.B, certificate.mu, certificate.D
    failures = []
    rows = mu.rows().astype(np.int64)
    width = rows.shape[1]

    prefix_ids = D.ids_of(rows[:, :-1])
    if np.any(prefix_ids < 0):
        failures.append("D is missing projections of mu")
    if len(np.unique(prefix_ids)) != len(rows):
        failures.append("mu is not functional")
    if len(D) != len(np.unique(prefix_ids)):
        failures.append("D has tuples outside the projection of mu")
    if set(rows[:, -1].tolist()) != set(B):
        failures.append("image of the last coordinate differs from B")
    if not is_subdirect(A, D):
        failures.append("D is not subdirect")
    if failures:
        return failures

    phi = np.zeros(len(D), dtype=np.int64)
    phi[prefix_ids] = rows[:, -1]
    for b in B:
        d = D.id_of((b,) * (width - 1))
        if d is None or phi[d] != b:
            failures.append("retraction fails at {}".format(b))

    max_arity = max((arity for _, arity in A.signature), default=0)
    if len(D) ** max_arity > homomorphism_check_limit:
        logger.info("homomorphism check skipped: |D|^%d exceeds %d", max_arity, homomorphism_check_limit)
        return failures
    D_algebra = induced_algebra(D)
    for symbol, arity, table in A.operations():
        on_D = D_algebra.table(symbol)
        if arity == 0:
            agrees = phi[int(on_D[()])] == table[()]
        else:
            agrees = np.array_equal(phi[on_D], table[np.ix_(*([phi] * arity))])
        if not agrees:
            failures.append("map D -> B does not preserve {!r}".format(symbol))
    return failures
