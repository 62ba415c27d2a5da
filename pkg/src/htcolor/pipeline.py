"""End-to-end: coloring -> partition -> auxiliary graph -> G_0 -> H_t -> certificate."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ._seeding import derive_seed
from .auxgraph import AuxGraph, build_aux
from .certificate import CertificatePair
from .coloring import ProperColoring
from .embed import HtEmbedding, PipelineParams, greedy_embed, lift_to_certificate
from .errors import EmbeddingFailed, EmptyInputError, TooSparseError
from .matchings import PartitionChoice, select_good_partition
from .oracle import VerificationReport, verify_certificate
from .regularize import RegularizedSubgraph, almost_regular_balanced_subgraph, pipeline_constants

log = logging.getLogger(__name__)


@dataclass
class PipelineOutcome:
    status: str  # "success", "empty", "too-sparse", "embed-failed", "verify-failed"
    attempts: int = 0
    choice: PartitionChoice | None = None
    aux: AuxGraph | None = None
    g0: RegularizedSubgraph | None = None
    embedding: HtEmbedding | None = None
    certificate: CertificatePair | None = None
    verification: VerificationReport | None = None
    failures: list = field(default_factory=list)

    @property
    def success(self):
        return self.status == "success"


def _attempt(coloring, params, max_tries, k):
    choice = select_good_partition(coloring, derive_seed(params.seed, 5, k), max_tries)
    out = PipelineOutcome("embed-failed", k + 1, choice)
    out.aux = build_aux(coloring, choice.partition)
    try:
        out.g0 = almost_regular_balanced_subgraph(out.aux, pipeline_constants(params.t, params.gamma).alpha)
    except EmptyInputError:
        out.status = "empty"
        return out
    except TooSparseError as exc:
        out.status = "too-sparse"
        out.failures.append({"stage": "regularize", **exc.diagnostics})
        return out
    try:
        out.embedding = greedy_embed(out.g0, params)
    except EmbeddingFailed as exc:
        out.failures.append({"stage": "embed", "kind": exc.kind, "step": exc.diagnostics.get("step")})
        return out
    out.certificate = lift_to_certificate(out.embedding)
    out.verification = verify_certificate(coloring, out.certificate)
    out.status = "success" if out.verification.ok else "verify-failed"
    return out


def run_pipeline(coloring: ProperColoring, params: PipelineParams, max_tries: int = 64,
                 attempts: int = 8) -> PipelineOutcome:
    """Try up to ``attempts`` independently drawn good partitions; stop at the first certificate.

    A certificate is only reported after the independent verifier accepted it.
    """
    last = None
    failures = []
    for k in range(attempts):
        out = _attempt(coloring, params, max_tries, k)
        failures.extend(out.failures)
        if out.success:
            out.failures = failures
            return out
        if out.status == "verify-failed":
            log.error("verifier rejected a lifted certificate: %s", out.verification.violations)
        last = out
    last.failures = failures
    return last
