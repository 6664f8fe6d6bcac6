from dataclasses import dataclass, field
from enum import Enum


class Verdict(str, Enum):
    SEPARABLE = "separable-certified"
    ENTANGLED = "entangled-certified"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SeparabilityVerdict:
    """Outcome of a separability classifier.

    ``certificate`` is a dict whose ``"kind"`` is one of ``"product-ensemble"``,
    ``"ppt"``, ``"boundary"`` or ``"quasi-floor"``; the rest of its keys depend on
    the kind. Product ensembles live under ``"ensemble"`` as a list of
    :class:`~quditsep.states.ProductTerm`.
    """

    verdict: Verdict
    certificate: dict = field(repr=False)
    boundary_used: float

    @property
    def certificate_kind(self):
        return self.certificate["kind"]

    @property
    def decided(self):
        return self.verdict is not Verdict.INDETERMINATE
