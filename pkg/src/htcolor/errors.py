"""Exception types shared across the pipeline."""


class StructuralError(ValueError):
    """Input is malformed (wrong lengths, out-of-range ids, missing fields)."""


class EmptyInputError(ValueError):
    """An operation that needs a non-empty graph received an empty one."""


class TooSparseError(ValueError):
    """Regularization left too little of the graph to be useful."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class EmbeddingFailed(RuntimeError):
    """The greedy embedder could not produce an H_t copy.

    ``diagnostics`` carries ``kind`` (``"exhausted"``, ``"backtrack-budget"``
    or ``"gate"``), the step reached and the candidate-set trajectory.
    """

    def __init__(self, message, diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics

    @property
    def kind(self):
        return self.diagnostics.get("kind")


class InternalInconsistency(AssertionError):
    """A produced object violates an invariant its producer guarantees."""
