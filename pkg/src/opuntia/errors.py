"""Exception types shared across the package."""


class OpuntiaError(Exception):
    """Base class for all library errors."""


class NotInverse(OpuntiaError):
    """Multiplication table is not an inverse semigroup (witness in args)."""


class NotGenerated(OpuntiaError):
    """Chosen generator set does not generate the semigroup."""


class NotAnIdempotent(OpuntiaError):
    pass


class NotAnEmbedding(OpuntiaError):
    """Map is not an injective homomorphism of inverse semigroups."""


class NonDeterministic(OpuntiaError):
    """Operation requires a deterministic (folded) graph."""


class NotAdjacent(OpuntiaError):
    """The two lobes do not share a vertex."""


class NotMultiHost(OpuntiaError):
    """Operation requires the multi-host situation."""


class NotABud(OpuntiaError):
    """Vertex is not a bud (intersection vertex, or empty loop set)."""


class LobeNotClosed(OpuntiaError):
    """Lobe is not closed under its color's table presentation."""


class NotOpuntoid(OpuntiaError):
    """Graph violates an opuntoid axiom (report in args)."""


class LobeGraphNotTree(OpuntiaError):
    """Lobe adjacency graph contains a cycle (witness in args)."""


class NotIsomorphicLobes(OpuntiaError):
    pass


class NoLiftFound(OpuntiaError):
    """Automorphism of the quotient admits no lift (internal invariant).

    Carries the partial compatibility record on .record."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class BudgetExceeded(OpuntiaError):
    """An edge or lobe budget was hit; carries (kind, limit, context)."""

    def __init__(self, kind, limit, context=""):
        super().__init__(f"{kind} budget exceeded (limit {limit}) {context}".strip())
        self.kind = kind
        self.limit = limit
        self.context = context


class InvalidDocument(OpuntiaError):
    """Input JSON document is malformed or inconsistent."""


DEFAULT_MAX_EDGES = 10 ** 6
DEFAULT_MAX_LOBES = 10 ** 4
