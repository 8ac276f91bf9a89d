"""Shared exception types."""


class SignatureError(ValueError):
    """Signature fails a hypothesis (empty, non-primitive, trivial, ...)."""


class InfeasibleDecomposition(ValueError):
    """No height decomposition satisfies the mass constraint."""

    def __init__(self, m, heights, bound, best=None):
        self.m = m
        self.heights = heights
        self.bound = bound
        self.best = best
        detail = f"best achievable low-height mass {best}" if best is not None else "no decomposition at all"
        super().__init__(f"cannot split {m} over heights {heights} with low-height mass < {bound}: {detail}")


class ResourceLimit(RuntimeError):
    """A configured bound (depth guard, language cap, refinement cap) was hit."""


class ClosureViolation(ValueError):
    """Vertex selection is not downward closed."""

    def __init__(self, level, vertex, source):
        self.level = level
        self.vertex = vertex
        self.source = source
        super().__init__(
            f"vertex {vertex} at level {level} is selected but its incoming source "
            f"{source} at level {level - 1} is not"
        )


class UnsupportedDegree(ValueError):
    """Embedding requested for an in-degree outside the supported range."""


class PlanError(RuntimeError):
    """Embedding plan construction failed (shape slots exhausted)."""
