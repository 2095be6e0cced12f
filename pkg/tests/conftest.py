import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def dart(g, u, v):
    """First dart from ``u`` to ``v`` in rotation order."""
    return next(d for d in g.rotation[u] if g.head[d] == v)


def faces(d, vertices):
    """Dual faces standing for the given primal vertices."""
    vs = set(vertices)
    return [f for f in range(d.num_faces) if d.face_origin[f] in vs]
