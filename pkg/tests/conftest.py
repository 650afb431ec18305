from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

SMALL_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 29, 32, 49, 64)
ODD_Q = tuple(q for q in SMALL_Q if q % 2)
EVEN_Q = tuple(q for q in SMALL_Q if q % 2 == 0)
