from hypothesis import HealthCheck, settings

# exact-arithmetic cases vary wildly in runtime; wall-clock deadlines only
# produce flaky failures here
settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")
