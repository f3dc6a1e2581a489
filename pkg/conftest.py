from hypothesis import HealthCheck, settings


def pytest_configure(config):
    # HealthCheck.too_slow causes more trouble than good -- especially in CIs.
    settings.register_profile(
        "patience",
        settings(suppress_health_check=[HealthCheck.too_slow], deadline=None),
    )
    settings.load_profile("patience")
