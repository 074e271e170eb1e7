def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: long-running stability experiments (criteria 8 and 9)")
