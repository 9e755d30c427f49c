from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import SUMMARY

    if not SUMMARY:
        return
    terminalreporter.section("acceptance")
    for criterion, (ok, seconds, names) in sorted(SUMMARY.items()):
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}"
                                    f"  ({seconds:.1f}s; {', '.join(names)})")
