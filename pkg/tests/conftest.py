import pytest

from kfib_narayana.pipeline import PipelineConfig, certificate_bytes, run_pipeline

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def certificate_body():
    return run_pipeline(PipelineConfig())


@pytest.fixture(scope="session")
def certificate_file(tmp_path_factory, certificate_body):
    path = tmp_path_factory.mktemp("cert") / "cert.json"
    path.write_bytes(certificate_bytes(certificate_body))
    return path


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
