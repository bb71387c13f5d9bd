import gzip
import hashlib
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# fixture file -> CLI arguments that regenerate it
PRESENTATION_FIXTURES = {
    "s3_n1.txt": ["present", "--target", "s3", "--n", "1"],
    "s3_n2.txt": ["present", "--target", "s3", "--n", "2"],
    "s3_n3.txt": ["present", "--target", "s3", "--n", "3"],
    "sigma_kzm_n1_m2.txt": ["present", "--target", "sigma_kzm", "--n", "1", "--m", "2"],
    "sigma_kzm_n1_m3.txt": ["present", "--target", "sigma_kzm", "--n", "1", "--m", "3"],
    "sigma_kzm_n2_m2.txt": ["present", "--target", "sigma_kzm", "--n", "2", "--m", "2"],
    "sigma_kzm_n2_m3.txt": ["present", "--target", "sigma_kzm", "--n", "2", "--m", "3"],
    "wedge_s2_n1_J2.txt": ["present", "--target", "wedge_s2", "--n", "1", "--J", "2"],
}


def read_fixture(name: str) -> bytes:
    path = FIXTURES / name
    if path.exists():
        return path.read_bytes()
    return gzip.decompress((FIXTURES / (name + ".gz")).read_bytes())


def manifest() -> dict[str, str]:
    out = {}
    for line in (FIXTURES / "SHA256SUMS").read_text().splitlines():
        digest, name = line.split()
        out[name] = digest
    return out


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


_results: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, text = mark.args
    key = (num, item.name)
    prev = _results.get(key)
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        ok = rep.passed and (prev is None or prev[0])
        _results[key] = (ok, text, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    per: dict = {}
    for (num, _), (ok, text, secs) in sorted(_results.items()):
        got = per.setdefault(num, [True, text, 0.0])
        got[0] = got[0] and ok
        got[2] += secs
    for num, (ok, text, secs) in sorted(per.items()):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {text}")
