"""One test per acceptance criterion; each prints its PASS/FAIL line."""

import pytest

from tridet import acceptance, cli


@pytest.mark.parametrize("crit", acceptance.CRITERIA, ids=lambda c: c.__name__)
def test_criterion(crit, capsys):
    res = crit()
    with capsys.disabled():
        print("\n" + res.line() + f" ({res.elapsed:.2f}s)")
    assert res.passed, res.detail


def test_selftest_output_is_reproducible(capsys):
    outputs = []
    for _ in range(2):
        code = cli.main(["selftest"])
        out, _ = capsys.readouterr()
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
    assert out.count('"match": true') == len(acceptance.CRITERIA)
