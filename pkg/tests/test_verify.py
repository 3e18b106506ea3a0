import pytest

from symcurves import verify
from symcurves.report import Report


def test_curves_suite_passes_on_default_grid():
    report = verify.run(Report(command=[]), "curves")
    assert report.ok, [c.line() for c in report.failures]
    assert all("kummer" in s for s in report.skipped)


def test_bounds_suite_fails_only_on_published_cells():
    report = verify.run(Report(command=[]), "bounds")
    assert {c.name for c in report.failures} == {
        "bounds.oesterle[q=8,N=33].theta0",
        "bounds.oesterle[q=8,N=33].g_min",
        "bounds.oesterle[q=16,N=129].theta0",
        "bounds.oesterle[q=27,N=244].theta0",
        "bounds.oesterle[q=27,N=244].g_min",
        "bounds.table-oesterle[n=4,q=3]",
    }


def test_round_trips_are_seeded():
    assert verify.check_round_trips(10, seed=3) == verify.check_round_trips(10, seed=3)
    assert verify.check_round_trips(10, seed=3)[0]


def test_budget_overruns_are_skipped_not_failed():
    from symcurves.ff import field_budget

    with field_budget(64):
        report = verify.run(Report(command=[]), "sympoly", qmax=2, nmax=4)
    assert report.skipped and report.ok


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run(Report(command=[]), "zeta")


def test_prime_powers():
    assert verify.prime_powers_upto(9) == [2, 3, 4, 5, 7, 8, 9]
