"""One test per acceptance criterion, each backed by the shared selfcheck sweeps."""

from sarkisov import selfcheck


def _run(check):
    result = check("full")
    print(result.line())
    assert result.ok, result.detail


def test_01_intersection_tables():
    _run(selfcheck.check_intersection)


def test_02_toric_oracle_agreement():
    _run(selfcheck.check_toric)


def test_03_antiflip_terminal_iff_c_at_most_one():
    _run(selfcheck.check_terminality)


def test_04_w_singularities_and_links():
    _run(selfcheck.check_w_singularities)


def test_05_link_enumeration_counts():
    _run(selfcheck.check_counts)


def test_06_closure_and_round_trips():
    _run(selfcheck.check_closure)


def test_07_aut_dimension_invariance():
    _run(selfcheck.check_aut)


def test_08_h0_closed_form_vs_polytope():
    _run(selfcheck.check_h0)


def test_09_binary_form_laws():
    _run(selfcheck.check_binforms)


def test_10_path_search():
    _run(selfcheck.check_paths)
