"""Catalog loading/validation and the command-line surface."""

import io
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

import pytest

from gextbounds.catalog import CatalogEntry, find_entry, load_catalog
from gextbounds.cli import main
from gextbounds.errors import CatalogError


def run_cli(*args):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(args))
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def entries():
    return load_catalog()


class TestCatalog:
    def test_full_row_count(self, entries):
        by_degree = {}
        for e in entries:
            by_degree[e.degree] = by_degree.get(e.degree, 0) + 1
        assert by_degree == {5: 4, 6: 15, 7: 6, 8: 49, 9: 4}

    def test_labels_unique_and_sorted(self, entries):
        labels = [e.label for e in entries]
        assert len(set(labels)) == len(labels)
        assert labels[0] == "5T1" and "8T49" in labels

    def test_expectations_present(self, entries):
        for e in entries:
            assert e.expected_order and e.expected_subfield
            assert e.expected_degrees is not None
            assert e.expected_result is not None
            assert e.expected_malle is not None

    def test_small_degrees_validate(self, entries):
        for e in entries:
            if e.degree <= 6:
                assert e.validate() == [], e.label

    def test_seven_t5_is_the_printed_invariants_copy(self, entries):
        e = find_entry(entries, "7T5")
        assert e.expected_order == 168
        assert e.validate() == []

    def test_unknown_label(self, entries):
        with pytest.raises(KeyError):
            find_entry(entries, "5T9")

    def test_parse_errors(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("5T1 ; five ; (1 2 3 4 5)\n")
        with pytest.raises(CatalogError) as err:
            load_catalog(bad)
        assert err.value.line == 1

        dup = tmp_path / "dup.txt"
        dup.write_text("5T1 ; 5 ; (1 2 3 4 5)\n5T1 ; 5 ; (1 2 3 4 5)\n")
        with pytest.raises(CatalogError) as err:
            load_catalog(dup)
        assert "duplicate" in str(err.value)

    def test_expected_t(self):
        e = CatalogEntry("x", 6, ("(1 2 3 4 5 6)",),
                         expected_subfield="Deg. 3")
        assert e.expected_t() == 3
        e2 = CatalogEntry("y", 5, ("(1 2 3 4 5)",), expected_subfield="none")
        assert e2.expected_t() == 1


class TestCli:
    def test_analyze_catalog_row(self):
        code, out = run_cli("analyze", "5T1")
        assert code == 0
        assert "X^{11/8}" in out
        assert "X^{1/4}" in out
        assert "1,2,2,3,5" in out

    def test_analyze_gens_symmetric(self):
        code, out = run_cli("analyze", "--gens", "(1 2)", "-n", "2")
        assert code == 0
        assert "full symmetric group" in out

    def test_analyze_unknown_label(self, capsys):
        code, _ = run_cli("analyze", "5T9")
        assert code == 1

    def test_analyze_intransitive(self):
        code, _ = run_cli("analyze", "--gens", "(1 2)", "-n", "3")
        assert code == 1

    def test_table_5_markdown(self):
        code, out = run_cli("table", "5")
        assert code == 0, out
        lines = [l for l in out.splitlines() if l.startswith("|")]
        assert len(lines) == 2 + 4  # header, rule, four rows
        assert "5T4" in out and "X^{13/8}" in out
        assert all("ok" in l for l in lines[2:])

    def test_table_5_csv(self):
        code, out = run_cli("table", "5", "--format", "csv")
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0].startswith("#,order,subfield")
        assert len(rows) == 5
        first = rows[1].split(",")
        assert first[0] == "5T1"

    def test_table_determinism(self):
        one = run_cli("table", "5")
        two = run_cli("table", "5")
        assert one == two

    def test_table_unknown_degree(self):
        code, _ = run_cli("table", "11")
        assert code == 1

    def test_molien_5t1(self):
        code, out = run_cli("molien", "5T1", "--order", "15")
        assert code == 0
        assert "1,2,2,3,5" in out
        assert "rejected" in out

    def test_molien_custom_s4(self):
        code, out = run_cli("molien", "--gens", "(1 2 3 4); (1 2)", "-n", "4")
        assert code == 0
        assert "1,2,3,4" in out

    def test_verify_golden(self):
        from importlib import resources
        path = str(resources.files("gextbounds") / "data"
                   / "psl2f7_primaries.txt")
        code, out = run_cli("verify", "7T5", path)
        assert code == 0, out
        assert "verified" in out
        assert "secondary invariants: 12" in out

    def test_verify_detects_broken_file(self, tmp_path):
        from importlib import resources
        text = (resources.files("gextbounds") / "data"
                / "psl2f7_primaries.txt").read_text()
        lines = [l for l in text.splitlines() if l and not
                 l.startswith("degrees")]
        lines[3] = lines[2]  # duplicate polynomial: dependent set
        broken = tmp_path / "broken.txt"
        broken.write_text("\n".join(lines) + "\n")
        code, out = run_cli("verify", "7T5", str(broken))
        assert code == 2
        assert "REJECTED" in out

    def test_catalog_list(self):
        code, out = run_cli("catalog", "list")
        assert code == 0
        assert "7T5" in out and "8T49" in out
