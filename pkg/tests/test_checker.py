import json
import re

import pytest

from qrr.checker import catalogue as cat
from qrr.checker.ast import Assert, Let, Phi, RFun, to_source
from qrr.checker.cli import main
from qrr.checker.evaluator import Evaluator, PrecisionError
from qrr.checker.parser import ArityMismatch, QidSyntaxError, UnknownName, parse, parse_expr
from qrr.checker.report import CheckReport, check, check_source
from qrr.polynomials import POLYNOMIALS
from qrr.rrcf import rr_product
from qrr.series import LaurentSeries

PRELUDE = cat.PRELUDE


def run(src, order=None, **kw):
    return check_source(PRELUDE + src, order, **kw)


class TestParse:
    def test_trivial_assertion(self):
        [stmt] = parse("assert R(q)^0 == 1 @order 10")
        assert isinstance(stmt, Assert) and stmt.order == 10 and stmt.pos == (1, 1)
        assert check(stmt).passed

    def test_let_and_subst(self):
        reports = check_source("let u = q * R(q^5)\nassert subst(u,1) == u @order 50")
        assert [r.status for r in reports] == ["pass"]

    def test_cleared_form(self):
        src = "assert R(q^4) - R(q)^2*R(q^2) == q*R(q)*R(q^4)*(R(q^4) + R(q^2)^2) @order 200"
        [stmt] = parse(src)
        assert isinstance(stmt.lhs.left, RFun) and stmt.lhs.left.m == 4
        assert check(stmt).passed

    def test_comments_and_continuations(self):
        stmts = parse("# header\nlet x = phi(-q)  # trailing\n\nassert x ==\n  x @order 5\n")
        assert isinstance(stmts[0], Let) and isinstance(stmts[0].expr, Phi)
        assert stmts[0].expr.sign == -1 and len(stmts) == 2

    def test_unknown_name(self):
        with pytest.raises(UnknownName) as exc:
            parse("assert zz == 1 @order 5")
        assert (exc.value.line, exc.value.col) == (1, 8)

    def test_arity(self):
        with pytest.raises(ArityMismatch) as exc:
            parse("let x = 1\nassert P(x, x) == 0 @order 5")
        assert exc.value.line == 2

    @pytest.mark.parametrize("src,line,col", [
        ("assert 1 == @order 5", 1, 13),
        ("assert 1 = 1 @order 5", 1, 10),
        ("let q = 2", 1, 5),
        ("\n\nassert R(q^0) == 1 @order 3", 3, 8),
        ("assert 1 == 1 @order 0", 1, 22),
        ("assert $ == 1 @order 3", 1, 8),
        ("assert extract(q, 5, 5) == 0 @order 3", 1, 8),
    ])
    def test_syntax_errors(self, src, line, col):
        with pytest.raises(QidSyntaxError) as exc:
            parse(src)
        assert (exc.value.line, exc.value.col) == (line, col)
        assert f"line {line}, column {col}" in str(exc.value)

    @pytest.mark.parametrize("identity_id", sorted(cat.SERIES_SOURCES))
    def test_round_trip(self, identity_id):
        first = parse(PRELUDE + cat.SERIES_SOURCES[identity_id])
        text = "\n".join(to_source(s) for s in first)
        assert parse(text) == first


class TestEvaluate:
    def ev(self, text, order):
        return Evaluator().evaluate(parse_expr(text), order)

    def test_cancel(self):
        assert self.ev("q^-1 * q", 10) == LaurentSeries.one(10)

    def test_product_quotient(self):
        assert self.ev("poch(q, q^4; q^5) / poch(q^2, q^3; q^5)", 200) == rr_product(200)

    def test_extract(self):
        assert self.ev("extract(phi(-q), 5, 2)", 80).is_zero()
        assert self.ev("extract(phi(-q), 5, 2)", 80).order == 80

    def test_negative_valuation_retry(self):
        s = self.ev("q^-3*(R(q) - 1 + q)", 20)
        assert s.order == 20 and s.valuation == -1

    def test_non_unit_division_is_error(self):
        with pytest.raises(Exception) as exc:
            self.ev("1/(2 + q)", 10)
        assert "NonUnitLeading" in str(exc.value)

    def test_zero_denominator(self):
        with pytest.raises(Exception) as exc:
            self.ev("(R(q) - R(q))^-1", 10)
        assert "ZeroDivisionError" in str(exc.value)

    def test_precision_error(self, monkeypatch):
        monkeypatch.setattr("qrr.checker.evaluator.MAX_RETRIES", 1)
        with pytest.raises(PrecisionError) as exc:
            self.ev("q^-3*(R(q) - 1 + q)", 20)
        assert exc.value.achieved == 17

    def test_dilation(self):
        assert self.ev("phi(q^3)", 30).to_dict() == {0: 1, 3: 2, 12: 2, 27: 2}
        assert self.ev("psi(q^2)", 13).to_dict() == {0: 1, 2: 1, 6: 1, 12: 1}
        assert self.ev("f(-q, -q^2)", 13).to_dict() == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}


class TestCheck:
    def test_eq12_passes(self):
        [r] = run(cat.SERIES_SOURCES["eq12"], 200)
        assert r.passed and r.order_checked == 200

    def test_eq16_passes(self):
        [r] = run(cat.SERIES_SOURCES["eq16"], 200)
        assert r.passed

    def test_perturbed_constant(self):
        src = cat.SERIES_SOURCES["eq26"].replace("- 11 -", "- 10 -")
        [r] = run(src, 100)
        assert (r.status, r.first_mismatch_exponent, r.mismatch_delta) == ("fail", 0, 1)

    def test_quintic_relation_other_way_round_fails(self):
        src = cat.SERIES_SOURCES["eq11"].replace(
            "u^5*(1 + 3*v + 4*v^2 + 2*v^3 + v^4) == v*(1 - 2*v + 4*v^2 - 3*v^3 + v^4)",
            "v^5*(1 + 3*u + 4*u^2 + 2*u^3 + u^4) == u*(1 - 2*u + 4*u^2 - 3*u^3 + u^4)")
        assert src != cat.SERIES_SOURCES["eq11"]
        [r] = run(src, 100)
        assert (r.status, r.first_mismatch_exponent, r.mismatch_delta) == ("fail", 1, -1)

    def test_cleared_sixteen_relation_needs_r4_squared(self):
        src = cat.SERIES_SOURCES["eq320-cleared"].replace("q^2*R1^2*R4^2*R16", "q^2*R1^2*R2^2*R16")
        assert src != cat.SERIES_SOURCES["eq320-cleared"]
        [r] = run(src, 100)
        assert r.status == "fail" and r.first_mismatch_exponent == 4

    def test_error_status(self):
        [r] = check_source("assert 1/(2 + q) == 1 @order 5")
        assert r.status == "error" and r.message and "NonUnitLeading" in r.message

    def test_precision_error_status(self, monkeypatch):
        monkeypatch.setattr("qrr.checker.evaluator.MAX_RETRIES", 1)
        [r] = check_source("assert q^-3*(R(q) - 1 + q) == 0 @order 20")
        assert (r.status, r.order_checked) == ("error", 17)

    def test_report_fields(self):
        [r] = check_source("assert q == 0 @order 5", label="t.qid")
        d = r.to_dict()
        assert list(d) == ["identity_id", "status", "order_checked", "first_mismatch_exponent",
                           "mismatch_delta", "wall_time"]
        assert d["identity_id"] == "t.qid:1" and d["first_mismatch_exponent"] == 1 and d["mismatch_delta"] == 1
        assert "FAIL" in r.summary()

    @pytest.mark.parametrize("identity_id", ["eq12", "eq26", "thm11", "lem31", "eq319"])
    def test_monotone(self, identity_id):
        e = cat.entry(identity_id)
        for n in (300, 150, 64, 10, 1):
            assert cat.run_entry(e, n).passed

    def test_failure_persists_at_higher_order(self):
        src = cat.SERIES_SOURCES["eq26"].replace("- 11 -", "- 12 -")
        assert [r.first_mismatch_exponent for r in run(src, 50) + run(src, 150)] == [0, 0]


class TestCatalogue:
    def test_entry_ids(self):
        ids = {e.id for e in cat.ENTRIES}
        required = {"eq11", "eq12", "eq13", "thm11", "eq15", "eq16", "lem21a", "lem21b", "lem21c", "eq26",
                    "eq27x", "eq29x", "eq210", "eq211", "lead-1qR1R4", "lead-Y", "lem31", "eq33", "eq34",
                    "eq35x", "eq37x", "eq38", "eq39", "eq311", "eq314", "eq315", "eq316x", "eq318", "eq319",
                    "eq320", "psi-dissect-r4", "phi2-dissect-r0"}
        assert required <= ids
        assert [e.id for e in cat.ENTRIES] == sorted(ids)

    def test_manifest_complete(self):
        ids = {e.id for e in cat.ENTRIES}
        displayed = {f"eq{n}" for n in range(11, 17)} | {f"eq2{n}" for n in range(1, 10)} | {"eq210", "eq211"} \
            | {f"eq3{n}" for n in range(1, 10)} | {f"eq3{n}" for n in range(10, 21)}
        displayed = (displayed - {"eq14"}) | {"thm11"}
        assert displayed <= set(cat.MANIFEST)
        for key, (covering, reason) in cat.MANIFEST.items():
            assert set(covering) <= ids, key
            assert covering or reason, key
        covered = {i for covering, _ in cat.MANIFEST.values() for i in covering}
        assert covered == ids

    def test_alias(self):
        [r] = cat.run_catalogue(10, ["eq21"])
        assert r.identity_id == "eq21" and r.passed and r.order_checked == 10

    def test_empty_filter(self):
        assert cat.run_catalogue(10, ["nothing"]) == []

    def test_caps(self):
        [r] = cat.run_catalogue(300, ["lead-Y"])
        assert r.passed and r.order_checked == 6

    def test_exact_order_checked(self):
        [r] = cat.run_catalogue(300, ["eq316x"])
        assert r.passed and r.order_checked == 17  # q-degree of C plus one

    def test_parallel_matches_serial(self):
        only = ["eq12", "eq29x", "lem21b", "lead-Y"]
        serial = cat.run_catalogue(40, only)
        parallel = cat.run_catalogue(40, only, jobs=2)
        key = lambda r: (r.identity_id, r.status, r.order_checked)
        assert list(map(key, serial)) == list(map(key, parallel))

    def test_polys_override(self):
        table = dict(POLYNOMIALS)
        table["Y"] = table["Y"] + 1
        [r] = cat.run_catalogue(6, ["lead-Y"], polys=table)
        assert (r.status, r.first_mismatch_exponent, r.mismatch_delta) == ("fail", 0, 1)

    def test_unknown_entry(self):
        with pytest.raises(KeyError):
            cat.entry("eq99")


class TestCli:
    def write(self, tmp_path, text):
        p = tmp_path / "ids.qid"
        p.write_text(text)
        return str(p)

    def test_check_pass(self, tmp_path, capsys):
        path = self.write(tmp_path, "let x = R(q)\nassert x - x == 0 @order 20\n")
        assert main(["check", path]) == 0
        assert "1/1 passed" in capsys.readouterr().out

    def test_check_fail_json(self, tmp_path, capsys):
        path = self.write(tmp_path, "assert R(q) == 1 @order 20\nassert 1 == 1 @order 3\n")
        assert main(["check", path, "--json", "--order", "9"]) == 1
        data = json.loads(capsys.readouterr().out)
        assert data[0]["status"] == "fail" and data[0]["first_mismatch_exponent"] == 1
        assert data[0]["mismatch_delta"] == -1 and data[0]["order_checked"] == 9
        assert data[1]["status"] == "pass"

    def test_check_parse_error(self, tmp_path, capsys):
        path = self.write(tmp_path, "assert R(q) == @order 20\n")
        assert main(["check", path]) == 2
        assert "line 1, column 16" in capsys.readouterr().err

    def test_check_eval_error(self, tmp_path):
        path = self.write(tmp_path, "assert 1/(3 - q) == 1 @order 4\n")
        assert main(["check", path]) == 2

    def test_check_missing_file(self, tmp_path):
        assert main(["check", str(tmp_path / "none.qid")]) == 2

    def test_catalogue(self, capsys):
        assert main(["catalogue", "--order", "30", "--only", "eq12,eq29x", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert [d["identity_id"] for d in data] == ["eq12", "eq29x"]

    def test_expand(self, capsys):
        assert main(["expand", "R(q)", "--order", "7"]) == 0
        assert capsys.readouterr().out.split() == ["0:1", "1:-1", "2:1", "4:-1", "5:1", "6:-1"]
        assert main(["expand", "1/q + psi(q)", "--order", "4", "--json"]) == 0
        assert json.loads(capsys.readouterr().out) == {"order": 4, "terms": [[-1, 1], [0, 1], [1, 1], [3, 1]]}

    def test_dissect(self, capsys):
        assert main(["dissect", "phi(-q)", "--mod", "5", "--order", "100", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["modulus"] == 5 and data["source_order"] == 100
        assert [p["terms"] == [] for p in data["parts"]] == [False, False, True, True, False]
        assert main(["dissect", "psi(q)", "--mod", "5", "--order", "30"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[2] == "r=2 (order 6): 0" and re.match(r"r=3 \(order 6\): 0:1 ", lines[3])

    def test_bad_expression(self, capsys):
        assert main(["expand", "R(q", "--order", "5"]) == 2
        assert main(["expand", "q", "--order", "0"]) == 2
