import math

import numpy as np
import pytest

from fqz import checker, gates, lang
from fqz.circuit import OracleFn
from fqz.lang import AllocStmt, MeasureStmt, OracleDecl, Program


def by_rule(report):
    return {c.rule: c for c in report.checks}


class TestCheckObservable:
    @pytest.mark.parametrize("name", ["I", "X", "Z", "H"])
    def test_passes_on_the_hermitian_builtins(self, name):
        report = checker.check_observable(gates.gate(name).matrix, subject=name)
        assert report.overall
        assert [c.rule for c in report.checks] == ["OBS-1", "OBS-2", "OBS-3"]

    def test_fails_on_diag_1_i(self):
        """[[1,0],[0,i]] has a non-real diagonal entry: OBS-2 and OBS-3 fail."""
        report = checker.check_observable([[1, 0], [0, 1j]])
        rules = by_rule(report)
        assert rules["OBS-1"].passed
        assert not rules["OBS-2"].passed
        assert not rules["OBS-3"].passed
        assert not report.overall

    @pytest.mark.parametrize("phi", [math.pi / 4, math.pi / 2, 3 * math.pi / 4])
    def test_fails_on_proper_phase_gates(self, phi):
        report = checker.check_observable(gates.phase_shift(phi).matrix)
        rules = by_rule(report)
        assert not rules["OBS-2"].passed
        assert not rules["OBS-3"].passed

    def test_phase_pi_passes_because_it_is_z(self):
        report = checker.check_observable(gates.phase_shift(math.pi).matrix)
        assert report.overall

    def test_non_square_skips_remaining_rules(self):
        report = checker.check_observable(np.ones((2, 3)))
        rules = by_rule(report)
        assert not rules["OBS-1"].passed
        assert "not square" in rules["OBS-2"].detail
        assert "not square" in rules["OBS-3"].detail
        assert not report.overall

    def test_larger_hermitian_matrix_defers_eigenvalue_clause_to_obs2(self):
        m = np.diag([1.0, 2.0, 3.0, 4.0])
        report = checker.check_observable(m)
        rules = by_rule(report)
        assert report.overall
        assert "OBS-2" in rules["OBS-3"].detail

    def test_pass_set_closed_under_conjugate_transpose(self):
        for name in ["I", "X", "Z", "H"]:
            m = gates.gate(name).matrix
            assert checker.check_observable(m.conj().T).overall

    def test_checking_is_total_on_garbage(self):
        report = checker.check_observable([[float("nan"), 0], [0, 1]])
        assert not report.overall  # no exception raised

    def test_reports_are_deterministic(self):
        a = checker.check_observable(gates.hadamard().matrix)
        b = checker.check_observable(gates.hadamard().matrix)
        assert a == b


class TestCheckGate:
    @pytest.mark.parametrize("g", gates.builtin_gates() + (gates.phase_shift(math.pi / 2),), ids=lambda g: g.name)
    def test_builtins_pass_all_rules(self, g):
        report = checker.check_gate(g)
        assert report.overall
        assert [c.rule for c in report.checks] == ["GATE-U", "GATE-M", "GATE-INJ"]

    def test_shear_matrix_fails_unitarity(self):
        g = gates.Gate("SHEAR", 1, np.array([[1, 1], [0, 1]], dtype=complex))
        rules = by_rule(checker.check_gate(g))
        assert not rules["GATE-U"].passed

    def test_matrix_mapping_disagreement_fails_gate_m(self):
        # X's matrix paired with the identity's mapping
        mapping = gates.identity_gate().mapping
        g = gates.Gate("X", 1, gates.pauli_x().matrix, mapping)
        rules = by_rule(checker.check_gate(g))
        assert rules["GATE-U"].passed
        assert not rules["GATE-M"].passed

    def test_collapsing_mapping_fails_injectivity(self):
        mapping = gates.BasisMapping(1, (("0", gates.ket("0")), ("1", gates.ket("0"))))
        g = gates.Gate("BAD", 1, np.eye(2, dtype=complex), mapping)
        rules = by_rule(checker.check_gate(g))
        assert not rules["GATE-M"].passed  # mapping does not even induce a unitary
        assert not rules["GATE-INJ"].passed
        assert "|0>" in rules["GATE-INJ"].detail and "|1>" in rules["GATE-INJ"].detail

    def test_gate_without_mapping_passes_vacuously(self):
        g = gates.Gate("BARE", 1, np.eye(2, dtype=complex))
        report = checker.check_gate(g)
        assert report.overall
        assert "no mapping" in by_rule(report)["GATE-M"].detail

    def test_checking_is_total_on_broken_gates(self):
        g = gates.Gate("ZERO", 1, np.zeros((2, 2), dtype=complex))
        report = checker.check_gate(g)  # must not raise
        assert not report.overall


class TestCheckProgram:
    def test_deutsch_program_passes(self):
        p = lang.parse_source(lang.deutsch_source("id"))
        report = checker.check_program(p)
        assert report.overall
        assert [c.rule for c in report.checks] == ["PROG-SCOPE", "PROG-NORM"]

    def test_empty_program_passes_vacuously(self):
        report = checker.check_program(Program((), ()))
        assert report.overall

    def test_undeclared_measure_fails_scope_and_skips_norm(self):
        p = Program((), (MeasureStmt("ghost"),))
        rules = by_rule(checker.check_program(p))
        assert not rules["PROG-SCOPE"].passed
        assert "skipped" in rules["PROG-NORM"].detail

    def test_double_alloc_fails_scope(self):
        p = Program((), (AllocStmt("q", "|0>"), AllocStmt("q", "|1>")))
        assert not by_rule(checker.check_program(p))["PROG-SCOPE"].passed

    def test_duplicate_oracle_decl_fails_scope(self):
        p = Program((OracleDecl("f", OracleFn.CONST0),) * 2, ())
        assert not by_rule(checker.check_program(p))["PROG-SCOPE"].passed

    def test_norm_holds_on_longer_program(self):
        src = (
            "oracle f = not\n"
            "qubit a = H|0>\nqubit b = |->\nqubit c = |1>\n"
            "H c\nR(pi/4) a\nN[f] a b\nZ b\nX c\nmeasure b\nmeasure a\n"
        )
        report = checker.check_program(lang.parse_source(src))
        assert report.overall

    def test_execution_failure_becomes_fail_entry(self):
        # N applied to one qubit twice: scoping is fine, execution is not
        p = lang.parse_source("oracle f = id\nqubit x = |0>\nN[f] x x")
        rules = by_rule(checker.check_program(p))
        assert rules["PROG-SCOPE"].passed
        assert not rules["PROG-NORM"].passed
        assert "failed" in rules["PROG-NORM"].detail
