from fractions import Fraction

import pytest

from cipherorder.dist import convolve, deterministic, translate, uniform_on_elements
from cipherorder.experiments import (
    emit_report,
    run_amplifier,
    run_collapse,
    run_expand,
    run_general_collapse,
)
from cipherorder.groups import GroupSizeError, closure, stabilizer, symmetric_group
from cipherorder.perms import transposition

F = Fraction
S3 = symmetric_group(3)
S4 = symmetric_group(4)
H01 = closure([transposition(3, 0, 1)])
PI = transposition(3, 1, 2)


def row_map(result):
    return {row.quantity: row for row in result.rows}


class TestExpand:
    def test_s3_example(self):
        result = run_expand(S3, H01, PI)
        assert result.passed
        rows = row_map(result)
        assert rows["support_T"].actual == "4"
        assert rows["support_D"].actual == "2"
        assert rows["majorization_t_vs_d"].actual == "strictly-below"
        assert rows["entropy_T_bits"].actual == "2"
        assert rows["entropy_D_bits"].actual == "1"
        assert rows["guesswork_T"].actual == "5/2"
        assert rows["guesswork_D"].actual == "3/2"
        assert rows["decomposition_m"].actual == "2"
        for q in range(4):
            assert rows[f"q{q}_direction_T_vs_D"].passed

    def test_degenerate_pi_inside_h(self):
        result = run_expand(S3, H01, transposition(3, 0, 1))
        assert result.degenerate
        assert result.passed
        assert row_map(result)["T_equals_D_distributionally"].actual == "True"

    def test_s4_stabilizer_case(self):
        h = stabilizer(S4, (3,))
        result = run_expand(S4, h, transposition(4, 2, 3), q_max=2)
        assert result.passed
        rows = row_map(result)
        assert rows["support_T"].actual == "18"
        assert rows["support_D"].actual == "6"
        assert rows["decomposition_m"].actual == "3"

    def test_normalizing_pi_is_reported_not_raised(self):
        # in sym(4), H = <(0 1)(2 3), (0 2)(1 3)> is normal: expansion fails
        from cipherorder.perms import Permutation

        klein = closure(
            [Permutation((1, 0, 3, 2)), Permutation((2, 3, 0, 1))]
        )
        result = run_expand(S4, klein, transposition(4, 0, 1), q_max=1)
        rows = row_map(result)
        assert rows["assumption_H_ne_piHpi^-1"].actual == "fails"
        assert not rows["support_expansion"].passed


class TestCollapse:
    def test_s3_example(self):
        result = run_collapse(S3, H01, PI)
        assert result.passed
        rows = row_map(result)
        assert rows["support_T"].actual == "2"
        assert rows["support_D"].actual == "4"
        assert rows["majorization_d_vs_t"].actual == "strictly-below"
        assert rows["inner_convolution_uniform_on_H"].passed
        assert rows["translated_T_equals_expand_D"].passed
        assert rows["translated_D_equals_expand_T"].passed

    def test_mirror_of_expand(self):
        collapse_t = translate(
            PI, uniform_on_elements(S3, H01)
        )  # supp(T) = pi H
        result = run_collapse(S3, H01, PI)
        assert result.passed
        x = uniform_on_elements(S3, H01)
        y = deterministic(S3, PI.inverse())
        xc = translate(PI, x)
        assert convolve(xc, convolve(y, xc)) == collapse_t

    def test_degenerate(self):
        result = run_collapse(S3, H01, transposition(3, 0, 1))
        assert result.degenerate


class TestGeneralCollapse:
    def test_r1_matches_collapse_distributions(self):
        result = run_general_collapse(S3, H01, PI, 1)
        assert result.passed
        rows = row_map(result)
        assert rows["r1_support_E"].actual == "2"
        assert rows["r1_support_E"].expected == "2"
        # r=1 X-product is exactly the collapse D
        collapse_rows = row_map(run_collapse(S3, H01, PI))
        assert rows["r1_majorization_x_vs_e"].actual == collapse_rows[
            "majorization_d_vs_t"
        ].actual

    def test_s3_two_rounds(self):
        result = run_general_collapse(S3, H01, PI, 2)
        assert result.passed
        rows = row_map(result)
        for r in (1, 2):
            assert rows[f"r{r}_support_E"].actual == "2"
            assert rows[f"r{r}_X_support_exceeds_piH"].passed
            assert rows[f"r{r}_X_support_nondecreasing"].passed

    def test_s4_three_rounds(self):
        h = stabilizer(S4, (3,))
        result = run_general_collapse(S4, h, transposition(4, 2, 3), 3)
        assert result.passed
        rows = row_map(result)
        supports = [
            int(rows[f"r{r}_support_E"].actual) for r in (1, 2, 3)
        ]
        assert supports == [6, 6, 6]

    def test_rejects_bad_rounds(self):
        with pytest.raises(ValueError):
            run_general_collapse(S3, H01, PI, 0)


class TestAmplifier:
    def test_n1(self):
        result = run_amplifier(1)
        assert result.passed
        rows = row_map(result)
        assert rows["support_T"].expected == "4"  # 3! - 2!
        assert rows["support_T"].actual == "4"
        assert rows["D_fixes_distinguished_point"].actual == "1"
        assert rows["distinguisher_advantage"].actual == "2/3"

    def test_n2(self):
        result = run_amplifier(2)
        assert result.passed
        rows = row_map(result)
        assert rows["support_T"].expected == "96"  # 5! - 4!
        assert rows["support_T"].actual == "96"
        assert rows["distinguisher_advantage"].actual == "4/5"

    def test_rejects_oversized_parameter(self):
        with pytest.raises(GroupSizeError):
            run_amplifier(3)
        with pytest.raises(ValueError):
            run_amplifier(0)


class TestEmitReport:
    def test_empty_csv_is_header_only(self):
        assert (
            emit_report([], "csv") == "experiment,quantity,expected,actual,verdict\n"
        )

    def test_expand_csv_rows(self):
        report = emit_report([run_expand(S3, H01, PI)], "csv")
        assert "expand,support_T,4,4,pass" in report.splitlines()

    def test_text_format_deterministic(self):
        result = run_expand(S3, H01, PI)
        a = emit_report([result], "text")
        b = emit_report([run_expand(S3, H01, PI)], "text")
        assert a == b
        assert a.startswith("== expand: PASS")

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report([], "yaml")
