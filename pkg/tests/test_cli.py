"""Job documents, dispatch, rendering, exit codes."""

import json

import pytest

from sftact import InputError
from sftact.cli import (
    cycles_of,
    emit_job,
    emit_report,
    main,
    parse_cycles,
    parse_job,
    run_job,
)

from helpers import SIX_STATE_A

SIX_STATE_JOB = {
    "command": "reduce",
    "input": {
        "matrix": [list(row) for row in SIX_STATE_A.entries],
        "group": {"generators": ["(1 2)(3 4 5 6)"]},
    },
}


def job_text(doc):
    return json.dumps(doc)


class TestParseJob:
    def test_minimal_reduce_job(self):
        job = parse_job(job_text(SIX_STATE_JOB))
        assert job.command == "reduce"
        assert job.parameters == {}

    def test_empty_document(self):
        with pytest.raises(InputError, match="missing command"):
            parse_job("{}")

    def test_malformed_json(self):
        with pytest.raises(InputError, match="malformed"):
            parse_job("{")

    def test_unknown_command(self):
        with pytest.raises(InputError, match="unknown command"):
            parse_job(job_text({"command": "frobnicate"}))

    def test_negative_entry_names_the_path(self):
        doc = {
            "command": "invariants",
            "input": {"matrix": [[1, -1], [0, 1]]},
        }
        with pytest.raises(InputError, match=r"matrix\[0\]\[1\]"):
            parse_job(job_text(doc))

    def test_bad_cycle_entry(self):
        doc = {
            "command": "reduce",
            "input": {"matrix": [[1, 1], [1, 1]], "group": {"generators": ["(1 3)"]}},
        }
        with pytest.raises(InputError, match="out of range"):
            run_job(parse_job(job_text(doc)))

    def test_format_field_checked(self):
        doc = dict(SIX_STATE_JOB, format="sftact-job/999")
        with pytest.raises(InputError, match="unsupported format"):
            parse_job(job_text(doc))

    def test_missing_matrix_reported(self):
        with pytest.raises(InputError, match="missing field 'matrix'"):
            parse_job(job_text({"command": "invariants", "input": {}}))

    def test_missing_certificate_reported(self):
        with pytest.raises(InputError, match="missing field 'certificate'"):
            parse_job(job_text({"command": "transport", "input": {}}))


class TestCycles:
    def test_parse_and_render_round_trip(self):
        perm = parse_cycles("(1 2)(3 4 5 6)", 6, "test")
        assert perm == (1, 0, 3, 4, 5, 2)
        assert cycles_of(perm) == "(1 2)(3 4 5 6)"

    def test_identity(self):
        assert parse_cycles("()", 3, "test") == (0, 1, 2)
        assert cycles_of((0, 1, 2)) == "()"

    def test_comma_separated(self):
        assert parse_cycles("(1,2)", 2, "test") == (1, 0)


class TestRunJob:
    def test_reduce_six_state(self):
        report = run_job(parse_job(job_text(SIX_STATE_JOB)))
        assert report.result["right"]["entries"] == [[1, 2], [2, 1]]
        assert report.result["left"]["entries"] == [[1, 1], [4, 1]]

    def test_classify_swap(self):
        doc = {
            "command": "classify",
            "input": {"matrix": [[1, 1], [1, 1]], "group": {"generators": ["(1 2)"]}},
        }
        report = run_job(parse_job(job_text(doc)))
        assert report.result["verdict"] == "constant-to-one"

    def test_bundle_counts_trefoil(self):
        doc = {
            "command": "bundle-counts",
            "input": {"hnn": {"preset": "trefoil"}, "group": "Z2"},
            "parameters": {"max_n": 6},
        }
        report = run_job(parse_job(job_text(doc)))
        assert report.result["counts"] == [1, 1, 4, 1, 1, 4]

    def test_verify_sse_chain(self):
        doc = {
            "command": "verify-sse",
            "input": {
                "chain": [
                    {"a": [[2]], "b": [[1, 1], [1, 1]], "r": [[1, 1]], "s": [[1], [1]]},
                    {
                        "a": [[1, 1], [1, 1]],
                        "b": [[1, 1], [1, 1]],
                        "r": [[1, 0], [0, 1]],
                        "s": [[1, 1], [1, 1]],
                    },
                ]
            },
        }
        report = run_job(parse_job(job_text(doc)))
        assert report.result == {"links": [True, True], "valid": True}

    def test_split_command(self):
        doc = {
            "command": "split",
            "input": {
                "matrix": [[1, 1], [1, 0]],
                "group": {"generators": []},
                "direction": "out",
                "partition": [[[1], [2]], [[1]]],
            },
        }
        report = run_job(parse_job(job_text(doc)))
        assert report.result["matrix"]["entries"] == [[1, 1, 0], [0, 0, 1], [1, 1, 0]]
        assert report.result["verified"] is True

    def test_transport_command(self):
        entries = [list(row) for row in SIX_STATE_A.entries]
        ident = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
        doc = {
            "command": "transport",
            "input": {
                "certificate": {"a": entries, "b": entries, "r": entries, "s": ident},
                "phi": {"generators": ["(1 2)(3 4 5 6)"]},
                "psi": {"generators": ["(1 2)(3 4 5 6)"]},
            },
        }
        report = run_job(parse_job(job_text(doc)))
        assert report.result["a_reduced"]["entries"] == [[1, 2], [2, 1]]
        assert report.result["verified"] is True

    def test_tqft_command(self):
        doc = {
            "command": "tqft",
            "input": {"hnn": {"preset": "trefoil"}, "group": "S3"},
        }
        report = run_job(parse_job(job_text(doc)))
        assert len(report.result["basis"]) == 11


class TestEmit:
    def test_json_deterministic(self):
        report = run_job(parse_job(job_text(SIX_STATE_JOB)))
        assert emit_report(report, "json") == emit_report(report, "json")

    def test_text_deterministic(self):
        report = run_job(parse_job(job_text(SIX_STATE_JOB)))
        assert emit_report(report, "text") == emit_report(report, "text")

    def test_json_round_trip(self):
        report = run_job(parse_job(job_text(SIX_STATE_JOB)))
        doc = json.loads(emit_report(report, "json"))
        assert doc["result"]["right"]["entries"] == [[1, 2], [2, 1]]
        assert doc["format"] == "sftact-report/1"

    def test_job_round_trip(self):
        job = parse_job(job_text(SIX_STATE_JOB))
        again = parse_job(emit_job(job))
        assert again == job
        assert parse_job(emit_job(again)) == again

    def test_bf_text_rendering(self):
        from sftact.cli import bf_text

        assert bf_text({"torsion": [2, 2], "free_rank": 0}) == "Z/2 + Z/2"
        assert bf_text({"torsion": [], "free_rank": 0}) == "0"
        assert bf_text({"torsion": [3], "free_rank": 2}) == "Z/3 + Z^2"
        doc = {
            "command": "invariants",
            "input": {
                "matrix": [list(row) for row in SIX_STATE_A.entries],
                "group": {"generators": ["(1 2)(3 4 5 6)"]},
            },
        }
        report = run_job(parse_job(job_text(doc)))
        text = emit_report(report, "text")
        assert "BF group: Z/2 + Z/2" in text
        assert "BF group: Z/4" in text


class TestMain:
    def run_main(self, tmp_path, capsys, doc, args):
        path = tmp_path / "job.json"
        path.write_text(json.dumps(doc))
        code = main(list(args) + ["--input", str(path)])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    def test_success_exit_zero(self, tmp_path, capsys):
        code, out, _ = self.run_main(tmp_path, capsys, SIX_STATE_JOB, ["reduce"])
        assert code == 0
        assert json.loads(out)["result"]["right"]["entries"] == [[1, 2], [2, 1]]

    def test_command_inferred_from_subcommand(self, tmp_path, capsys):
        doc = {k: v for k, v in SIX_STATE_JOB.items() if k != "command"}
        code, out, _ = self.run_main(tmp_path, capsys, doc, ["reduce"])
        assert code == 0

    def test_input_error_exit_one(self, tmp_path, capsys):
        doc = {"command": "invariants", "input": {"matrix": [[1, -1], [0, 1]]}}
        code, _, err = self.run_main(tmp_path, capsys, doc, ["invariants"])
        assert code == 1
        assert "matrix" in err

    def test_precondition_exit_two(self, tmp_path, capsys):
        doc = {
            "command": "classify",
            "input": {
                "matrix": [[1, 0, 1], [0, 1, 1], [0, 0, 1]],
                "group": {"generators": ["(1 2)"]},
            },
        }
        code, _, err = self.run_main(tmp_path, capsys, doc, ["classify"])
        assert code == 2
        assert "irreducible" in err

    def test_cap_exit_three(self, tmp_path, capsys):
        doc = {
            "command": "quotient-counts",
            "input": {"matrix": [[1, 1], [1, 1]], "group": {"generators": ["(1 2)"]}},
            "parameters": {"max_n": 6, "cap": 3},
        }
        code, _, err = self.run_main(tmp_path, capsys, doc, ["quotient-counts"])
        assert code == 3
        assert "cap" in err.lower()

    def test_text_format_stable(self, tmp_path, capsys):
        code1, out1, _ = self.run_main(
            tmp_path, capsys, SIX_STATE_JOB, ["reduce", "--format", "text"]
        )
        code2, out2, _ = self.run_main(
            tmp_path, capsys, SIX_STATE_JOB, ["reduce", "--format", "text"]
        )
        assert code1 == code2 == 0
        assert out1 == out2
