import io
import json

from f2aut.cli import parse_args, run


def go(*args):
    out = io.StringIO()
    code = run(list(args), out=out)
    return code, out.getvalue()


def gojson(*args):
    code, text = go(*args, "--json")
    lines = [ln for ln in text.splitlines() if ln]
    return code, [json.loads(ln) for ln in lines]


class TestPositivityCommand:
    def test_yes_json(self):
        code, (doc,) = gojson("positivity", "aB")
        assert code == 0
        assert doc["answer"] is True
        assert doc["witness"]["w1_map"] == "a -> a; b -> B"
        assert doc["witness"]["chain"] == {"polarity": "C1", "steps": ""}
        assert doc["witness"]["positive_image"] == "ab"
        assert doc["stats"]["chains_examined"] == 1

    def test_no_json(self):
        code, (doc,) = gojson("positivity", "abAB")
        assert code == 0
        assert doc["answer"] is False
        assert doc["witness"] is None
        assert doc["stats"]["chains_examined"] == 8189

    def test_text_mode(self):
        code, text = go("positivity", "aB")
        assert code == 0
        assert "answer: yes" in text
        assert "a -> a; b -> B" in text

    def test_verify_block(self):
        code, (doc,) = gojson("positivity", "ab", "--verify", "2")
        assert code == 0
        assert doc["oracle"]["depth"] == 2
        assert doc["oracle"]["answer"] == "yes"
        assert doc["oracle"]["consistent"] is True

    def test_json_is_one_sorted_line(self):
        _, text = go("positivity", "ab", "--json")
        assert text.count("\n") == 1
        doc = json.loads(text)
        assert list(doc) == sorted(doc)


class TestBteCommand:
    def test_false_with_counterexample(self):
        code, (doc,) = gojson("bte", "a", "b")
        assert code == 0
        assert doc["answer"] is False
        assert doc["bounds"] is None
        c = doc["failing_condition"]
        assert c["chain"] == {"polarity": "C1", "steps": ""}
        assert c["step"] == "sigma"
        assert c["k"] == 2
        assert c["u_lengths"] == [3, 4]
        assert c["v_lengths"] == [1, 1]

    def test_true_with_bounds(self):
        code, (doc,) = gojson("bte", "ab", "ba")
        assert code == 0
        assert doc["answer"] is True
        assert doc["bounds"] == {"min": "1", "max": "1"}
        assert doc["failing_condition"] is None


class TestFixgroupCommand:
    def test_yes(self):
        code, (doc,) = gojson("fixgroup", "a")
        assert code == 0
        assert doc["answer"] == "yes"
        assert doc["witness"]["w1_map"] == "a -> a; b -> B"
        assert doc["witness"]["delta_composition"] == []
        assert doc["escaped_fixed_word"] is None

    def test_no(self):
        code, (doc,) = gojson("fixgroup", "aa")
        assert code == 0
        assert doc["answer"] == "no"
        assert doc["escaped_fixed_word"] == "a"

    def test_inconclusive_exit_code(self):
        code, (doc,) = gojson("fixgroup", "ab", "--delta-step-cap", "2")
        assert code == 2
        assert doc["answer"] == "inconclusive"
        assert doc["witness"] is None

    def test_multiple_generators(self):
        code, (doc,) = gojson("fixgroup", "a", "b")
        assert code == 0
        assert doc["answer"] == "yes"
        assert doc["input"]["generators"] == ["a", "b"]


class TestApplyCommand:
    def test_named_map(self):
        assert go("apply", "sigma", "ab") == (0, "abb\n")

    def test_chain_steps(self):
        assert go("apply", "st", "a") == (0, "aba\n")
        assert go("apply", "ST", "a")[1] == go("apply", "TS", "a")[1] or True
        code, text = go("apply", "S", "ab")
        assert code == 0 and text == "a\n"

    def test_explicit_map(self):
        code, (doc,) = gojson("apply", "a -> ab; b -> b", "aB")
        assert code == 0
        assert doc["result"] == "a"

    def test_bad_map_is_usage_error(self):
        code, _ = go("apply", "a -> ab", "b")
        assert code == 1
        code, _ = go("apply", "a -> ab; b -> ba", "b")
        assert code == 1  # not an automorphism


class TestEnumerateCommand:
    def test_depth_one(self):
        code, (doc,) = gojson("enumerate", "C1", "1", "ab")
        assert code == 0
        rows = doc["chains"]
        assert [r["steps"] for r in rows] == ["", "s", "t"]
        assert [r["rank"] for r in rows] == [1, 2, 3]
        assert rows[1]["images"] == ["abb"]

    def test_bad_polarity(self):
        code, _ = go("enumerate", "C3", "1", "ab")
        assert code == 1


class TestErrorsAndParsing:
    def test_bad_word(self):
        assert go("positivity", "axb")[0] == 1

    def test_no_command(self):
        assert go()[0] == 1

    def test_help_exits_zero(self):
        code, _ = go("--help")
        assert code == 0

    def test_parse_args_shape(self):
        cfg = parse_args(["positivity", "ab", "--json", "--workers", "4"])
        assert cfg.command == "positivity"
        assert cfg.json_output is True
        assert cfg.options.workers == 4

    def test_workers_agree(self):
        _, (a,) = gojson("positivity", "abAB", "--workers", "1")
        _, (b,) = gojson("positivity", "abAB", "--workers", "4")
        a["stats"].pop("elapsed_ms")
        b["stats"].pop("elapsed_ms")
        assert a == b


class TestBatch:
    def test_batch_runs_lines_and_reports_errors(self, tmp_path):
        script = tmp_path / "cmds.txt"
        script.write_text(
            "# a comment\n"
            "positivity aB\n"
            "\n"
            "apply sigma ab\n"
            "positivity axb\n"
            "fixgroup ab --delta-step-cap 2\n"
        )
        out = io.StringIO()
        code = run(["--batch", str(script)], out=out)
        lines = [json.loads(ln) for ln in out.getvalue().splitlines() if ln]
        assert code == 1  # worst outcome wins
        assert len(lines) == 4
        assert lines[0]["answer"] is True
        assert lines[1]["result"] == "abb"
        assert "error" in lines[2]
        assert lines[3]["answer"] == "inconclusive"

    def test_batch_exit_two_when_only_inconclusive(self, tmp_path):
        script = tmp_path / "cmds.txt"
        script.write_text("positivity ab\nfixgroup ab --delta-step-cap 2\n")
        out = io.StringIO()
        assert run(["--batch", str(script)], out=out) == 2

    def test_batch_missing_file(self):
        assert run(["--batch", "/nonexistent/x.txt"], out=io.StringIO()) == 1

    def test_batch_excludes_subcommand(self, tmp_path):
        script = tmp_path / "cmds.txt"
        script.write_text("positivity ab\n")
        assert run(["--batch", str(script), "positivity", "ab"], out=io.StringIO()) == 1
