import json
import math

import pytest

from gitrank.analyzer import (
    AnalyzerConfig,
    analyze_repository,
    analyze_source,
    load_analyzer_config,
)

CLEAN = "int add(int a, int b) {\n    return a + b;\n}\n"
BRANCHY = (
    "int pick(int a, int b) {\n"
    "    if (a > b && a > 0) {\n"
    "        return a;\n"
    "    }\n"
    "    return b;\n"
    "}\n"
)


def test_analyze_source_single_function():
    module, diags = analyze_source("add.c", CLEAN)
    assert diags == []
    assert [f.name for f in module.functions] == ["add"]
    assert module.functions[0].cyclomatic_complexity == 1
    assert module.sloc == 3
    assert module.style_errors == 0
    assert module.security == (0, 0, 0)


def test_analyze_source_module_mi_uses_totals():
    module, _ = analyze_source("add.c", CLEAN)
    volume = module.functions[0].halstead_volume
    expected = 171.0 - 5.2 * math.log(volume) - 0.23 * 1 - 16.2 * math.log(3)
    assert module.maintainability_index == pytest.approx(expected, abs=1e-12)


def test_analyze_source_no_functions_floors_volume():
    module, _ = analyze_source("defs.h", "extern int x;\nextern int y;\n")
    assert module.functions == ()
    # V floored to 1, C = 0, L = 2
    assert module.maintainability_index == pytest.approx(171.0 - 16.2 * math.log(2))


def test_analyze_source_empty_file_floors_sloc():
    module, _ = analyze_source("empty.c", "")
    assert module.sloc == 0
    assert module.maintainability_index == pytest.approx(171.0)


def test_analyze_source_reports_lexer_diagnostics():
    module, diags = analyze_source("bad.c", 'char *s = "unterminated\nint x;\n')
    assert any("unterminated string" in d for d in diags)
    assert diags[0].startswith("bad.c:1")
    assert module.sloc >= 1


def test_repository_walk_is_sorted_and_filtered(write_tree):
    root = write_tree(
        {
            "src/b.c": CLEAN,
            "src/a.c": BRANCHY,
            "include/z.h": "extern int x;\n",
            "README.md": "# not code\n",
            "notes.txt": "skip me\n",
        }
    )
    modules, summary = analyze_repository(root)
    assert [m.path for m in modules] == ["include/z.h", "src/a.c", "src/b.c"]
    assert summary.file_count == 3
    assert summary.function_count == 2


def test_repository_summary_means(write_tree):
    root = write_tree({"a.c": CLEAN, "b.c": BRANCHY})
    modules, summary = analyze_repository(root)
    ccs = [f.cyclomatic_complexity for m in modules for f in m.functions]
    assert summary.cc == pytest.approx(sum(ccs) / len(ccs))
    mis = [m.maintainability_index for m in modules]
    assert summary.mi == pytest.approx(sum(mis) / len(mis))
    assert summary.total_sloc == 9
    assert summary.cc == pytest.approx((1 + 3) / 2)


def test_repository_densities(write_tree):
    dirty = 'void f(){\tstrcpy(a,b); gets(c); rand();\n}\n'
    root = write_tree({"dirty.c": dirty})
    _, summary = analyze_repository(root)
    assert summary.total_sloc == 2
    assert summary.sh == pytest.approx(2 / 2)  # strcpy + gets
    assert summary.sl == pytest.approx(1 / 2)  # rand
    assert summary.sm == pytest.approx(0.0)
    # missing comma space + statement packing (tab is not indentation here)
    assert summary.sty == pytest.approx(2 / 2)


def test_empty_repository_all_measures_missing(tmp_path):
    root = tmp_path / "empty"
    root.mkdir()
    modules, summary = analyze_repository(root)
    assert modules == []
    assert summary.file_count == 0
    for measure in ("cc", "mi", "sty", "sl", "sm", "sh"):
        assert getattr(summary, measure) is None


def test_no_functions_repo_has_missing_cc_but_present_mi(write_tree):
    root = write_tree({"decls.h": "extern int x;\nvoid api(int);\n"})
    _, summary = analyze_repository(root)
    assert summary.cc is None
    assert summary.mi is not None
    assert summary.sty is not None


def test_repo_id_defaults_to_directory_name(write_tree):
    root = write_tree({"a.c": CLEAN}, root_name="myrepo")
    _, summary = analyze_repository(root)
    assert summary.repo_id == "myrepo"
    _, summary = analyze_repository(root, repo_id="owner/name")
    assert summary.repo_id == "owner/name"


def test_analysis_is_deterministic(write_tree):
    root = write_tree({"a.c": CLEAN, "b.c": BRANCHY, "c/d.cc": "int q(){return 1;}\n"})
    first = analyze_repository(root)
    second = analyze_repository(root)
    assert first == second


def test_unreadable_file_is_skipped_with_note(write_tree, monkeypatch):
    root = write_tree({"good.c": CLEAN, "locked.c": BRANCHY})
    from pathlib import Path

    real_read = Path.read_bytes

    def flaky(self):
        if self.name == "locked.c":
            raise OSError(13, "Permission denied")
        return real_read(self)

    monkeypatch.setattr(Path, "read_bytes", flaky)
    modules, summary = analyze_repository(root)
    assert [m.path for m in modules] == ["good.c"]
    assert len(summary.skipped) == 1
    assert "locked.c" in summary.skipped[0]


def test_not_a_directory_raises(tmp_path):
    with pytest.raises(NotADirectoryError):
        analyze_repository(tmp_path / "missing")


def test_config_validation():
    with pytest.raises(ValueError):
        AnalyzerConfig(extensions=())
    with pytest.raises(ValueError):
        AnalyzerConfig(max_line_length=0)
    with pytest.raises(ValueError):
        AnalyzerConfig(security_rules=())


def test_load_config_full(tmp_path):
    rules = tmp_path / "rules.txt"
    rules.write_text("danger high\n", encoding="utf-8")
    config_path = tmp_path / "conf.json"
    config_path.write_text(
        json.dumps(
            {"extensions": [".c"], "max_line_length": 100, "security_rules": "rules.txt"}
        ),
        encoding="utf-8",
    )
    config = load_analyzer_config(config_path)
    assert config.extensions == (".c",)
    assert config.max_line_length == 100
    assert [r.pattern for r in config.security_rules] == ["danger"]


def test_load_config_defaults_and_unknown_keys(tmp_path):
    config_path = tmp_path / "conf.json"
    config_path.write_text("{}", encoding="utf-8")
    assert load_analyzer_config(config_path) == AnalyzerConfig()
    config_path.write_text('{"surprise": 1}', encoding="utf-8")
    with pytest.raises(ValueError):
        load_analyzer_config(config_path)


def test_load_config_bad_json(tmp_path):
    config_path = tmp_path / "conf.json"
    config_path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValueError):
        load_analyzer_config(config_path)


def test_extension_matching_is_case_insensitive(write_tree):
    root = write_tree({"A.C": CLEAN, "b.CPP": BRANCHY})
    modules, _ = analyze_repository(root)
    assert len(modules) == 2


def test_custom_extension_filter(write_tree):
    root = write_tree({"a.c": CLEAN, "b.cpp": BRANCHY})
    modules, _ = analyze_repository(root, AnalyzerConfig(extensions=(".cpp",)))
    assert [m.path for m in modules] == ["b.cpp"]
