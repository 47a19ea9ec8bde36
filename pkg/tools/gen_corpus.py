"""Regenerate tests/corpus: 50 single-function C snippets + expected.json.

Expected cyclomatic-complexity and Halstead values are computed by the
independent reference implementations in tests/oracles.py, NEVER by the
package itself, so the committed numbers stay an external check. For the
hand-written snippets the script additionally cross-checks the oracle's CC
against hand-derived values and aborts on any disagreement.

Usage: python tools/gen_corpus.py
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from oracles import cc_oracle, first_body_oracle, halstead_oracle  # noqa: E402

CORPUS = ROOT / "tests" / "corpus"

# (filename, source, hand-derived cc)
HANDWRITTEN = [
    ("return0.c", "int f(){return 0;}\n", 1),
    ("and_call.c", "int f(){if(a&&b)x();}\n", 3),
    ("forever_if.c", "int f(){for(;;){if(p)q();}}\n", 3),
    ("empty_body.c", "void f(){}\n", 1),
    ("lone_stmt.c", "void f(){x;}\n", 1),
    ("ternary.c", "int f(int a){return a>0?1:0;}\n", 2),
    ("ternary_chain.c", "int f(int a){return a>9?2:a>4?1:0;}\n", 3),
    (
        "switch4.c",
        "int f(int v){\n"
        "    switch (v) {\n"
        "    case 1: return 10;\n"
        "    case 2: return 20;\n"
        "    case 3: return 30;\n"
        "    default: return 0;\n"
        "    }\n"
        "}\n",
        4,
    ),
    ("do_while.c", "int f(int n){do{n--;}while(n>0);return n;}\n", 2),
    ("logic_mix.c", "int f(){return a&&b||c&&d;}\n", 4),
    ("string_decoys.c", 'const char *f(){return "if (x && y) ? while : for";}\n', 1),
    (
        "comment_decoys.c",
        "int f(){\n"
        "    // if (fake && decoy) ?\n"
        "    /* while (1) { case 0: } */\n"
        "    return 7;\n"
        "}\n",
        1,
    ),
    ("char_decoy.c", "int f(int c){return c=='?'?1:0;}\n", 2),
    (
        "nested_loops.c",
        "int f(int n){\n"
        "    int total = 0;\n"
        "    for (int i = 0; i < n; i++) {\n"
        "        while (total < 100) {\n"
        "            if (i % 2) { total += i; }\n"
        "            total++;\n"
        "        }\n"
        "    }\n"
        "    return total;\n"
        "}\n",
        4,
    ),
    (
        "catch_try.c",
        "int f(){\n"
        "    try { work(); } catch (...) { return -1; }\n"
        "    return 0;\n"
        "}\n",
        2,
    ),
    (
        "preproc_if.c",
        "int f(){\n"
        "#if DEBUG\n"
        "    log();\n"
        "#endif\n"
        "    return 1;\n"
        "}\n",
        2,  # the directive's `if` token is counted, by design
    ),
    ("crlf.c", "int f(int a){\r\n    if (a) { return 1; }\r\n    return 2;\r\n}\r\n", 2),
    (
        "tabs_long.c",
        "int f(int a, int b){\n"
        "\tif (a > b) { return a; }\n"
        "\tif (b > a) { return b; }\n"
        "\treturn a + b;\n"
        "}\n",
        3,
    ),
    ("splice_string.c", 'const char *f(){return "one\\\ntwo";}\n', 1),
    (
        "multi_compare.c",
        "int f(int a, int b){while(a<b&&b<9||a==0){a++;}return a;}\n",
        4,
    ),
]

STATEMENTS = [
    "a = b + c;",
    "total += i;",
    "count++;",
    "ptr->field = arr[i];",
    "if (a && b) { a = 1; }",
    "if (a || b) { c(); } else { d(); }",
    "for (i = 0; i < n; i++) { step(i); }",
    "while (n > 0) { n--; }",
    "do { n++; } while (n < 9);",
    "x = p ? q : r;",
    "switch (k) { case 1: break; case 2: break; default: break; }",
    "try { risky(); } catch (err) { recover(); }",
    "// if (commented && out) ?",
    "/* while (0) case 9: */",
    's = "for (;;) if (deco) ?";',
    "value = f(a, b) * g(c);",
    "mask = flags & ~(1 << bit);",
    "ratio = total / (n + 1);",
    "ch = '?';",
    "limit = 1e+5;",
]


def generated_files():
    rng = random.Random(0x5EED)
    files = []
    for index in range(30):
        count = rng.randrange(1, 13)
        body_lines = [rng.choice(STATEMENTS) for _ in range(count)]
        source = (
            f"int gen{index:02d}(int a, int b)\n" + "{\n    "
            + "\n    ".join(body_lines)
            + "\n    return a;\n}\n"
        )
        files.append((f"gen{index:02d}.c", source))
    return files


def main() -> int:
    CORPUS.mkdir(parents=True, exist_ok=True)
    for stale in CORPUS.glob("*.c"):
        stale.unlink()

    expected = {}
    for name, source, hand_cc in HANDWRITTEN:
        body = first_body_oracle(source)
        cc = cc_oracle(body)
        if cc != hand_cc:
            raise SystemExit(f"{name}: oracle cc {cc} != hand-derived {hand_cc}")
        entry = halstead_oracle(body)
        entry["cc"] = cc
        expected[name] = entry
        (CORPUS / name).write_text(source, encoding="utf-8", newline="")

    for name, source in generated_files():
        body = first_body_oracle(source)
        entry = halstead_oracle(body)
        entry["cc"] = cc_oracle(body)
        expected[name] = entry
        (CORPUS / name).write_text(source, encoding="utf-8", newline="")

    out = CORPUS / "expected.json"
    out.write_text(json.dumps(expected, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {len(expected)} snippets -> {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
